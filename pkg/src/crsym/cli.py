"""Command-line surface: one subcommand per toolkit operation, each
emitting a single deterministic JSON report on standard output.

Exit codes: 0 ok, 1 domain error, 2 usage error.  Every numeric claim in a
report is exact: integers stay integers, rationals are serialized "p/q",
complex scalars as "re+im*i" strings.  Certificates carry the bases needed
to re-verify dimension claims independently.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .expr import ExprError
from .fields import (
    builtin_symmetries,
    close_and_structure,
    load_fields,
    solve_symmetries,
)
from .hypersurface import (
    FAMILY_DEFINITE,
    FAMILY_FLAT,
    FAMILY_INDEFINITE,
    builtin_model,
    levi_signature,
    load_model,
    tangency_residual,
)
from .kostant import (
    KostantError,
    bounds,
    complex_annihilator,
    hasse_weight2,
    lowest_weight_vectors,
    satake,
    sp2_curvature_check,
)
from .liestruct import (
    LieStructureError,
    Subspace,
    derived_series_dims,
    fingerprint,
    fingerprint_match,
    killing_form,
    levi_check,
    radical_and_series,
    reference_algebra,
    series_length,
    subalgebra,
)
from .parabolic import (
    complex_graded_sl,
    curvature_module,
    graded_su,
    tanaka_prolongation,
)
from .scalars import GaussianRational

_FAMILIES = {
    "indefinite": FAMILY_INDEFINITE,
    "definite": FAMILY_DEFINITE,
    "flat": FAMILY_FLAT,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rat(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)


def _scalar(c) -> str:
    if isinstance(c, (int, Fraction)):
        return _rat(c)
    if isinstance(c, GaussianRational):
        if c.is_real:
            return _rat(c.re)
        if not c.re:
            return f"{_rat(c.im)}*i"
        return f"{_rat(c.re)}+{_rat(c.im)}*i"
    return str(c)


def _vector(vec: dict) -> str:
    return " ".join(f"{k}:{_scalar(v)}" for k, v in sorted(vec.items()))


def _field_texts(field) -> list[str]:
    return [a.to_input_text() for a in field.coeffs]


def build_parser() -> _Parser:
    p = _Parser(prog="crsym", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def family_opts(sp, need_degree=False):
        sp.add_argument("--family", choices=sorted(_FAMILIES))
        sp.add_argument("--n", type=int)
        sp.add_argument("--eps", default="")
        sp.add_argument("--model", help="model file path")
        if need_degree:
            sp.add_argument("--degree", type=int, default=3)

    sp = sub.add_parser("verify", help="tangency of catalog or file-given fields")
    family_opts(sp)
    sp.add_argument("--fields", help="fields file path")

    sp = sub.add_parser("solve", help="degree-bounded symmetry solver")
    family_opts(sp, need_degree=True)

    sp = sub.add_parser("structure", help="closure, radical, series, Levi check")
    family_opts(sp)

    sp = sub.add_parser("levi-form", help="exact Levi signature")
    family_opts(sp)

    sp = sub.add_parser("parabolic", help="contact grading of su(p,q)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)

    sp = sub.add_parser("prolong", help="Tanaka prolongation of (g_-, a0)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--a0", default="full", help="full | zero | lowest | FILE")
    sp.add_argument("--max-degree", type=int, default=3)

    sp = sub.add_parser("invariants", help="machine checks on the curvature module")
    sp.add_argument("--check", choices=["sp2"], required=True)
    sp.add_argument("--n", type=int, default=4)

    sp = sub.add_parser("kostant", help="weight-2 Hasse words and marks")
    sp.add_argument("--n", type=int, required=True)

    sp = sub.add_parser("satake", help="Satake diagram data of su(k+1, n-k+1)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)

    sp = sub.add_parser("bounds", help="symmetry dimension bounds")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, default=0)
    return p


def _load_family_model(args):
    if args.model:
        if args.family:
            raise UsageError("--model and --family are mutually exclusive")
        with open(args.model, "r", encoding="utf-8") as fh:
            return load_model(fh.read())
    if not args.family:
        raise UsageError("one of --family or --model is required")
    if args.n is None:
        raise UsageError("--family needs --n")
    eps = list(args.eps)
    return builtin_model(_FAMILIES[args.family], args.n, eps)


def _catalog(args, model):
    return builtin_symmetries(
        _FAMILIES[args.family], args.n, list(args.eps), table=model.table
    )


# ---------------------------------------------------------------------------
# subcommand implementations: each returns (result, certificate)
# ---------------------------------------------------------------------------


def _cmd_verify(args):
    model = _load_family_model(args)
    if args.fields:
        with open(args.fields, "r", encoding="utf-8") as fh:
            basis = load_fields(fh.read(), model.table)
    elif args.family:
        basis = _catalog(args, model)
    else:
        raise UsageError("verify with --model needs --fields")
    verdicts = {}
    for label, field in basis:
        residual = tangency_residual(model, field)
        verdicts[label] = residual.is_zero
    result = {
        "count": len(basis),
        "allTangent": all(verdicts.values()),
        "residualZero": verdicts,
    }
    certificate = {
        "potential": model.phi.to_input_text()
        if model.phi.den.is_one
        else str(model.phi),
        "fields": {
            label: _field_texts(field) for label, field in basis
        },
    }
    return result, certificate


def _cmd_solve(args):
    model = _load_family_model(args)
    if args.degree < 1:
        raise UsageError("--degree must be at least 1")
    dim, fields = solve_symmetries(model, args.degree)
    result = {"dimension": dim, "degree": args.degree}
    certificate = {"basis": [_field_texts(f) for f in fields]}
    return result, certificate


def _cmd_structure(args):
    if not args.family:
        raise UsageError("structure needs --family")
    model = _load_family_model(args)
    basis = _catalog(args, model)
    L = close_and_structure(basis)
    report = radical_and_series(L)
    if report.radical.dim:
        rad_derived = derived_series_dims(subalgebra(L, report.radical))
    else:
        rad_derived = (0,)
    candidate = _levi_candidate(args, basis)
    verdict = levi_check(L, candidate)
    fp_levi = None
    fp_ref = None
    match = None
    ref_name = _levi_reference_name(args)
    if verdict.passed and candidate:
        levi_alg = subalgebra(L, candidate)
        fp_levi = fingerprint(levi_alg)
        if ref_name:
            fp_ref = fingerprint(reference_algebra(ref_name))
            match = fingerprint_match(fp_levi, fp_ref)
    elif verdict.passed:
        match = ref_name is None
    _, killing_sig = killing_form(L)
    result = {
        "dim": L.dim,
        "closed": True,
        "killingSignature": list(killing_sig),
        "radicalDim": report.radical.dim,
        "derivedSeriesDims": list(report.derived_dims),
        "lowerCentralSeriesDims": list(report.lower_central_dims),
        "radicalDerivedSeriesDims": list(rad_derived),
        "radicalDerivedLength": series_length(tuple(rad_derived)),
        "centerDim": report.center_dim,
        "leviCheck": {
            "pass": verdict.passed,
            "reason": verdict.reason,
            "dim": verdict.dim,
        },
        "leviReference": ref_name,
        "fingerprintMatch": match,
    }
    certificate = {
        "labels": list(L.labels),
        "structureConstants": [
            f"{a} {b} {c} {_rat(v)}" for a, b, c, v in L.structure_triples()
        ],
        "radicalBasis": [_vector(v) for v in report.radical],
        "leviCandidate": [_vector(v) for v in candidate],
        "fingerprints": {
            "levi": _fp_dict(fp_levi),
            "reference": _fp_dict(fp_ref),
        },
    }
    return result, certificate


def _fp_dict(fp):
    if fp is None:
        return None
    return {
        "dim": fp.dim,
        "killing": list(fp.killing),
        "centerDim": fp.center_dim,
        "derivedDims": list(fp.derived_dims),
        "lowerCentralDims": list(fp.lower_central_dims),
    }


def _levi_candidate(args, basis) -> list[dict]:
    """The published Levi-factor generators, as coordinates over the catalog."""
    n = args.n
    idx = {label: i for i, label in enumerate(basis.labels)}
    vecs = []

    def comb(*terms):
        out = {}
        for coeff, label in terms:
            out[idx[label]] = out.get(idx[label], Fraction(0)) + Fraction(coeff)
        return {k: v for k, v in out.items() if v}

    if args.family == "indefinite":
        for k in range(4, n + 1):
            vecs.append(comb((1, f"H{k}"), (-1, "H3")))
        for s in range(3, n + 1):
            for t in range(s + 1, n + 1):
                vecs.append(comb((1, f"R{s}{t}")))
                vecs.append(comb((1, f"R{s}{t}'")))
    elif args.family == "definite":
        vecs.append(comb((1, "T1")))
        vecs.append(comb((1, "T1'")))
        vecs.append(comb((1, f"T{n + 1}"), (-1, "H1")))
        for j in range(3, n + 1):
            vecs.append(comb((1, f"H{j}"), (-1, "H2")))
        for s in range(2, n + 1):
            for t in range(s + 1, n + 1):
                vecs.append(comb((1, f"R{s}{t}")))
                vecs.append(comb((1, f"R{s}{t}'")))
    else:
        raise UsageError("structure supports the indefinite and definite families")
    return vecs


def _levi_reference_name(args) -> str | None:
    n = args.n
    if args.family == "indefinite":
        p = sum(1 for s in args.eps if s == "+")
        q = sum(1 for s in args.eps if s == "-")
        if p + q < 2:
            return None
        return f"su({p},{q})"
    if n == 2:
        return "su(2)"
    return f"su(2)+su({n - 1})"


def _cmd_levi_form(args):
    model = _load_family_model(args)
    sig = levi_signature(model)
    result = {
        "pos": sig.pos,
        "neg": sig.neg,
        "null": sig.null,
        "normalizedClass": sig.normalized_class,
    }
    certificate = {
        "potential": model.phi.to_input_text()
        if model.phi.den.is_one
        else str(model.phi)
    }
    return result, certificate


def _cmd_parabolic(args):
    G = graded_su(args.p, args.q)
    result = {
        "dims": {str(d): G.dims[d] for d in (-2, -1, 0, 1, 2)},
        "total": G.total_dim,
        "n": G.n,
    }
    certificate = {
        "gradingElement": "g0 basis vector 0 (s = diag(1, 0, ..., 0, -1))",
        "basisOrder": (
            "degree -2; degree -1: X_j(1), X_j(i); degree 0: s then u(n); "
            "degree +1: Y_j(1), Y_j(i); degree +2"
        ),
    }
    return result, certificate


def _cmd_prolong(args):
    if args.a0 == "lowest":
        cgs = complex_graded_sl(args.p + args.q - 2)
        comp = next(
            c for c in hasse_weight2(cgs.n + 1) if c.conjugate_partner is None
        )
        vecs, _ = lowest_weight_vectors(cgs, comp)
        a0 = complex_annihilator(cgs, vecs[0])
        res = tanaka_prolongation(cgs, a0, args.max_degree)
        a0_cert = [_vector(v) for v in a0]
    else:
        G = graded_su(args.p, args.q)
        if args.a0 == "full":
            a0 = Subspace([{i: Fraction(1)} for i in range(G.dims[0])])
        elif args.a0 == "zero":
            a0 = Subspace([])
        else:
            with open(args.a0, "r", encoding="utf-8") as fh:
                a0 = Subspace([_parse_vector(line) for line in fh if line.strip()])
        res = tanaka_prolongation(G, a0, args.max_degree)
        a0_cert = [_vector(v) for v in a0]
    result = {
        "dims": list(res.dims),
        "realized": list(res.realized),
        "a0Dim": res.a0_dim,
        "scalars": res.scalars,
        "vanishes": res.vanishes,
    }
    certificate = {"a0Basis": a0_cert}
    return result, certificate


def _parse_vector(line: str) -> dict:
    out = {}
    for chunk in line.replace(",", " ").split():
        idx, _, val = chunk.partition(":")
        out[int(idx)] = Fraction(val)
    return out


def _cmd_invariants(args):
    data = sp2_curvature_check(args.n)
    result = {
        "check": "sp2",
        "n": args.n,
        "moduleDim": data["moduleDim"],
        "componentDim": data["componentDim"],
        "embeddingDims": data["embeddingDims"],
        "fullModuleInvariantDims": data["fullModuleInvariantDims"],
        "componentInvariantDims": data["componentInvariantDims"],
        "curvatureObstructionHolds": all(
            d == 0 for d in data["componentInvariantDims"]
        ),
    }
    certificate = {
        "note": (
            "componentInvariantDims is the decisive computation: the joint "
            "kernel inside the irreducible submodule carrying the harmonic "
            "curvature.  The full module always retains invariants such as "
            "(symplectic form) (x) (grading element)."
        )
    }
    return result, certificate


def _cmd_kostant(args):
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    comps = hasse_weight2(args.n + 1)
    result = {
        "rank": args.n + 1,
        "words": [list(c.word) for c in comps],
        "components": [
            {
                "word": list(c.word),
                "marks": list(c.marks),
                "conjugatePartner": list(c.conjugate_partner)
                if c.conjugate_partner
                else None,
                "homogeneity": c.homogeneity,
            }
            for c in comps
        ],
        "realComponents": 2,
    }
    return result, {}


def _cmd_satake(args):
    data = satake(args.k, args.n)
    result = {
        "arrows": data.arrows,
        "blackNodes": data.black_nodes,
        "whiteNodes": data.white_nodes,
        "crossedNodes": list(data.crossed_nodes),
        "diagram": data.render(),
    }
    return result, {}


def _cmd_bounds(args):
    table = bounds(args.n, args.k)
    result = {
        "n": table.n,
        "k": table.k,
        "max": table.max_dim,
        "submax": table.submax_dim,
        "universalBound": table.universal_bound,
        "stabilityGroupNote": table.stability_group_dim,
    }
    return result, {}


_COMMANDS = {
    "verify": _cmd_verify,
    "solve": _cmd_solve,
    "structure": _cmd_structure,
    "levi-form": _cmd_levi_form,
    "parabolic": _cmd_parabolic,
    "prolong": _cmd_prolong,
    "invariants": _cmd_invariants,
    "kostant": _cmd_kostant,
    "satake": _cmd_satake,
    "bounds": _cmd_bounds,
}


def run(argv) -> tuple[int, dict]:
    """Execute one command; returns (exit code, report dict)."""
    started = time.perf_counter()
    report = {
        "tool": "crsym",
        "version": __version__,
        "command": argv[0] if argv else "",
        "params": {},
        "status": "ok",
        "result": None,
        "certificate": None,
        "timingMs": 0,
    }
    try:
        # extract --eps by hand: sign strings like "--" look like options
        # to argparse and would be rejected
        cleaned = []
        eps_val = None
        i = 0
        while i < len(argv):
            tok = argv[i]
            if tok == "--eps" and i + 1 < len(argv):
                eps_val = argv[i + 1]
                i += 2
                continue
            if tok.startswith("--eps="):
                eps_val = tok[len("--eps="):]
                i += 1
                continue
            cleaned.append(tok)
            i += 1
        parser = build_parser()
        args = parser.parse_args(cleaned)
        if eps_val is not None:
            if not hasattr(args, "eps"):
                raise UsageError("--eps is not valid for this command")
            args.eps = eps_val
        report["command"] = args.command
        report["params"] = {
            k: v for k, v in sorted(vars(args).items()) if k != "command" and v is not None
        }
        result, certificate = _COMMANDS[args.command](args)
        report["result"] = result
        report["certificate"] = certificate
        code = 0
    except UsageError as err:
        report["status"] = "error"
        report["result"] = {"error": str(err), "kind": "usage"}
        code = 2
    except (ExprError, LieStructureError, KostantError, OSError, ValueError) as err:
        report["status"] = "error"
        report["result"] = {"error": str(err), "kind": "domain"}
        code = 1
    report["timingMs"] = int((time.perf_counter() - started) * 1000)
    return code, report


def main(argv=None) -> int:
    code, report = run(sys.argv[1:] if argv is None else argv)
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
