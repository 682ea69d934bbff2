"""Rigid real hypersurfaces Im(z_{n+1}) = phi(z', conj(z')).

Provides the built-in model families, the Levi form with its exact
signature, and the tangency residual that decides whether a holomorphic
vector field is an infinitesimal symmetry of the hypersurface.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .expr import Expr, ExprError, Poly, VarTable
from .linalg import hermitian_signature
from .parser import parse_expr
from .scalars import GaussianRational

__all__ = [
    "FAMILY_INDEFINITE",
    "FAMILY_DEFINITE",
    "FAMILY_FLAT",
    "FAMILY_CUSTOM",
    "DegenerateLeviError",
    "LeviSignature",
    "GraphPotential",
    "HypersurfaceModel",
    "builtin_model",
    "tangency_residual",
    "levi_signature",
    "load_model",
]

FAMILY_INDEFINITE = "indefinite-submax"
FAMILY_DEFINITE = "definite-submax"
FAMILY_FLAT = "flat-quadric"
FAMILY_CUSTOM = "custom"

_HALF_I = GaussianRational(0, Fraction(1, 2))
_I = GaussianRational(0, 1)


class DegenerateLeviError(ExprError):
    """The Levi form of a candidate hypersurface is degenerate at 0."""


@dataclass(frozen=True)
class LeviSignature:
    pos: int
    neg: int
    null: int

    @property
    def normalized_class(self) -> int:
        """min(pos, neg): the signature class up to an overall sign flip."""
        return min(self.pos, self.neg)


class GraphPotential:
    """Polynomial-plus-log graph potential phi(z', conj(z')).

    poly_part is a polynomial in z_1..z_n, w_1..w_n only; each log term is a
    rational multiple of log(Q_m) with Q_m bar-invariant and Q_m(0) = 1.
    Construction checks reality bar(phi) = phi, phi(0) = 0 and rigidity
    (no z_{n+1}, w_{n+1} or u dependence).
    """

    def __init__(self, table: VarTable, poly_part: Poly, log_terms=()):
        self.table = table
        self.n = table.n
        self.poly_part = poly_part
        self.log_terms = tuple((Fraction(c), int(m)) for c, m in log_terms)
        self._check()

    def _check(self):
        t = self.table
        banned = {t.z(self.n + 1), t.w(self.n + 1), t.u}
        if self.poly_part.vars_present() & banned:
            raise ExprError("potential must not depend on z_{n+1} or u")
        if t.bar_poly(self.poly_part) != self.poly_part:
            raise ExprError("potential polynomial part is not real")
        if self.poly_part.constant_term():
            raise ExprError("potential must vanish at the origin")
        for _, m in self.log_terms:
            q = t.log_arg(m)
            if q.vars_present() & banned:
                raise ExprError("log argument must not depend on z_{n+1} or u")
            if q.eval_zero() != GaussianRational(1):
                raise ExprError("log argument must equal 1 at the origin")

    @property
    def expr(self) -> Expr:
        t = self.table
        total = Expr.from_poly(t, self.poly_part)
        one = Poly.const(t.nvars, 1)
        for c, m in self.log_terms:
            total = total + Expr(t, {((m, 1),): Poly.const(t.nvars, c)}, one)
        return total


class HypersurfaceModel:
    """A rigid hypersurface Im(z_{n+1}) = phi with nondegenerate Levi form.

    Precomputes the defining function F = (z_{n+1} - w_{n+1})/(2i) - phi,
    the on-hypersurface substitution z_{n+1} -> u + i*phi (with log terms
    realized as formal symbols), and the substituted partials of F used by
    the tangency residual.
    """

    def __init__(self, potential: GraphPotential, family: str = FAMILY_CUSTOM, eps=()):
        self.potential = potential
        self.family = family
        self.eps = tuple(eps)
        self.table = potential.table
        self.n = potential.n
        t = self.table
        phi = potential.expr
        self.phi = phi
        zt = Expr.variable(t, t.z(self.n + 1))
        wt = Expr.variable(t, t.w(self.n + 1))
        self.defining = (zt - wt) / GaussianRational(0, 2) - phi
        u = Expr.variable(t, t.u)
        self._bindings = {
            t.z(self.n + 1): u + _I * phi,
            t.w(self.n + 1): u - _I * phi,
        }
        # substituted partials dF/dz_j, dF/dw_j on the hypersurface
        self.dF_z = [
            self.defining.diff(t.z(j)).substitute(self._bindings)
            for j in range(1, self.n + 2)
        ]
        self.dF_w = [
            self.defining.diff(t.w(j)).substitute(self._bindings)
            for j in range(1, self.n + 2)
        ]
        self.levi = self._levi_signature()
        if self.levi.null:
            raise DegenerateLeviError(
                f"Levi form is degenerate at 0 (null directions: {self.levi.null})"
            )

    def restrict(self, e: Expr) -> Expr:
        """Impose the on-hypersurface constraint on an expression."""
        return e.substitute(self._bindings)

    def _levi_signature(self) -> LeviSignature:
        t = self.table
        phi = self.phi
        dz = [phi.diff(t.z(j)) for j in range(1, self.n + 1)]
        mat = []
        for j in range(self.n):
            row = []
            for k in range(1, self.n + 1):
                row.append(dz[j].diff(t.w(k)).evaluate_at_zero())
            mat.append(row)
        pos, neg, null = hermitian_signature(mat)
        return LeviSignature(pos, neg, null)


def builtin_model(family: str, n: int, eps=()) -> HypersurfaceModel:
    """Construct one of the built-in families.

    indefinite-submax (n >= 2, eps of length n-2):
        phi = Im(z_1 conj(z_2)) + |z_1|^4 + sum_k eps_k |z_k|^2
    definite-submax (n >= 2):
        phi = log(1 + |z_1|^2) + sum_{k>=2} |z_k|^2
    flat-quadric (eps of length n):
        phi = sum_k eps_k |z_k|^2
    """
    eps = _parse_eps(eps)
    t = VarTable(n)
    nv = t.nvars

    def zw(j, k):
        e = [0] * nv
        e[t.z(j)] += 1
        e[t.w(k)] += 1
        return tuple(e)

    if family == FAMILY_INDEFINITE:
        if n < 2:
            raise ExprError("indefinite-submax requires n >= 2")
        if len(eps) != n - 2:
            raise ExprError(f"indefinite-submax at n={n} needs {n - 2} signs")
        terms: dict = {}
        terms[zw(1, 2)] = -_HALF_I
        terms[zw(2, 1)] = _HALF_I
        e4 = [0] * nv
        e4[t.z(1)] = 2
        e4[t.w(1)] = 2
        terms[tuple(e4)] = GaussianRational(1)
        for k in range(3, n + 1):
            terms[zw(k, k)] = GaussianRational(eps[k - 3])
        pot = GraphPotential(t, Poly(nv, terms))
        return HypersurfaceModel(pot, FAMILY_INDEFINITE, eps)

    if family == FAMILY_DEFINITE:
        if n < 2:
            raise ExprError("definite-submax requires n >= 2")
        if eps:
            raise ExprError("definite-submax takes no sign list")
        q = Poly(nv, {(0,) * nv: GaussianRational(1), zw(1, 1): GaussianRational(1)})
        m = t.log_symbol(q)
        terms = {zw(k, k): GaussianRational(1) for k in range(2, n + 1)}
        pot = GraphPotential(t, Poly(nv, terms), [(Fraction(1), m)])
        return HypersurfaceModel(pot, FAMILY_DEFINITE, ())

    if family == FAMILY_FLAT:
        if len(eps) != n:
            raise ExprError(f"flat-quadric at n={n} needs {n} signs")
        terms = {zw(k, k): GaussianRational(eps[k - 1]) for k in range(1, n + 1)}
        pot = GraphPotential(t, Poly(nv, terms))
        return HypersurfaceModel(pot, FAMILY_FLAT, eps)

    raise ExprError(f"unknown family {family!r}")


def _parse_eps(eps):
    out = []
    for s in eps:
        if s in (1, -1):
            out.append(int(s))
        elif s in ("+", "+1"):
            out.append(1)
        elif s in ("-", "-1"):
            out.append(-1)
        else:
            raise ExprError(f"sign list entries must be +1 or -1, got {s!r}")
    return tuple(out)


def tangency_residual(model: HypersurfaceModel, field) -> Expr:
    """The restricted expression (V + conj(V)) . F; zero iff V is a symmetry."""
    if field.table is not model.table:
        raise ExprError("field and model use different variable tables")
    total = Expr.const(model.table, 0)
    for j, a in enumerate(field.coeffs):
        if a.is_zero:
            continue
        s = model.restrict(a)
        total = total + s * model.dF_z[j] + s.bar() * model.dF_w[j]
    return total


def levi_signature(model: HypersurfaceModel) -> LeviSignature:
    return model.levi


_MODEL_LINE = re.compile(r"^\s*(n|potential)\s*=\s*(.+?)\s*$")


def load_model(text: str) -> HypersurfaceModel:
    """Read a model file: a line "n = <int>" and a line "potential = <expr>"."""
    n = None
    potential_text = None
    for line in text.splitlines():
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        m = _MODEL_LINE.match(line)
        if m is None:
            raise ExprError(f"unrecognized model line: {line!r}")
        key, value = m.groups()
        if key == "n":
            n = int(value)
        else:
            potential_text = value
    if n is None or potential_text is None:
        raise ExprError("model file must set both n and potential")
    if n < 1:
        raise ExprError("model dimension must be positive")
    t = VarTable(n)
    phi = parse_expr(potential_text, t)
    if not phi.den.is_one:
        raise ExprError("potential must be polynomial plus log terms")
    poly_part = Poly.zero(t.nvars)
    log_terms = []
    for lk, p in phi.num.items():
        if not lk:
            poly_part = poly_part + p
            continue
        if len(lk) != 1 or lk[0][1] != 1:
            raise ExprError("potential log terms must be linear in each log")
        if not p.is_constant():
            raise ExprError("potential log coefficients must be constant")
        c = p.constant_term()
        if not c.is_real:
            raise ExprError("potential log coefficients must be real")
        log_terms.append((c.re, lk[0][0]))
    pot = GraphPotential(t, poly_part, log_terms)
    return HypersurfaceModel(pot, FAMILY_CUSTOM)
