"""Structure analysis of finite-dimensional real Lie algebras.

Algebras are given by exact rational structure constants.  The radical is
computed as the Killing-orthogonal complement of the derived algebra
(Cartan's criterion), series by iterated exact spans of brackets, and
semisimplicity of candidate Levi factors by nondegeneracy of the intrinsic
Killing form.  Reference matrix algebras (su(p,q), u(m), sp(m) and the sum
su(2)+su(m)) are built from exact matrix models for fingerprint comparison.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .linalg import (
    SpanSolver,
    hermitian_signature,
    kernel_of_rows,
    mat_comm,
    mat_from_entries,
)
from .scalars import GaussianRational

__all__ = [
    "LieStructureError",
    "RealLieAlgebra",
    "Subspace",
    "Fingerprint",
    "LeviVerdict",
    "RadicalReport",
    "killing_form",
    "radical_and_series",
    "derived_series_dims",
    "lower_central_series_dims",
    "series_length",
    "levi_check",
    "subalgebra",
    "reference_algebra",
    "fingerprint",
    "fingerprint_match",
]


class LieStructureError(ValueError):
    pass


class Subspace:
    """A subspace given by independent rational coordinate vectors."""

    def __init__(self, vectors):
        vectors = [dict(v) for v in vectors]
        solver = SpanSolver()
        for i, v in enumerate(vectors):
            if not solver.add(v, i):
                raise LieStructureError("subspace basis vectors are dependent")
        self.vectors = tuple(vectors)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)


@dataclass(frozen=True)
class Fingerprint:
    """Necessary-condition identity card for isomorphism comparisons."""

    dim: int
    killing: tuple[int, int, int]
    center_dim: int
    derived_dims: tuple[int, ...]
    lower_central_dims: tuple[int, ...]


@dataclass(frozen=True)
class LeviVerdict:
    passed: bool
    reason: str
    dim: int


@dataclass
class RadicalReport:
    radical: Subspace
    derived_dims: tuple[int, ...]
    lower_central_dims: tuple[int, ...]
    center_dim: int


class RealLieAlgebra:
    """Real Lie algebra via rational structure constants.

    brackets maps (a, b) with a < b to a sparse vector {c: value} giving
    [e_a, e_b] = sum_c value * e_c; antisymmetry is implicit in the storage.
    The Jacobi identity is verified exactly on construction unless check
    is disabled.
    """

    def __init__(self, labels, brackets: dict, *, check: bool = True):
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        table: dict = {}
        for (a, b), vec in brackets.items():
            if a == b:
                if any(vec.values()):
                    raise LieStructureError("[x, x] must vanish")
                continue
            if a > b:
                a, b = b, a
                vec = {c: -v for c, v in vec.items()}
            clean = {c: Fraction(v) for c, v in vec.items() if v}
            if clean:
                table[(a, b)] = clean
        self.brackets = table
        if check:
            self._check_jacobi()

    def bracket_basis(self, a: int, b: int) -> dict:
        if a == b:
            return {}
        if a < b:
            return self.brackets.get((a, b), {})
        vec = self.brackets.get((b, a), {})
        return {c: -v for c, v in vec.items()}

    def bracket(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for a, xa in x.items():
            for b, yb in y.items():
                if a == b:
                    continue
                f = xa * yb
                for c, v in self.bracket_basis(a, b).items():
                    nv = out.get(c, 0) + f * v
                    if nv:
                        out[c] = nv
                    else:
                        out.pop(c, None)
        return out

    def ad_matrix(self, x: dict) -> list[list[Fraction]]:
        """ad(x) as a dense dim x dim matrix: column b is [x, e_b]."""
        n = self.dim
        m = [[Fraction(0)] * n for _ in range(n)]
        for b in range(n):
            col = self.bracket(x, {b: Fraction(1)})
            for c, v in col.items():
                m[c][b] = v
        return m

    def _check_jacobi(self):
        n = self.dim
        for a in range(n):
            ea = {a: Fraction(1)}
            for b in range(a + 1, n):
                eb = {b: Fraction(1)}
                ab = self.bracket_basis(a, b)
                for c in range(b + 1, n):
                    ec = {c: Fraction(1)}
                    total: dict = {}
                    for vec in (
                        self.bracket(ea, self.bracket_basis(b, c)),
                        self.bracket(eb, self.bracket_basis(c, a)),
                        self.bracket(ec, ab),
                    ):
                        for d, v in vec.items():
                            nv = total.get(d, 0) + v
                            if nv:
                                total[d] = nv
                            else:
                                total.pop(d, None)
                    if total:
                        raise LieStructureError(
                            f"Jacobi identity fails on basis triple ({a}, {b}, {c})"
                        )

    def structure_triples(self):
        """Sparse (a, b, c, value) list with a < b."""
        out = []
        for (a, b), vec in sorted(self.brackets.items()):
            for c, v in sorted(vec.items()):
                out.append((a, b, c, v))
        return out


# ---------------------------------------------------------------------------
# Killing form, radical, series
# ---------------------------------------------------------------------------


def killing_form(L: RealLieAlgebra):
    """Exact Killing matrix K(e_a, e_b) = tr(ad e_a ad e_b) and its signature."""
    n = L.dim
    ads = [L.ad_matrix({a: Fraction(1)}) for a in range(n)]
    k = [[Fraction(0)] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            s = Fraction(0)
            ma, mb = ads[a], ads[b]
            for i in range(n):
                row = ma[i]
                for j in range(n):
                    if row[j]:
                        s += row[j] * mb[j][i]
            k[a][b] = s
            k[b][a] = s
    sig = hermitian_signature([[GaussianRational(x) for x in row] for row in k])
    return k, sig


def _span_of(L: RealLieAlgebra, vectors) -> list[dict]:
    solver = SpanSolver()
    basis = []
    for v in vectors:
        if v and solver.add(v, len(basis)):
            basis.append(v)
    return basis


def _bracket_span(L: RealLieAlgebra, xs, ys) -> list[dict]:
    return _span_of(L, (L.bracket(x, y) for x in xs for y in ys))


def derived_series_dims(L: RealLieAlgebra, start=None) -> tuple[int, ...]:
    """Dims of D^0 = S, D^{k+1} = [D^k, D^k] until stable or zero."""
    current = start if start is not None else [
        {a: Fraction(1)} for a in range(L.dim)
    ]
    dims = [len(current)]
    while True:
        nxt = _bracket_span(L, current, current)
        dims.append(len(nxt))
        if len(nxt) in (0, dims[-2]):
            return tuple(dims)
        current = nxt


def lower_central_series_dims(L: RealLieAlgebra, start=None) -> tuple[int, ...]:
    """Dims of C^0 = S, C^{k+1} = [S, C^k] until stable or zero."""
    full = start if start is not None else [{a: Fraction(1)} for a in range(L.dim)]
    current = full
    dims = [len(current)]
    while True:
        nxt = _bracket_span(L, full, current)
        dims.append(len(nxt))
        if len(nxt) in (0, dims[-2]):
            return tuple(dims)
        current = nxt


def series_length(dims: tuple[int, ...]) -> int | None:
    """Smallest k with D^k = 0 (counting D^1 as the first bracket step)."""
    for k, d in enumerate(dims):
        if d == 0:
            return k
    return None


def radical_and_series(L: RealLieAlgebra) -> RadicalReport:
    """Radical via Cartan's criterion, plus derived/lower-central/center data."""
    n = L.dim
    k, _ = killing_form(L)
    derived = _bracket_span(
        L,
        [{a: Fraction(1)} for a in range(n)],
        [{a: Fraction(1)} for a in range(n)],
    )
    rows = []
    for d in derived:
        row = {}
        for c in range(n):
            s = Fraction(0)
            for a, v in d.items():
                if k[a][c]:
                    s += v * k[a][c]
            if s:
                row[c] = s
        rows.append(row)
    radical = Subspace(kernel_of_rows(rows, n))
    center_rows: dict = {}
    for b in range(n):
        for a in range(n):
            for c, v in L.bracket_basis(a, b).items():
                center_rows.setdefault((b, c), {})[a] = v
    center = kernel_of_rows(center_rows.values(), n)
    return RadicalReport(
        radical=radical,
        derived_dims=derived_series_dims(L),
        lower_central_dims=lower_central_series_dims(L),
        center_dim=len(center),
    )


# ---------------------------------------------------------------------------
# subalgebras and Levi-factor verification
# ---------------------------------------------------------------------------


def subalgebra(L: RealLieAlgebra, vectors, labels=None) -> RealLieAlgebra:
    """The intrinsic algebra on the span of `vectors` (must be closed)."""
    vecs = list(Subspace(vectors))
    solver = SpanSolver()
    for i, v in enumerate(vecs):
        solver.add(v, i)
    m = len(vecs)
    table: dict = {}
    for a in range(m):
        for b in range(a + 1, m):
            combo = solver.express(L.bracket(vecs[a], vecs[b]))
            if combo is None:
                raise LieStructureError(
                    "vectors do not span a subalgebra (bracket escapes the span)"
                )
            if combo:
                table[(a, b)] = combo
    if labels is None:
        labels = [f"s{i}" for i in range(m)]
    return RealLieAlgebra(labels, table, check=False)


def levi_check(L: RealLieAlgebra, candidate) -> LeviVerdict:
    """Check that `candidate` is a semisimple complement of the radical.

    Verifies in order: the span is a subalgebra, its intrinsic Killing form
    is nondegenerate, and it meets the radical trivially while spanning L
    together with it.  An empty candidate passes exactly when L is solvable.
    """
    vecs = list(candidate.vectors if isinstance(candidate, Subspace) else candidate)
    for v in vecs:
        if any(c >= L.dim for c in v):
            raise LieStructureError("candidate vector outside the algebra")
    report = radical_and_series(L)
    rad = list(report.radical)
    if not vecs:
        if len(rad) == L.dim:
            return LeviVerdict(True, "trivial Levi factor of a solvable algebra", 0)
        return LeviVerdict(False, "empty candidate but the algebra is not solvable", 0)
    try:
        sub = subalgebra(L, vecs)
    except LieStructureError:
        return LeviVerdict(False, "candidate is not a subalgebra", len(vecs))
    _, (pos, neg, null) = killing_form(sub)
    if null:
        return LeviVerdict(
            False, "candidate Killing form is degenerate (not semisimple)", sub.dim
        )
    solver = SpanSolver()
    count = 0
    for v in list(vecs) + rad:
        if solver.add(v, count):
            count += 1
    if count != sub.dim + len(rad):
        return LeviVerdict(False, "candidate intersects the radical", sub.dim)
    if count != L.dim:
        return LeviVerdict(False, "candidate + radical do not span the algebra", sub.dim)
    return LeviVerdict(True, "semisimple complement of the radical", sub.dim)


# ---------------------------------------------------------------------------
# reference matrix algebras
# ---------------------------------------------------------------------------

_NAME = re.compile(
    r"^\s*(?:su\((\d+)(?:,\s*(\d+))?\)|u\((\d+)\)|sp\((\d+)\)|su\(2\)\s*[+⊕]\s*su\((\d+)\))\s*$"
)


def reference_algebra(name: str) -> RealLieAlgebra:
    """Reference real matrix algebra by name.

    Accepted names: "su(p,q)" (also "su(m)" for the compact form), "u(m)",
    "sp(m)" (the compact symplectic algebra inside u(2m)) and "su(2)+su(m)".
    """
    m = _NAME.match(name)
    if m is None:
        raise LieStructureError(f"unknown reference algebra {name!r}")
    su_p, su_q, u_m, sp_m, sum_m = m.groups()
    if sum_m is not None:
        return _direct_sum(_su(2, 0), _su(int(sum_m), 0), name)
    if u_m is not None:
        return _matrix_algebra(int(u_m), hermitian=None, name=name)
    if sp_m is not None:
        return _sp(int(sp_m))
    p = int(su_p)
    q = int(su_q) if su_q is not None else 0
    return _su(p, q)


def _su(p: int, q: int) -> RealLieAlgebra:
    n = p + q
    if n == 0:
        raise LieStructureError("su needs at least one dimension")
    if n == 1:
        return RealLieAlgebra((), {})
    h = [1] * p + [-1] * q
    return _matrix_algebra(n, hermitian=h, name=f"su({p},{q})", traceless=True)


def _sp(m: int) -> RealLieAlgebra:
    return _matrix_algebra(2 * m, hermitian=[1] * (2 * m), name=f"sp({m})", sympl=m)


def _matrix_algebra(size, hermitian, name, traceless=False, sympl=None) -> RealLieAlgebra:
    """Real basis and structure constants of a matrix algebra cut out by
    X*H + HX = 0 (H = diag(hermitian), identity for u(m)), optional zero
    trace, and an optional symplectic condition X^T J + J X = 0."""
    h = hermitian if hermitian is not None else [1] * size
    if hermitian is None:
        traceless = False

    def ridx(j, k, part):
        return 2 * (j * size + k) + part

    rows: dict = {}

    def addrow(key, col, v):
        if v:
            row = rows.setdefault(key, {})
            row[col] = row.get(col, 0) + v

    # X* H + H X = 0, entry (j, k): conj(X_kj) h_k + h_j X_jk = 0
    for j in range(size):
        for k in range(size):
            addrow(("h", j, k, 0), ridx(k, j, 0), Fraction(h[k]))
            addrow(("h", j, k, 0), ridx(j, k, 0), Fraction(h[j]))
            addrow(("h", j, k, 1), ridx(k, j, 1), Fraction(-h[k]))
            addrow(("h", j, k, 1), ridx(j, k, 1), Fraction(h[j]))
    if traceless:
        for part in (0, 1):
            for j in range(size):
                addrow(("tr", part), ridx(j, j, part), Fraction(1))
    if sympl is not None:
        mm = sympl
        jmat = {}
        for a in range(mm):
            jmat[(a, mm + a)] = 1
            jmat[(mm + a, a)] = -1
        # (X^T J + J X)_{jk} = sum_l X_lj J_lk + J_jl X_lk
        for j in range(size):
            for k in range(size):
                for part in (0, 1):
                    key = ("sp", j, k, part)
                    for l in range(size):
                        if (l, k) in jmat:
                            addrow(key, ridx(l, j, part), Fraction(jmat[(l, k)]))
                        if (j, l) in jmat:
                            addrow(key, ridx(l, k, part), Fraction(jmat[(j, l)]))
    basis_vecs = kernel_of_rows(rows.values(), 2 * size * size)
    mats = []
    for vec in basis_vecs:
        entries = {}
        for idx, v in vec.items():
            j, k = divmod(idx // 2, size)
            re_part = v if idx % 2 == 0 else 0
            im_part = v if idx % 2 == 1 else 0
            prev = entries.get((j, k), GaussianRational(0))
            entries[(j, k)] = prev + GaussianRational(re_part, im_part)
        mats.append(mat_from_entries(size, entries))
    return _structure_from_matrices(mats, name)


def _structure_from_matrices(mats, name) -> RealLieAlgebra:
    solver = SpanSolver()
    vecs = []
    for i, x in enumerate(mats):
        v = _mat_vec(x)
        vecs.append(v)
        if not solver.add(v, i):
            raise LieStructureError("matrix basis is dependent")
    table: dict = {}
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            combo = solver.express(_mat_vec(mat_comm(mats[a], mats[b])))
            if combo is None:
                raise LieStructureError("matrix algebra is not closed")
            if combo:
                table[(a, b)] = combo
    labels = [f"{name}:{i}" for i in range(len(mats))]
    return RealLieAlgebra(labels, table)


def _mat_vec(x) -> dict:
    out = {}
    m = len(x)
    for i in range(m):
        for j in range(m):
            v = x[i][j]
            if v.re:
                out[2 * (i * m + j)] = v.re
            if v.im:
                out[2 * (i * m + j) + 1] = v.im
    return out


def _direct_sum(a: RealLieAlgebra, b: RealLieAlgebra, name: str) -> RealLieAlgebra:
    table: dict = {}
    for (x, y), vec in a.brackets.items():
        table[(x, y)] = dict(vec)
    off = a.dim
    for (x, y), vec in b.brackets.items():
        table[(x + off, y + off)] = {c + off: v for c, v in vec.items()}
    labels = [f"{name}:a{i}" for i in range(a.dim)] + [
        f"{name}:b{i}" for i in range(b.dim)
    ]
    return RealLieAlgebra(labels, table, check=False)


# ---------------------------------------------------------------------------
# fingerprints
# ---------------------------------------------------------------------------


def fingerprint(L: RealLieAlgebra) -> Fingerprint:
    _, sig = killing_form(L)
    report = radical_and_series(L)
    return Fingerprint(
        dim=L.dim,
        killing=sig,
        center_dim=report.center_dim,
        derived_dims=report.derived_dims,
        lower_central_dims=report.lower_central_dims,
    )


def fingerprint_match(a: Fingerprint, b: Fingerprint) -> bool:
    return a == b
