"""The contact-graded matrix model of su(p,q) and its complexification.

The Hermitian form is antidiagonal on the first/last coordinates with a
diagonal sign block in the middle, so the grading element
s = diag(1, 0, ..., 0, -1) splits the algebra by block position into
g_{-2} + g_{-1} + g_0 + g_1 + g_2 with dims (1, 2n, n^2+1, 2n, 1).
On top of that sit the curvature module W = Lambda^2 g_{-1}* tensor g_0
with its tensorial g_0-action, annihilators and joint invariant subspaces,
a quaternionic sp(m) embedding inside the u(n) part, and the Tanaka
prolongation of (g_-, a_0).  The same machinery runs over the real form
(rational coordinates) and over the complexification sl(n+2, C)
(Gaussian-rational coordinates).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .liestruct import LieStructureError, RealLieAlgebra, Subspace
from .linalg import (
    SpanSolver,
    kernel_of_rows,
    mat_comm,
    mat_ctrans,
    mat_entry_vector,
    mat_from_entries,
    mat_is_zero,
    mat_mul,
    mat_scale,
    mat_sub,
    mat_trace,
)
from .scalars import GR_ONE, GaussianRational

__all__ = [
    "GradedSU",
    "ComplexGradedSL",
    "CurvatureModule",
    "ProlongationResult",
    "graded_su",
    "complex_graded_sl",
    "curvature_module",
    "annihilator",
    "invariant_subspace",
    "sp_embedding",
    "tanaka_prolongation",
    "g0_subalgebra",
]

_I = GaussianRational(0, 1)
_HALF = GaussianRational(Fraction(1, 2))

DEGREES = (-2, -1, 0, 1, 2)


class GradedSU:
    """su(p, q) with the contact grading, over exact rational coordinates.

    Basis ordering (published; certificates refer to it):
      degree -2: i E_{m-1,0}
      degree -1: X_j(1), X_j(i) for j = 1..n, where
                 X_j(v) = v E_{j,0} - eps_j conj(v) E_{m-1,j}
      degree  0: the grading element s, then for each u(n) generator A
                 (i E_{jj} for j = 1..n, then for j < k the pairs
                 E_{jk} - eps_j eps_k E_{kj} and i E_{jk} + i eps_j eps_k E_{kj})
                 the block-diagonal element U(A) = diag(-tr(A)/2, A, -tr(A)/2)
      degree +1: Y_j(1), Y_j(i) for j = 1..n, where
                 Y_j(v) = v E_{j,m-1} - eps_j conj(v) E_{0,j}
      degree +2: i E_{0,m-1}
    """

    rational = True

    def __init__(self, p: int, q: int):
        if p < 1 or q < 1:
            raise LieStructureError("signature parameters must be positive")
        self.p = p
        self.q = q
        self.n = p + q - 2
        if self.n < 1:
            raise LieStructureError("su(p,q) needs p + q >= 3 for a contact grading")
        m = self.n + 2
        self.size = m
        eps = [1] * (p - 1) + [-1] * (q - 1)
        self.eps = tuple(eps)
        entries = {(0, m - 1): GR_ONE, (m - 1, 0): GR_ONE}
        for j in range(1, m - 1):
            entries[(j, j)] = GaussianRational(eps[j - 1])
        self.form = mat_from_entries(m, entries)
        self.s = mat_from_entries(
            m, {(0, 0): GR_ONE, (m - 1, m - 1): GaussianRational(-1)}
        )
        self.basis = {d: list(self._build_degree(d)) for d in DEGREES}
        self.dims = {d: len(self.basis[d]) for d in DEGREES}
        self._check()

    def _eps(self, j: int) -> GaussianRational:
        return GaussianRational(self.eps[j - 1])

    def _x_minus(self, j: int, v: GaussianRational):
        m = self.size
        return mat_from_entries(
            m, {(j, 0): v, (m - 1, j): -(self._eps(j) * v.conjugate())}
        )

    def _y_plus(self, j: int, v: GaussianRational):
        m = self.size
        return mat_from_entries(
            m, {(j, m - 1): v, (0, j): -(self._eps(j) * v.conjugate())}
        )

    def _u_part_matrices(self):
        """The middle-block generators A of u(eps), in published order."""
        n = self.n
        out = []
        for j in range(1, n + 1):
            out.append(mat_from_entries(self.size, {(j, j): _I}))
        for j in range(1, n + 1):
            for k in range(j + 1, n + 1):
                ee = self._eps(j) * self._eps(k)
                out.append(
                    mat_from_entries(self.size, {(j, k): GR_ONE, (k, j): -ee})
                )
                out.append(mat_from_entries(self.size, {(j, k): _I, (k, j): _I * ee}))
        return out

    def _embed_u(self, a):
        """U(A) = A - (tr A / 2)(E_00 + E_{m-1,m-1}), block diagonal in g_0."""
        m = self.size
        t = mat_trace(a) * _HALF
        corner = mat_from_entries(m, {(0, 0): t, (m - 1, m - 1): t})
        return mat_sub(a, corner)

    def _build_degree(self, d: int):
        m = self.size
        n = self.n
        if d == -2:
            yield mat_from_entries(m, {(m - 1, 0): _I})
        elif d == -1:
            for j in range(1, n + 1):
                yield self._x_minus(j, GR_ONE)
                yield self._x_minus(j, _I)
        elif d == 0:
            yield self.s
            for a in self._u_part_matrices():
                yield self._embed_u(a)
        elif d == 1:
            for j in range(1, n + 1):
                yield self._y_plus(j, GR_ONE)
                yield self._y_plus(j, _I)
        else:
            yield mat_from_entries(m, {(0, m - 1): _I})

    def _check(self):
        h = self.form
        for d in DEGREES:
            for x in self.basis[d]:
                if mat_trace(x):
                    raise LieStructureError("graded basis element has nonzero trace")
                cond = mat_sub(
                    mat_scale(GaussianRational(-1), mat_mul(mat_ctrans(x), h)),
                    mat_mul(h, x),
                )
                if not mat_is_zero(cond):
                    raise LieStructureError("graded basis element not in su(form)")
                ds = mat_sub(mat_comm(self.s, x), mat_scale(GaussianRational(d), x))
                if not mat_is_zero(ds):
                    raise LieStructureError("graded basis element has mixed degree")
        expected = {-2: 1, -1: 2 * self.n, 0: self.n * self.n + 1, 1: 2 * self.n, 2: 1}
        if self.dims != expected:
            raise LieStructureError("unexpected grading dimensions")

    # -- coordinates --------------------------------------------------------

    def vectorize(self, x) -> dict:
        return mat_entry_vector(x, rational=True)

    def coords(self, x, degree: int) -> dict:
        """Coordinates of a degree-homogeneous element over that basis."""
        solver = self._solver(degree)
        combo = solver.express(self.vectorize(x))
        if combo is None:
            raise LieStructureError(f"element is not in the degree-{degree} space")
        return combo

    def _solver(self, degree: int) -> SpanSolver:
        cache = getattr(self, "_solver_cache", None)
        if cache is None:
            cache = {}
            self._solver_cache = cache
        solver = cache.get(degree)
        if solver is None:
            solver = SpanSolver()
            for i, x in enumerate(self.basis[degree]):
                solver.add(self.vectorize(x), i)
            cache[degree] = solver
        return solver

    def from_coords(self, coords: dict, degree: int):
        m = self.size
        total = mat_from_entries(m, {})
        for i, c in coords.items():
            total = _mat_axpy(total, c, self.basis[degree][i])
        return total

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def u_part_indices(self):
        """g_0 basis positions of the u(n) summand (everything but s)."""
        return range(1, self.dims[0])

    def zero_scalar(self):
        return Fraction(0)

    def scalar(self, c) -> Fraction:
        return Fraction(c)


class ComplexGradedSL:
    """sl(n+2, C) with the same contact grading, complex coordinates.

    Basis ordering:
      degree -2: E_{m-1,0}
      degree -1: E_{j,0} for j = 1..n, then E_{m-1,j} for j = 1..n
      degree  0: s, then D_j = 2 E_{jj} - E_{00} - E_{m-1,m-1} (j = 1..n),
                 then middle off-diagonal E_{jk} (j != k, row-major)
      degree +1: E_{0,j} for j = 1..n, then E_{j,m-1} for j = 1..n
      degree +2: E_{0,m-1}
    """

    rational = False

    def __init__(self, n: int):
        if n < 1:
            raise LieStructureError("complex dimension must be at least 1")
        self.n = n
        m = n + 2
        self.size = m
        self.s = mat_from_entries(
            m, {(0, 0): GR_ONE, (m - 1, m - 1): GaussianRational(-1)}
        )
        self.basis = {d: list(self._build_degree(d)) for d in DEGREES}
        self.dims = {d: len(self.basis[d]) for d in DEGREES}
        self.weights = {d: [self._weight(x) for x in self.basis[d]] for d in DEGREES}

    def _build_degree(self, d: int):
        m = self.size
        n = self.n
        if d == -2:
            yield mat_from_entries(m, {(m - 1, 0): GR_ONE})
        elif d == -1:
            for j in range(1, n + 1):
                yield mat_from_entries(m, {(j, 0): GR_ONE})
            for j in range(1, n + 1):
                yield mat_from_entries(m, {(m - 1, j): GR_ONE})
        elif d == 0:
            yield self.s
            for j in range(1, n + 1):
                yield mat_from_entries(
                    m,
                    {
                        (j, j): GaussianRational(2),
                        (0, 0): GaussianRational(-1),
                        (m - 1, m - 1): GaussianRational(-1),
                    },
                )
            for j in range(1, n + 1):
                for k in range(1, n + 1):
                    if j != k:
                        yield mat_from_entries(m, {(j, k): GR_ONE})
        elif d == 1:
            for j in range(1, n + 1):
                yield mat_from_entries(m, {(0, j): GR_ONE})
            for j in range(1, n + 1):
                yield mat_from_entries(m, {(j, m - 1): GR_ONE})
        else:
            yield mat_from_entries(m, {(0, m - 1): GR_ONE})

    def _weight(self, x) -> tuple:
        """e-coordinate weight for root vectors, zero tuple for Cartan."""
        m = self.size
        for i in range(m):
            for j in range(m):
                if i != j and x[i][j]:
                    w = [0] * m
                    w[i] = 1
                    w[j] = -1
                    return tuple(w)
        return (0,) * m

    def vectorize(self, x) -> dict:
        return mat_entry_vector(x, rational=False)

    def coords(self, x, degree: int) -> dict:
        """Exact coordinates by block position (no linear solve needed)."""
        m = self.size
        n = self.n
        out: dict = {}
        if degree == -2:
            if x[m - 1][0]:
                out[0] = x[m - 1][0]
        elif degree == -1:
            for j in range(1, n + 1):
                if x[j][0]:
                    out[j - 1] = x[j][0]
                if x[m - 1][j]:
                    out[n + j - 1] = x[m - 1][j]
        elif degree == 0:
            cs = (x[0][0] - x[m - 1][m - 1]) * _HALF
            if cs:
                out[0] = cs
            for j in range(1, n + 1):
                cj = x[j][j] * _HALF
                if cj:
                    out[j] = cj
            pos = n + 1
            for j in range(1, n + 1):
                for k in range(1, n + 1):
                    if j != k:
                        if x[j][k]:
                            out[pos] = x[j][k]
                        pos += 1
        elif degree == 1:
            for j in range(1, n + 1):
                if x[0][j]:
                    out[j - 1] = x[0][j]
                if x[j][m - 1]:
                    out[n + j - 1] = x[j][m - 1]
        else:
            if x[0][m - 1]:
                out[0] = x[0][m - 1]
        recon = self.from_coords(out, degree)
        if not mat_is_zero(mat_sub(x, recon)):
            raise LieStructureError(f"element is not in the degree-{degree} space")
        return out

    def from_coords(self, coords: dict, degree: int):
        total = mat_from_entries(self.size, {})
        for i, c in coords.items():
            total = _mat_axpy(total, c, self.basis[degree][i])
        return total

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def zero_scalar(self):
        return GaussianRational(0)

    def scalar(self, c) -> GaussianRational:
        if type(c) is GaussianRational:
            return c
        return GaussianRational(c)

    def cartan_indices(self):
        """g_0 basis positions spanning the Cartan (s and the D_j)."""
        return range(0, self.n + 1)

    def lowering_indices(self):
        """g_0 basis positions of the middle-block simple lowering operators
        E_{j+1, j} for j = 1..n-1."""
        n = self.n
        out = []
        pos = n + 1
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                if j != k:
                    if k + 1 == j:
                        out.append(pos)
                    pos += 1
        return out


def _mat_axpy(acc, c, x):
    if not c:
        return acc
    cg = c if type(c) is GaussianRational else GaussianRational(c)
    return tuple(
        tuple(a + cg * b for a, b in zip(ra, rb)) for ra, rb in zip(acc, x)
    )


def graded_su(p: int, q: int) -> GradedSU:
    return GradedSU(p, q)


def complex_graded_sl(n: int) -> ComplexGradedSL:
    return ComplexGradedSL(n)


# ---------------------------------------------------------------------------
# the curvature module W = Lambda^2 g_{-1}* tensor g_0
# ---------------------------------------------------------------------------


class CurvatureModule:
    """Lambda^2 g_{-1}* tensor g_0 with the tensorial g_0-action.

    Basis: (e_a ^ e_b)* tensor f_c for a < b over the g_{-1} basis and f_c
    over the g_0 basis; index layout is pair-major.  The action of X in g_0:
        (X.Psi)(u, v) = [X, Psi(u, v)] - Psi([X, u], v) - Psi(u, [X, v]).
    """

    def __init__(self, G):
        self.G = G
        n1 = G.dims[-1]
        n0 = G.dims[0]
        self.pairs = list(combinations(range(n1), 2))
        self.pair_pos = {p: i for i, p in enumerate(self.pairs)}
        self.dim = len(self.pairs) * n0
        self.n0 = n0
        self.n1 = n1
        # ad-action of the g_0 basis on g_{-1} (columns and rows) and on g_0
        self.ad_m1 = []
        self.ad_m1_rows = []
        self.ad_00 = []
        for f in G.basis[0]:
            cols_1 = [G.coords(mat_comm(f, e), -1) for e in G.basis[-1]]
            rows_1 = [dict() for _ in range(n1)]
            for t, col in enumerate(cols_1):
                for s, v in col.items():
                    rows_1[s][t] = v
            cols_0 = [G.coords(mat_comm(f, g), 0) for g in G.basis[0]]
            self.ad_m1.append(cols_1)
            self.ad_m1_rows.append(rows_1)
            self.ad_00.append(cols_0)

    def windex(self, pair_idx: int, c: int) -> int:
        return pair_idx * self.n0 + c

    def wsplit(self, idx: int):
        return divmod(idx, self.n0)

    def _pair_sign(self, a: int, b: int):
        if a == b:
            return None, 0
        if a < b:
            return self.pair_pos[(a, b)], 1
        return self.pair_pos[(b, a)], -1

    def action_on_vector(self, x_coords: dict, w: dict) -> dict:
        """Coordinates of X.w for X given by g_0 coordinates."""
        out: dict = {}

        def add(idx, val):
            if not val:
                return
            nv = out.get(idx)
            nv = val if nv is None else nv + val
            if nv:
                out[idx] = nv
            else:
                out.pop(idx, None)

        for widx, wval in w.items():
            pi, c = self.wsplit(widx)
            a, b = self.pairs[pi]
            for i, xc in x_coords.items():
                f = xc * wval
                # [X, f_c] part
                for d, v in self.ad_00[i][c].items():
                    add(self.windex(pi, d), f * v)
                # dual-slot parts: with [X, e_t] = sum_s M_st e_s, the input
                # entry at (a, b) feeds every pair {x, b} with -M_ax and
                # every pair {a, x} with -M_bx, signs fixing the sorted order
                for x, v in self.ad_m1_rows[i][a].items():
                    if x < b:
                        add(self.windex(self.pair_pos[(x, b)], c), -f * v)
                    elif x > b:
                        add(self.windex(self.pair_pos[(b, x)], c), f * v)
                for x, v in self.ad_m1_rows[i][b].items():
                    if x < a:
                        add(self.windex(self.pair_pos[(x, a)], c), f * v)
                    elif x > a:
                        add(self.windex(self.pair_pos[(a, x)], c), -f * v)
        return out

    def action_rows(self, x_coords: dict):
        """Sparse rows of the action matrix of X (row index = output coord)."""
        rows: dict = {}
        one = GR_ONE if not self.G.rational else Fraction(1)
        for col in range(self.dim):
            image = self.action_on_vector(x_coords, {col: one})
            for r, v in image.items():
                rows.setdefault(r, {})[col] = v
        return rows

    def basis_action_on_vector(self, i: int, w: dict) -> dict:
        one = GR_ONE if not self.G.rational else Fraction(1)
        return self.action_on_vector({i: one}, w)


def curvature_module(G) -> CurvatureModule:
    return CurvatureModule(G)


def annihilator(module: CurvatureModule, w: dict) -> Subspace:
    """{X in g_0 : X.w = 0} as a subspace in g_0 coordinates."""
    rows: dict = {}
    for i in range(module.n0):
        image = module.basis_action_on_vector(i, w)
        for r, v in image.items():
            rows.setdefault(r, {})[i] = v
    kern = kernel_of_rows(rows.values(), module.n0, rational=module.G.rational)
    return Subspace(kern)


def invariant_subspace(module: CurvatureModule, h) -> tuple[int, list[dict]]:
    """Dimension (and basis) of the joint kernel of a subalgebra h in g_0.

    h is a Subspace (or list of coordinate vectors) in g_0 coordinates; it is
    checked to be closed under the bracket before the kernel is computed.
    """
    vectors = list(h.vectors if isinstance(h, Subspace) else h)
    _check_g0_subalgebra(module.G, vectors)
    rows = []
    for x in vectors:
        rows.extend(module.action_rows(x).values())
    kern = kernel_of_rows(
        rows, module.dim, rational=module.G.rational, certify_full_rank=True
    )
    return len(kern), kern


def _check_g0_subalgebra(G, vectors):
    solver = SpanSolver()
    mats = []
    for i, v in enumerate(vectors):
        x = G.from_coords(v, 0)
        mats.append(x)
        solver.add(G.vectorize(x), i)
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if solver.express(G.vectorize(mat_comm(mats[i], mats[j]))) is None:
                raise LieStructureError("given vectors do not span a subalgebra")


# ---------------------------------------------------------------------------
# the quaternionic sp(m) embedding in the u(n) part (n = 2m)
# ---------------------------------------------------------------------------


def sp_embedding(G: GradedSU, m: int, variant: int = 0) -> Subspace:
    """sp(m) inside the u(n) part of g_0 as the commutant of a quaternionic
    structure J on g_{-1} = C^n, n = 2m.

    variant selects one of two conjugate quaternionic structures (pairing
    coordinates (j, j+m), or a permuted pairing), which certifies that the
    invariant-subspace computation does not depend on the embedding choice.
    """
    n = G.n
    if n != 2 * m:
        raise LieStructureError("sp embedding needs n = 2m")
    perm = list(range(n))
    if variant:
        if n < 4:
            raise LieStructureError("second embedding variant needs n >= 4")
        perm[1], perm[2] = perm[2], perm[1]
    # J(v) = P C P^T conj(v) with C the standard block rotation
    jmat = [[GaussianRational(0)] * n for _ in range(n)]
    for a in range(m):
        # C e_a = e_{m+a}, C e_{m+a} = -e_a, conjugated by the permutation
        jmat[perm[m + a]][perm[a]] = GR_ONE
        jmat[perm[a]][perm[m + a]] = GaussianRational(-1)
    # unknown: coordinates over the u(n)-part basis; condition A C = C conj(A)
    u_idx = list(G.u_part_indices())
    mats = [G.basis[0][i] for i in u_idx]
    rows: dict = {}
    for col, mat in enumerate(mats):
        a = [[mat[j][k] for k in range(1, n + 1)] for j in range(1, n + 1)]
        for j in range(n):
            for k in range(n):
                s = GaussianRational(0)
                for l in range(n):
                    if a[j][l] and jmat[l][k]:
                        s = s + a[j][l] * jmat[l][k]
                    if jmat[j][l] and a[l][k]:
                        s = s - jmat[j][l] * a[l][k].conjugate()
                if s.re:
                    rows.setdefault((j, k, 0), {})[col] = s.re
                if s.im:
                    rows.setdefault((j, k, 1), {})[col] = s.im
    kern = kernel_of_rows(rows.values(), len(mats))
    vectors = []
    for vec in kern:
        vectors.append({u_idx[i]: v for i, v in vec.items()})
    return Subspace(vectors)


def g0_subalgebra(G: GradedSU, vectors, labels=None) -> RealLieAlgebra:
    """Intrinsic structure constants of a subalgebra of g_0 (real form)."""
    vectors = list(vectors.vectors if isinstance(vectors, Subspace) else vectors)
    mats = [G.from_coords(v, 0) for v in vectors]
    solver = SpanSolver()
    for i, x in enumerate(mats):
        if not solver.add(G.vectorize(x), i):
            raise LieStructureError("subalgebra basis is dependent")
    table: dict = {}
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            combo = solver.express(G.vectorize(mat_comm(mats[i], mats[j])))
            if combo is None:
                raise LieStructureError("vectors do not span a subalgebra")
            if combo:
                table[(i, j)] = combo
    if labels is None:
        labels = [f"h{i}" for i in range(len(mats))]
    return RealLieAlgebra(labels, table, check=False)


# ---------------------------------------------------------------------------
# Tanaka prolongation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProlongationResult:
    """Dims of the degree-k prolongation spaces and their ad-realization."""

    dims: tuple[int, ...]
    realized: tuple[bool, ...]
    a0_dim: int
    scalars: str  # "real" or "complex"

    @property
    def vanishes(self) -> bool:
        return all(d == 0 for d in self.dims)


def tanaka_prolongation(G, a0, max_degree: int = 3) -> ProlongationResult:
    """Degree-by-degree prolongation of (g_-, a_0) inside the graded algebra.

    a_k consists of pairs (f1: g_{-1} -> A_{k-1}, f2: g_{-2} -> A_{k-2})
    satisfying the Leibniz rule on brackets of g_-; A_j is the ad-realized
    image of a_j inside g_j.  Each nonzero degree is checked for
    ad-realization; degrees past a non-realized level are not computed and
    are flagged accordingly.
    """
    vectors = list(a0.vectors if isinstance(a0, Subspace) else a0)
    _check_g0_subalgebra(G, vectors)
    rational = G.rational
    one = Fraction(1) if rational else GaussianRational(1)
    gm1 = G.basis[-1]
    gm2 = G.basis[-2]
    a_prev2 = list(gm1)  # A_{-1}
    a_prev1 = [G.from_coords(v, 0) for v in vectors]  # A_0
    dims = []
    realized_flags = []
    # precomputed bracket coordinates of g_{-1} pairs on g_{-2}
    lam = {}
    for a, b in combinations(range(len(gm1)), 2):
        coords = G.coords(mat_comm(gm1[a], gm1[b]), -2)
        lam[(a, b)] = coords.get(0, G.zero_scalar())
    for k in range(1, max_degree + 1):
        if dims and dims[-1] == 0:
            dims.append(0)
            realized_flags.append(True)
            continue
        n1 = len(gm1)
        ncols = n1 * len(a_prev1) + len(a_prev2)

        def xcol(a: int, r: int) -> int:
            return a * len(a_prev1) + r

        def ycol(s: int) -> int:
            return n1 * len(a_prev1) + s

        rows: dict = {}

        def add_entry(rkey, col, mat):
            vec = G.vectorize(mat)
            for pos, v in vec.items():
                row = rows.setdefault((rkey, pos), {})
                prev = row.get(col)
                nv = v if prev is None else prev + v
                if nv:
                    row[col] = nv
                else:
                    row.pop(col, None)

        for (a, b) in combinations(range(n1), 2):
            lab = lam[(a, b)]
            if lab:
                for s2, a2 in enumerate(a_prev2):
                    add_entry(("p", a, b), ycol(s2), mat_scale(lab, a2))
            for r, a1 in enumerate(a_prev1):
                add_entry(("p", a, b), xcol(a, r), mat_scale(-1, mat_comm(a1, gm1[b])))
                add_entry(("p", a, b), xcol(b, r), mat_scale(-1, mat_comm(gm1[a], a1)))
        z = gm2[0]
        for a in range(n1):
            for r, a1 in enumerate(a_prev1):
                add_entry(("z", a), xcol(a, r), mat_comm(a1, z))
            for s2, a2 in enumerate(a_prev2):
                add_entry(("z", a), ycol(s2), mat_comm(gm1[a], a2))
        kern = kernel_of_rows(rows.values(), ncols, rational=rational)
        dims.append(len(kern))
        if not kern:
            realized_flags.append(True)
            continue
        # ad-realization inside g_k (empty for k > 2)
        gk = G.basis[k] if k <= 2 else []
        stride = 2 * G.size * G.size

        def stacked_coord(slot: int, pos: int) -> int:
            return slot * stride + pos

        solver = SpanSolver()
        for i, x in enumerate(gk):
            stacked = {}
            for a in range(n1):
                for pos, v in G.vectorize(mat_comm(x, gm1[a])).items():
                    stacked[stacked_coord(a, pos)] = v
            for pos, v in G.vectorize(mat_comm(x, z)).items():
                stacked[stacked_coord(n1, pos)] = v
            solver.add(stacked, i)
        realizers = []
        ok = True
        for vec in kern:
            target = {}
            for a in range(n1):
                fa = _value_matrix(G, vec, a, a_prev1, xcol)
                for pos, v in G.vectorize(fa).items():
                    target[stacked_coord(a, pos)] = v
            fz = _value_matrix_y(G, vec, a_prev2, ycol)
            for pos, v in G.vectorize(fz).items():
                target[stacked_coord(n1, pos)] = v
            combo = solver.express(target)
            if combo is None:
                ok = False
                break
            x = mat_from_entries(G.size, {})
            for i, c in combo.items():
                x = _mat_axpy(x, c, gk[i])
            realizers.append(x)
        realized_flags.append(ok)
        if not ok:
            break
        a_prev2 = a_prev1
        a_prev1 = realizers
    return ProlongationResult(
        dims=tuple(dims),
        realized=tuple(realized_flags),
        a0_dim=len(vectors),
        scalars="real" if rational else "complex",
    )


def _value_matrix(G, vec: dict, a: int, a_prev1, xcol):
    total = mat_from_entries(G.size, {})
    for r in range(len(a_prev1)):
        c = vec.get(xcol(a, r))
        if c:
            total = _mat_axpy(total, c, a_prev1[r])
    return total


def _value_matrix_y(G, vec: dict, a_prev2, ycol):
    total = mat_from_entries(G.size, {})
    for s in range(len(a_prev2)):
        c = vec.get(ycol(s))
        if c:
            total = _mat_axpy(total, c, a_prev2[s])
    return total
