"""Root-system data for A_l, the weight-2 Hasse diagram of the contact
parabolic {1, l}, Satake diagram data for su(k+1, n-k+1), lowest-weight
vectors in the complexified curvature module with a reality test, and the
symmetry-dimension bounds table.

Weight bookkeeping: the displayed marks are the coefficients of minus the
lowest weight of a component over the fundamental weights, computed by the
affine action w(theta + rho) - rho on the adjoint highest weight theta.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .liestruct import LieStructureError, Subspace
from .linalg import SpanSolver, kernel_of_rows, mat_ctrans, mat_mul, mat_scale, rank_of_rows
from .parabolic import ComplexGradedSL, CurvatureModule, GradedSU, curvature_module
from .scalars import GaussianRational

__all__ = [
    "KostantError",
    "RootSystemA",
    "HasseComponent",
    "SatakeData",
    "BoundsTable",
    "root_system_a",
    "hasse_weight2",
    "satake",
    "bounds",
    "lowest_weight_vectors",
    "complex_annihilator",
    "curvature_component_basis",
    "sigma_on_module",
]


class KostantError(ValueError):
    pass


# ---------------------------------------------------------------------------
# the A_l root system in e-coordinates (integer tuples of length l+1)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootSystemA:
    rank: int
    simple_roots: tuple
    positive_roots: tuple
    rho: tuple  # a representative with integer entries (shift-irrelevant)
    highest_root: tuple


def _e(l: int, i: int, j: int) -> tuple:
    v = [0] * (l + 1)
    v[i] = 1
    v[j] = -1
    return tuple(v)


def root_system_a(rank: int) -> RootSystemA:
    if rank < 1:
        raise KostantError("rank must be positive")
    simple = tuple(_e(rank, i, i + 1) for i in range(rank))
    positive = tuple(
        _e(rank, i, j) for i in range(rank + 1) for j in range(i + 1, rank + 1)
    )
    rho = tuple(rank - i for i in range(rank + 1))
    return RootSystemA(rank, simple, positive, rho, _e(rank, 0, rank))


@dataclass(frozen=True)
class HasseComponent:
    """A length-2 element of the Hasse diagram for crossed nodes {1, l}.

    word: simple-reflection indices (1-based), applied right to left;
    marks: coefficients of minus the component's lowest weight over the
    fundamental weights; conjugate_partner: the word of the diagram-flipped
    component, None when self-paired; homogeneity: the grading-element
    eigenvalue of the component.
    """

    word: tuple[int, int]
    marks: tuple[int, ...]
    conjugate_partner: tuple[int, int] | None
    homogeneity: int

    @property
    def lowest_weight_e(self) -> tuple:
        # e-coordinates of the lowest weight (sum-zero representative)
        return tuple(-x for x in self._mu_e)

    @property
    def _mu_e(self) -> tuple:
        return _marks_to_e(self.marks)


def _marks_to_e(marks: tuple[int, ...]) -> tuple:
    """Fundamental-weight marks -> sum-zero e-coordinates (rank+1 entries)."""
    l = len(marks)
    # mu_i - mu_{i+1} = marks_i; fix the sum to zero
    tail = [0] * (l + 1)
    for i in range(l - 1, -1, -1):
        tail[i] = tail[i + 1] + marks[i]
    total = sum(tail)
    if total % (l + 1):
        raise KostantError("marks are not in the root lattice of sl")
    shift = total // (l + 1)
    return tuple(x - shift for x in tail)


def _apply_word(word, v: tuple) -> tuple:
    """Apply s_{word[0]} s_{word[1]} ... (rightmost acts first)."""
    v = list(v)
    for i in reversed(word):
        v[i - 1], v[i] = v[i], v[i - 1]
    return tuple(v)


def _inversion_set(word, rs: RootSystemA):
    """Positive roots made negative by w^{-1} (so |set| = length of w)."""
    perm = list(range(rs.rank + 1))
    for i in reversed(word):
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    # perm[t] = pi^{-1}(t) for the position permutation pi of w, so
    # w^{-1}(e_i - e_j) < 0 exactly when perm[i] > perm[j]
    out = []
    for i in range(rs.rank + 1):
        for j in range(i + 1, rs.rank + 1):
            if perm[i] > perm[j]:
                out.append(_e(rs.rank, i, j))
    return out


def hasse_weight2(rank: int) -> list[HasseComponent]:
    """Length-2 elements of the parabolic Weyl set for crosses {1, rank},
    with marks and diagram-conjugation pairing.

    Exactly three words survive: (1,2), (rank, rank-1) and (1, rank); the
    first two pair into one component, the last is self-paired.
    """
    if rank < 3:
        raise KostantError("weight-2 Hasse data needs rank >= 3")
    rs = root_system_a(rank)
    nilradical = {
        r
        for r in rs.positive_roots
        if r[0] == 1 or r[rank] == -1  # support touches node 1 or node rank
    }
    theta_rho = tuple(a + b for a, b in zip(rs.highest_root, rs.rho))
    found: dict[tuple, tuple] = {}
    for i in range(1, rank + 1):
        for j in range(1, rank + 1):
            if i == j:
                continue
            word = (i, j)
            perm = _apply_word(word, tuple(range(rank + 1)))
            if perm in found:
                continue
            inv = _inversion_set(word, rs)
            if len(inv) != 2 or any(r not in nilradical for r in inv):
                continue
            found[perm] = word
    comps = []
    for word in found.values():
        canonical = word
        if abs(word[0] - word[1]) > 1:
            canonical = tuple(sorted(word))
        v = _apply_word(word, theta_rho)
        mu = tuple(a - b for a, b in zip(v, rs.rho))
        marks = tuple(mu[i] - mu[i + 1] for i in range(rank))
        homogeneity = mu[rank] - mu[0]
        comps.append((canonical, marks, homogeneity))
    comps.sort()
    out = []
    for word, marks, hom in comps:
        flipped = tuple(sorted((rank + 1 - word[0], rank + 1 - word[1])))
        partner_words = [w for w, _, _ in comps if tuple(sorted(w)) == flipped]
        partner = None
        if partner_words and tuple(sorted(word)) != flipped:
            partner = partner_words[0]
        out.append(
            HasseComponent(
                word=word,
                marks=marks,
                conjugate_partner=partner,
                homogeneity=hom,
            )
        )
    if len(out) != 3:
        raise KostantError(f"expected 3 weight-2 words, found {len(out)}")
    return out


# ---------------------------------------------------------------------------
# Satake diagram bookkeeping for su(k+1, n-k+1)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SatakeData:
    arrows: int
    black_nodes: int
    white_nodes: int
    crossed_nodes: tuple[int, int]

    def render(self, marks=None) -> str:
        """Text diagram: crosses 'x', black '*', white 'o', arrows listed."""
        l = self.black_nodes + self.white_nodes
        cells = []
        for node in range(1, l + 1):
            if node in self.crossed_nodes:
                glyph = "x"
            elif self.arrows and node <= self.arrows or node > l - self.arrows:
                glyph = "o"
            elif self.black_nodes and self.arrows < node <= self.arrows + self.black_nodes:
                glyph = "*"
            else:
                glyph = "o"
            if marks is not None:
                glyph = f"{glyph}({marks[node - 1]})"
            cells.append(glyph)
        arrow_pairs = [
            f"{a + 1}<->{l - a}" for a in range(self.arrows)
        ]
        line = "---".join(cells)
        if arrow_pairs:
            line += "   arrows: " + ", ".join(arrow_pairs)
        return line


def satake(k: int, n: int) -> SatakeData:
    """Satake data of su(k+1, n-k+1) with the contact parabolic crosses.

    For k < n/2: k+1 arrows, n-2k-1 black nodes, 2(k+1) white nodes;
    for n = 2k: k arrows and all 2k+1 nodes white.
    """
    if n < 1 or k < 0 or 2 * k > n:
        raise KostantError("need 0 <= k <= n/2")
    if 2 * k == n:
        return SatakeData(arrows=k, black_nodes=0, white_nodes=2 * k + 1,
                          crossed_nodes=(1, n + 1))
    return SatakeData(
        arrows=k + 1,
        black_nodes=n - 2 * k - 1,
        white_nodes=2 * (k + 1),
        crossed_nodes=(1, n + 1),
    )


# ---------------------------------------------------------------------------
# bounds table
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundsTable:
    n: int
    k: int
    max_dim: int
    submax_dim: int
    universal_bound: int | None
    stability_group_dim: int


def bounds(n: int, k: int) -> BoundsTable:
    """Maximal/submaximal symmetry dimensions and related counts.

    max = (n+2)^2 - 1 always; submax = 3 for n = 1, n^2+3 for definite
    signature (k = 0) and n^2+4 for indefinite (k >= 1) when n >= 2.  The
    universal bound n^2+4 applies for n >= 2; the note records the dimension
    n^2+2n+2 of the stabilizer of a point on the flat model.
    """
    if n < 1 or k < 0 or 2 * k > n:
        raise KostantError("need n >= 1 and 0 <= k <= n/2")
    max_dim = (n + 2) ** 2 - 1
    if n == 1:
        submax = 3
        universal = None
    else:
        submax = n * n + 3 if k == 0 else n * n + 4
        universal = n * n + 4
    return BoundsTable(
        n=n,
        k=k,
        max_dim=max_dim,
        submax_dim=submax,
        universal_bound=universal,
        stability_group_dim=n * n + 2 * n + 2,
    )


# ---------------------------------------------------------------------------
# lowest weight vectors in the complexified curvature module
# ---------------------------------------------------------------------------


def _module_weights(cgs: ComplexGradedSL, module: CurvatureModule):
    """Weight (e-coordinates) of every basis vector of W^C."""
    wm1 = cgs.weights[-1]
    w0 = cgs.weights[0]
    out = []
    for a, b in module.pairs:
        neg = tuple(-(x + y) for x, y in zip(wm1[a], wm1[b]))
        for c in range(module.n0):
            out.append(tuple(p + q for p, q in zip(neg, w0[c])))
    return out


def lowest_weight_vectors(cgs: ComplexGradedSL, component: HasseComponent):
    """Lowest weight vectors of a weight-2 component inside W^C.

    Returns (vectors, sigma_invariant): the basis of the subspace of weight
    equal to the component's lowest weight that is killed by the simple
    lowering operators of the middle sl(n), and whether the spanned complex
    line is carried to itself by the real structure of su(1, n+1).  Only the
    self-paired component is realized in Lambda^2 g_{-1}* tensor g_0; the
    torsion pair has no vectors here and raises a domain error.
    """
    if len(component.marks) != cgs.n + 1:
        raise KostantError("component rank does not match the algebra")
    module = curvature_module(cgs)
    target = component.lowest_weight_e
    weights = _module_weights(cgs, module)
    indices = [i for i, w in enumerate(weights) if w == target]
    if not indices:
        raise KostantError(
            "component has no vectors in the curvature module "
            "(torsion components live in other homogeneities)"
        )
    one = GaussianRational(1)
    rows: dict = {}
    for low in cgs.lowering_indices():
        for col, idx in enumerate(indices):
            image = module.basis_action_on_vector(low, {idx: one})
            for r, v in image.items():
                rows.setdefault((low, r), {})[col] = v
    kern = kernel_of_rows(rows.values(), len(indices), rational=False)
    if not kern:
        raise KostantError("weight bookkeeping inconsistency: empty lowering kernel")
    vectors = []
    for vec in kern:
        vectors.append({indices[c]: v for c, v in vec.items()})
    sigma = sigma_on_module(cgs, module)
    line_invariant = True
    for v in vectors:
        sv = sigma(v)
        if rank_of_rows([v, sv], rational=False) > 1:
            line_invariant = False
    return vectors, line_invariant


def sigma_on_module(cgs: ComplexGradedSL, module: CurvatureModule):
    """The conjugate-linear real structure of su(1, n+1) on W^C.

    sigma(X) = -H conj(X)^T H on matrices (H the Hermitian form of the real
    form); on functionals (sigma Psi)(u, v) = sigma(Psi(sigma u, sigma v)).
    Returns a function acting on sparse W-coordinate vectors.
    """
    G_real = GradedSU(1, cgs.n + 1)
    h = G_real.form

    def sigma_mat(x):
        return mat_scale(GaussianRational(-1), mat_mul(mat_mul(h, mat_ctrans(x)), h))

    # sigma on g_{-1}^C and g_0^C basis, as (column -> sparse column) maps
    p_cols = [cgs.coords(sigma_mat(e), -1) for e in cgs.basis[-1]]
    r_cols = [cgs.coords(sigma_mat(f), 0) for f in cgs.basis[0]]

    def apply(w: dict) -> dict:
        out: dict = {}
        for widx, wval in w.items():
            pi, c = module.wsplit(widx)
            a, b = module.pairs[pi]
            cv = wval.conjugate()
            for x, px in p_cols[a].items():
                for y, py in p_cols[b].items():
                    if x == y:
                        continue
                    if x < y:
                        pj, sign = module.pair_pos[(x, y)], 1
                    else:
                        pj, sign = module.pair_pos[(y, x)], -1
                    base = cv * px.conjugate() * py.conjugate() * sign
                    # conjugate-linear on the target: sigma(t f_c)
                    for d, rv in r_cols[c].items():
                        val = base * rv
                        if not val:
                            continue
                        key = module.windex(pj, d)
                        nv = out.get(key)
                        nv = val if nv is None else nv + val
                        if nv:
                            out[key] = nv
                        else:
                            out.pop(key, None)
        return out

    return apply


def complex_annihilator(cgs: ComplexGradedSL, w: dict) -> Subspace:
    """Annihilator of a W^C vector in g_0^C (complex dimension = its dim)."""
    module = curvature_module(cgs)
    one = GaussianRational(1)
    rows: dict = {}
    for i in range(module.n0):
        image = module.basis_action_on_vector(i, w)
        for r, v in image.items():
            rows.setdefault(r, {})[i] = v
    kern = kernel_of_rows(rows.values(), module.n0, rational=False)
    return Subspace(kern)


def invariants_in_component(cgs: ComplexGradedSL, component_basis, h_g0_coords) -> int:
    """Joint-kernel dimension of the operators h inside a W^C-submodule.

    h_g0_coords: complex g_0 coordinates of the operators; the result is the
    complex dimension, which equals the real invariant dimension inside the
    real points of the submodule when h complexifies a real subalgebra.
    """
    module = curvature_module(cgs)
    rows: dict = {}
    for gi, x in enumerate(h_g0_coords):
        for j, bvec in enumerate(component_basis):
            image = module.action_on_vector(x, bvec)
            for r, v in image.items():
                rows.setdefault((gi, r), {})[j] = v
    kern = kernel_of_rows(rows.values(), len(component_basis), rational=False)
    return len(kern)


def sp2_curvature_check(n: int = 4):
    """The quaternionic-subalgebra obstruction at n = 4 (both embeddings).

    For each of two conjugate sp(n/2) embeddings reports the dimension of
    the joint invariant subspace in the full module Lambda^2 g_{-1}* (x) g_0
    and inside the irreducible component carrying the harmonic curvature.
    The component dimension vanishes; the full module always retains
    invariants such as (symplectic form) (x) (grading element), which is why
    the component is the decisive computation.
    """
    from .parabolic import invariant_subspace, sp_embedding

    if n % 2:
        raise KostantError("the check needs even n")
    G = GradedSU(1, n + 1)
    module = curvature_module(G)
    cgs = ComplexGradedSL(n)
    component = curvature_component_basis(cgs)
    full_dims = []
    component_dims = []
    for variant in (0, 1):
        sp = sp_embedding(G, n // 2, variant=variant)
        full_dim, _ = invariant_subspace(module, sp)
        full_dims.append(full_dim)
        sp_cx = [cgs.coords(G.from_coords(v, 0), 0) for v in sp.vectors]
        component_dims.append(invariants_in_component(cgs, component, sp_cx))
    return {
        "moduleDim": module.dim,
        "componentDim": len(component),
        "embeddingDims": [n * n // 2 + n // 2] * 2,
        "fullModuleInvariantDims": full_dims,
        "componentInvariantDims": component_dims,
    }


def curvature_component_basis(cgs: ComplexGradedSL) -> list[dict]:
    """Basis of the irreducible g_0-submodule of W^C carrying the harmonic
    curvature: the orbit closure of the self-paired component's lowest
    weight vector under the g_0 action."""
    component = next(
        c for c in hasse_weight2(cgs.n + 1) if c.conjugate_partner is None
    )
    vectors, _ = lowest_weight_vectors(cgs, component)
    module = curvature_module(cgs)
    one = GaussianRational(1)
    solver = SpanSolver()
    basis = []
    frontier = list(vectors)
    for v in frontier:
        if solver.add(v, len(basis)):
            basis.append(v)
    while frontier:
        new_frontier = []
        for v in frontier:
            for i in range(module.n0):
                image = module.basis_action_on_vector(i, v)
                if image and solver.add(image, len(basis)):
                    basis.append(image)
                    new_frontier.append(image)
        frontier = new_frontier
    return basis
