import pytest

from crsym.kostant import (
    KostantError,
    bounds,
    complex_annihilator,
    curvature_component_basis,
    hasse_weight2,
    invariants_in_component,
    lowest_weight_vectors,
    root_system_a,
    satake,
    sigma_on_module,
    sp2_curvature_check,
)
from crsym.parabolic import complex_graded_sl, curvature_module
from crsym.scalars import GaussianRational as G


def _self_paired(rank):
    return next(c for c in hasse_weight2(rank) if c.conjugate_partner is None)


# ---------------------------------------------------------------------------
# root system and Hasse diagram
# ---------------------------------------------------------------------------


def test_root_system_counts():
    for rank in (2, 3, 5):
        rs = root_system_a(rank)
        assert len(rs.positive_roots) == rank * (rank + 1) // 2
        # theta + rho stays strictly dominant
        tr = [a + b for a, b in zip(rs.highest_root, rs.rho)]
        assert all(tr[i] > tr[i + 1] for i in range(rank))


def test_hasse_words_and_pairing():
    for rank in range(3, 9):
        comps = hasse_weight2(rank)
        words = sorted(c.word for c in comps)
        assert words == sorted([(1, 2), (rank, rank - 1), (1, rank)])
        fixed = [c for c in comps if c.conjugate_partner is None]
        assert len(fixed) == 1 and fixed[0].word == (1, rank)
        paired = {c.word: c.conjugate_partner for c in comps if c.conjugate_partner}
        assert paired[(1, 2)] == (rank, rank - 1)
        assert paired[(rank, rank - 1)] == (1, 2)


def test_hasse_inversion_sets_are_the_expected_roots():
    # independent check of reduced length-2 membership: the inversion sets
    # must be {alpha_1, alpha_1 + alpha_2}, {alpha_l, alpha_l + alpha_{l-1}}
    # and {alpha_1, alpha_l}
    from crsym.kostant import _inversion_set

    rank = 5
    rs = root_system_a(rank)

    def root(i, j):
        v = [0] * (rank + 1)
        v[i - 1] = 1
        v[j - 1] = -1
        return tuple(v)

    assert sorted(_inversion_set((1, 2), rs)) == sorted([root(1, 2), root(1, 3)])
    assert sorted(_inversion_set((5, 4), rs)) == sorted([root(5, 6), root(4, 6)])
    assert sorted(_inversion_set((1, 5), rs)) == sorted([root(1, 2), root(5, 6)])


def test_marks_of_curvature_component():
    for n in (3, 4, 5):
        comp = _self_paired(n + 1)
        expected = (-3, 2) + (0,) * (n - 3) + (2, -3)
        assert comp.marks == expected


def test_marks_degenerate_rank3_oracle():
    # hand-run of the affine action on A_3: the middle node receives the
    # sum of the two adjacent contributions, giving (-3, 4, -3)
    comp = _self_paired(3)
    assert comp.marks == (-3, 4, -3)


def test_homogeneities_positive():
    for rank in range(3, 8):
        comps = hasse_weight2(rank)
        homs = sorted(c.homogeneity for c in comps)
        assert homs == [1, 1, 2]
        assert all(h > 0 for h in homs)


def test_hasse_rejects_small_rank():
    with pytest.raises(KostantError):
        hasse_weight2(2)


# ---------------------------------------------------------------------------
# Satake data
# ---------------------------------------------------------------------------


def test_satake_examples():
    d = satake(1, 5)
    assert (d.arrows, d.black_nodes, d.white_nodes) == (2, 2, 4)
    d = satake(2, 4)
    assert (d.arrows, d.black_nodes, d.white_nodes) == (2, 0, 5)
    d = satake(0, 3)
    assert (d.arrows, d.black_nodes, d.white_nodes) == (1, 2, 2)


def test_satake_node_count_identity():
    for n in range(1, 9):
        for k in range(0, n // 2 + 1):
            d = satake(k, n)
            assert d.black_nodes + d.white_nodes == n + 1
            assert d.crossed_nodes == (1, n + 1)


def test_satake_range_errors():
    with pytest.raises(KostantError):
        satake(3, 4)
    with pytest.raises(KostantError):
        satake(-1, 4)


def test_satake_render_layout():
    text = satake(0, 3).render()
    assert text.startswith("x---") and "*" in text and "arrows:" in text


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------


def test_bounds_examples():
    t = bounds(2, 0)
    assert (t.max_dim, t.submax_dim) == (15, 7)
    t = bounds(2, 1)
    assert (t.max_dim, t.submax_dim) == (15, 8)
    t = bounds(1, 0)
    assert (t.max_dim, t.submax_dim) == (8, 3)


def test_bounds_sweep():
    for n in range(2, 9):
        for k in range(0, n // 2 + 1):
            t = bounds(n, k)
            assert t.max_dim == (n + 2) ** 2 - 1
            assert t.submax_dim == (n * n + 3 if k == 0 else n * n + 4)
            assert t.universal_bound == n * n + 4
            assert t.submax_dim <= t.universal_bound < t.max_dim
            assert t.stability_group_dim == n * n + 2 * n + 2


def test_bounds_validation():
    with pytest.raises(KostantError):
        bounds(0, 0)
    with pytest.raises(KostantError):
        bounds(3, 2)


# ---------------------------------------------------------------------------
# lowest weight vectors
# ---------------------------------------------------------------------------


def test_lowest_weight_line_and_reality():
    for n in (2, 3, 4):
        cgs = complex_graded_sl(n)
        comp = _self_paired(n + 1)
        vecs, line_invariant = lowest_weight_vectors(cgs, comp)
        assert len(vecs) == 1
        assert line_invariant is False  # the lowest weight vector is not real


def test_lowest_weight_vector_weight_consistency():
    from crsym.kostant import _module_weights

    for n in (2, 3, 4):
        cgs = complex_graded_sl(n)
        comp = _self_paired(n + 1)
        module = curvature_module(cgs)
        weights = _module_weights(cgs, module)
        vecs, _ = lowest_weight_vectors(cgs, comp)
        for idx in vecs[0]:
            assert weights[idx] == comp.lowest_weight_e


def test_complex_annihilator_dimension():
    for n in (2, 3, 4):
        cgs = complex_graded_sl(n)
        comp = _self_paired(n + 1)
        vecs, _ = lowest_weight_vectors(cgs, comp)
        ann = complex_annihilator(cgs, vecs[0])
        assert ann.dim == n * n - 2 * n + 3


def test_torsion_component_not_in_curvature_module():
    cgs = complex_graded_sl(3)
    torsion = next(c for c in hasse_weight2(4) if c.conjugate_partner is not None)
    with pytest.raises(KostantError):
        lowest_weight_vectors(cgs, torsion)


def test_sigma_is_an_involution():
    cgs = complex_graded_sl(2)
    module = curvature_module(cgs)
    sigma = sigma_on_module(cgs, module)
    comp = _self_paired(3)
    vecs, _ = lowest_weight_vectors(cgs, comp)
    v = vecs[0]
    assert sigma(sigma(v)) == v


def test_curvature_component_dimension_n2():
    # the component is the middle-sl(2) irrep of highest weight 4 tensored
    # against the pair structure; its Weyl dimension at n = 2 is 5 + ...
    cgs = complex_graded_sl(2)
    basis = curvature_component_basis(cgs)
    # Weyl dimension formula for sl(2) highest weight 4: 5
    assert len(basis) == 5


def test_curvature_component_dimension_n4():
    # Weyl dimension of the sl(4) irrep with highest weight (2, 0, 2):
    # 3*1*3*4*4*7/12 = 84
    cgs = complex_graded_sl(4)
    assert len(curvature_component_basis(cgs)) == 84
