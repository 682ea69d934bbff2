import random
from fractions import Fraction

import pytest

from crsym.fields import builtin_symmetries, close_and_structure
from crsym.hypersurface import FAMILY_DEFINITE, FAMILY_INDEFINITE
from crsym.liestruct import (
    LieStructureError,
    RealLieAlgebra,
    Subspace,
    derived_series_dims,
    fingerprint,
    fingerprint_match,
    killing_form,
    levi_check,
    lower_central_series_dims,
    radical_and_series,
    reference_algebra,
    series_length,
    subalgebra,
)


def _sym_algebra(family, n, eps=""):
    return close_and_structure(builtin_symmetries(family, n, eps))


def _levi_candidate_indefinite(basis_labels, n):
    idx = {lab: i for i, lab in enumerate(basis_labels)}
    vecs = []
    for k in range(4, n + 1):
        vecs.append({idx[f"H{k}"]: Fraction(1), idx["H3"]: Fraction(-1)})
    for s in range(3, n + 1):
        for t in range(s + 1, n + 1):
            vecs.append({idx[f"R{s}{t}"]: Fraction(1)})
            vecs.append({idx[f"R{s}{t}'"]: Fraction(1)})
    return vecs


def _levi_candidate_definite(basis_labels, n):
    idx = {lab: i for i, lab in enumerate(basis_labels)}
    vecs = [
        {idx["T1"]: Fraction(1)},
        {idx["T1'"]: Fraction(1)},
        {idx[f"T{n + 1}"]: Fraction(1), idx["H1"]: Fraction(-1)},
    ]
    for j in range(3, n + 1):
        vecs.append({idx[f"H{j}"]: Fraction(1), idx["H2"]: Fraction(-1)})
    for s in range(2, n + 1):
        for t in range(s + 1, n + 1):
            vecs.append({idx[f"R{s}{t}"]: Fraction(1)})
            vecs.append({idx[f"R{s}{t}'"]: Fraction(1)})
    return vecs


# ---------------------------------------------------------------------------
# construction and Killing form
# ---------------------------------------------------------------------------


def test_jacobi_validation_rejects_bad_constants():
    with pytest.raises(LieStructureError):
        RealLieAlgebra(
            ("a", "b", "c"),
            {(0, 1): {2: Fraction(1)}, (0, 2): {2: Fraction(1)}, (1, 2): {0: Fraction(1)}},
        )


def test_killing_su2_compact():
    _, sig = killing_form(reference_algebra("su(2)"))
    assert sig == (0, 3, 0)


def test_killing_abelian_is_zero():
    abelian = RealLieAlgebra(("x", "y", "z"), {})
    k, sig = killing_form(abelian)
    assert all(v == 0 for row in k for v in row)
    assert sig == (0, 0, 3)


def test_killing_su11_split_oracle():
    # oracle: on the matrix basis a = diag(i,-i), b = offdiag(1,1),
    # c = offdiag(i,-i): [a,b] = 2c, [a,c] = -2b, [b,c] = -2a, so the
    # Killing matrix is diag(-8, 8, 8) with signature (2, 1, 0)
    _, sig = killing_form(reference_algebra("su(1,1)"))
    assert sig == (2, 1, 0)


def test_killing_ad_invariance_randomized():
    rng = random.Random(4)
    L = _sym_algebra(FAMILY_DEFINITE, 2)
    k, _ = killing_form(L)

    def kf(x, y):
        return sum(
            v * k[a][b] * w for a, v in x.items() for b, w in y.items() if k[a][b]
        )

    for _ in range(250):
        x = {rng.randrange(L.dim): Fraction(rng.randint(-3, 3))}
        y = {rng.randrange(L.dim): Fraction(rng.randint(-3, 3))}
        z = {rng.randrange(L.dim): Fraction(rng.randint(-3, 3))}
        assert kf(L.bracket(x, y), z) + kf(y, L.bracket(x, z)) == 0


# ---------------------------------------------------------------------------
# radical and series
# ---------------------------------------------------------------------------


def test_radical_of_semisimple_is_zero():
    rep = radical_and_series(reference_algebra("su(2)"))
    assert rep.radical.dim == 0


def test_radical_dims_of_symmetry_algebras():
    # the solvable n = 2 indefinite algebra is its own radical; for n > 2
    # the radical has dimension 4n+1, and 2n for the definite family
    assert radical_and_series(_sym_algebra(FAMILY_INDEFINITE, 2)).radical.dim == 8
    assert radical_and_series(_sym_algebra(FAMILY_INDEFINITE, 3, "+")).radical.dim == 13
    assert radical_and_series(_sym_algebra(FAMILY_INDEFINITE, 4, "+-")).radical.dim == 17
    assert radical_and_series(_sym_algebra(FAMILY_DEFINITE, 2)).radical.dim == 4
    assert radical_and_series(_sym_algebra(FAMILY_DEFINITE, 3)).radical.dim == 6


def test_definite_n2_radical_series_length_three():
    L = _sym_algebra(FAMILY_DEFINITE, 2)
    rep = radical_and_series(L)
    rad = subalgebra(L, rep.radical)
    dims = derived_series_dims(rad)
    assert dims == (4, 3, 1, 0)
    assert series_length(dims) == 3


def test_radical_is_solvable_and_an_ideal():
    L = _sym_algebra(FAMILY_INDEFINITE, 4, "++")
    rep = radical_and_series(L)
    rad = subalgebra(L, rep.radical)
    assert series_length(derived_series_dims(rad)) is not None
    # ideal property: [L, radical] stays inside the radical span
    from crsym.linalg import SpanSolver

    span = SpanSolver()
    for i, v in enumerate(rep.radical):
        span.add(dict(v), i)
    for a in range(L.dim):
        for v in rep.radical:
            br = L.bracket({a: Fraction(1)}, dict(v))
            assert span.contains(br)


def test_center_of_definite_model():
    rep = radical_and_series(_sym_algebra(FAMILY_DEFINITE, 2))
    assert rep.center_dim == 1  # the vertical translation


def test_series_of_nilpotent_example():
    # Heisenberg: [x, y] = z
    h = RealLieAlgebra(("x", "y", "z"), {(0, 1): {2: Fraction(1)}})
    assert derived_series_dims(h) == (3, 1, 0)
    assert lower_central_series_dims(h) == (3, 1, 0)


# ---------------------------------------------------------------------------
# Levi check
# ---------------------------------------------------------------------------


def test_levi_check_indefinite_n4():
    basis = builtin_symmetries(FAMILY_INDEFINITE, 4, "++")
    L = close_and_structure(basis)
    cand = _levi_candidate_indefinite(basis.labels, 4)
    verdict = levi_check(L, cand)
    assert verdict.passed and verdict.dim == 3
    assert fingerprint_match(
        fingerprint(subalgebra(L, cand)), fingerprint(reference_algebra("su(2)"))
    )


def test_levi_check_definite_n3():
    basis = builtin_symmetries(FAMILY_DEFINITE, 3)
    L = close_and_structure(basis)
    cand = _levi_candidate_definite(basis.labels, 3)
    verdict = levi_check(L, cand)
    assert verdict.passed and verdict.dim == 6
    assert fingerprint_match(
        fingerprint(subalgebra(L, cand)),
        fingerprint(reference_algebra("su(2)+su(2)")),
    )


def test_levi_check_rejects_radical():
    L = _sym_algebra(FAMILY_DEFINITE, 2)
    rep = radical_and_series(L)
    verdict = levi_check(L, rep.radical)
    assert not verdict.passed
    assert "degenerate" in verdict.reason


def test_levi_check_empty_candidate():
    solvable = _sym_algebra(FAMILY_INDEFINITE, 2)
    assert levi_check(solvable, []).passed
    not_solvable = _sym_algebra(FAMILY_DEFINITE, 2)
    assert not levi_check(not_solvable, []).passed


# ---------------------------------------------------------------------------
# reference algebras and fingerprints
# ---------------------------------------------------------------------------


def test_reference_dimensions():
    assert reference_algebra("su(1,3)").dim == 15
    assert reference_algebra("su(2,2)").dim == 15
    assert reference_algebra("u(4)").dim == 16
    assert reference_algebra("sp(2)").dim == 10
    assert reference_algebra("su(2)+su(3)").dim == 11
    assert reference_algebra("su(1,0)").dim == 0


def test_reference_name_errors():
    with pytest.raises(LieStructureError):
        reference_algebra("so(3)")


def test_fingerprint_distinguishes_real_forms():
    assert not fingerprint_match(
        fingerprint(reference_algebra("su(2)")),
        fingerprint(reference_algebra("su(1,1)")),
    )


def test_fingerprint_indefinite_n5_levi_vs_su21():
    # eps = (+, +, -) gives the Levi factor the signature (2, 1)
    basis = builtin_symmetries(FAMILY_INDEFINITE, 5, "++-")
    L = close_and_structure(basis)
    cand = _levi_candidate_indefinite(basis.labels, 5)
    verdict = levi_check(L, cand)
    assert verdict.passed and verdict.dim == 8
    assert fingerprint_match(
        fingerprint(subalgebra(L, cand)), fingerprint(reference_algebra("su(2,1)"))
    )


def test_subspace_rejects_dependent_vectors():
    with pytest.raises(LieStructureError):
        Subspace([{0: Fraction(1)}, {0: Fraction(2)}])


def test_structure_triples_round_trip():
    L = reference_algebra("su(2)")
    triples = L.structure_triples()
    rebuilt: dict = {}
    for a, b, c, v in triples:
        rebuilt.setdefault((a, b), {})[c] = v
    L2 = RealLieAlgebra(L.labels, rebuilt)
    assert L2.brackets == L.brackets
