import random
from fractions import Fraction

import pytest

from crsym.linalg import (
    SpanSolver,
    hermitian_signature,
    kernel_of_rows,
    mat_comm,
    mat_from_entries,
    rank_of_rows,
)
from crsym.scalars import GaussianRational as G


def test_span_solver_express():
    s = SpanSolver()
    assert s.add({0: Fraction(1), 1: Fraction(2)}, "a")
    assert s.add({1: Fraction(1)}, "b")
    assert not s.add({0: Fraction(2), 1: Fraction(5)}, "c")
    combo = s.express({0: Fraction(3), 1: Fraction(7)})
    assert combo == {"a": Fraction(3), "b": Fraction(1)}
    assert s.express({2: Fraction(1)}) is None


def test_span_solver_complex():
    s = SpanSolver()
    s.add({0: G(0, 1)}, 0)
    combo = s.express({0: G(2, 0)})
    assert combo == {0: G(0, -2)}


def _dense_kernel_dim(rows, ncols):
    # brute-force rank via dense fraction elimination, as an oracle
    mat = [[Fraction(r.get(c, 0)) for c in range(ncols)] for r in rows]
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(mat)):
            if mat[r][col]:
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
    return ncols - rank


def test_kernel_against_dense_oracle_randomized():
    rng = random.Random(11)
    for _ in range(60):
        nrows, ncols = rng.randint(1, 8), rng.randint(1, 6)
        rows = []
        for _ in range(nrows):
            row = {
                c: Fraction(rng.randint(-3, 3))
                for c in range(ncols)
                if rng.random() < 0.6
            }
            rows.append({c: v for c, v in row.items() if v})
        kern = kernel_of_rows([dict(r) for r in rows], ncols)
        assert len(kern) == _dense_kernel_dim(rows, ncols)
        for vec in kern:
            for row in rows:
                s = sum(row.get(c, 0) * v for c, v in vec.items())
                assert s == 0


def test_kernel_certificate_path_matches_exact():
    rng = random.Random(5)
    rows = []
    for i in range(6):
        rows.append({i: Fraction(1), (i + 1) % 6: Fraction(rng.randint(1, 4))})
    k1 = kernel_of_rows([dict(r) for r in rows], 6, certify_full_rank=True)
    k2 = kernel_of_rows([dict(r) for r in rows], 6, certify_full_rank=False)
    assert len(k1) == len(k2)


def test_kernel_complex():
    rows = [{0: G(0, 1), 1: G(1, 0)}]
    kern = kernel_of_rows(rows, 2, rational=False)
    assert len(kern) == 1
    v = kern[0]
    assert v[0] * G(0, 1) + v[1] == G(0)


def test_rank_of_rows():
    rows = [{0: Fraction(1)}, {0: Fraction(2)}, {1: Fraction(1)}]
    assert rank_of_rows(rows) == 2


def test_hermitian_signature_diagonal():
    mat = [[G(2), G(0)], [G(0), G(-3)]]
    assert hermitian_signature(mat) == (1, 1, 0)


def test_hermitian_signature_hyperbolic_block():
    # independent oracle: [[0, -i/2], [i/2, 0]] has eigenvalues +-1/2
    h = Fraction(1, 2)
    mat = [[G(0), G(0, -h)], [G(0, h), G(0)]]
    assert hermitian_signature(mat) == (1, 1, 0)


def test_hermitian_signature_with_null_directions():
    mat = [[G(0), G(0)], [G(0), G(1)]]
    assert hermitian_signature(mat) == (1, 0, 1)


def test_hermitian_signature_rejects_non_hermitian():
    with pytest.raises(ValueError):
        hermitian_signature([[G(0), G(1)], [G(2), G(0)]])


def test_signature_congruence_invariance_randomized():
    # random congruence transforms must not change the signature
    rng = random.Random(3)
    base = [[G(1), G(0), G(0)], [G(0), G(-1), G(0)], [G(0), G(0), G(0)]]
    for _ in range(50):
        n = 3
        t = [[G(Fraction(rng.randint(-2, 2)), Fraction(rng.randint(-2, 2))) for _ in range(n)] for _ in range(n)]
        for i in range(n):
            t[i][i] = t[i][i] + G(1)
        # m = T^H base T, recomputed entry-wise
        m = [[G(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                acc = G(0)
                for a in range(n):
                    for b in range(n):
                        acc = acc + t[a][i].conjugate() * base[a][b] * t[b][j]
                m[i][j] = acc
        pos, neg, null = hermitian_signature(m)
        # congruence by a possibly singular T can only lose rank to null
        assert pos <= 1 and neg <= 1
        assert pos + neg + null == 3


def test_mat_helpers():
    a = mat_from_entries(2, {(0, 1): G(1)})
    b = mat_from_entries(2, {(1, 0): G(1)})
    c = mat_comm(a, b)
    assert c[0][0] == G(1) and c[1][1] == G(-1)
