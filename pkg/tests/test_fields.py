import random

import pytest

from crsym.expr import Expr, ExprError
from crsym.fields import (
    FieldBasis,
    HoloVectorField,
    NotClosedError,
    NotIndependentError,
    bracket,
    builtin_symmetries,
    close_and_structure,
    in_real_span,
    load_fields,
    solve_symmetries,
)
from crsym.hypersurface import (
    FAMILY_DEFINITE,
    FAMILY_FLAT,
    FAMILY_INDEFINITE,
    builtin_model,
    tangency_residual,
)
from crsym.parser import parse_expr
from crsym.scalars import GaussianRational as G


def _by_label(basis):
    return {label: f for label, f in basis}


# ---------------------------------------------------------------------------
# catalogs
# ---------------------------------------------------------------------------


def test_catalog_counts_match_closed_forms():
    for n in range(2, 7):
        eps = "+" * (n - 2)
        assert len(builtin_symmetries(FAMILY_INDEFINITE, n, eps)) == n * n + 4
        assert len(builtin_symmetries(FAMILY_DEFINITE, n)) == n * n + 3


def test_indefinite_n2_labels():
    basis = builtin_symmetries(FAMILY_INDEFINITE, 2)
    assert list(basis.labels) == ["H1", "H2", "T1", "T1'", "T2", "T2'", "T3", "S1"]


def test_indefinite_n4_r_pairs():
    basis = builtin_symmetries(FAMILY_INDEFINITE, 4, "++")
    rs = [lab for lab in basis.labels if lab.startswith("R")]
    assert len(rs) == 2  # (n-2)(n-3) = 2
    assert len(basis) == 20


def test_definite_n2_count():
    assert len(builtin_symmetries(FAMILY_DEFINITE, 2)) == 7


def test_catalog_coefficients_are_z_polynomials():
    basis = builtin_symmetries(FAMILY_DEFINITE, 3)
    for _, f in basis:
        for a in f.coeffs:
            assert a.den.is_one and not a.has_log()


def test_field_validation():
    m = builtin_model(FAMILY_DEFINITE, 2)
    t = m.table
    with pytest.raises(ExprError):
        HoloVectorField(t, [Expr.variable(t, "w1"), Expr.const(t, 0), Expr.const(t, 0)])
    with pytest.raises(ExprError):
        HoloVectorField(t, [Expr.const(t, 0)] * 2)


# ---------------------------------------------------------------------------
# brackets
# ---------------------------------------------------------------------------


def test_bracket_h2_t1_matches_hand_computation():
    # oracle: term-by-term differentiation gives [H2, T1] = -T1'
    for n in (2, 3, 4):
        eps = "+" * (n - 2)
        basis = _by_label(builtin_symmetries(FAMILY_INDEFINITE, n, eps))
        br = bracket(basis["H2"], basis["T1"])
        assert br == -basis["T1'"]


def test_bracket_with_vertical_translation_vanishes():
    basis = _by_label(builtin_symmetries(FAMILY_INDEFINITE, 3, "+"))
    t_vert = basis["T4"]
    for label in ("H1", "H2", "T1", "S1"):
        br = bracket(t_vert, basis[label])
        if label == "H1":
            # H1 scales z4 with weight 4: [T4, H1] = 4 T4
            assert br == basis["T4"].scale(4)
        else:
            assert br.is_zero


def test_bracket_antisymmetry_and_self():
    basis = builtin_symmetries(FAMILY_DEFINITE, 3)
    for _, f in basis:
        assert bracket(f, f).is_zero
    a, b = basis.fields[0], basis.fields[3]
    assert bracket(a, b) == -bracket(b, a)


def test_jacobi_randomized_from_catalogs():
    rng = random.Random(99)
    pools = [
        builtin_symmetries(FAMILY_INDEFINITE, 3, "+").fields,
        builtin_symmetries(FAMILY_DEFINITE, 3).fields,
    ]
    for _ in range(250):
        pool = pools[rng.randrange(2)]
        u, v, w = (rng.choice(pool) for _ in range(3))
        total_coeffs = [
            a + b + c
            for a, b, c in zip(
                bracket(u, bracket(v, w)).coeffs,
                bracket(v, bracket(w, u)).coeffs,
                bracket(w, bracket(u, v)).coeffs,
            )
        ]
        assert all(x.is_zero for x in total_coeffs)


# ---------------------------------------------------------------------------
# closure into structure constants
# ---------------------------------------------------------------------------


def test_closure_indefinite_n2():
    L = close_and_structure(builtin_symmetries(FAMILY_INDEFINITE, 2))
    assert L.dim == 8


def test_closure_definite_n3():
    L = close_and_structure(builtin_symmetries(FAMILY_DEFINITE, 3))
    assert L.dim == 12


def test_duplicated_field_not_independent():
    basis = builtin_symmetries(FAMILY_DEFINITE, 2)
    with pytest.raises(NotIndependentError):
        FieldBasis(
            list(basis.labels) + ["dup"], list(basis.fields) + [basis.fields[0]]
        )


def test_not_closed_reports_pair():
    m = builtin_model(FAMILY_DEFINITE, 2)
    t = m.table
    zero = Expr.const(t, 0)
    one = Expr.const(t, 1)
    z1 = Expr.variable(t, "z1")
    # d/dz1 and z1^2 d/dz1 bracket to 2 z1 d/dz1, outside the pair's span
    fields = [
        HoloVectorField(t, [one, zero, zero]),
        HoloVectorField(t, [z1 * z1, zero, zero]),
    ]
    with pytest.raises(NotClosedError) as err:
        close_and_structure(FieldBasis(["A", "B"], fields))
    assert err.value.pair == ("A", "B")


def test_structure_constants_are_rational():
    L = close_and_structure(builtin_symmetries(FAMILY_INDEFINITE, 3, "-"))
    for (_, _), vec in L.brackets.items():
        for _, v in vec.items():
            assert v.denominator >= 1  # Fractions throughout


# ---------------------------------------------------------------------------
# the solver
# ---------------------------------------------------------------------------


def test_solver_indefinite_n2():
    dim, fields = solve_symmetries(builtin_model(FAMILY_INDEFINITE, 2), 2)
    assert dim == 8
    assert len(fields) == 8


def test_solver_flat_n2_reaches_maximum():
    dim, _ = solve_symmetries(builtin_model(FAMILY_FLAT, 2, "++"), 2)
    assert dim == 15


def test_solver_definite_n2_stable():
    m = builtin_model(FAMILY_DEFINITE, 2)
    d2, _ = solve_symmetries(m, 2)
    d3, _ = solve_symmetries(m, 3)
    assert d2 == d3 == 7


def test_solver_kernel_fields_are_symmetries():
    m = builtin_model(FAMILY_DEFINITE, 2)
    _, fields = solve_symmetries(m, 2)
    for f in fields:
        assert tangency_residual(m, f).is_zero


def test_solver_contains_catalog():
    m = builtin_model(FAMILY_INDEFINITE, 2)
    dim, fields = solve_symmetries(m, 2)
    catalog = builtin_symmetries(FAMILY_INDEFINITE, 2, table=m.table)
    for label, f in catalog:
        assert in_real_span(fields, f) is not None, label


def test_solver_rejects_degree_zero():
    with pytest.raises(ExprError):
        solve_symmetries(builtin_model(FAMILY_FLAT, 2, "++"), 0)


# ---------------------------------------------------------------------------
# field files
# ---------------------------------------------------------------------------


def test_load_fields_round_trip():
    m = builtin_model(FAMILY_INDEFINITE, 2)
    text = (
        "H1 : z1 ; 3*z2 ; 4*z3\n"
        "T1 : 1 ; 4*i*z1^2 ; -1*z2\n"
    )
    basis = load_fields(text, m.table)
    assert list(basis.labels) == ["H1", "T1"]
    catalog = _by_label(builtin_symmetries(FAMILY_INDEFINITE, 2, table=m.table))
    assert basis.fields[0] == catalog["H1"]
    assert basis.fields[1] == catalog["T1"]
    for _, f in basis:
        assert tangency_residual(m, f).is_zero


def test_load_fields_errors():
    m = builtin_model(FAMILY_DEFINITE, 2)
    with pytest.raises(ExprError):
        load_fields("bad line\n", m.table)
    with pytest.raises(ExprError):
        load_fields("X : 1 ; 2\n", m.table)  # wrong coefficient count... n+1 = 3
    with pytest.raises(ExprError):
        load_fields("", m.table)
