"""Holomorphic vector fields, the built-in symmetry catalogs, brackets,
real-span closure into structure constants, and the degree-bounded
symmetry solver.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .expr import Expr, ExprError, Poly, VarTable, poly_gcd
from .hypersurface import (
    FAMILY_DEFINITE,
    FAMILY_FLAT,
    FAMILY_INDEFINITE,
    HypersurfaceModel,
    _parse_eps,
    tangency_residual,
)
from .liestruct import RealLieAlgebra
from .linalg import SpanSolver, kernel_of_rows
from .parser import parse_expr
from .scalars import GaussianRational

__all__ = [
    "HoloVectorField",
    "FieldBasis",
    "NotClosedError",
    "NotIndependentError",
    "builtin_symmetries",
    "bracket",
    "close_and_structure",
    "solve_symmetries",
    "in_real_span",
    "load_fields",
]

_I = GaussianRational(0, 1)


class NotClosedError(ExprError):
    """A bracket of basis fields fell outside the real span of the basis."""

    def __init__(self, label_a, label_b, residual):
        super().__init__(
            f"bracket [{label_a}, {label_b}] is not in the real span of the basis"
        )
        self.pair = (label_a, label_b)
        self.residual = residual


class NotIndependentError(ExprError):
    """The given fields are linearly dependent over the reals."""


class HoloVectorField:
    """A holomorphic vector field sum_j a_j(z) d/dz_j.

    Coefficients are polynomials in z_1..z_{n+1} only (no conjugates, no u,
    no log symbols); coeffs[j] multiplies d/dz_{j+1}.
    """

    __slots__ = ("table", "coeffs")

    def __init__(self, table: VarTable, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != table.n + 1:
            raise ExprError(
                f"expected {table.n + 1} coefficients, got {len(coeffs)}"
            )
        allowed = {table.z(j) for j in range(1, table.n + 2)}
        for a in coeffs:
            if a.table is not table:
                raise ExprError("coefficient built over a different table")
            if not a.den.is_one or a.has_log():
                raise ExprError("field coefficients must be polynomials")
            if not a.vars_present() <= allowed:
                raise ExprError("field coefficients may involve z variables only")
        self.table = table
        self.coeffs = coeffs

    @property
    def is_zero(self) -> bool:
        return all(a.is_zero for a in self.coeffs)

    def __add__(self, other: "HoloVectorField") -> "HoloVectorField":
        return HoloVectorField(
            self.table, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other: "HoloVectorField") -> "HoloVectorField":
        return HoloVectorField(
            self.table, [a - b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __neg__(self):
        return HoloVectorField(self.table, [-a for a in self.coeffs])

    def scale(self, c) -> "HoloVectorField":
        c = Expr.const(self.table, c)
        return HoloVectorField(self.table, [c * a for a in self.coeffs])

    def __eq__(self, other):
        return (
            isinstance(other, HoloVectorField)
            and self.table is other.table
            and all(a == b for a, b in zip(self.coeffs, other.coeffs))
        )

    __hash__ = None

    def __str__(self):
        parts = []
        for j, a in enumerate(self.coeffs, start=1):
            if not a.is_zero:
                parts.append(f"({a}) d/dz{j}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"HoloVectorField({self})"

    def real_coordinates(self) -> dict:
        """Coordinates over the real monomial basis {z^a d/dz_j, i z^a d/dz_j}."""
        out = {}
        for j, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for e, c in a.num[()].terms.items():
                if c.re:
                    out[(j, e, 0)] = c.re
                if c.im:
                    out[(j, e, 1)] = c.im
        return out


class FieldBasis:
    """Labeled, real-linearly independent list of holomorphic vector fields."""

    def __init__(self, labels, fields):
        self.labels = tuple(labels)
        self.fields = tuple(fields)
        if len(self.labels) != len(self.fields):
            raise ExprError("labels and fields must have the same length")
        solver = SpanSolver()
        for label, f in zip(self.labels, self.fields):
            if not solver.add(f.real_coordinates(), label):
                raise NotIndependentError(
                    f"field {label} is dependent on the preceding fields"
                )

    def __len__(self):
        return len(self.fields)

    def __iter__(self):
        return iter(zip(self.labels, self.fields))

    @property
    def table(self) -> VarTable:
        return self.fields[0].table


def bracket(v: HoloVectorField, w: HoloVectorField) -> HoloVectorField:
    """Lie bracket [V, W]^k = sum_j (V^j dW^k/dz_j - W^j dV^k/dz_j)."""
    if v.table is not w.table:
        raise ExprError("fields built over different variable tables")
    t = v.table
    out = []
    for k in range(t.n + 1):
        acc = Expr.const(t, 0)
        for j in range(t.n + 1):
            zj = t.z(j + 1)
            if not v.coeffs[j].is_zero:
                acc = acc + v.coeffs[j] * w.coeffs[k].diff(zj)
            if not w.coeffs[j].is_zero:
                acc = acc - w.coeffs[j] * v.coeffs[k].diff(zj)
        out.append(acc)
    return HoloVectorField(t, out)


# ---------------------------------------------------------------------------
# built-in symmetry catalogs
# ---------------------------------------------------------------------------


def builtin_symmetries(family: str, n: int, eps=(), table: VarTable | None = None) -> FieldBasis:
    """The symmetry generator catalog of a built-in family.

    For the indefinite model the catalog has n^2 + 4 fields, for the
    definite model n^2 + 3; empty index ranges contribute nothing.
    """
    eps = _parse_eps(eps)
    t = table if table is not None else VarTable(n)
    if t.n != n:
        raise ExprError("table dimension does not match n")

    def z(j):
        return Expr.variable(t, t.z(j))

    zero = Expr.const(t, 0)
    one = Expr.const(t, 1)
    i_ = Expr.const(t, _I)

    def field(**components) -> HoloVectorField:
        coeffs = [zero] * (n + 1)
        for key, value in components.items():
            coeffs[int(key[1:]) - 1] = value
        return HoloVectorField(t, coeffs)

    labels = []
    fields = []

    def put(label, f):
        labels.append(label)
        fields.append(f)

    if family == FAMILY_INDEFINITE:
        if n < 2:
            raise ExprError("indefinite-submax requires n >= 2")
        if len(eps) != n - 2:
            raise ExprError(f"indefinite-submax at n={n} needs {n - 2} signs")
        ez = {k: Fraction(eps[k - 3]) for k in range(3, n + 1)}
        h1 = {f"c{n + 1}": 4 * z(n + 1), "c1": z(1), "c2": 3 * z(2)}
        for k in range(3, n + 1):
            h1[f"c{k}"] = 2 * z(k)
        put("H1", field(**h1))
        put("H2", field(c1=i_ * z(1), c2=i_ * z(2)))
        for k in range(3, n + 1):
            put(f"H{k}", field(**{f"c{k}": i_ * z(k)}))
        put("T1", field(c1=one, **{f"c{n + 1}": -z(2)}, c2=4 * i_ * z(1) * z(1)))
        put("T1'", field(c1=i_, **{f"c{n + 1}": i_ * z(2)}, c2=4 * z(1) * z(1)))
        put("T2", field(c2=one, **{f"c{n + 1}": z(1)}))
        put("T2'", field(c2=i_, **{f"c{n + 1}": -i_ * z(1)}))
        for k in range(3, n + 1):
            put(f"T{k}", field(**{f"c{k}": one, f"c{n + 1}": 2 * i_ * ez[k] * z(k)}))
            put(f"T{k}'", field(**{f"c{k}": i_, f"c{n + 1}": 2 * ez[k] * z(k)}))
        put(f"T{n + 1}", field(**{f"c{n + 1}": one}))
        put("S1", field(c2=z(1)))
        for k in range(3, n + 1):
            put(f"S{k}", field(c2=2 * z(k), **{f"c{k}": i_ * ez[k] * z(1)}))
            put(f"S{k}'", field(c2=2 * i_ * z(k), **{f"c{k}": ez[k] * z(1)}))
        for s in range(3, n + 1):
            for tt in range(s + 1, n + 1):
                put(
                    f"R{s}{tt}",
                    field(**{f"c{tt}": ez[s] * z(s), f"c{s}": -ez[tt] * z(tt)}),
                )
                put(
                    f"R{s}{tt}'",
                    field(**{f"c{tt}": i_ * ez[s] * z(s), f"c{s}": i_ * ez[tt] * z(tt)}),
                )
        return FieldBasis(labels, fields)

    if family == FAMILY_DEFINITE:
        if n < 2:
            raise ExprError("definite-submax requires n >= 2")
        if eps:
            raise ExprError("definite-submax takes no sign list")
        put("T1", field(c1=one + z(1) * z(1), **{f"c{n + 1}": 2 * i_ * z(1)}))
        put("T1'", field(c1=i_ * (one - z(1) * z(1)), **{f"c{n + 1}": 2 * z(1)}))
        for j in range(2, n + 1):
            put(f"T{j}", field(**{f"c{j}": one, f"c{n + 1}": 2 * i_ * z(j)}))
            put(f"T{j}'", field(**{f"c{j}": i_, f"c{n + 1}": 2 * z(j)}))
        put(f"T{n + 1}", field(**{f"c{n + 1}": one}))
        for k in range(1, n + 1):
            put(f"H{k}", field(**{f"c{k}": i_ * z(k)}))
        for s in range(2, n + 1):
            for tt in range(s + 1, n + 1):
                put(f"R{s}{tt}", field(**{f"c{tt}": z(s), f"c{s}": -z(tt)}))
                put(f"R{s}{tt}'", field(**{f"c{tt}": i_ * z(s), f"c{s}": i_ * z(tt)}))
        return FieldBasis(labels, fields)

    raise ExprError(f"no symmetry catalog for family {family!r}")


# ---------------------------------------------------------------------------
# closure into a real Lie algebra
# ---------------------------------------------------------------------------


def close_and_structure(basis: FieldBasis) -> RealLieAlgebra:
    """Express every bracket of basis fields over the basis, exactly.

    Raises NotClosedError with the offending pair if some bracket escapes
    the real span; the spanning solve is exact over the rationals.
    """
    solver = SpanSolver()
    for idx, (label, f) in enumerate(basis):
        if not solver.add(f.real_coordinates(), idx):
            raise NotIndependentError(f"field {label} is dependent")
    m = len(basis)
    table: dict = {}
    for a in range(m):
        for b in range(a + 1, m):
            br = bracket(basis.fields[a], basis.fields[b])
            combo = solver.express(br.real_coordinates())
            if combo is None:
                raise NotClosedError(basis.labels[a], basis.labels[b], br)
            if combo:
                table[(a, b)] = {c: v for c, v in combo.items() if v}
    return RealLieAlgebra(basis.labels, table)


def in_real_span(fields, candidate: HoloVectorField) -> dict | None:
    """Express candidate over the given fields with real coefficients."""
    solver = SpanSolver()
    for idx, f in enumerate(fields):
        solver.add(f.real_coordinates(), idx)
    return solver.express(candidate.real_coordinates())


# ---------------------------------------------------------------------------
# the degree-bounded symmetry solver
# ---------------------------------------------------------------------------


def solve_symmetries(model: HypersurfaceModel, degree: int):
    """All symmetries with polynomial coefficients of degree <= degree.

    Builds the general field with unknown real coefficients on the monomial
    generators {z^a d/dz_j, i z^a d/dz_j}, imposes a vanishing tangency
    residual as an exact linear system (after clearing the common log-argument
    denominators), and returns (real dimension, basis fields).
    """
    if degree < 1:
        raise ExprError("solver degree must be at least 1")
    t = model.table
    n = t.n
    monoms = _z_monomials(t, degree)
    # common clearing factor: least common multiple of the partial-derivative
    # denominators (a product of powers of the registered log arguments)
    clear = Poly.const(t.nvars, 1)
    for g in list(model.dF_z) + list(model.dF_w):
        gd = poly_gcd(clear, g.den)
        clear = clear * g.den.divexact(gd)
    clear_e = Expr.from_poly(t, clear)
    gz = [g * clear_e for g in model.dF_z]
    gw = [g * clear_e for g in model.dF_w]
    for g in gz + gw:
        if not g.den.is_one:
            raise ExprError("denominator clearing failed")

    columns = []
    rows: dict = {}

    def add_column(expr: Expr, col: int):
        for lk, p in expr.num.items():
            for e, c in p.terms.items():
                if c.re:
                    rows.setdefault((lk, e, 0), {})[col] = c.re
                if c.im:
                    rows.setdefault((lk, e, 1), {})[col] = c.im

    for alpha in monoms:
        s = model.restrict(Expr.from_poly(t, Poly(t.nvars, {alpha: GaussianRational(1)})))
        sb = s.bar()
        for j in range(n + 1):
            base_re = s * gz[j] + sb * gw[j]
            base_im = _I * (s * gz[j]) - _I * (sb * gw[j])
            for part, expr in ((0, base_re), (1, base_im)):
                col = len(columns)
                columns.append((alpha, j, part))
                add_column(expr, col)

    kernel = kernel_of_rows(rows.values(), len(columns))
    fields = [_field_from_kernel(t, columns, vec) for vec in kernel]
    return len(kernel), fields


def _z_monomials(t: VarTable, degree: int):
    """Exponent tuples over z_1..z_{n+1} of total degree <= degree, graded."""
    idxs = [t.z(j) for j in range(1, t.n + 2)]
    out = []

    def rec_exact(pos, remaining, current):
        if pos == len(idxs) - 1:
            e = [0] * t.nvars
            for i, x in zip(idxs, current + [remaining]):
                e[i] = x
            out.append(tuple(e))
            return
        for x in range(remaining + 1):
            rec_exact(pos + 1, remaining - x, current + [x])

    for d in range(degree + 1):
        rec_exact(0, d, [])
    return out


def _field_from_kernel(t: VarTable, columns, vec: dict) -> HoloVectorField:
    # scale to integer coordinates for a tidy certificate
    denom = 1
    for v in vec.values():
        denom = denom * v.denominator // _gcd(denom, v.denominator)
    polys = [dict() for _ in range(t.n + 1)]
    for col, v in vec.items():
        alpha, j, part = columns[col]
        c = v * denom
        add = GaussianRational(c) if part == 0 else GaussianRational(0, c)
        prev = polys[j].get(alpha)
        polys[j][alpha] = add if prev is None else prev + add
    coeffs = [
        Expr.from_poly(t, Poly(t.nvars, {e: c for e, c in d.items() if c}))
        for d in polys
    ]
    return HoloVectorField(t, coeffs)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


# ---------------------------------------------------------------------------
# field file ingestion: "label : a1 ; a2 ; ... ; a(n+1)"
# ---------------------------------------------------------------------------


def load_fields(text: str, table: VarTable) -> FieldBasis:
    labels = []
    fields = []
    for line in text.splitlines():
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if ":" not in line:
            raise ExprError(f"field line needs 'label : coeffs': {line!r}")
        label, rest = line.split(":", 1)
        parts = rest.split(";")
        if len(parts) != table.n + 2 and len(parts) != table.n + 1:
            raise ExprError(
                f"field {label.strip()!r} needs {table.n + 1} coefficients"
            )
        coeffs = [parse_expr(p.strip() or "0", table) for p in parts[: table.n + 1]]
        labels.append(label.strip())
        fields.append(HoloVectorField(table, coeffs))
    if not fields:
        raise ExprError("no fields found in file")
    return FieldBasis(labels, fields)
