"""Canonical symbolic expressions over Gaussian rationals.

The variable roster for complex dimension n+1 consists of z_1..z_{n+1},
their formal conjugates w_1..w_{n+1} and one real variable u.  On top of
the rational functions in these variables sits a polynomial ring in formal
log symbols L_m = log(Q_m); every registered argument Q_m must be a
bar-invariant non-constant polynomial, which keeps each L_m fixed by the
bar involution and transcendental over the rational-function field (so the
zero test below is sound).  Distinct log arguments are treated as
algebraically independent; registering multiplicatively dependent arguments
(say Q and Q^2) would make the zero test unsound and is the caller's
responsibility to avoid.

An Expr is stored as a single fraction num/den where num is a polynomial in
the L symbols with polynomial coefficients and den is an L-free polynomial.
The form is canonical: den is monic under graded lex, and the joint gcd of
den with all coefficient polynomials is 1.  Two mathematically equal
expressions therefore normalize to identical dictionaries, and an Expr is
zero exactly when its numerator is empty.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import GR_I, GR_ONE, GR_ZERO, GaussianRational

__all__ = [
    "ExprError",
    "Poly",
    "VarTable",
    "Expr",
    "poly_gcd",
    "bar",
    "diff",
    "substitute",
    "is_zero",
]


class ExprError(ValueError):
    """Domain error raised by expression construction or manipulation."""


def _as_scalar(x) -> GaussianRational:
    if type(x) is GaussianRational:
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    raise ExprError(f"cannot interpret {x!r} as an exact scalar")


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------


class Poly:
    """Multivariate polynomial over GaussianRational, dict of exponent tuples."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = terms if terms is not None else {}

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars, {})

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        c = _as_scalar(c)
        if not c:
            return cls(nvars, {})
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, idx: int) -> "Poly":
        e = [0] * nvars
        e[idx] = 1
        return cls(nvars, {tuple(e): GR_ONE})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_one(self) -> bool:
        if len(self.terms) != 1:
            return False
        (e, c), = self.terms.items()
        return not any(e) and c == GR_ONE

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> GaussianRational:
        return self.terms.get((0,) * self.nvars, GR_ZERO)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def vars_present(self) -> set[int]:
        out = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    out.add(i)
        return out

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        if not other.terms:
            return self
        if not self.terms:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            nv = t.get(e)
            if nv is None:
                t[e] = c
            else:
                nv = nv + c
                if nv:
                    t[e] = nv
                else:
                    del t[e]
        return Poly(self.nvars, t)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = _as_scalar(other)
            if not c:
                return Poly(self.nvars, {})
            return Poly(self.nvars, {e: v * c for e, v in self.terms.items()})
        if not self.terms or not other.terms:
            return Poly(self.nvars, {})
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                nv = t.get(e)
                if nv is None:
                    t[e] = c
                else:
                    nv = nv + c
                    if nv:
                        t[e] = nv
                    else:
                        del t[e]
        return Poly(self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ExprError("negative polynomial power")
        result = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def diff(self, idx: int) -> "Poly":
        t: dict = {}
        for e, c in self.terms.items():
            k = e[idx]
            if not k:
                continue
            ne = list(e)
            ne[idx] = k - 1
            ne = tuple(ne)
            nc = c * k
            prev = t.get(ne)
            t[ne] = nc if prev is None else prev + nc
        return Poly(self.nvars, {e: c for e, c in t.items() if c})

    def map_exponents(self, perm) -> "Poly":
        """Apply an index permutation to each exponent tuple."""
        t = {}
        for e, c in self.terms.items():
            ne = [0] * self.nvars
            for i, x in enumerate(e):
                if x:
                    ne[perm(i)] = x
            t[tuple(ne)] = c
        return Poly(self.nvars, t)

    def conj_coeffs(self) -> "Poly":
        return Poly(self.nvars, {e: c.conjugate() for e, c in self.terms.items()})

    def eval_zero(self) -> GaussianRational:
        return self.constant_term()

    # -- leading data under graded lex -------------------------------------

    def leading_exponent(self) -> tuple:
        return max(self.terms, key=lambda e: (sum(e), e))

    def leading_coeff(self) -> GaussianRational:
        return self.terms[self.leading_exponent()]

    def divexact(self, g: "Poly") -> "Poly":
        """Exact division self / g; raises if the division is not exact."""
        if g.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if g.is_one:
            return self
        if g.is_constant():
            inv = g.constant_term().inverse()
            return self * inv
        rem = Poly(self.nvars, dict(self.terms))
        q: dict = {}
        ge = g.leading_exponent()
        gc = g.terms[ge]
        while rem.terms:
            re_ = rem.leading_exponent()
            qe = tuple(a - b for a, b in zip(re_, ge))
            if any(x < 0 for x in qe):
                raise ExprError("polynomial division is not exact")
            qc = rem.terms[re_] / gc
            q[qe] = qc
            rem = rem - Poly(self.nvars, {qe: qc}) * g
        return Poly(self.nvars, q)

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    __hash__ = None

    def __repr__(self):
        return f"Poly({self.nvars}, {self.terms!r})"


# ---------------------------------------------------------------------------
# multivariate gcd (primitive pseudo-remainder sequence)
# ---------------------------------------------------------------------------


def _monomial_min(p: Poly) -> tuple:
    it = iter(p.terms)
    first = next(it)
    lo = list(first)
    for e in it:
        for i, x in enumerate(e):
            if x < lo[i]:
                lo[i] = x
    return tuple(lo)


def _monomial_shift(p: Poly, shift: tuple, sign: int) -> Poly:
    if not any(shift):
        return p
    return Poly(
        p.nvars,
        {
            tuple(a + sign * b for a, b in zip(e, shift)): c
            for e, c in p.terms.items()
        },
    )


def _as_univar(p: Poly, v: int) -> dict[int, Poly]:
    out: dict[int, Poly] = {}
    for e, c in p.terms.items():
        d = e[v]
        ne = list(e)
        ne[v] = 0
        ne = tuple(ne)
        coeff = out.get(d)
        if coeff is None:
            out[d] = Poly(p.nvars, {ne: c})
        else:
            coeff.terms[ne] = c
    return out


def _from_univar(u: dict[int, Poly], v: int, nvars: int) -> Poly:
    t: dict = {}
    for d, coeff in u.items():
        for e, c in coeff.terms.items():
            ne = list(e)
            ne[v] = d
            t[tuple(ne)] = c
    return Poly(nvars, t)


def _univar_scale(u: dict[int, Poly], f: Poly) -> dict[int, Poly]:
    return {d: c * f for d, c in u.items()}


def _univar_sub(a: dict[int, Poly], b: dict[int, Poly]) -> dict[int, Poly]:
    out = dict(a)
    for d, c in b.items():
        nv = out.get(d)
        nv = -c if nv is None else nv - c
        if nv.is_zero:
            out.pop(d, None)
        else:
            out[d] = nv
    return out


def _gcd_many(polys) -> Poly:
    g = None
    for p in polys:
        g = p if g is None else poly_gcd(g, p)
        if g is not None and g.is_one:
            return g
    return g


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd of two polynomials over the Gaussian rationals."""
    if f.is_zero:
        return _monic(g)
    if g.is_zero:
        return _monic(f)
    if f.is_constant() or g.is_constant():
        return Poly.const(f.nvars, 1)
    shift_f = _monomial_min(f)
    shift_g = _monomial_min(g)
    shift = tuple(min(a, b) for a, b in zip(shift_f, shift_g))
    f = _monomial_shift(f, shift_f, -1)
    g = _monomial_shift(g, shift_g, -1)
    core = _gcd_primitive(f, g)
    return _monic(_monomial_shift(core, shift, +1))


def _monic(p: Poly) -> Poly:
    if p.is_zero:
        return p
    lc = p.leading_coeff()
    if lc == GR_ONE:
        return p
    return p * lc.inverse()


def _gcd_primitive(f: Poly, g: Poly) -> Poly:
    if f.is_zero:
        return g
    if g.is_zero:
        return f
    if f.is_constant() or g.is_constant():
        return Poly.const(f.nvars, 1)
    v = max(f.vars_present() | g.vars_present())
    fu = _as_univar(f, v)
    gu = _as_univar(g, v)
    # if one side is free of v, common divisors are too, so recurse into the
    # v-content of the other side (strictly fewer variables: terminates)
    if len(fu) == 1 and 0 in fu:
        return _gcd_primitive(fu[0], _gcd_many(gu.values()))
    if len(gu) == 1 and 0 in gu:
        return _gcd_primitive(_gcd_many(fu.values()), gu[0])
    cf = _gcd_many(fu.values())
    cg = _gcd_many(gu.values())
    c = _gcd_primitive(cf, cg)
    fp = {d: p.divexact(cf) for d, p in fu.items()}
    gp = {d: p.divexact(cg) for d, p in gu.items()}
    while gp:
        r = _prem(fp, gp)
        fp = gp
        gp = _primitive_univar(r)
    result = _from_univar(fp, v, f.nvars)
    return result * c if not c.is_one else result


def _prem(fu: dict[int, Poly], gu: dict[int, Poly]) -> dict[int, Poly]:
    """Pseudo-remainder of univariate-with-poly-coefficient forms."""
    df = max(fu)
    dg = max(gu)
    if df < dg:
        return fu
    lc_g = gu[dg]
    r = fu
    while r and max(r) >= dg:
        dr = max(r)
        lc_r = r[dr]
        r = _univar_scale(r, lc_g)
        shifted = {d + dr - dg: c * lc_r for d, c in gu.items()}
        r = _univar_sub(r, shifted)
    return r


def _primitive_univar(u: dict[int, Poly]) -> dict[int, Poly]:
    if not u:
        return u
    cont = _gcd_many(u.values())
    if cont.is_one:
        return u
    return {d: p.divexact(cont) for d, p in u.items()}


# ---------------------------------------------------------------------------
# variable roster
# ---------------------------------------------------------------------------


class VarTable:
    """Variable roster for complex dimension n: z_1..z_{n+1}, w_1..w_{n+1}, u.

    w_j is the designated conjugate of z_j; u is self-conjugate.  The table
    also keeps the registry of log-symbol arguments.  Registration is
    append-only and deduplicating, so shared tables stay consistent.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ExprError("complex dimension must be at least 1")
        self.n = n
        self.nvars = 2 * (n + 1) + 1
        self._log_args: list[Poly] = []

    # index layout: z_j -> j-1, w_j -> (n+1)+(j-1), u -> 2n+2
    def z(self, j: int) -> int:
        if not 1 <= j <= self.n + 1:
            raise ExprError(f"z index {j} out of range 1..{self.n + 1}")
        return j - 1

    def w(self, j: int) -> int:
        if not 1 <= j <= self.n + 1:
            raise ExprError(f"w index {j} out of range 1..{self.n + 1}")
        return self.n + j

    @property
    def u(self) -> int:
        return 2 * self.n + 2

    def conj_index(self, idx: int) -> int:
        m = self.n + 1
        if idx < m:
            return idx + m
        if idx < 2 * m:
            return idx - m
        return idx

    def var_name(self, idx: int) -> str:
        m = self.n + 1
        if idx < m:
            return f"z{idx + 1}"
        if idx < 2 * m:
            return f"w{idx - m + 1}"
        return "u"

    def var_index(self, name: str) -> int:
        if name == "u":
            return self.u
        kind, digits = name[0], name[1:]
        if kind in ("z", "w") and digits.isdigit():
            j = int(digits)
            if 1 <= j <= self.n + 1:
                return self.z(j) if kind == "z" else self.w(j)
        raise ExprError(f"unknown variable {name!r}")

    def bar_poly(self, p: Poly) -> Poly:
        return p.map_exponents(self.conj_index).conj_coeffs()

    # -- log symbols -------------------------------------------------------

    def log_symbol(self, q: Poly) -> int:
        if q.nvars != self.nvars:
            raise ExprError("log argument built over a different roster")
        if q.is_constant():
            raise ExprError("log argument must be a non-constant polynomial")
        if self.bar_poly(q) != q:
            raise ExprError("log argument is not bar-invariant")
        for m, known in enumerate(self._log_args):
            if known == q:
                return m
        self._log_args.append(q)
        return len(self._log_args) - 1

    def log_arg(self, m: int) -> Poly:
        return self._log_args[m]

    @property
    def log_count(self) -> int:
        return len(self._log_args)

    def __repr__(self):
        return f"VarTable(n={self.n}, logs={self.log_count})"


# ---------------------------------------------------------------------------
# expressions
# ---------------------------------------------------------------------------

# L-monomials are sorted tuples of (symbol index, positive power).
LKey = tuple


def _lkey_mul(a: LKey, b: LKey) -> LKey:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for m, e in b:
        d[m] = d.get(m, 0) + e
    return tuple(sorted(d.items()))


class Expr:
    """Canonical-form expression: L-polynomial numerator over an L-free
    monic denominator, coprime as a whole."""

    __slots__ = ("table", "num", "den")

    def __init__(self, table: VarTable, num: dict, den: Poly):
        self.table = table
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, table: VarTable, c) -> "Expr":
        c = _as_scalar(c)
        num = {} if not c else {(): Poly.const(table.nvars, c)}
        return cls(table, num, Poly.const(table.nvars, 1))

    @classmethod
    def variable(cls, table: VarTable, idx) -> "Expr":
        if isinstance(idx, str):
            idx = table.var_index(idx)
        return cls(
            table,
            {(): Poly.variable(table.nvars, idx)},
            Poly.const(table.nvars, 1),
        )

    @classmethod
    def from_poly(cls, table: VarTable, p: Poly) -> "Expr":
        num = {} if p.is_zero else {(): p}
        return cls(table, num, Poly.const(table.nvars, 1))

    @classmethod
    def log(cls, table: VarTable, q) -> "Expr":
        if isinstance(q, Expr):
            q = q.as_poly()
        m = table.log_symbol(q)
        return cls(
            table,
            {((m, 1),): Poly.const(table.nvars, 1)},
            Poly.const(table.nvars, 1),
        )

    # -- canonicalization ----------------------------------------------------

    @classmethod
    def _make(cls, table: VarTable, num: dict, den: Poly) -> "Expr":
        num = {lk: p for lk, p in num.items() if not p.is_zero}
        if den.is_zero:
            raise ZeroDivisionError("expression denominator is zero")
        one = Poly.const(table.nvars, 1)
        if not num:
            return cls(table, {}, one)
        if not den.is_one:
            g = den
            for p in num.values():
                g = poly_gcd(g, p)
                if g.is_one:
                    break
            if not g.is_one:
                den = den.divexact(g)
                num = {lk: p.divexact(g) for lk, p in num.items()}
            lc = den.leading_coeff()
            if lc != GR_ONE:
                inv = lc.inverse()
                den = den * inv
                num = {lk: p * inv for lk, p in num.items()}
        return cls(table, num, den)

    # -- basic queries --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return self.den.is_one and set(self.num) <= {()}

    def as_poly(self) -> Poly:
        """The underlying polynomial; requires den == 1 and no log symbols."""
        if not self.den.is_one or any(lk for lk in self.num):
            raise ExprError("expression is not a plain polynomial")
        return self.num.get((), Poly.zero(self.table.nvars))

    def has_log(self) -> bool:
        return any(lk for lk in self.num)

    def vars_present(self) -> set[int]:
        out = set()
        for p in self.num.values():
            out |= p.vars_present()
        out |= self.den.vars_present()
        return out

    def __eq__(self, other):
        if not isinstance(other, Expr):
            try:
                other = Expr.const(self.table, other)
            except ExprError:
                return NotImplemented
        return (
            self.table is other.table
            and self.num == other.num
            and self.den == other.den
        )

    __hash__ = None

    # -- arithmetic -------------------------------------------------------------

    def _coerced(self, other) -> "Expr | None":
        if isinstance(other, Expr):
            if other.table is not self.table:
                raise ExprError("expressions built over different variable tables")
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return Expr.const(self.table, other)
        return None

    def __add__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        if self.is_zero:
            return o
        if o.is_zero:
            return self
        if self.den == o.den:
            num = dict(self.num)
            for lk, p in o.num.items():
                num[lk] = num.get(lk, Poly.zero(p.nvars)) + p
            return Expr._make(self.table, num, self.den)
        g = poly_gcd(self.den, o.den)
        d1 = self.den.divexact(g)
        d2 = o.den.divexact(g)
        num = {lk: p * d2 for lk, p in self.num.items()}
        for lk, p in o.num.items():
            num[lk] = num.get(lk, Poly.zero(p.nvars)) + p * d1
        return Expr._make(self.table, num, self.den * d2)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __neg__(self):
        return Expr(self.table, {lk: -p for lk, p in self.num.items()}, self.den)

    def __mul__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        if self.is_zero or o.is_zero:
            return Expr.const(self.table, 0)
        num: dict = {}
        for lk1, p1 in self.num.items():
            for lk2, p2 in o.num.items():
                lk = _lkey_mul(lk1, lk2)
                prod = p1 * p2
                prev = num.get(lk)
                num[lk] = prod if prev is None else prev + prod
        return Expr._make(self.table, num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("division by zero expression")
        if o.has_log():
            raise ExprError("division by an expression containing log symbols")
        n2 = o.num[()]
        num = {lk: p * o.den for lk, p in self.num.items()}
        return Expr._make(self.table, num, self.den * n2)

    def __rtruediv__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return (Expr.const(self.table, 1) / self) ** (-k)
        result = Expr.const(self.table, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- the involution, differentiation, substitution ---------------------------

    def bar(self) -> "Expr":
        t = self.table
        num = {lk: t.bar_poly(p) for lk, p in self.num.items()}
        return Expr._make(t, num, t.bar_poly(self.den))

    def diff(self, var) -> "Expr":
        t = self.table
        i = t.var_index(var) if isinstance(var, str) else var
        zero = Expr.const(t, 0)
        dnum = zero
        for lk, p in self.num.items():
            dp = p.diff(i)
            if not dp.is_zero:
                dnum = dnum + Expr(t, {lk: dp}, Poly.const(t.nvars, 1))
            for pos, (m, e) in enumerate(lk):
                q = t.log_arg(m)
                dq = q.diff(i)
                if dq.is_zero:
                    continue
                rest = list(lk)
                if e == 1:
                    del rest[pos]
                else:
                    rest[pos] = (m, e - 1)
                chain = Expr(t, {tuple(rest): p * e}, Poly.const(t.nvars, 1))
                chain = chain * Expr.from_poly(t, dq) / Expr.from_poly(t, q)
                dnum = dnum + chain
        result = dnum / Expr.from_poly(t, self.den)
        dden = self.den.diff(i)
        if not dden.is_zero:
            result = result - self * Expr.from_poly(t, dden) / Expr.from_poly(t, self.den)
        return result

    def substitute(self, bindings: dict) -> "Expr":
        t = self.table
        bind: dict[int, Expr] = {}
        for key, value in bindings.items():
            idx = t.var_index(key) if isinstance(key, str) else key
            if not isinstance(value, Expr):
                value = Expr.const(t, value)
            elif value.table is not t:
                raise ExprError("substitution value built over a different table")
            bind[idx] = value
        touched = self.vars_present() & set(bind)
        if not touched:
            return self
        pows: dict[tuple[int, int], Expr] = {}

        def bound_power(idx: int, k: int) -> Expr:
            key = (idx, k)
            hit = pows.get(key)
            if hit is None:
                hit = bind[idx] ** k
                pows[key] = hit
            return hit

        def subs_poly(p: Poly) -> Expr:
            total = Expr.const(t, 0)
            for e, c in p.terms.items():
                rest = list(e)
                factors = []
                for idx in touched:
                    k = e[idx]
                    if k:
                        rest[idx] = 0
                        factors.append(bound_power(idx, k))
                term = Expr.from_poly(t, Poly(t.nvars, {tuple(rest): c}))
                for f in factors:
                    term = term * f
                total = total + term
            return total

        num_total = Expr.const(t, 0)
        for lk, p in self.num.items():
            piece = subs_poly(p)
            if lk:
                piece = piece * Expr(t, {lk: Poly.const(t.nvars, 1)}, Poly.const(t.nvars, 1))
            num_total = num_total + piece
        if not (self.den.vars_present() & set(bind)):
            return num_total / Expr.from_poly(t, self.den)
        den_sub = subs_poly(self.den)
        if den_sub.has_log():
            raise ExprError("substitution puts log symbols into a denominator")
        return num_total / den_sub

    def evaluate_at_zero(self) -> GaussianRational:
        """Value at the origin; log terms need Q_m(0) = 1 so each L_m is 0."""
        d0 = self.den.eval_zero()
        if not d0:
            raise ExprError("denominator vanishes at the origin")
        total = GR_ZERO
        for lk, p in self.num.items():
            if lk:
                for m, _ in lk:
                    if self.table.log_arg(m).eval_zero() != GR_ONE:
                        raise ExprError(
                            "log argument does not equal 1 at the origin"
                        )
                continue
            total = total + p.eval_zero()
        return total / d0

    # -- display --------------------------------------------------------------

    def __str__(self):
        if self.is_zero:
            return "0"
        num = _num_text(self.table, self.num)
        if self.den.is_one:
            return num
        return f"({num}) / ({_poly_text(self.table, self.den)})"

    def __repr__(self):
        return f"Expr({self})"

    def to_input_text(self) -> str:
        """Grammar-conformant text; requires a trivial denominator."""
        if not self.den.is_one:
            raise ExprError("expression with denominator has no input form")
        if self.is_zero:
            return "0"
        return _num_text(self.table, self.num)


# ---------------------------------------------------------------------------
# printing helpers (emit only grammar-valid text so round-trips work)
# ---------------------------------------------------------------------------


def _scalar_factors(c: GaussianRational) -> list[str]:
    if c.is_real:
        return [str(c.re)]
    if not c.re:
        if c.im == 1:
            return ["i"]
        return [str(c.im), "i"]
    im = "i" if c.im == 1 else f"{c.im}*i"
    return [f"({c.re} + {im})"]


def _var_factor(table: VarTable, idx: int, e: int) -> str:
    m = table.n + 1
    if idx < m:
        base = f"z{idx + 1}"
    elif idx < 2 * m:
        base = f"conj(z{idx - m + 1})"
    else:
        base = "u"
    return base if e == 1 else f"{base}^{e}"


def _poly_text(table: VarTable, p: Poly) -> str:
    if p.is_zero:
        return "0"
    parts = []
    for e in sorted(p.terms, key=lambda t: (sum(t), t), reverse=True):
        c = p.terms[e]
        factors = []
        var_factors = [
            _var_factor(table, i, x) for i, x in enumerate(e) if x
        ]
        if not var_factors or c != GR_ONE:
            factors.extend(_scalar_factors(c))
        factors.extend(var_factors)
        parts.append("*".join(factors))
    return " + ".join(parts)


def _num_text(table: VarTable, num: dict) -> str:
    parts = []
    for lk in sorted(num, key=lambda k: (len(k), k), reverse=True):
        p = num[lk]
        logs = []
        for m, e in lk:
            base = f"log({_poly_text(table, table.log_arg(m))})"
            logs.append(base if e == 1 else f"{base}^{e}")
        if not lk:
            parts.append(_poly_text(table, p))
            continue
        coeff = _poly_text(table, p)
        if p.is_constant() and not p.is_zero:
            prefix = "*".join(_scalar_factors(p.constant_term()))
            parts.append("*".join([prefix] + logs) if prefix != "1" else "*".join(logs))
        else:
            parts.append("*".join([f"({coeff})"] + logs))
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# free-function forms of the operations
# ---------------------------------------------------------------------------


def bar(e: Expr) -> Expr:
    return e.bar()


def diff(e: Expr, var) -> Expr:
    return e.diff(var)


def substitute(e: Expr, bindings: dict) -> Expr:
    return e.substitute(bindings)


def is_zero(e: Expr) -> bool:
    return e.is_zero
