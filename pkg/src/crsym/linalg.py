"""Exact sparse linear algebra over the rationals and Gaussian rationals.

Vectors are dicts mapping integer coordinate indices to nonzero field
elements.  The same incremental-echelon machinery serves rational and
Gaussian-rational coefficients; rational systems additionally get an
integer fraction-free elimination path and an optional mod-p full-rank
certificate (sound because rank mod p never exceeds rank over Q).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .scalars import GaussianRational

__all__ = [
    "SpanSolver",
    "kernel_of_rows",
    "rank_of_rows",
    "hermitian_signature",
    "mat_from_entries",
    "mat_zero",
    "mat_add",
    "mat_sub",
    "mat_scale",
    "mat_mul",
    "mat_comm",
    "mat_ctrans",
    "mat_trace",
    "mat_is_zero",
    "mat_entry_vector",
]

# A prime with p % 4 == 1 so that -1 is a square mod p (kept for possible
# Gaussian reductions; the real certificate only needs primality).
_CERT_PRIME = 2147483629


class SpanSolver:
    """Incremental row echelon with combination tracking.

    add(vec, tag) inserts a vector into the span and reports whether it was
    independent of what is already stored.  express(vec) returns a dict
    tag -> coefficient writing vec as a combination of previously added
    vectors, or None if vec lies outside the span.  Works over any exact
    field whose elements support +, -, *, / and truthiness.
    """

    def __init__(self):
        self._rows: dict[int, tuple[dict, dict]] = {}
        self.rank = 0

    def _reduce(self, vec: dict, combo: dict):
        vec = dict(vec)
        combo = dict(combo)
        while vec:
            p = min(vec)
            hit = self._rows.get(p)
            if hit is None:
                return p, vec, combo
            pvec, pcombo = hit
            f = vec[p] / pvec[p]
            for c, v in pvec.items():
                nv = vec.get(c, 0) - f * v
                if nv:
                    vec[c] = nv
                else:
                    vec.pop(c, None)
            for t, v in pcombo.items():
                nv = combo.get(t, 0) - f * v
                if nv:
                    combo[t] = nv
                else:
                    combo.pop(t, None)
        return None, vec, combo

    def add(self, vec: dict, tag) -> bool:
        """Insert vec (tagged for express()); True if it enlarged the span."""
        p, rvec, rcombo = self._reduce(vec, {tag: _one_like(vec)})
        if p is None:
            return False
        self._rows[p] = (rvec, rcombo)
        self.rank += 1
        return True

    def contains(self, vec: dict) -> bool:
        p, _, _ = self._reduce(vec, {})
        return p is None

    def express(self, vec: dict) -> dict | None:
        p, _, combo = self._reduce(vec, {})
        if p is not None:
            return None
        return {t: -v for t, v in combo.items()}


def _one_like(vec: dict):
    for v in vec.values():
        return v / v
    return Fraction(1)


# ---------------------------------------------------------------------------
# kernels of sparse equation systems
# ---------------------------------------------------------------------------


def _int_row(row: dict) -> dict[int, int]:
    """Clear denominators and strip content from a rational row."""
    l = 1
    for v in row.values():
        d = v.denominator
        l = l * d // gcd(l, d)
    out = {}
    g = 0
    for c, v in row.items():
        n = int(v * l)
        if n:
            out[c] = n
            g = gcd(g, n)
    if g > 1:
        for c in out:
            out[c] //= g
    return out


def _strip_content(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        for c in row:
            row[c] //= g
    return row


def _echelon_int(rows) -> dict[int, dict[int, int]]:
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        r = row
        while r:
            p = min(r)
            piv = pivots.get(p)
            if piv is None:
                pivots[p] = _strip_content(r)
                break
            a = piv[p]
            b = r[p]
            g = gcd(a, b)
            fa = a // g
            fb = b // g
            nr = {c: fa * v for c, v in r.items()}
            for c, v in piv.items():
                nv = nr.get(c, 0) - fb * v
                if nv:
                    nr[c] = nv
                else:
                    nr.pop(c, None)
            r = nr
    return pivots


def _echelon_field(rows) -> dict[int, dict]:
    pivots: dict[int, dict] = {}
    for row in rows:
        r = dict(row)
        while r:
            p = min(r)
            piv = pivots.get(p)
            if piv is None:
                pivots[p] = r
                break
            f = r[p] / piv[p]
            for c, v in piv.items():
                nv = r.get(c, 0) - f * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
        # reduced to zero: discard
    return pivots


def _kernel_from_echelon(pivots: dict, ncols: int, one):
    free = [c for c in range(ncols) if c not in pivots]
    order = sorted(pivots, reverse=True)
    basis = []
    for f in free:
        x = {f: one}
        for p in order:
            if p > f:
                continue
            row = pivots[p]
            s = None
            for c, v in row.items():
                if c == p:
                    continue
                xc = x.get(c)
                if xc is not None:
                    term = (v if isinstance(v, (Fraction, GaussianRational)) else Fraction(v)) * xc
                    s = term if s is None else s + term
            if s is not None and s:
                x[p] = -s / (row[p] if isinstance(row[p], (Fraction, GaussianRational)) else Fraction(row[p]))
        basis.append(x)
    return basis


def kernel_of_rows(rows, ncols: int, *, rational: bool = True, certify_full_rank: bool = False):
    """Kernel basis of the system {row . x = 0 for each row}.

    rows: iterable of dicts col -> coefficient (Fraction or GaussianRational,
    per the `rational` flag).  Returns a list of kernel vectors (dicts with
    Fraction resp. GaussianRational entries).  With certify_full_rank, a
    mod-p full-column-rank certificate may prove the kernel trivial without
    exact elimination.
    """
    if rational:
        int_rows = [_int_row(r) for r in rows]
        int_rows = [r for r in int_rows if r]
        if certify_full_rank and _full_column_rank_mod_p(int_rows, ncols):
            return []
        pivots = _echelon_int(int_rows)
        return _kernel_from_echelon(pivots, ncols, Fraction(1))
    pivots = _echelon_field(rows)
    return _kernel_from_echelon(pivots, ncols, GaussianRational(1))


def rank_of_rows(rows, *, rational: bool = True) -> int:
    if rational:
        pivots = _echelon_int(r for r in (_int_row(row) for row in rows) if r)
    else:
        pivots = _echelon_field(rows)
    return len(pivots)


def _full_column_rank_mod_p(int_rows, ncols: int, p: int = _CERT_PRIME) -> bool:
    """True only if the matrix provably has full column rank over Q."""
    pivots: dict[int, dict[int, int]] = {}
    for row in int_rows:
        r = {c: v % p for c, v in row.items() if v % p}
        while r:
            q = min(r)
            piv = pivots.get(q)
            if piv is None:
                inv = pow(r[q], p - 2, p)
                pivots[q] = {c: (v * inv) % p for c, v in r.items()}
                break
            f = r[q]
            for c, v in piv.items():
                nv = (r.get(c, 0) - f * v) % p
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
        if len(pivots) == ncols:
            return True
    return len(pivots) == ncols


# ---------------------------------------------------------------------------
# signatures of exact Hermitian matrices
# ---------------------------------------------------------------------------


def hermitian_signature(mat) -> tuple[int, int, int]:
    """Signature (pos, neg, null) of a Hermitian Gaussian-rational matrix.

    Uses congruence diagonalization: X^H M X with exact column operations.
    Real symmetric matrices are the special case with zero imaginary parts.
    """
    n = len(mat)
    a = [[_as_gr(mat[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if a[i][j] != a[j][i].conjugate():
                raise ValueError("matrix is not Hermitian")
    pos = neg = null = 0
    for k in range(n):
        if not a[k][k]:
            pivot = None
            for j in range(k + 1, n):
                if a[j][j]:
                    pivot = j
                    break
            if pivot is not None:
                _swap_basis(a, k, pivot)
            else:
                off = None
                for j in range(k + 1, n):
                    if a[k][j]:
                        off = j
                        break
                if off is None:
                    null += 1
                    continue
                # e_k += conj(a_k_off) e_off creates 2|a_k_off|^2 on the diagonal
                _add_basis(a, k, off, a[k][off].conjugate())
        d = a[k][k]
        if not d.is_real:
            raise ValueError("Hermitian diagonal entry must be real")
        if d.re > 0:
            pos += 1
        else:
            neg += 1
        for j in range(k + 1, n):
            if a[k][j]:
                # e_j += c e_k with c killing H(e_k, e_j + c e_k)
                _add_basis(a, j, k, -(a[k][j] / d))
    return pos, neg, null


def _as_gr(x) -> GaussianRational:
    if type(x) is GaussianRational:
        return x
    return GaussianRational(x)


def _swap_basis(a, i, j):
    n = len(a)
    for r in range(n):
        a[r][i], a[r][j] = a[r][j], a[r][i]
    for c in range(n):
        a[i][c], a[j][c] = a[j][c], a[i][c]


def _add_basis(a, i, j, c: GaussianRational):
    """Basis change e_i += c e_j, applied by congruence."""
    n = len(a)
    cc = c.conjugate()
    for r in range(n):
        a[r][i] = a[r][i] + c * a[r][j]
    for col in range(n):
        a[i][col] = a[i][col] + cc * a[j][col]


# ---------------------------------------------------------------------------
# dense Gaussian-rational matrices (tuples of tuples)
# ---------------------------------------------------------------------------


def mat_zero(m: int):
    z = GaussianRational(0)
    return tuple(tuple(z for _ in range(m)) for _ in range(m))


def mat_from_entries(m: int, entries: dict) -> tuple:
    """Matrix from {(row, col): GaussianRational} with zeros elsewhere."""
    z = GaussianRational(0)
    return tuple(
        tuple(entries.get((i, j), z) for j in range(m)) for i in range(m)
    )


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, a):
    c = _as_gr(c)
    return tuple(tuple(c * x for x in row) for row in a)


def mat_mul(a, b):
    m = len(a)
    bt = list(zip(*b))
    out = []
    for i in range(m):
        ra = a[i]
        row = []
        for j in range(m):
            cb = bt[j]
            s = None
            for x, y in zip(ra, cb):
                if x and y:
                    t = x * y
                    s = t if s is None else s + t
            row.append(s if s is not None else GaussianRational(0))
        out.append(tuple(row))
    return tuple(out)


def mat_comm(a, b):
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def mat_ctrans(a):
    return tuple(tuple(x.conjugate() for x in col) for col in zip(*a))


def mat_trace(a):
    s = GaussianRational(0)
    for i in range(len(a)):
        s = s + a[i][i]
    return s


def mat_is_zero(a) -> bool:
    return all(not x for row in a for x in row)


def mat_entry_vector(a, *, rational: bool) -> dict:
    """Vectorize a matrix: complex entries, or interleaved re/im parts."""
    out = {}
    m = len(a)
    if rational:
        for i in range(m):
            for j in range(m):
                x = a[i][j]
                if x.re:
                    out[2 * (i * m + j)] = x.re
                if x.im:
                    out[2 * (i * m + j) + 1] = x.im
    else:
        for i in range(m):
            for j in range(m):
                x = a[i][j]
                if x:
                    out[i * m + j] = x
    return out
