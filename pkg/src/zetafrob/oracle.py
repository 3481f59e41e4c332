"""Brute-force point counts for y^2 = Q(x) and the L-polynomial they pin down.

`count_points` enumerates F_{q^r} (as F_q[u]/(h) for a randomly drawn
irreducible h), evaluates Q at every x in numpy chunks and classifies Q(x)
as zero / nonzero square / non-square against a precomputed sorted table of
square encodings.  Points at infinity follow the smooth model: one for odd
degree, two or zero for even degree according to squareness of the leading
coefficient.

`lpoly_from_counts` turns counts over F_q, ..., F_{q^g} into the degree-2g
numerator of the zeta function using the power-sum recurrences and the
functional equation, then re-derives the counts from the result as a self
check.  Everything is exact rational arithmetic; a fractional coefficient
means the counts were inconsistent and raises.
"""

import random
from fractions import Fraction

import numpy as np

from .errors import NonIntegralCoefficient, TooLarge
from .gf import FqPoly

LIMIT = 10 ** 7
CHUNK = 1 << 16

_table_cache = {}


def _find_irreducible(field, r, seed):
    if r == 1:
        return [field.zero(), field.one()]
    rng = random.Random(seed * 1000003 + field.p * 1009 + field.n * 101 + r)
    while True:
        coeffs = [field.random_element(rng) for _ in range(r)] + [field.one()]
        h = FqPoly(field, coeffs)
        if h.degree == r and h.is_irreducible():
            return list(h.coeffs)


def _decode(vals, p, r, n):
    # base-p digits of encoded elements, laid out (count, r, n)
    out = np.empty((vals.shape[0], r, n), dtype=np.int64)
    v = vals.copy()
    for i in range(r):
        for s in range(n):
            out[:, i, s] = v % p
            v //= p
    return out


def _encode(arr, p, r, n):
    enc = np.zeros(arr.shape[0], dtype=np.int64)
    f = 1
    for i in range(r):
        for s in range(n):
            enc += arr[:, i, s] * f
            f *= p
    return enc


class _ExtField:
    """F_{q^r} with vectorised arithmetic on (chunk, r, n) coordinate blocks."""

    def __init__(self, field, r, seed):
        self.field = field
        self.r = r
        self.p = field.p
        self.n = field.n
        self.size = field.q ** r
        self.h = _find_irreducible(field, r, seed)  # monic, r+1 F_q coeffs

    def embed(self, c):
        """Constant block (1, r, n) holding an F_q element."""
        out = np.zeros((1, self.r, self.n), dtype=np.int64)
        out[0, 0, :] = c.coeffs
        return out

    def _mul_const(self, V, c):
        # V: (chunk, n) by a fixed F_q element given as an n-vector of ints
        p, n, m = self.p, self.n, self.field.modulus
        out = np.zeros((V.shape[0], 2 * n - 1), dtype=np.int64)
        for s in range(n):
            cs = int(c[s])
            if cs:
                out[:, s:s + n] += V * cs
        for w in range(2 * n - 2, n - 1, -1):
            v = out[:, w]
            for s in range(n):
                if m[s]:
                    out[:, w - n + s] -= v * m[s]
        return out[:, :n] % p

    def mul(self, A, B):
        p, r, n = self.p, self.r, self.n
        m = self.field.modulus
        C = np.zeros((max(A.shape[0], B.shape[0]), 2 * r - 1, 2 * n - 1),
                     dtype=np.int64)
        for i in range(r):
            for j in range(r):
                for s in range(n):
                    for t in range(n):
                        C[:, i + j, s + t] += A[:, i, s] * B[:, j, t]
        C %= p
        for w in range(2 * n - 2, n - 1, -1):
            v = C[:, :, w]
            for s in range(n):
                if m[s]:
                    C[:, :, w - n + s] -= v * m[s]
        C %= p
        for w in range(2 * r - 2, r - 1, -1):
            v = C[:, w, :n]
            if v.any():
                for j in range(r):
                    hj = self.h[j].coeffs
                    if any(hj):
                        C[:, w - r + j, :n] -= self._mul_const(v, hj)
            C[:, w, :] = 0
        C %= p
        return C[:, :r, :n]

    def square_table(self):
        """Sorted encodings of the nonzero squares."""
        encs = []
        for lo in range(0, self.size, CHUNK):
            vals = np.arange(lo, min(lo + CHUNK, self.size), dtype=np.int64)
            x = _decode(vals, self.p, self.r, self.n)
            encs.append(_encode(self.mul(x, x), self.p, self.r, self.n))
        table = np.unique(np.concatenate(encs))
        return table[table != 0]


def _ext(field, r, seed):
    key = (field, r, seed)
    if key not in _table_cache:
        E = _ExtField(field, r, seed)
        _table_cache[key] = (E, E.square_table())
        while len(_table_cache) > 6:
            _table_cache.pop(next(iter(_table_cache)))
    return _table_cache[key]


def _is_in(table, vals):
    idx = np.searchsorted(table, vals)
    idx[idx >= len(table)] = 0
    return table[idx] == vals


def count_points(Q, r=1, seed=0):
    """Points on the smooth model of y^2 = Q(x) over F_{q^r}, infinity included.

    Q must be separable of degree >= 3 over the base field; q^r above 10^7 is
    refused since the scan is linear in the field size.
    """
    field = Q.field
    size = field.q ** r
    if size > LIMIT:
        raise TooLarge("field size %d exceeds the %d scan limit" % (size, LIMIT))
    E, table = _ext(field, r, seed)
    coeff_blocks = [E.embed(c) for c in Q.coeffs]
    affine = 0
    for lo in range(0, size, CHUNK):
        vals = np.arange(lo, min(lo + CHUNK, size), dtype=np.int64)
        x = _decode(vals, field.p, r, field.n)
        acc = np.broadcast_to(coeff_blocks[-1], x.shape).copy()
        for cb in reversed(coeff_blocks[:-1]):
            acc = E.mul(acc, x)
            acc += cb
            acc %= field.p
        q_enc = _encode(acc, field.p, r, field.n)
        zeros = int(np.count_nonzero(q_enc == 0))
        squares = int(np.count_nonzero(_is_in(table, q_enc)))
        affine += zeros + 2 * squares
    d = Q.degree
    if d % 2 == 1:
        inf = 1
    else:
        lead_enc = np.array([Q.lead().encode()], dtype=np.int64)
        inf = 2 if bool(_is_in(table, lead_enc)[0]) else 0
    return affine + inf


def _power_sums(low, count):
    # power sums of the inverse roots of 1 + c_1 X + ... (series-form coeffs)
    P = []
    for r in range(1, count + 1):
        s = -r * Fraction(low[r]) if r < len(low) else Fraction(0)
        for i in range(1, r):
            if i < len(low):
                s -= Fraction(low[i]) * P[r - i - 1]
        P.append(s)
    return P


def predict_count(coeffs, q, r):
    """Expected number of points over F_{q^r} given the monic L-polynomial.

    `coeffs` is ascending with leading coefficient 1 and constant term q^g,
    the same form `lpoly_from_counts` and the main pipeline produce.
    """
    low = list(reversed(coeffs))
    P = _power_sums(low, r)
    v = q ** r + 1 - P[r - 1]
    if v.denominator != 1:
        raise NonIntegralCoefficient("power sum P_%d = %s is not an integer" % (r, P[r - 1]))
    return int(v)


def lpoly_from_counts(counts, q, g):
    """Monic L-polynomial [c_0 .. c_2g] from counts over F_{q^r}, r = 1..g.

    Ascending coefficients of prod(X - alpha_i): c_2g = 1, c_0 = q^g, and
    c_r = q^(g-r) c_(2g-r).  The counts are re-derived from the result as a
    consistency check; any fractional intermediate raises.
    """
    if len(counts) < g:
        raise ValueError("need counts for r = 1..%d" % g)
    P = [Fraction(q ** r + 1 - counts[r - 1]) for r in range(1, g + 1)]
    # Newton: elementary symmetric functions e_r of the inverse roots
    e = [Fraction(1)]
    for r in range(1, g + 1):
        s = Fraction(0)
        for i in range(1, r + 1):
            s += (-1) ** (i - 1) * e[r - i] * P[i - 1]
        e.append(s / r)
    low = [Fraction(1)] + [(-1) ** r * e[r] for r in range(1, g + 1)]
    for r in range(g - 1, -1, -1):
        low.append(q ** (g - r) * low[r])
    out = []
    for i, c in enumerate(reversed(low)):
        if c.denominator != 1:
            raise NonIntegralCoefficient("coefficient of X^%d is %s" % (i, c))
        out.append(int(c))
    for r in range(1, g + 1):
        if predict_count(out, q, r) != counts[r - 1]:
            raise NonIntegralCoefficient(
                "count over F_q^%d is not reproduced by the fitted polynomial" % r)
    return out
