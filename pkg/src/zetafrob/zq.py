"""Fixed-point arithmetic over Z_q, q = p^n, truncated at p^prec.

A `ZqContext` fixes the unramified extension (via the integer lift of the
field modulus from `gf`) and the working precision.  Elements carry a power
of p out front: (val, mant) represents p^val * mant with mant a vector of n
integers mod p^prec.  The pair is a sliding window: the mantissa of a sum or
product is exact modulo p^prec relative to its own val, and dividing by an
integer only shifts the window, it never invents digits.  Digits are lost
only when windows with different vals are added (the higher one is truncated
into the lower window), which is what the caller's spare-precision budget
pays for.

The lift of the p-power Frobenius to Z_q sends the generator to the unique
root of the lifted modulus that reduces to theta^p; it is found by a coupled
Newton iteration on the root and the derivative inverse, doubling correct
digits per round.  Frobenius powers are tabulated once per context.

Polynomials over Z_q (`ZqPoly`) share a single val across all coefficients
and keep the mantissas in the flat layout the arithmetic kernels use.
"""

from fractions import Fraction

from ._kernel import backend_name, get_kernels
from .errors import DivisionByZero, PrecisionExhausted
from .gf import FqPoly


class ZqContext:
    __slots__ = ("field", "p", "n", "prec", "pm", "mt", "backend",
                 "poly_mul", "poly_divmod", "elt_mul", "_sig_tabs")

    def __init__(self, field, prec):
        self.field = field
        self.p = field.p
        self.n = field.n
        self.prec = prec
        self.pm = field.p ** prec
        self.mt = [c % self.pm for c in field.modulus[:-1]]
        self.poly_mul, self.poly_divmod, self.elt_mul = get_kernels(self.pm)
        self.backend = backend_name(self.pm)
        self._sig_tabs = None

    # -- plain elements: lists of n ints mod pm, no val bookkeeping

    def ezero(self):
        return [0] * self.n

    def eone(self):
        e = [0] * self.n
        e[0] = 1
        return e

    def eint(self, c):
        e = [0] * self.n
        e[0] = c % self.pm
        return e

    def eadd(self, a, b):
        return [(x + y) % self.pm for x, y in zip(a, b)]

    def esub(self, a, b):
        return [(x - y) % self.pm for x, y in zip(a, b)]

    def escale(self, a, c):
        c %= self.pm
        return [(x * c) % self.pm for x in a]

    def emul(self, a, b):
        return self.elt_mul(a, b, self.n, self.pm, self.mt)

    def int_inv(self, c):
        c %= self.pm
        if c % self.p == 0:
            raise DivisionByZero("integer %d is not a unit mod %d^%d"
                                 % (c, self.p, self.prec))
        return pow(c, -1, self.pm)

    def einv(self, a):
        """Inverse of a unit element, by lifting the residue-field inverse."""
        r = self.field.elem([x % self.p for x in a])
        w = [c % self.pm for c in r.inv().coeffs]  # correct mod p
        two = self.eint(2)
        for _ in range(max(1, self.prec - 1).bit_length() + 1):
            w = self.emul(w, self.esub(two, self.emul(a, w)))
        return w

    def from_fraction(self, fr):
        """Residue mod p^prec of a rational with denominator prime to p."""
        fr = Fraction(fr)
        if fr.denominator % self.p == 0:
            raise DivisionByZero("denominator of %s is divisible by %d" % (fr, self.p))
        return (fr.numerator * pow(fr.denominator, -1, self.pm)) % self.pm

    # -- the lifted Frobenius

    def _sigma_theta(self):
        # Newton: root of the lifted modulus congruent to theta^p mod p,
        # with the derivative inverse lifted alongside
        F = self.field
        mfull = list(self.mt) + [1]
        y0 = F.gen() ** self.p
        dm = [(i * mfull[i]) % self.p for i in range(1, self.n + 1)]
        dm_at = F.zero()
        for c in reversed(dm):
            dm_at = dm_at * y0 + F.elem(c)
        y = [c % self.pm for c in y0.coeffs]
        w = [c % self.pm for c in dm_at.inv().coeffs]
        two = self.eint(2)
        for _ in range(max(1, self.prec - 1).bit_length() + 2):
            my = self.ezero()
            for c in reversed(mfull):
                my = self.eadd(self.emul(my, y), self.eint(c))
            y = self.esub(y, self.emul(my, w))
            mpy = self.ezero()
            for i in range(self.n, 0, -1):
                mpy = self.eadd(self.emul(mpy, y), self.eint(i * mfull[i]))
            w = self.emul(w, self.esub(two, self.emul(mpy, w)))
        my = self.ezero()
        for c in reversed(mfull):
            my = self.eadd(self.emul(my, y), self.eint(c))
        if any(my):
            raise PrecisionExhausted("Frobenius root iteration did not converge")
        return y

    def _tables(self):
        if self._sig_tabs is None:
            tabs = [None] * self.n
            if self.n > 1:
                cur = self._sigma_theta()
                for k in range(1, self.n):
                    pows = [self.eone()]
                    for _ in range(1, self.n):
                        pows.append(self.emul(pows[-1], cur))
                    tabs[k] = pows
                    if k + 1 < self.n:
                        nxt = self.ezero()
                        for i in range(self.n):
                            if cur[i]:
                                nxt = self.eadd(nxt, self.escale(tabs[1][i], cur[i]))
                        cur = nxt
            self._sig_tabs = tabs
        return self._sig_tabs

    def esigma(self, a, k=1):
        """Apply the lifted Frobenius k times to a plain element."""
        k %= self.n
        if k == 0:
            return list(a)
        tab = self._tables()[k]
        acc = self.ezero()
        for i in range(self.n):
            if a[i]:
                acc = self.eadd(acc, self.escale(tab[i], a[i]))
        return acc

    # -- constructors

    def zero(self):
        return ZqElement(self, 0, self.ezero())

    def one(self):
        return ZqElement(self, 0, self.eone())

    def elem_int(self, c):
        return ZqElement(self, 0, self.eint(c))

    def lift_fq(self, a):
        """ZqElement lifting a residue-field element (coordinate-wise)."""
        return ZqElement(self, 0, [c % self.pm for c in a.coeffs])

    def lift_poly(self, P):
        """ZqPoly lifting an FqPoly coefficient-wise at val 0."""
        flat = []
        for c in P.coeffs:
            flat.extend(x % self.pm for x in c.coeffs)
        return ZqPoly(self, 0, flat)

    def __repr__(self):
        return "ZqContext(p=%d, n=%d, prec=%d, %s)" % (
            self.p, self.n, self.prec, self.backend)


class ZqElement:
    """p^val times an n-coordinate mantissa mod p^prec."""

    __slots__ = ("ctx", "val", "mant")

    def __init__(self, ctx, val, mant):
        self.ctx = ctx
        self.val = val
        self.mant = list(mant)

    def copy(self):
        return ZqElement(self.ctx, self.val, self.mant)

    def is_window_zero(self):
        return not any(self.mant)

    def _aligned(self, other):
        ctx = self.ctx
        if self.val == other.val:
            return self.val, self.mant, other.mant
        if self.val < other.val:
            lo, hi = self, other
        else:
            lo, hi = other, self
        diff = hi.val - lo.val
        if diff >= ctx.prec:
            shifted = ctx.ezero()
        else:
            shifted = ctx.escale(hi.mant, ctx.p ** diff)
        if lo is self:
            return lo.val, lo.mant, shifted
        return lo.val, shifted, lo.mant

    def __add__(self, other):
        v, a, b = self._aligned(other)
        return ZqElement(self.ctx, v, self.ctx.eadd(a, b))

    def __sub__(self, other):
        v, a, b = self._aligned(other)
        return ZqElement(self.ctx, v, self.ctx.esub(a, b))

    def __neg__(self):
        return ZqElement(self.ctx, self.val, [(-x) % self.ctx.pm for x in self.mant])

    def __mul__(self, other):
        if isinstance(other, int):
            return self.mul_int(other)
        return ZqElement(self.ctx, self.val + other.val,
                         self.ctx.emul(self.mant, other.mant))

    __rmul__ = __mul__

    def mul_int(self, c):
        """Multiply by an integer, moving its p-part into the val."""
        if c == 0:
            return ZqElement(self.ctx, self.val, self.ctx.ezero())
        v = 0
        while c % self.ctx.p == 0:
            c //= self.ctx.p
            v += 1
        return ZqElement(self.ctx, self.val + v, self.ctx.escale(self.mant, c))

    def divide_int(self, c):
        """Exact division by a nonzero integer; only the window slides."""
        if c == 0:
            raise DivisionByZero("division by zero")
        v = 0
        while c % self.ctx.p == 0:
            c //= self.ctx.p
            v += 1
        return ZqElement(self.ctx, self.val - v,
                         self.ctx.escale(self.mant, self.ctx.int_inv(c)))

    def divide_unit(self, other):
        """Divide by a val-0 element whose mantissa is a unit."""
        if other.val != 0:
            raise DivisionByZero("divisor window is shifted")
        return ZqElement(self.ctx, self.val,
                         self.ctx.emul(self.mant, self.ctx.einv(other.mant)))

    def sigma(self, k=1):
        return ZqElement(self.ctx, self.val, self.ctx.esigma(self.mant, k))

    def normalized(self):
        """Slide the window up to the visible valuation.

        The digits dropped at the bottom are exactly zero, so the value is
        unchanged; the freed top digits keep later products from running the
        window below what a residue read needs.  A window that is zero
        through its full width is known to vanish mod p^(val+prec), so it
        slides all the way to the top.
        """
        v = self.valuation()
        if v is None:
            return ZqElement(self.ctx, self.val + self.ctx.prec,
                             [0] * self.ctx.n)
        if v <= self.val:
            return self
        ps = self.ctx.p ** (v - self.val)
        return ZqElement(self.ctx, v, [x // ps for x in self.mant])

    def valuation(self):
        """p-adic valuation as visible in the window; None for a zero window."""
        if not any(self.mant):
            return None
        p = self.ctx.p
        best = None
        for x in self.mant:
            if x:
                v = 0
                while x % p == 0:
                    x //= p
                    v += 1
                best = v if best is None else min(best, v)
                if best == 0:
                    break
        return self.val + best

    def residue_coords(self, nd):
        """Coordinates of the value mod p^nd (nd <= val + prec needed)."""
        ctx = self.ctx
        if nd > self.val + ctx.prec:
            raise PrecisionExhausted("window too short: have %d digits past val, need %d"
                                     % (ctx.prec, nd - self.val))
        pj = ctx.p ** nd
        if self.val >= nd:
            return [0] * ctx.n
        if self.val >= 0:
            f = ctx.p ** self.val
            return [(x * f) % pj for x in self.mant]
        ps = ctx.p ** (-self.val)
        if any(x % ps for x in self.mant):
            raise PrecisionExhausted("value is not integral at val %d" % self.val)
        return [(x // ps) % pj for x in self.mant]

    def residue_int(self, nd):
        """Value mod p^nd as an integer; the value must lie in Z_p."""
        coords = self.residue_coords(nd)
        if any(coords[1:]):
            raise PrecisionExhausted("value has a non-rational component mod %d^%d"
                                     % (self.ctx.p, nd))
        return coords[0]

    def __eq__(self, other):
        if not isinstance(other, ZqElement) or other.ctx is not self.ctx:
            return NotImplemented
        v, a, b = self._aligned(other)
        return a == b

    def __repr__(self):
        return "Zq(val=%d, %s)" % (self.val, self.mant)


class ZqPoly:
    """Polynomial over Z_q with one shared val; mantissas in flat layout."""

    __slots__ = ("ctx", "val", "flat")

    def __init__(self, ctx, val, flat):
        self.ctx = ctx
        self.val = val
        self.flat = list(flat)

    @classmethod
    def from_coeffs(cls, ctx, elems):
        vals = [e.val for e in elems if any(e.mant)]
        v = min(vals) if vals else 0
        flat = []
        for e in elems:
            diff = e.val - v
            if diff >= ctx.prec or not any(e.mant):
                flat.extend([0] * ctx.n)
            else:
                f = ctx.p ** diff
                flat.extend((x * f) % ctx.pm for x in e.mant)
        return cls(ctx, v, flat)

    def ncoeffs(self):
        return len(self.flat) // self.ctx.n

    def degree(self):
        n = self.ctx.n
        for i in range(self.ncoeffs() - 1, -1, -1):
            if any(self.flat[i * n:(i + 1) * n]):
                return i
        return -1

    def coeff(self, i):
        n = self.ctx.n
        if 0 <= i < self.ncoeffs():
            return ZqElement(self.ctx, self.val, self.flat[i * n:(i + 1) * n])
        return ZqElement(self.ctx, self.val, self.ctx.ezero())

    def coeffs(self):
        return [self.coeff(i) for i in range(self.ncoeffs())]

    def is_window_zero(self):
        return not any(self.flat)

    def trim(self):
        n = self.ctx.n
        k = self.degree() + 1
        return ZqPoly(self.ctx, self.val, self.flat[:k * n])

    def _aligned(self, other):
        ctx = self.ctx
        ln = max(len(self.flat), len(other.flat))
        a = self.flat + [0] * (ln - len(self.flat))
        b = other.flat + [0] * (ln - len(other.flat))
        if self.val == other.val:
            return self.val, a, b
        if self.val < other.val:
            diff = other.val - self.val
            if diff >= ctx.prec:
                b = [0] * ln
            else:
                f = ctx.p ** diff
                b = [(x * f) % ctx.pm for x in b]
            return self.val, a, b
        diff = self.val - other.val
        if diff >= ctx.prec:
            a = [0] * ln
        else:
            f = ctx.p ** diff
            a = [(x * f) % ctx.pm for x in a]
        return other.val, a, b

    def __add__(self, other):
        v, a, b = self._aligned(other)
        pm = self.ctx.pm
        return ZqPoly(self.ctx, v, [(x + y) % pm for x, y in zip(a, b)])

    def __sub__(self, other):
        v, a, b = self._aligned(other)
        pm = self.ctx.pm
        return ZqPoly(self.ctx, v, [(x - y) % pm for x, y in zip(a, b)])

    def __neg__(self):
        pm = self.ctx.pm
        return ZqPoly(self.ctx, self.val, [(-x) % pm for x in self.flat])

    def __mul__(self, other):
        ctx = self.ctx
        a, b = self.trim(), other.trim()
        if not a.flat or not b.flat:
            return ZqPoly(ctx, a.val + b.val, [])
        return ZqPoly(ctx, a.val + b.val,
                      ctx.poly_mul(a.flat, b.flat, ctx.n, ctx.pm, ctx.mt))

    def mul_elt(self, e):
        ctx = self.ctx
        out = []
        n = ctx.n
        for i in range(self.ncoeffs()):
            out.extend(ctx.emul(self.flat[i * n:(i + 1) * n], e.mant))
        return ZqPoly(ctx, self.val + e.val, out)

    def mul_int(self, c):
        if c == 0:
            return ZqPoly(self.ctx, self.val, [0] * len(self.flat))
        v = 0
        while c % self.ctx.p == 0:
            c //= self.ctx.p
            v += 1
        pm = self.ctx.pm
        c %= pm
        return ZqPoly(self.ctx, self.val + v, [(x * c) % pm for x in self.flat])

    def divide_int(self, c):
        if c == 0:
            raise DivisionByZero("division by zero")
        v = 0
        while c % self.ctx.p == 0:
            c //= self.ctx.p
            v += 1
        u = self.ctx.int_inv(c)
        pm = self.ctx.pm
        return ZqPoly(self.ctx, self.val - v, [(x * u) % pm for x in self.flat])

    def mul_scalar(self, c):
        """Multiply by an integer scalar without touching the val."""
        pm = self.ctx.pm
        c %= pm
        return ZqPoly(self.ctx, self.val, [(x * c) % pm for x in self.flat])

    def strip_val(self, e):
        """Move p^e from the mantissas into the val (the value is unchanged).

        Every mantissa must be divisible by p^e; the top e digits of the new
        window are extrapolated, so callers budget spare precision for this.
        """
        ps = self.ctx.p ** e
        if any(x % ps for x in self.flat):
            raise PrecisionExhausted("mantissa is not divisible by p^%d" % e)
        return ZqPoly(self.ctx, self.val + e, [x // ps for x in self.flat])

    def divmod_monic(self, q):
        """Divide by a monic val-0 polynomial; keeps this poly's val."""
        ctx = self.ctx
        if q.val != 0:
            raise DivisionByZero("divisor window is shifted")
        qt = q.trim()
        quot, rem = ctx.poly_divmod(self.flat, qt.flat, ctx.n, ctx.pm, ctx.mt)
        return ZqPoly(ctx, self.val, quot), ZqPoly(ctx, self.val, rem)

    def exact_div_monic(self, q):
        """Division known to be exact; the zero remainder is asserted."""
        quot, rem = self.divmod_monic(q)
        if any(rem.flat):
            raise PrecisionExhausted("expected an exact polynomial division")
        return quot

    def deriv(self):
        n = self.ctx.n
        pm = self.ctx.pm
        out = []
        for i in range(1, self.ncoeffs()):
            out.extend((x * i) % pm for x in self.flat[i * n:(i + 1) * n])
        return ZqPoly(self.ctx, self.val, out)

    def shift(self, k):
        """Multiply by x^k."""
        return ZqPoly(self.ctx, self.val, [0] * (k * self.ctx.n) + self.flat)

    def sigma(self, k=1):
        ctx = self.ctx
        if k % ctx.n == 0:
            return ZqPoly(ctx, self.val, self.flat)
        n = ctx.n
        out = []
        for i in range(self.ncoeffs()):
            out.extend(ctx.esigma(self.flat[i * n:(i + 1) * n], k))
        return ZqPoly(ctx, self.val, out)

    def subst_xp(self):
        """Substitute x -> x^p (spreads coefficients p slots apart)."""
        ctx = self.ctx
        n, p = ctx.n, ctx.p
        m = self.ncoeffs()
        out = [0] * (((m - 1) * p + 1) * n if m else 0)
        for i in range(m):
            out[i * p * n:(i * p + 1) * n] = self.flat[i * n:(i + 1) * n]
        return ZqPoly(ctx, self.val, out)

    def reduce_modp(self):
        """Image in F_q[x]; the val must be non-negative."""
        ctx = self.ctx
        if self.val < 0:
            raise PrecisionExhausted("cannot reduce a negatively shifted window mod p")
        if self.val > 0:
            return FqPoly(ctx.field, [])
        n = ctx.n
        coeffs = [ctx.field.elem([x % ctx.p for x in self.flat[i * n:(i + 1) * n]])
                  for i in range(self.ncoeffs())]
        return FqPoly(ctx.field, coeffs)

    def __repr__(self):
        return "ZqPoly(val=%d, deg=%d)" % (self.val, self.degree())
