"""Arithmetic in F_q, q = p^n with p an odd prime.

A field is described by a monic irreducible modulus m(t) of degree n over F_p;
elements are coefficient vectors in the power basis 1, t, ..., t^(n-1).  On top
of that sit dense univariate polynomials over F_q (`FqPoly`) with the helpers
the curve engine needs: gcd, Bezout pairs, separability and irreducibility
tests, modular exponentiation.

Everything here is small and exact; the brute-force point counter vectorises
its own inner loops and the p-adic layer has its own kernels, so these classes
optimise for clarity over speed.
"""

from __future__ import annotations

from .errors import (
    BothZero,
    DegreeTooSmall,
    DivisionByZero,
    EvenCharacteristic,
    FieldMismatch,
    MissingModulus,
    NotPrime,
    ReducibleModulus,
)


def _is_prime(m):
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


# -- dense coefficient-list arithmetic over F_p, used only to validate and
#    operate on the field modulus itself (index = degree, ints in [0, p)).

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    c = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                c[i + j] += x * y
    return _trim([v % p for v in c])


def _pdivmod(a, b, p):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    r = [v % p for v in a]
    _trim(r)
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(0, len(r) - db)
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        c = (r[-1] * inv_lead) % p
        q[k] = c
        for j in range(db + 1):
            r[k + j] = (r[k + j] - c * b[j]) % p
        _trim(r)
    return q, r


def _pgcd(a, b, p):
    a, b = list(a), list(b)
    _trim(a), _trim(b)
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [(v * inv) % p for v in a]
    return a


def _ppowmod_p(base, e, mod, p):
    # base^e mod (mod, p) by square and multiply
    result = [1]
    b = _pdivmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _pdivmod(_pmul(result, b, p), mod, p)[1]
        b = _pdivmod(_pmul(b, b, p), mod, p)[1]
        e >>= 1
    return result


class FieldDesc:
    """F_q = F_p[t]/(m), q = p^n.  Use `gf_make` to construct one."""

    __slots__ = ("p", "n", "q", "modulus")

    def __init__(self, p, n, modulus):
        self.p = p
        self.n = n
        self.q = p ** n
        self.modulus = modulus  # tuple of n+1 ints, monic

    def elem(self, coeffs):
        """Coerce an int, an FqElement, or a coefficient sequence."""
        if isinstance(coeffs, FqElement):
            if coeffs.field is not self and coeffs.field != self:
                raise FieldMismatch("element belongs to a different field")
            return coeffs
        if isinstance(coeffs, int):
            c = [coeffs % self.p] + [0] * (self.n - 1)
            return FqElement(self, tuple(c))
        c = [v % self.p for v in coeffs]
        if len(c) > self.n:
            raise ValueError("too many coordinates for this field")
        c += [0] * (self.n - len(c))
        return FqElement(self, tuple(c))

    def zero(self):
        return self.elem(0)

    def one(self):
        return self.elem(1)

    def gen(self):
        """The residue of t (zero when n = 1)."""
        if self.n == 1:
            return self.zero()
        return self.elem([0, 1])

    def elements(self):
        """Iterate over all q elements (lexicographic in coordinates)."""
        idx = [0] * self.n
        for _ in range(self.q):
            yield FqElement(self, tuple(idx))
            for k in range(self.n):
                idx[k] += 1
                if idx[k] < self.p:
                    break
                idx[k] = 0

    def random_element(self, rng):
        return FqElement(self, tuple(rng.randrange(self.p) for _ in range(self.n)))

    def __eq__(self, other):
        return (isinstance(other, FieldDesc)
                and (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus))

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    def __repr__(self):
        if self.n == 1:
            return "F_%d" % self.p
        return "F_%d^%d" % (self.p, self.n)


def gf_make(p, n, modulus=None):
    """Build a field description, validating p, n and the modulus.

    The modulus must be monic of degree n and irreducible over F_p; for n = 1
    it may be omitted (t itself is used).  Irreducibility is checked with
    gcd(t^(p^i) - t, m) = 1 for 0 < i < n together with t^(p^n) = t mod m.
    """
    if not isinstance(p, int) or not _is_prime(p):
        raise NotPrime("p = %r is not prime" % (p,))
    if p == 2:
        raise EvenCharacteristic("p must be odd")
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    if modulus is None:
        if n == 1:
            modulus = (0, 1)
        else:
            raise MissingModulus("an irreducible degree-%d modulus is required" % n)
    m = [v % p for v in modulus]
    if len(m) != n + 1 or m[-1] == 0:
        raise ReducibleModulus("modulus must have degree exactly %d" % n)
    if m[-1] != 1:
        inv = pow(m[-1], -1, p)
        m = [(v * inv) % p for v in m]
    if n > 1:
        t = [0, 1]
        s = t
        for i in range(1, n + 1):
            s = _ppowmod_p(s, p, m, p)  # s = t^(p^i) mod m
            diff = _trim([(a - b) % p for a, b in
                          zip(s + [0] * len(t), t + [0] * len(s))])
            if i < n:
                if len(_pgcd(diff, m, p)) > 1:
                    raise ReducibleModulus("modulus has a factor of degree dividing %d" % i)
            elif diff:
                raise ReducibleModulus("t^(p^n) != t mod modulus")
    return FieldDesc(p, n, tuple(m))


class FqElement:
    """Immutable element of F_q, stored as n coordinates over F_p."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def _check(self, other):
        if isinstance(other, int):
            return self.field.elem(other)
        if not isinstance(other, FqElement):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch("elements of different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return FqElement(self.field, tuple((a + b) % p
                                           for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return FqElement(self.field, tuple((a - b) % p
                                           for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return self.field.elem(other) - self

    def __neg__(self):
        p = self.field.p
        return FqElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.field
        n, p = f.n, f.p
        if n == 1:
            return FqElement(f, ((self.coeffs[0] * other.coeffs[0]) % p,))
        c = [0] * (2 * n - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    c[i + j] += x * y
        m = f.modulus
        for i in range(2 * n - 2, n - 1, -1):
            v = c[i] % p
            if v:
                for j in range(n):
                    c[i - n + j] -= v * m[j]
        return FqElement(f, tuple(v % p for v in c[:n]))

    __rmul__ = __mul__

    def inv(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        f = self.field
        if f.n == 1:
            return FqElement(f, (pow(self.coeffs[0], -1, f.p),))
        # extended Euclid in F_p[t] against the field modulus
        p = f.p
        r0, r1 = list(f.modulus), _trim(list(self.coeffs))
        s0, s1 = [], [1]
        while r1:
            q, r = _pdivmod(r0, r1, p)
            qs = _pmul(q, s1, p)
            ln = max(len(s0), len(qs))
            news = _trim([((s0[i] if i < len(s0) else 0)
                           - (qs[i] if i < len(qs) else 0)) % p
                          for i in range(ln)])
            r0, r1 = r1, r
            s0, s1 = s1, news
        inv_lead = pow(r0[-1], -1, p)
        return f.elem([(v * inv_lead) % p for v in s0])

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        result = self.field.one()
        b = self
        while e:
            if e & 1:
                result = result * b
            b = b * b
            e >>= 1
        return result

    def frobenius(self):
        """The p-power Frobenius a -> a^p."""
        return self ** self.field.p

    def is_square(self):
        """Quadratic-residue test by exponentiation to (q-1)/2 (0 counts as square)."""
        if self.is_zero():
            return True
        return (self ** ((self.field.q - 1) // 2)) == self.field.one()

    def is_zero(self):
        return all(v == 0 for v in self.coeffs)

    def encode(self):
        """Pack coordinates into an integer index in [0, q)."""
        v = 0
        for c in reversed(self.coeffs):
            v = v * self.field.p + c
        return v

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.elem(other)
        return (isinstance(other, FqElement) and other.field == self.field
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        if self.field.n == 1:
            return str(self.coeffs[0])
        return "(" + ":".join(str(v) for v in self.coeffs) + ")"


class FqPoly:
    """Dense univariate polynomial over F_q; coeffs[i] multiplies x^i."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = [field.elem(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero()

    def lead(self):
        if self.is_zero():
            raise DivisionByZero("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self):
        return not self.is_zero() and self.lead() == self.field.one()

    def _coerce(self, other):
        if isinstance(other, (int, FqElement)):
            return FqPoly(self.field, [other])
        return other

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return FqPoly(self.field, [self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return FqPoly(self.field, [self[i] - other[i] for i in range(n)])

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return FqPoly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, FqElement)):
            o = self.field.elem(other)
            return FqPoly(self.field, [c * o for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return FqPoly(self.field, [])
        c = [self.field.zero()] * (self.degree + other.degree + 1)
        for i, x in enumerate(self.coeffs):
            if not x.is_zero():
                for j, y in enumerate(other.coeffs):
                    c[i + j] = c[i + j] + x * y
        return FqPoly(self.field, c)

    __rmul__ = __mul__

    def __divmod__(self, other):
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        inv_lead = other.lead().inv()
        q = [self.field.zero()] * max(0, len(r) - db)
        while len(r) - 1 >= db and r:
            k = len(r) - 1 - db
            c = r[-1] * inv_lead
            q[k] = c
            for j in range(db + 1):
                r[k + j] = r[k + j] - c * other[j]
            while r and r[-1].is_zero():
                r.pop()
        return FqPoly(self.field, q), FqPoly(self.field, r)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def shift(self, k):
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return FqPoly(self.field, [self.field.zero()] * k + list(self.coeffs))

    def derivative(self):
        return FqPoly(self.field, [self.coeffs[i] * i for i in range(1, len(self.coeffs))])

    def monic(self):
        if self.is_zero():
            return self
        inv = self.lead().inv()
        return self * inv

    def evaluate(self, x):
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def powmod(self, e, mod):
        result = FqPoly(self.field, [1])
        b = self % mod
        while e:
            if e & 1:
                result = (result * b) % mod
            b = (b * b) % mod
            e >>= 1
        return result

    def is_irreducible(self):
        """Irreducibility over F_q (degree >= 1)."""
        r = self.degree
        if r < 1:
            return False
        if r == 1:
            return True
        q = self.field.q
        x = FqPoly(self.field, [0, 1])
        # iterate s = x^(q^i) mod self; any common factor with x^(q^i) - x
        # exposes an irreducible factor of degree dividing i
        s = x
        for i in range(1, r + 1):
            s = s.powmod(q, self)
            diff = s - x
            if i <= r // 2:
                if poly_gcd(diff, self).degree > 0:
                    return False
            elif i == r:
                if not diff.is_zero():
                    return False
        return True

    def __eq__(self, other):
        return (isinstance(other, FqPoly) and other.field == self.field
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "0"
        return " + ".join("%r*x^%d" % (c, i) for i, c in enumerate(self.coeffs)
                          if not c.is_zero())


def poly_gcd(f, g):
    """Monic gcd of two polynomials over F_q; gcd(f, 0) is monic f."""
    if f.is_zero() and g.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(f, g):
    """(d, u, v) with u*f + v*g = d, d the monic gcd."""
    if f.is_zero() and g.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    field = f.field
    r0, r1 = f, g
    u0, u1 = FqPoly(field, [1]), FqPoly(field, [])
    v0, v1 = FqPoly(field, []), FqPoly(field, [1])
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    lead_inv = r0.lead().inv()
    return r0 * lead_inv, u0 * lead_inv, v0 * lead_inv


def is_separable(Q):
    """True when Q has no repeated roots (gcd(Q, Q') is constant).

    Q may be reducible; squarefree is all that is required of a curve model.
    Degrees below 3 are rejected since no hyperelliptic model has them.
    """
    if Q.degree < 3:
        raise DegreeTooSmall("model degree must be at least 3, got %d" % Q.degree)
    return poly_gcd(Q, Q.derivative()).degree == 0
