"""The zeta-function pipeline for y^2 = Q(x) over F_q, q = p^n odd.

The computation follows the p-adic cohomology route.  The curve is lifted
coefficient-wise to Z_q; the Frobenius lift sends x to x^p and y to
y^p (1 + pZ/y^2p)^(1/2) with pZ = Q^sigma(x^p) - Q(x)^p, so the image of a
basis differential is a finite sum of terms (polynomial) * dx / y^m over odd
m once the binomial series is truncated at the working precision.  Each term
is pushed back into the chosen basis with two reduction moves:

  * fold:   Q * y^-m = y^-(m-2), lowering polynomial degree without division;
  * step:   via U Q + V Q' = 1, split S = A Q + B Q' and trade
            S dx/y^m for (A + 2 B'/(m-2)) dx/y^(m-2) plus an exact form.

For the dx/y basis what lands at m = 1 may still have high degree; the tail
relations d(x^r y) remove one degree at a time there.  For the dx/y^3 basis
the cascade stops at m = 3 and the residue must already have degree < d - 1.

The matrix of the p-power Frobenius is assembled column by column, the
q-power matrix is the twisted product with its sigma-conjugates, and the
L-polynomial is the characteristic polynomial read modulo p^N and lifted by
the Weil bounds.  Precision bookkeeping lives in `plan_precision`: N digits
are needed for the final lift, a pad absorbs the bounded losses of the
reduction of truncated tail terms, and guard digits pay for the window
erosion of every exact division the cascade performs.
"""

import time
from fractions import Fraction
from math import comb, factorial

from .errors import (
    DegreeTooSmall,
    NewtonDivisionFailure,
    NonBasisResidual,
    NotSeparable,
    OddDegree,
    PrecisionExhausted,
    WeilBoundViolation,
)
from .gf import FqPoly, is_separable, poly_xgcd
from .zq import ZqContext, ZqElement, ZqPoly


def _ilog(p, x):
    """Largest e with p^e <= x (x >= 1)."""
    e = 0
    v = p
    while v <= x:
        e += 1
        v *= p
    return e


def _vp(p, x):
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


class CurveModel:
    """A normalized curve: monic separable Q, plus the twist flag."""

    __slots__ = ("field", "Q", "d", "g", "twisted")

    def __init__(self, field, Q, twisted):
        self.field = field
        self.Q = Q
        self.d = Q.degree
        self.g = (self.d - 1) // 2
        self.twisted = twisted

    def __repr__(self):
        return "CurveModel(d=%d, g=%d, twisted=%s over %r)" % (
            self.d, self.g, self.twisted, self.field)


def normalize_model(field, coeffs):
    """Validate y^2 = Q(x) and bring Q to a monic model.

    For odd degree the substitution x -> a x, y -> a^((d+1)/2) y (a the
    leading coefficient) gives an isomorphic monic model.  For even degree
    the leading coefficient is divided out and remembered as a quadratic
    twist when it is a non-square.
    """
    Q = coeffs if isinstance(coeffs, FqPoly) else FqPoly(field, coeffs)
    if Q.degree < 3:
        raise DegreeTooSmall("need deg Q >= 3, got %d" % Q.degree)
    if not is_separable(Q):
        raise NotSeparable("Q has a repeated root over the algebraic closure")
    a = Q.lead()
    twisted = False
    if a != field.one():
        if Q.degree % 2 == 1:
            ainv = a.inv()
            scale = ainv ** (Q.degree + 1)
            pw = field.one()
            cs = []
            for i in range(Q.degree + 1):
                cs.append(Q[i] * pw * scale)
                pw = pw * a
            Q = FqPoly(field, cs)
        else:
            Q = Q * a.inv()
            twisted = not a.is_square()
    return CurveModel(field, Q, twisted)


class BasisChoice:
    """Which cohomology basis the reduction targets.

    k = 0 is the classical x^i dx/y basis; k = 1 uses x^i dx/y^3, which
    keeps the Frobenius matrix integral for small p.  For even-degree
    models the matrix has one extra eigenvalue (q for k = 0, 1 for k = 1)
    whose linear factor is stripped from the characteristic polynomial.
    """

    __slots__ = ("k", "name", "strip")

    def __init__(self, k, strip):
        self.k = k
        self.name = "b1" if k == 0 else "b2"
        self.strip = strip

    def __repr__(self):
        return "BasisChoice(%s, strip=%s)" % (self.name, self.strip)


def select_basis(curve, force=None):
    """Pick the basis for a curve, honouring an explicit override."""
    p, g, d = curve.field.p, curve.g, curve.d
    if d % 2 == 1:
        use_b1 = p >= 2 * g if force is None else (force == "b1")
        strip = None
    else:
        use_b1 = p > g if force is None else (force == "b1")
        strip = "X-q" if use_b1 else "X-1"
    return BasisChoice(0 if use_b1 else 1, strip)


class PrecisionPlan:
    """All the digit budgets for one run.

    N1 digits pin the middle L-coefficient through the Weil bound, N adds
    room for the trace corrections, pad absorbs reduction losses of the
    truncated series tail, and guard pays for window erosion of the exact
    divisions (cascade denominators, tail ladder, Newton identities).  The
    arithmetic runs at work_prec = N + pad + guard; results are read mod p^N.
    """

    __slots__ = ("N1", "N", "pad", "nwork", "guard", "work_prec", "jmax", "tail")

    def __init__(self, N1, N, pad, guard, jmax, tail):
        self.N1 = N1
        self.N = N
        self.pad = pad
        self.nwork = N + pad
        self.guard = guard
        self.work_prec = self.nwork + guard
        self.jmax = jmax
        self.tail = tail

    def __repr__(self):
        return ("PrecisionPlan(N1=%d, N=%d, nwork=%d, guard=%d, work=%d, tail=%d)"
                % (self.N1, self.N, self.nwork, self.guard, self.work_prec, self.tail))


def plan_precision(curve, basis, min_digits=None):
    p, n, g, d, k = curve.field.p, curve.field.n, curve.g, curve.d, basis.k
    bound = (2 * comb(2 * g, g)) ** 2 * p ** (n * g)
    N1 = 1
    while p ** (2 * N1) < bound:
        N1 += 1
    N = N1 + _ilog(p, 2 * N1) + 1
    if min_digits is not None and min_digits > N:
        N = min_digits
    if k == 1:
        pad = 0
    elif d % 2 == 1:
        pad = _ilog(p, 2 * g - 1) + 1
    else:
        pad = _ilog(p, g) + 1
    # series term j sits at y^-m, m = (2k+1)p + 2pj, with valuation >= j+1;
    # reducing a y^-m slot to the basis costs at most log_p(m-2) digits, so
    # drop a term only once valuation minus that loss clears N.  The margin
    # grows by >= 0 per term, so the first clearing term bounds all later ones.
    jmax = 0
    j = 0
    while True:
        m = (2 * k + 1) * p + 2 * p * j
        if j + 1 - _ilog(p, m - 2) < N:
            jmax = j
            j += 1
        else:
            break
    tail = (2 * k + 1) * p + 2 * p * jmax
    # window-slide guard: the visible window drops by every division the
    # cascade performs, even where the true denominators cancel
    guard_a = 0
    dsum = 0
    for m in range(5, tail + 1, 2):
        dsum += _vp(p, m - 2)
        head = -(-(m - p) // (2 * p)) + 1 - k
        guard_a = max(guard_a, dsum - head)
    guard_a = max(0, guard_a)
    guard_b = 0
    if k == 0:
        rmax = max(0, d * (p - 1) // 2 - p + 2)
        guard_b = sum(_vp(p, 2 * r + d) for r in range(rmax + 1))
    guard_n = _vp(p, factorial(g)) + 2
    return PrecisionPlan(N1, N, pad, guard_a + guard_b + guard_n, jmax, tail)


class Reducer:
    """Reduction of sums of (polynomial) dx/y^m terms to basis coordinates.

    Holds the lifted curve, its derivative, and the Bezout inverse of Q'
    modulo Q that the cascade steps need.
    """

    def __init__(self, ctx, curve, basis):
        self.ctx = ctx
        self.curve = curve
        self.k = basis.k
        self.d = curve.d
        self.Q = ctx.lift_poly(curve.Q)
        self.Qd = self.Q.deriv()
        self.V, self.U = self._bezout()

    def _bezout(self):
        # V = inverse of Q' mod Q at full precision, then U = (1 - V Q')/Q
        ctx = self.ctx
        Qb = self.curve.Q
        gcd, u, _ = poly_xgcd(Qb.derivative(), Qb)
        if gcd.degree != 0:
            raise NotSeparable("gcd(Q, Q') is not constant")
        V = ctx.lift_poly(u)
        two = ZqPoly(ctx, 0, ctx.eint(2))
        for _ in range(max(1, ctx.prec - 1).bit_length() + 1):
            t = (self.Qd * V).divmod_monic(self.Q)[1]
            V = (V * (two - t)).divmod_monic(self.Q)[1]
        one = ZqPoly(ctx, 0, ctx.eone())
        check = (self.Qd * V).divmod_monic(self.Q)[1] - one
        if not check.is_window_zero():
            raise PrecisionExhausted("Bezout lift did not converge")
        U = (one - V * self.Qd).exact_div_monic(self.Q)
        return V, U

    def step(self, S, m):
        """One cascade move: S dx/y^m minus an exact form, over y^(m-2)."""
        B = (S * self.V).divmod_monic(self.Q)[1]
        A = (S - B * self.Qd).exact_div_monic(self.Q)
        return A + B.deriv().mul_int(2).divide_int(m - 2)

    def tail_reduce(self, P):
        """Degree ladder at m = 1: subtract multiples of d(x^r y)."""
        d = self.d
        P = P.trim()
        while P.degree() >= d - 1:
            r = P.degree() - d + 1
            c = P.coeff(P.degree()).divide_int(2 * r + d)
            ladder = self.Qd.shift(r)
            if r > 0:
                ladder = ladder + self.Q.shift(r - 1).mul_int(2 * r)
            P = (P - ladder.mul_elt(c)).trim()
        return P

    def to_basis(self, slots):
        """Coordinates (length d-1) of a sum of slot polynomials over y^-m."""
        ctx, d, k = self.ctx, self.d, self.k
        work = {m: P for m, P in slots.items() if not P.is_window_zero()}

        def drop(m, T):
            # never add an exact zero: its val-0 window would truncate T's
            prev = work.get(m)
            work[m] = T if prev is None else prev + T

        if work:
            lowest = 3 if k == 0 else 5
            for m in range(max(work), lowest - 2, -2):
                P = work.get(m)
                if P is None or P.degree() < d:
                    continue
                quot, rem = P.divmod_monic(self.Q)
                work[m] = rem
                drop(m - 2, quot)
            for m in range(max(work), 4, -2):
                P = work.get(m)
                if P is None or P.is_window_zero():
                    continue
                drop(m - 2, self.step(P, m))
        if k == 1:
            res = work.get(3, _zero_poly(ctx)).trim()
            if res.degree() > d - 2:
                raise NonBasisResidual(
                    "residue at y^-3 has degree %d >= %d" % (res.degree(), d - 1))
            if 1 in work and not work[1].is_window_zero():
                raise NonBasisResidual("unexpected y^-1 term on the y^-3 basis")
        else:
            P3 = work.get(3)
            if P3 is not None and not P3.is_window_zero():
                drop(1, self.step(P3, 3))
            res = self.tail_reduce(work.get(1, _zero_poly(ctx)))
        return [res.coeff(i) for i in range(d - 1)]


def _zero_poly(ctx):
    return ZqPoly(ctx, 0, [])


class FrobSeries:
    """Shared series data for all columns of one Frobenius matrix.

    terms[j] = binom(-(2k+1)/2, j) * (pZ)^j as a ZqPoly with val >= j; the
    column image only shifts these by x^(p i + p - 1) and multiplies by p.
    """

    def __init__(self, reducer, plan):
        ctx = reducer.ctx
        self.reducer = reducer
        self.plan = plan
        self.p = ctx.p
        self.k = reducer.k
        Q = reducer.Q
        Qp = Q
        for _ in range(self.p - 1):
            Qp = Qp * Q
        pz = (Q.sigma().subst_xp() - Qp).strip_val(1)
        self.terms = []
        pw = ZqPoly(ctx, 0, ctx.eone())
        b = Fraction(1)
        for j in range(plan.jmax + 1):
            if j > 0:
                pw = pw * pz
                b *= Fraction(-(2 * self.k + 1) - 2 * (j - 1), 2 * j)
            self.terms.append(pw.mul_scalar(ctx.from_fraction(b)))

    def column_slots(self, col):
        """Slot dict for the image of x^col dx/y^(2k+1), col in [0, d-2]."""
        sh = self.p * (col + 1) - 1
        slots = {}
        base = (2 * self.k + 1) * self.p
        for j, term in enumerate(self.terms):
            m = base + 2 * self.p * j
            slots[m] = term.shift(sh).mul_int(self.p)
        return slots


def build_frobenius_matrix(reducer, plan):
    """(d-1) x (d-1) matrix M with column i the basis coordinates of the
    Frobenius image of x^i dx/y^(2k+1)."""
    series = FrobSeries(reducer, plan)
    d = reducer.d
    cols = []
    for i in range(d - 1):
        cols.append([e.normalized() for e in reducer.to_basis(series.column_slots(i))])
    return [[cols[i][j] for i in range(d - 1)] for j in range(d - 1)]


def _mat_mul(M, A):
    s = len(M)
    out = []
    for r in range(s):
        row = []
        for c in range(s):
            acc = (M[r][0] * A[0][c]).normalized()
            for t in range(1, s):
                acc = (acc + M[r][t] * A[t][c]).normalized()
            row.append(acc)
        out.append(row)
    return out


def twisted_power(ctx, M):
    """M sigma(M) ... sigma^(n-1)(M): the matrix of the q-power Frobenius."""
    N = M
    for k in range(1, ctx.n):
        Mk = [[e.sigma(k) for e in row] for row in M]
        N = _mat_mul(N, Mk)
    return N


def _dot(xs, ys):
    acc = xs[0] * ys[0]
    for t in range(1, len(xs)):
        acc = acc + xs[t] * ys[t]
    return acc.normalized()


def charpoly_full(ctx, M):
    """Characteristic polynomial of M by the division-free (Berkowitz) method.

    Returns ascending ZqElement coefficients [c_0, ..., c_s] with c_s = 1.
    """
    s = len(M)
    one = ctx.one()
    P = [one, -M[0][0]]  # descending coefficients of det(X I - minor)
    for i in range(1, s):
        R = M[i][:i]
        C = [M[t][i] for t in range(i)]
        t = [one, -M[i][i]]
        w = C
        t.append(-_dot(R, w))
        for _ in range(3, i + 2):
            w = [_dot(M[r][:i], w) for r in range(i)]
            t.append(-_dot(R, w))
        new = []
        for r in range(i + 2):
            acc = ctx.zero()
            for c in range(min(r, i) + 1):
                if r - c < len(t):
                    acc = acc + t[r - c] * P[c]
            new.append(acc)
        P = new
    return list(reversed(P))


def charpoly_mod(ctx, N, g, plan, extra_root=0):
    """Top-half L-coefficients mod p^N from traces of matrix powers.

    The traces of N^r are the power sums of all eigenvalues; for an even
    degree model the spurious eigenvalue (q or 1, passed as `extra_root`)
    is subtracted before the Newton identities produce e_1 .. e_g.  The
    identities are then re-expanded as a consistency check on the exact
    divisions by r.  Returns {r: c_(2g-r) mod p^N} for r = 1..g.
    """
    s = len(N)
    traces = []
    P = N
    for r in range(1, g + 1):
        if r > 1:
            P = _mat_mul(P, N)
        tr = P[0][0]
        for t in range(1, s):
            tr = tr + P[t][t]
        if extra_root:
            tr = tr + ctx.elem_int(-(extra_root ** r))
        traces.append(tr.normalized())
    def newton_rhs(e, r):
        # sum_(i=1..r) (-1)^(i-1) e_(r-i) p_i
        acc = None
        for i in range(1, r + 1):
            term = e[r - i] * traces[i - 1]
            if i % 2 == 0:
                term = -term
            acc = term if acc is None else acc + term
        return acc.normalized()

    e = [ctx.one()]
    for r in range(1, g + 1):
        e.append(newton_rhs(e, r).divide_int(r).normalized())
    nd = plan.N
    out = {}
    for r in range(1, g + 1):
        # re-expand: r * e_r must equal the alternating sum it came from
        if e[r].mul_int(r).residue_int(nd) != newton_rhs(e, r).residue_int(nd):
            raise NewtonDivisionFailure("power-sum identity fails at r=%d" % r)
        sign = -1 if r % 2 == 1 else 1
        out[r] = (sign * e[r].residue_int(nd)) % ctx.p ** nd
    return out


def lift_lpoly(cres, p, N, q, g):
    """Signed lift of the top coefficients and functional-equation fill.

    cres maps r = 1..g to c_(2g-r) mod p^N.  Each residue lifts to the
    unique integer in the symmetric window, which the Weil bound
    |c_(2g-r)| <= C(2g, r) q^(r/2) must accept; the lower half is then
    c_r = q^(g-r) c_(2g-r) and L(1) > 0 is checked.
    """
    pN = p ** N
    half = (pN - 1) // 2
    out = [0] * (2 * g + 1)
    out[2 * g] = 1
    for r in range(1, g + 1):
        x = cres[r] % pN
        if x > half:
            x -= pN
        if x * x > comb(2 * g, r) ** 2 * q ** r:
            raise WeilBoundViolation(
                "|c_%d| = %d exceeds the Weil bound" % (2 * g - r, abs(x)))
        out[2 * g - r] = x
    for r in range(g):
        out[r] = q ** (g - r) * out[2 * g - r]
    if sum(out) <= 0:
        raise WeilBoundViolation("L(1) = %d is not positive" % sum(out))
    return out


def kernel_generator(curve, ctx=None):
    """(S, V) with V = S Q' - 2 S' Q of degree <= 2g, for even-degree models.

    S is the monic degree-(g+1) polynomial making V dx/y^3 the differential
    of -2S/y, so V dx/y^3 reduces to zero.  The triangular solve divides by
    the integers d - 2i, which can be p-divisible, so the coefficients are
    tracked with their valuations and need not stay p-integral.  When no
    context is passed, one is built with enough headroom for those divisions.
    """
    if curve.d % 2 == 1:
        raise OddDegree("the kernel form exists only for even-degree models")
    g, d, p = curve.g, curve.d, curve.field.p
    if ctx is None:
        loss = 0
        for i in range(g + 1):
            m = d - 2 * i
            while m % p == 0:
                loss += 1
                m //= p
        ctx = ZqContext(curve.field, loss + 8)
    Q = ctx.lift_poly(curve.Q)
    Qd = Q.deriv()
    s = [ctx.zero() for _ in range(g + 1)] + [ctx.one()]
    for i in range(g, -1, -1):
        S = ZqPoly.from_coeffs(ctx, s)
        V = S * Qd - S.deriv().mul_int(2) * Q
        s[i] = V.coeff(d - 1 + i).divide_int(-(d - 2 * i))
    S = ZqPoly.from_coeffs(ctx, s)
    V = S * Qd - S.deriv().mul_int(2) * Q
    if V.degree() > 2 * g:
        raise NonBasisResidual("kernel form still has degree %d" % V.degree())
    return S, V


class ZetaResult:
    """Everything one run produces, ready for serialization."""

    __slots__ = ("L", "q", "p", "n", "g", "d", "basis", "strip", "twisted",
                 "N1", "N", "nwork", "matrix_min_val", "timings", "warnings")

    def __init__(self, **kw):
        for k in self.__slots__:
            setattr(self, k, kw[k])

    def as_dict(self):
        return {k: getattr(self, k) for k in self.__slots__}

    def __repr__(self):
        return "ZetaResult(L=%s, q=%d, basis=%s)" % (self.L, self.q, self.basis)


def zeta_lpoly(field, coeffs, basis=None, min_digits=None):
    """L-polynomial of y^2 = Q(x) over the given field.

    `basis` forces "b1" (dx/y) or "b2" (dx/y^3); the default picks per the
    integrality rules.  Returns a ZetaResult whose L is the ascending monic
    coefficient list [c_0, ..., c_2g] with c_0 = q^g.
    """
    t0 = time.perf_counter()
    timings = {}
    warnings = []
    curve = normalize_model(field, coeffs)
    choice = select_basis(curve, force=basis)
    plan = plan_precision(curve, choice, min_digits=min_digits)
    ctx = ZqContext(field, plan.work_prec)
    timings["plan"] = time.perf_counter() - t0
    t1 = time.perf_counter()
    red = Reducer(ctx, curve, choice)
    M = build_frobenius_matrix(red, plan)
    vals = [e.valuation() for row in M for e in row]
    vals = [v for v in vals if v is not None]
    min_val = min(vals) if vals else None
    if choice.k == 0:
        integral = field.p >= 2 * curve.g if curve.d % 2 == 1 \
            else field.p > curve.g
        if not integral:
            warnings.append(
                "dx/y basis with p < 2g: matrix entries may be non-integral"
                " (observed min valuation %s)" % min_val)
    timings["matrix"] = time.perf_counter() - t1
    t2 = time.perf_counter()
    Nq = twisted_power(ctx, M)
    extra = 0
    if choice.strip == "X-q":
        extra = field.q
    elif choice.strip == "X-1":
        extra = 1
    cres = charpoly_mod(ctx, Nq, curve.g, plan, extra_root=extra)
    L = lift_lpoly(cres, field.p, plan.N, field.q, curve.g)
    if curve.twisted:
        L = [(-c if i % 2 == 1 else c) for i, c in enumerate(L)]
    timings["charpoly"] = time.perf_counter() - t2
    timings["total"] = time.perf_counter() - t0
    if min_val is not None and min_val < 0 and choice.k == 1:
        warnings.append("negative valuation %d on the y^-3 basis" % min_val)
    return ZetaResult(
        L=L, q=field.q, p=field.p, n=field.n, g=curve.g, d=curve.d,
        basis=choice.name, strip=choice.strip, twisted=curve.twisted,
        N1=plan.N1, N=plan.N, nwork=plan.nwork, matrix_min_val=min_val,
        timings=timings, warnings=warnings)
