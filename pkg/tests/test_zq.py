import random

import pytest

from zetafrob import _pure
from zetafrob.errors import DivisionByZero, PrecisionExhausted
from zetafrob.gf import FqPoly, gf_make
from zetafrob.zq import ZqContext, ZqElement, ZqPoly


def ctx_f9(prec=2):
    return ZqContext(gf_make(3, 2, [1, 0, 1]), prec)


def test_int_inv():
    ctx = ZqContext(gf_make(3, 1), 5)
    assert ctx.int_inv(2) == 122  # 2 * 122 = 244 = 243 + 1
    assert (ctx.int_inv(7) * 7) % 243 == 1
    with pytest.raises(DivisionByZero):
        ctx.int_inv(9)


def test_sigma_theta_f9():
    # theta^3 = -theta in F_9 = F_3[t]/(t^2+1); the lifted root stays -theta
    # at precision 2 because (-theta)^2 + 1 = theta^2 + 1 = 0 exactly
    ctx = ctx_f9(prec=2)
    assert ctx.esigma([0, 1]) == [0, 8]


def test_sigma_is_ring_hom_and_involution():
    rng = random.Random(5)
    for (p, n, mod, prec) in [(3, 2, [1, 0, 1], 6), (5, 2, [2, 0, 1], 4),
                              (3, 3, [1, 2, 0, 1], 5)]:
        ctx = ZqContext(gf_make(p, n, mod), prec)
        for _ in range(25):
            a = [rng.randrange(ctx.pm) for _ in range(n)]
            b = [rng.randrange(ctx.pm) for _ in range(n)]
            assert ctx.esigma(ctx.emul(a, b)) == ctx.emul(ctx.esigma(a), ctx.esigma(b))
            assert ctx.esigma(ctx.eadd(a, b)) == ctx.eadd(ctx.esigma(a), ctx.esigma(b))
            # sigma^n is the identity
            s = a
            for _ in range(n):
                s = ctx.esigma(s)
            assert s == a
            # iterating k times agrees with the k-step table
            s2 = ctx.esigma(ctx.esigma(a))
            assert s2 == ctx.esigma(a, 2)
        # sigma reduces to x -> x^p on the residue field
        F = ctx.field
        for _ in range(10):
            a = F.random_element(rng)
            lifted = ctx.esigma([c for c in a.coeffs])
            assert F.elem([x % p for x in lifted]) == a.frobenius()


def test_einv():
    ctx = ZqContext(gf_make(5, 2, [2, 0, 1]), 4)
    rng = random.Random(1)
    for _ in range(20):
        a = [rng.randrange(ctx.pm) for _ in range(2)]
        if a[0] % 5 == 0 and a[1] % 5 == 0:
            continue
        assert ctx.emul(a, ctx.einv(a)) == ctx.eone()


def test_from_fraction():
    ctx = ZqContext(gf_make(3, 1), 4)
    # -1/2 = 40 mod 81 since 2*40 = 80 = -1
    assert ctx.from_fraction("-1/2") == 40
    with pytest.raises(DivisionByZero):
        ctx.from_fraction("1/3")


def test_elem_window_semantics():
    ctx = ZqContext(gf_make(3, 1), 4)  # pm = 81
    a = ZqElement(ctx, 0, [5])
    b = ZqElement(ctx, 2, [7])  # 9 * 7 = 63
    s = a + b
    assert s.val == 0 and s.mant == [68]
    # multiplication adds vals
    m = a * b
    assert m.val == 2 and m.mant == [35]
    # integer division slides the window without touching digits
    d = ZqElement(ctx, 0, [10]).divide_int(6)
    assert d.val == -1 and (d.mant[0] * 6) % (81 * 3) in (30, 30 + 243)  # sanity
    assert (d.mant[0] * 3) % 81 == (10 * ctx.int_inv(2) * 3) % 81
    # mul_int moves p-parts into the val
    e = a.mul_int(18)  # 18 = 2 * 3^2
    assert e.val == 2 and e.mant == [10]


def test_valuation_and_residue():
    ctx = ZqContext(gf_make(3, 1), 5)
    x = ZqElement(ctx, -2, [18])  # 18 = 2 * 3^2, so the value is 2, val 0
    assert x.valuation() == 0
    assert x.residue_int(3) == 2
    y = ZqElement(ctx, 1, [6])
    assert y.valuation() == 2
    assert y.residue_int(3) == 18 % 27
    z = ZqElement(ctx, -1, [4])  # 4/3 is not integral
    with pytest.raises(PrecisionExhausted):
        z.residue_int(2)
    assert ZqElement(ctx, 0, [0]).valuation() is None
    # a residue read past the window must refuse rather than fabricate digits
    with pytest.raises(PrecisionExhausted):
        ZqElement(ctx, -2, [9]).residue_int(5)


def test_residue_coords_extension():
    ctx = ctx_f9(prec=3)
    a = ZqElement(ctx, 0, [4, 9])
    assert a.residue_coords(2) == [4, 0]
    assert a.residue_int(2) == 4  # the theta part vanishes mod 9
    b = ZqElement(ctx, 0, [4, 3])
    with pytest.raises(PrecisionExhausted):
        b.residue_int(2)  # genuine theta component


def test_poly_roundtrip_divmod():
    rng = random.Random(9)
    for (p, n, mod, prec) in [(3, 1, None, 6), (7, 2, [3, 1, 1], 3)]:
        F = gf_make(p, n, mod)
        ctx = ZqContext(F, prec)
        for _ in range(20):
            da, dq = rng.randrange(3, 12), rng.randrange(1, 5)
            a = ZqPoly(ctx, 0, [rng.randrange(ctx.pm) for _ in range(n * da)])
            qf = [rng.randrange(ctx.pm) for _ in range(n * dq)] + ctx.eone()
            q = ZqPoly(ctx, 0, qf)
            quot, rem = a.divmod_monic(q)
            back = quot * q + rem
            ln = max(len(back.flat), len(a.flat))
            assert (back.flat + [0] * ln)[:ln] == (a.flat + [0] * ln)[:ln]
            assert rem.ncoeffs() == q.trim().ncoeffs() - 1


def test_poly_exact_division():
    ctx = ZqContext(gf_make(5, 1), 4)
    q = ZqPoly(ctx, 0, [2, 0, 1, 1])  # monic cubic
    t = ZqPoly(ctx, -1, [7, 3, 600, 1, 2])
    prod = t * q
    assert prod.val == -1
    quot = prod.exact_div_monic(q)
    assert quot.val == -1 and quot.trim().flat == t.trim().flat
    with pytest.raises(PrecisionExhausted):
        (prod + ZqPoly(ctx, -1, [1])).exact_div_monic(q)


def test_poly_ops():
    ctx = ZqContext(gf_make(3, 1), 4)
    f = ZqPoly(ctx, 0, [1, 2, 3])
    assert f.deriv().flat == [2, 6]
    assert f.shift(2).flat == [0, 0, 1, 2, 3]
    assert f.subst_xp().degree() == 6
    g = f.mul_int(9)
    assert g.val == 2 and g.flat == [1, 2, 3]
    h = f.divide_int(9)
    assert h.val == -2 and h.flat == [1, 2, 3]
    s = f + ZqPoly(ctx, 1, [1])
    assert s.val == 0 and s.flat == [4, 2, 3]
    assert (f - f).is_window_zero()


def test_lift_and_reduce():
    F = gf_make(3, 2, [1, 0, 1])
    ctx = ZqContext(F, 3)
    Q = FqPoly(F, [[1, 2], [0, 1], 2, 1])
    assert ctx.lift_poly(Q).reduce_modp() == Q
    a = F.elem([2, 1])
    assert ctx.lift_fq(a).mant == [2, 1]


def test_from_coeffs_alignment():
    ctx = ZqContext(gf_make(3, 1), 4)
    e0 = ZqElement(ctx, 0, [2])
    e1 = ZqElement(ctx, 2, [1])
    P = ZqPoly.from_coeffs(ctx, [e0, e1])
    assert P.val == 0 and P.flat == [2, 9]
    # an all-zero list still produces a usable polynomial
    z = ZqPoly.from_coeffs(ctx, [ctx.zero(), ctx.zero()])
    assert z.is_window_zero()


def test_kron_mul_matches_schoolbook():
    rng = random.Random(21)
    pm = 3 ** 7
    for _ in range(30):
        la, lb = rng.randrange(1, 15), rng.randrange(1, 15)
        a = [rng.randrange(pm) for _ in range(la)]
        b = [rng.randrange(pm) for _ in range(lb)]
        got = _pure.poly_mul(a, b, 1, pm, [0])
        want = [0] * (la + lb - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                want[i + j] = (want[i + j] + x * y) % pm
        assert got == want


def test_pure_elt_mul_matches_field():
    # multiplication mod p agrees with the residue field
    F = gf_make(7, 3, [2, 3, 0, 1])
    ctx = ZqContext(F, 3)
    rng = random.Random(2)
    for _ in range(25):
        a, b = F.random_element(rng), F.random_element(rng)
        prod = ctx.emul([c for c in a.coeffs], [c for c in b.coeffs])
        assert F.elem([x % 7 for x in prod]) == a * b
