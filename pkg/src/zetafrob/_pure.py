"""Pure-Python arithmetic kernels for Z_q[x] at a fixed modulus p^m.

The compiled module `_speedups` exports the same three functions; callers go
through `_kernel.get_kernels` which picks an implementation per modulus.

Data layout: an element of Z_q (q = p^n) is a list of n ints in [0, pm);
a polynomial over Z_q is a flat list of length n * (number of coefficients),
coefficient i occupying slots [i*n, (i+1)*n).  `mt` holds the n low
coefficients of the monic degree-n modulus of Z_q over Z_p (so t^n = -mt).

The n = 1 paths matter most here: they are the fallback when p^m outgrows
the 62-bit budget of the compiled kernels, and that only happens for small p
with deep precision, where the base field is prime in practice.  Polynomial
products there use Kronecker substitution so CPython's big-integer
multiplication does the heavy lifting.
"""


def elt_mul(a, b, n, pm, mt):
    """Product of two Z_q elements."""
    if n == 1:
        return [(a[0] * b[0]) % pm]
    c = [0] * (2 * n - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                c[i + j] += x * y
    for i in range(2 * n - 2, n - 1, -1):
        v = c[i] % pm
        if v:
            for j in range(n):
                if mt[j]:
                    c[i - n + j] -= v * mt[j]
    return [v % pm for v in c[:n]]


def _kron_mul(a, b, pm):
    # pack coefficients into one big integer each; slot width is chosen so
    # convolution sums cannot carry between slots, making unpacking exact
    nb = ((min(len(a), len(b)) * (pm - 1) * (pm - 1)).bit_length() + 8) // 8
    abig = int.from_bytes(b"".join(v.to_bytes(nb, "little") for v in a), "little")
    bbig = int.from_bytes(b"".join(v.to_bytes(nb, "little") for v in b), "little")
    out_len = len(a) + len(b) - 1
    cb = (abig * bbig).to_bytes(nb * (out_len + 1), "little")
    return [int.from_bytes(cb[i * nb:(i + 1) * nb], "little") % pm
            for i in range(out_len)]


def poly_mul(a, b, n, pm, mt):
    """Product of two polynomials over Z_q (flat layout)."""
    if not a or not b:
        return []
    if n == 1:
        return _kron_mul(a, b, pm)
    da, db = len(a) // n, len(b) // n
    acc = [[0] * (2 * n - 1) for _ in range(da + db - 1)]
    for i in range(da):
        ai = a[i * n:(i + 1) * n]
        if not any(ai):
            continue
        for j in range(db):
            row = acc[i + j]
            off = j * n
            for s in range(n):
                x = ai[s]
                if x:
                    for u in range(n):
                        y = b[off + u]
                        if y:
                            row[s + u] += x * y
    out = []
    for row in acc:
        for i in range(2 * n - 2, n - 1, -1):
            v = row[i] % pm
            if v:
                for j in range(n):
                    if mt[j]:
                        row[i - n + j] -= v * mt[j]
        out.extend(v % pm for v in row[:n])
    return out


def poly_divmod(a, q, n, pm, mt):
    """Division with remainder by a monic polynomial over Z_q.

    Returns (quotient, remainder) in flat layout; the remainder is padded to
    exactly deg(q) coefficient slots.
    """
    dq = len(q) // n
    da = len(a) // n
    if da < dq:
        return [], list(a) + [0] * ((dq - 1) * n - len(a))
    if n == 1:
        r = list(a)
        quot = [0] * (da - dq + 1)
        for k in range(da - dq, -1, -1):
            c = r[k + dq - 1]
            if c:
                quot[k] = c
                for j in range(dq - 1):
                    if q[j]:
                        r[k + j] = (r[k + j] - c * q[j]) % pm
                r[k + dq - 1] = 0
        return quot, r[:dq - 1]
    r = list(a)
    quot = [0] * ((da - dq + 1) * n)
    for k in range(da - dq, -1, -1):
        top = (k + dq - 1) * n
        c = r[top:top + n]
        if any(c):
            quot[k * n:(k + 1) * n] = c
            for j in range(dq - 1):
                qj = q[j * n:(j + 1) * n]
                if any(qj):
                    prod = elt_mul(c, qj, n, pm, mt)
                    base = (k + j) * n
                    for s in range(n):
                        r[base + s] = (r[base + s] - prod[s]) % pm
            for s in range(n):
                r[top + s] = 0
    return quot, r[:(dq - 1) * n]
