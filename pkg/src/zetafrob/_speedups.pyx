# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled arithmetic kernels for Z_q[x] at a fixed modulus p^m.

Same contract and flat layout as `_pure`: an element of Z_q is n ints in
[0, pm), a polynomial is a flat list with coefficient i in slots
[i*n, (i+1)*n), and `mt` holds the low coefficients of the monic modulus of
Z_q over Z_p.  Products run through unsigned 128-bit intermediates, so the
modulus must stay below 2^62; `_kernel.get_kernels` enforces that bound and
falls back to the pure kernels beyond it.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memset

ctypedef unsigned long long u64

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"


cdef inline u64 mulmod(u64 a, u64 b, u64 pm) noexcept:
    return <u64>((<u128>a * b) % pm)


cdef u64 *to_array(list values) except NULL:
    cdef Py_ssize_t i, size = len(values)
    cdef u64 *arr = <u64 *>malloc((size if size else 1) * sizeof(u64))
    if arr == NULL:
        raise MemoryError()
    for i in range(size):
        arr[i] = <u64>values[i]
    return arr


cdef list to_list(u64 *arr, Py_ssize_t size):
    cdef Py_ssize_t i
    cdef list out = [0] * size
    for i in range(size):
        out[i] = <object>arr[i]
    return out


cdef void elt_mul_raw(u64 *out, u64 *a, u64 *b, Py_ssize_t n, u64 pm,
                      u64 *mt, u128 *scratch) noexcept:
    # scratch has 2n-1 slots; accumulated terms stay below pm < 2^62, so
    # the 128-bit sums cannot overflow at any realistic extension degree
    cdef Py_ssize_t i, j
    cdef u64 v
    memset(scratch, 0, (2 * n - 1) * sizeof(u128))
    for i in range(n):
        if a[i]:
            for j in range(n):
                if b[j]:
                    scratch[i + j] += mulmod(a[i], b[j], pm)
    for i in range(2 * n - 2, n - 1, -1):
        v = <u64>(scratch[i] % pm)
        if v:
            for j in range(n):
                if mt[j]:
                    scratch[i - n + j] += pm - mulmod(v, mt[j], pm)
    for i in range(n):
        out[i] = <u64>(scratch[i] % pm)


def elt_mul(list a, list b, Py_ssize_t n, object pm_obj, list mt):
    """Product of two Z_q elements."""
    cdef u64 pm = <u64>pm_obj
    if n == 1:
        return [mulmod(<u64>a[0], <u64>b[0], pm)]
    cdef u64 *ca = to_array(a)
    cdef u64 *cb = to_array(b)
    cdef u64 *cm = to_array(mt)
    cdef u64 *co = <u64 *>malloc(n * sizeof(u64))
    cdef u128 *scratch = <u128 *>malloc((2 * n - 1) * sizeof(u128))
    if co == NULL or scratch == NULL:
        free(ca); free(cb); free(cm); free(co); free(scratch)
        raise MemoryError()
    elt_mul_raw(co, ca, cb, n, pm, cm, scratch)
    out = to_list(co, n)
    free(ca); free(cb); free(cm); free(co); free(scratch)
    return out


def poly_mul(list a, list b, Py_ssize_t n, object pm_obj, list mt):
    """Product of two polynomials over Z_q (flat layout)."""
    if not a or not b:
        return []
    cdef u64 pm = <u64>pm_obj
    cdef Py_ssize_t la = len(a), lb = len(b)
    cdef Py_ssize_t da = la // n, db = lb // n
    cdef Py_ssize_t dc = da + db - 1
    cdef Py_ssize_t i, j, s, u, base
    cdef u64 v, x
    cdef u64 *ca = to_array(a)
    cdef u64 *cb = to_array(b)
    cdef u64 *cm = to_array(mt)
    cdef Py_ssize_t width = 2 * n - 1
    cdef u128 *acc = <u128 *>malloc(dc * width * sizeof(u128))
    cdef u64 *co = <u64 *>malloc(dc * n * sizeof(u64))
    if acc == NULL or co == NULL:
        free(ca); free(cb); free(cm); free(acc); free(co)
        raise MemoryError()
    memset(acc, 0, dc * width * sizeof(u128))
    if n == 1:
        for i in range(da):
            x = ca[i]
            if x:
                for j in range(db):
                    if cb[j]:
                        acc[i + j] += mulmod(x, cb[j], pm)
        for i in range(dc):
            co[i] = <u64>(acc[i] % pm)
    else:
        for i in range(da):
            for j in range(db):
                base = (i + j) * width
                for s in range(n):
                    x = ca[i * n + s]
                    if x:
                        for u in range(n):
                            if cb[j * n + u]:
                                acc[base + s + u] += mulmod(x, cb[j * n + u], pm)
        for i in range(dc):
            base = i * width
            for s in range(2 * n - 2, n - 1, -1):
                v = <u64>(acc[base + s] % pm)
                if v:
                    for u in range(n):
                        if cm[u]:
                            acc[base + s - n + u] += pm - mulmod(v, cm[u], pm)
            for s in range(n):
                co[i * n + s] = <u64>(acc[base + s] % pm)
    out = to_list(co, dc * n)
    free(ca); free(cb); free(cm); free(acc); free(co)
    return out


def poly_divmod(list a, list q, Py_ssize_t n, object pm_obj, list mt):
    """Division with remainder by a monic polynomial over Z_q.

    Returns (quotient, remainder) in flat layout; the remainder is padded to
    exactly deg(q) coefficient slots.
    """
    cdef u64 pm = <u64>pm_obj
    cdef Py_ssize_t la = len(a), lq = len(q)
    cdef Py_ssize_t da = la // n, dq = lq // n
    if da < dq:
        return [], list(a) + [0] * ((dq - 1) * n - la)
    cdef Py_ssize_t k, j, s, top, base
    cdef u64 c
    cdef bint live
    cdef u64 *cr = to_array(a)
    cdef u64 *cq = to_array(q)
    cdef u64 *cm = to_array(mt)
    cdef u64 *quot = <u64 *>malloc((da - dq + 1) * n * sizeof(u64))
    cdef u64 *prod = <u64 *>malloc(n * sizeof(u64))
    cdef u128 *scratch = <u128 *>malloc((2 * n - 1) * sizeof(u128))
    if quot == NULL or prod == NULL or scratch == NULL:
        free(cr); free(cq); free(cm); free(quot); free(prod); free(scratch)
        raise MemoryError()
    memset(quot, 0, (da - dq + 1) * n * sizeof(u64))
    if n == 1:
        for k in range(da - dq, -1, -1):
            c = cr[k + dq - 1]
            if c:
                quot[k] = c
                for j in range(dq - 1):
                    if cq[j]:
                        cr[k + j] = (cr[k + j] + pm - mulmod(c, cq[j], pm)) % pm
                cr[k + dq - 1] = 0
    else:
        for k in range(da - dq, -1, -1):
            top = (k + dq - 1) * n
            live = False
            for s in range(n):
                if cr[top + s]:
                    live = True
                    break
            if live:
                for s in range(n):
                    quot[k * n + s] = cr[top + s]
                for j in range(dq - 1):
                    live = False
                    for s in range(n):
                        if cq[j * n + s]:
                            live = True
                            break
                    if live:
                        elt_mul_raw(prod, cr + top, cq + j * n, n, pm, cm,
                                    scratch)
                        base = (k + j) * n
                        for s in range(n):
                            cr[base + s] = (cr[base + s] + pm - prod[s]) % pm
                for s in range(n):
                    cr[top + s] = 0
    out_q = to_list(quot, (da - dq + 1) * n)
    out_r = to_list(cr, (dq - 1) * n)
    free(cr); free(cq); free(cm); free(quot); free(prod); free(scratch)
    return out_q, out_r
