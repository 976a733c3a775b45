# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_kernels_py``.

Same signatures and results; the polynomial product takes a machine-word
path when the coefficient bound provably fits in 63 bits and otherwise
falls back to Python integer arithmetic.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

from derangement._kernels_py import poly_mul as _py_poly_mul

ctypedef long long i64

# a Python int, so the bound check never coerces a big product to C
_LIMIT = 1 << 62


def poly_mul(a, b):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j
    if la == 0 or lb == 0:
        return []
    cdef object ma = max([abs(u) for u in a])
    cdef object mb = max([abs(u) for u in b])
    cdef object bound = ma * mb * min(la, lb)
    if ma >= _LIMIT or mb >= _LIMIT or bound >= _LIMIT:
        return _py_poly_mul(a, b)
    cdef i64* ca = <i64*>malloc(la * sizeof(i64))
    cdef i64* cb = <i64*>malloc(lb * sizeof(i64))
    cdef i64* out = <i64*>malloc((la + lb - 1) * sizeof(i64))
    cdef i64 x
    try:
        for i in range(la):
            ca[i] = a[i]
        for j in range(lb):
            cb[j] = b[j]
        memset(out, 0, (la + lb - 1) * sizeof(i64))
        for i in range(la):
            x = ca[i]
            if x != 0:
                for j in range(lb):
                    out[i + j] += x * cb[j]
        return [out[i] for i in range(la + lb - 1)]
    finally:
        free(ca)
        free(cb)
        free(out)


cdef int _rank_buf(int* m, int nrows, int ncols, int p):
    cdef int rank = 0, col, r, piv, c, f, inv, e, base
    for col in range(ncols):
        piv = -1
        for r in range(rank, nrows):
            if m[r * ncols + col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for c in range(ncols):
                m[rank * ncols + c], m[piv * ncols + c] = m[piv * ncols + c], m[rank * ncols + c]
        # inverse by Fermat, p is small
        inv = 1
        base = m[rank * ncols + col]
        e = p - 2
        while e > 0:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for c in range(ncols):
            m[rank * ncols + c] = (m[rank * ncols + c] * inv) % p
        for r in range(nrows):
            if r != rank:
                f = m[r * ncols + col]
                if f != 0:
                    for c in range(ncols):
                        m[r * ncols + c] = ((m[r * ncols + c] - f * m[rank * ncols + c]) % p + p) % p
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_mod_p(rows, int p):
    cdef int nrows = len(rows)
    if nrows == 0:
        return 0
    cdef int ncols = len(rows[0]), i, j
    cdef int* m = <int*>malloc(nrows * ncols * sizeof(int))
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                m[i * ncols + j] = row[j] % p
        return _rank_buf(m, nrows, ncols, p)
    finally:
        free(m)


def rank_of_difference(g, h, int n, int p):
    cdef int i
    cdef int* m = <int*>malloc(n * n * sizeof(int))
    try:
        for i in range(n * n):
            m[i] = (g[i] - h[i]) % p
        return _rank_buf(m, n, n, p)
    finally:
        free(m)


def count_fixed(g, int n, int k, int p, bint rank_exact):
    cdef int nk = n * k, i, c, t, pos, s, ok
    cdef long long total = 0, it, count
    cdef int* gg = <int*>malloc(n * n * sizeof(int))
    cdef int* digits = <int*>malloc((nk if nk > 0 else 1) * sizeof(int))
    cdef int* cols = <int*>malloc((nk if nk > 0 else 1) * sizeof(int))
    try:
        for i in range(n * n):
            gg[i] = g[i] % p
        for i in range(nk):
            digits[i] = 0
        count = 1
        for i in range(nk):
            count *= p
        for it in range(count):
            ok = 1
            for i in range(n):
                for c in range(k):
                    s = 0
                    for t in range(n):
                        s += gg[i * n + t] * digits[t * k + c]
                    if (s - digits[i * k + c]) % p != 0:
                        ok = 0
                        break
                if not ok:
                    break
            if ok:
                if not rank_exact or k == 0:
                    total += 1
                else:
                    # columns of x as rows of a k x n matrix
                    for c in range(k):
                        for i in range(n):
                            cols[c * n + i] = digits[i * k + c]
                    if _rank_buf(cols, k, n, p) == k:
                        total += 1
            pos = 0
            while pos < nk:
                digits[pos] += 1
                if digits[pos] < p:
                    break
                digits[pos] = 0
                pos += 1
        return total
    finally:
        free(gg)
        free(digits)
        free(cols)
