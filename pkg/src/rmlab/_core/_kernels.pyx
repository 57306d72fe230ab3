# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels for binary extension fields GF(2^m), m <= 62.

Same contract as ``_kernels_py``; elements are bit-packed polynomials.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

BACKEND = "cython"


cdef extern from *:
    int __builtin_clzll(unsigned long long) nogil


cdef inline uint64_t _mul(uint64_t a, uint64_t b, uint64_t mod, int m) nogil:
    cdef uint64_t r = 0
    cdef uint64_t top = (<uint64_t>1) << m
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= mod
    return r


cdef inline int _deg(uint64_t x) nogil:
    if x == 0:
        return -1
    return 63 - __builtin_clzll(x)


cdef uint64_t _inv(uint64_t a, uint64_t mod, int m) except? 0:
    cdef uint64_t r0 = mod, r1 = a, s0 = 0, s1 = 1, t
    cdef int shift
    if a == 0:
        raise ZeroDivisionError("inverse of zero")
    while r1 != 1:
        shift = _deg(r0) - _deg(r1)
        if shift < 0:
            t = r0; r0 = r1; r1 = t
            t = s0; s0 = s1; s1 = t
            continue
        r0 ^= r1 << shift
        s0 ^= s1 << shift
        if r0 == 0:
            raise ZeroDivisionError("modulus is reducible")
        if _deg(r0) < _deg(r1):
            t = r0; r0 = r1; r1 = t
            t = s0; s0 = s1; s1 = t
    return s1


def bin_mul(uint64_t a, uint64_t b, uint64_t mod, int m):
    return _mul(a, b, mod, m)


def bin_pow(uint64_t a, e, uint64_t mod, int m):
    cdef uint64_t result = 1
    e = int(e)
    while e:
        if e & 1:
            result = _mul(result, a, mod, m)
        e >>= 1
        if e:
            a = _mul(a, a, mod, m)
    return result


def bin_inv(uint64_t a, uint64_t mod, int m):
    return _inv(a, mod, m)


def bin_frob(uint64_t a, int j, uint64_t mod, int m):
    cdef int i
    for i in range(j):
        a = _mul(a, a, mod, m)
    return a


cdef uint64_t* _load(rows, Py_ssize_t nrows, Py_ssize_t ncols) except NULL:
    cdef uint64_t* buf = <uint64_t*> malloc(max(nrows * ncols, 1) * sizeof(uint64_t))
    cdef Py_ssize_t i, j
    if buf == NULL:
        raise MemoryError()
    for i in range(nrows):
        row = rows[i]
        for j in range(ncols):
            buf[i * ncols + j] = row[j]
    return buf


cdef int _eliminate(uint64_t* a, Py_ssize_t nrows, Py_ssize_t ncols, uint64_t mod, int m,
                    bint full, Py_ssize_t* pivots, uint64_t* det) except -1:
    cdef Py_ssize_t r = 0, c, p, i, j
    cdef uint64_t f, inv, tmp
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and a[p * ncols + c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            for j in range(ncols):
                tmp = a[r * ncols + j]
                a[r * ncols + j] = a[p * ncols + j]
                a[p * ncols + j] = tmp
        if det != NULL:
            det[0] = _mul(det[0], a[r * ncols + c], mod, m)
        inv = _inv(a[r * ncols + c], mod, m)
        if full:
            for j in range(c, ncols):
                a[r * ncols + j] = _mul(a[r * ncols + j], inv, mod, m)
            inv = 1
        for i in range(nrows):
            if i == r or (not full and i < r):
                continue
            f = a[i * ncols + c]
            if f:
                f = _mul(f, inv, mod, m)
                for j in range(c, ncols):
                    if a[r * ncols + j]:
                        a[i * ncols + j] ^= _mul(f, a[r * ncols + j], mod, m)
        pivots[r] = c
        r += 1
    return r


def bin_rref(rows, Py_ssize_t ncols, uint64_t mod, int m):
    cdef Py_ssize_t nrows = len(rows), i, j, r
    cdef uint64_t* a = _load(rows, nrows, ncols)
    cdef Py_ssize_t* piv = <Py_ssize_t*> malloc(max(nrows, 1) * sizeof(Py_ssize_t))
    try:
        r = _eliminate(a, nrows, ncols, mod, m, True, piv, NULL)
        out = [[a[i * ncols + j] for j in range(ncols)] for i in range(r)]
        return out, [piv[i] for i in range(r)]
    finally:
        free(a)
        free(piv)


def bin_rank(rows, Py_ssize_t ncols, uint64_t mod, int m):
    cdef Py_ssize_t nrows = len(rows)
    cdef uint64_t* a = _load(rows, nrows, ncols)
    cdef Py_ssize_t* piv = <Py_ssize_t*> malloc(max(nrows, 1) * sizeof(Py_ssize_t))
    try:
        return _eliminate(a, nrows, ncols, mod, m, False, piv, NULL)
    finally:
        free(a)
        free(piv)


def bin_det(rows, uint64_t mod, int m):
    cdef Py_ssize_t n = len(rows)
    cdef uint64_t det = 1
    cdef uint64_t* a = _load(rows, n, n)
    cdef Py_ssize_t* piv = <Py_ssize_t*> malloc(max(n, 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t r
    try:
        r = _eliminate(a, n, n, mod, m, False, piv, &det)
        return det if r == n else 0
    finally:
        free(a)
        free(piv)


def f2_rank(vectors):
    cdef uint64_t basis[64]
    cdef uint64_t v
    cdef int rank = 0, top, i
    for i in range(64):
        basis[i] = 0
    for py_v in vectors:
        v = py_v
        while v:
            top = _deg(v)
            if basis[top] == 0:
                basis[top] = v
                rank += 1
                break
            v ^= basis[top]
    return rank
