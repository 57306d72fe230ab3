"""Pure-Python hot kernels for binary extension fields GF(2^m).

Elements are ints whose bit i is the coefficient of x^i; ``mod`` is the full
modulus bitmask (bit m set).  Matrices are lists of row lists.  This module
mirrors ``_kernels.pyx`` function for function.
"""

BACKEND = "python"


def bin_mul(a, b, mod, m):
    if a == 0 or b == 0:
        return 0
    if a.bit_length() < b.bit_length():
        a, b = b, a
    r = 0
    while b:
        low = b & -b
        r ^= a << (low.bit_length() - 1)
        b ^= low
    top = r.bit_length() - 1
    while top >= m:
        r ^= mod << (top - m)
        top = r.bit_length() - 1
    return r


def bin_pow(a, e, mod, m):
    result = 1
    while e:
        if e & 1:
            result = bin_mul(result, a, mod, m)
        e >>= 1
        if e:
            a = bin_mul(a, a, mod, m)
    return result


def bin_inv(a, mod, m):
    if a == 0:
        raise ZeroDivisionError("inverse of zero")
    # extended Euclid on GF(2)[x]
    r0, r1 = mod, a
    s0, s1 = 0, 1
    while r1 != 1:
        shift = r0.bit_length() - r1.bit_length()
        if shift < 0:
            r0, r1 = r1, r0
            s0, s1 = s1, s0
            continue
        r0 ^= r1 << shift
        s0 ^= s1 << shift
        if r0 == 0:
            raise ZeroDivisionError("modulus is reducible")
        if r0.bit_length() < r1.bit_length():
            r0, r1 = r1, r0
            s0, s1 = s1, s0
    # s1 may exceed degree m-1 transiently; reduce
    top = s1.bit_length() - 1
    while top >= m:
        s1 ^= mod << (top - m)
        top = s1.bit_length() - 1
    return s1


def bin_frob(a, j, mod, m):
    for _ in range(j):
        a = bin_mul(a, a, mod, m)
    return a


def bin_rref(rows, ncols, mod, m):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(mat)
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and mat[p][c] == 0:
            p += 1
        if p == nrows:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        row = mat[r]
        if row[c] != 1:
            inv = bin_inv(row[c], mod, m)
            row = mat[r] = [bin_mul(x, inv, mod, m) if x else 0 for x in row]
        for i in range(nrows):
            if i != r:
                f = mat[i][c]
                if f:
                    other = mat[i]
                    mat[i] = [x ^ bin_mul(f, y, mod, m) if y else x for x, y in zip(other, row)]
        pivots.append(c)
        r += 1
    return mat[:r], pivots


def bin_rank(rows, ncols, mod, m):
    mat = [list(x) for x in rows]
    nrows = len(mat)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and mat[p][c] == 0:
            p += 1
        if p == nrows:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        row = mat[r]
        inv = bin_inv(row[c], mod, m)
        for i in range(r + 1, nrows):
            f = mat[i][c]
            if f:
                f = bin_mul(f, inv, mod, m)
                other = mat[i]
                mat[i] = [x ^ bin_mul(f, y, mod, m) if y else x for x, y in zip(other, row)]
        r += 1
    return r


def bin_det(rows, mod, m):
    mat = [list(x) for x in rows]
    n = len(mat)
    det = 1
    for c in range(n):
        p = c
        while p < n and mat[p][c] == 0:
            p += 1
        if p == n:
            return 0
        mat[c], mat[p] = mat[p], mat[c]
        row = mat[c]
        piv = row[c]
        det = bin_mul(det, piv, mod, m)
        inv = bin_inv(piv, mod, m)
        for i in range(c + 1, n):
            f = mat[i][c]
            if f:
                f = bin_mul(f, inv, mod, m)
                other = mat[i]
                mat[i] = [x ^ bin_mul(f, y, mod, m) if y else x for x, y in zip(other, row)]
    return det


def f2_rank(vectors):
    """Rank over GF(2) of bitmask vectors."""
    basis = {}
    rank = 0
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            b = basis.get(top)
            if b is None:
                basis[top] = v
                rank += 1
                break
            v ^= b
    return rank
