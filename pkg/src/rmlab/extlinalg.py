"""Dense linear algebra over F_{q^m} on int-encoded matrices.

Matrices are lists of row lists.  Binary towers go through the kernel
backend; every other tower uses the generic elimination below.
"""

from ._core import kernels


def _generic_rref(t, rows, ncols):
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(mat)
    mul, sub, inv = t.mul, t.sub, t.inv
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
            iv = inv(row[c])
            row = mat[r] = [mul(x, iv) if x else 0 for x in row]
        for i in range(nrows):
            if i != r:
                f = mat[i][c]
                if f:
                    mat[i] = [sub(x, mul(f, y)) if y else x for x, y in zip(mat[i], row)]
        pivots.append(c)
        r += 1
    return mat[:r], pivots


def rref(t, rows, ncols=None):
    """Reduced row echelon form: (nonzero rows, pivot column list)."""
    rows = list(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows or ncols == 0:
        return [], []
    if t.is_binary:
        mat, piv = kernels.bin_rref(rows, ncols, t.bin_modulus, t.m)
        return [list(r) for r in mat], list(piv)
    return _generic_rref(t, rows, ncols)


def rank(t, rows, ncols=None):
    rows = list(rows)
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    if ncols == 0:
        return 0
    if t.is_binary:
        return kernels.bin_rank(rows, ncols, t.bin_modulus, t.m)
    return len(_generic_rref(t, rows, ncols)[1])


def det(t, rows):
    rows = list(rows)
    n = len(rows)
    if n == 0:
        return 1
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if t.is_binary:
        return kernels.bin_det(rows, t.bin_modulus, t.m)
    mat = [list(r) for r in rows]
    d = 1
    for c in range(n):
        p = c
        while p < n and mat[p][c] == 0:
            p += 1
        if p == n:
            return 0
        if p != c:
            mat[c], mat[p] = mat[p], mat[c]
            d = t.neg(d)
        row = mat[c]
        d = t.mul(d, row[c])
        iv = t.inv(row[c])
        for i in range(c + 1, n):
            f = mat[i][c]
            if f:
                f = t.mul(f, iv)
                mat[i] = [t.sub(x, t.mul(f, y)) for x, y in zip(mat[i], row)]
    return d


def transpose(rows, ncols=None):
    rows = list(rows)
    if not rows:
        return [[] for _ in range(ncols or 0)]
    return [list(c) for c in zip(*rows)]


def matmul(t, a, b):
    """a (r×s) times b (s×c)."""
    if not a:
        return []
    cols = transpose(b, len(b[0]) if b else 0) if b else []
    out = []
    for row in a:
        out.append([dot(t, row, col) for col in cols] if cols else [0] * (len(b[0]) if b else 0))
    return out


def dot(t, u, v):
    acc = 0
    add, mul = t.add, t.mul
    for x, y in zip(u, v):
        if x and y:
            acc = add(acc, mul(x, y))
    return acc


def vecmat(t, v, mat, ncols):
    """Row vector v times matrix ``mat`` (len(v) rows, ``ncols`` columns)."""
    out = [0] * ncols
    add, mul = t.add, t.mul
    for x, row in zip(v, mat):
        if x:
            for j, y in enumerate(row):
                if y:
                    out[j] = add(out[j], mul(x, y))
    return out


def right_null_space(t, rows, ncols):
    """Basis of {x : M x = 0}, one vector per free column."""
    r, piv = rref(t, rows, ncols)
    pivset = set(piv)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [0] * ncols
        v[free] = 1
        for row, pc in zip(r, piv):
            v[pc] = t.neg(row[free])
        basis.append(v)
    return basis


def left_null_space(t, rows, ncols):
    """Basis of {y : y M = 0} for an (len(rows) × ncols) matrix M."""
    nrows = len(rows)
    if nrows == 0:
        return []
    return right_null_space(t, transpose(rows, ncols), nrows)


def is_zero_matrix(rows):
    return all(x == 0 for r in rows for x in r)
