"""Subspaces of F_q^n in canonical reduced row echelon form.

Vectors are tuples of F_q ints (see :class:`rmlab.ffield.SmallField`).  The
canonical order on vectors is the integer ``sum v_i q^i``.
"""

import itertools
import json

from . import _guard
from .errors import DimMismatch, InternalInvariantViolated, NotASubspace
from .ffield import gf


def fq_rref(F, rows, ncols):
    """RREF over F_q: (nonzero rows as tuples, pivot columns)."""
    mat = [list(r) for r in rows]
    for r in mat:
        if len(r) != ncols:
            raise DimMismatch(f"vector of length {len(r)} in F_q^{ncols}")
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
            iv = F.inv(row[c])
            row = mat[r] = [F.mul(x, iv) for x in row]
        for i in range(nrows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(mat[i], row)]
        pivots.append(c)
        r += 1
    return [tuple(x) for x in mat[:r]], pivots


def fq_null_space(F, rows, ncols):
    """Basis of {x in F_q^ncols : M x = 0}."""
    r, piv = fq_rref(F, rows, ncols)
    pivset = set(piv)
    out = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [0] * ncols
        v[free] = 1
        for row, pc in zip(r, piv):
            v[pc] = F.neg(row[free])
        out.append(tuple(v))
    return out


def vector_index(v, q):
    """Position of ``v`` in canonical vector order."""
    idx = 0
    for x in reversed(v):
        idx = idx * q + x
    return idx


def vector_from_index(idx, n, q):
    out = []
    for _ in range(n):
        idx, r = divmod(idx, q)
        out.append(r)
    return tuple(out)


def _combine(F, coeffs, rows, n):
    out = [0] * n
    for c, row in zip(coeffs, rows):
        if c:
            for j, x in enumerate(row):
                if x:
                    out[j] = F.add(out[j], F.mul(c, x))
    return tuple(out)


class FqSubspace:
    """An F_q-subspace of F_q^n, stored as its unique RREF basis."""

    __slots__ = ("field", "n", "basis", "pivots", "_hash")

    def __init__(self, field, n, basis, pivots):
        self.field = field
        self.n = n
        self.basis = tuple(basis)
        self.pivots = tuple(pivots)
        self._hash = hash((field.q, n, self.basis))

    @property
    def q(self):
        return self.field.q

    @property
    def ambient_dim(self):
        return self.n

    @property
    def dim(self):
        return len(self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, FqSubspace)
            and self.field == other.field
            and self.n == other.n
            and self.basis == other.basis
        )

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (self.dim, tuple(vector_index(r, self.q) for r in self.basis))

    def __repr__(self):
        return f"FqSubspace(q={self.q}, n={self.n}, basis={[list(r) for r in self.basis]})"

    def canonical_bytes(self):
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":")).encode()

    def contains(self, v):
        v = tuple(v)
        if len(v) != self.n:
            raise DimMismatch(f"vector length {len(v)} vs ambient {self.n}")
        F = self.field
        # reduce v against the RREF rows
        w = list(v)
        for row, pc in zip(self.basis, self.pivots):
            f = w[pc]
            if f:
                w = [F.sub(x, F.mul(f, y)) for x, y in zip(w, row)]
        return not any(w)

    def __contains__(self, v):
        return self.contains(v)

    def is_subspace_of(self, other):
        _same(self, other)
        return all(other.contains(r) for r in self.basis)

    def elements(self):
        """All q^dim vectors of the subspace."""
        _guard.check(self.q**self.dim, "enumerate subspace vectors")
        F = self.field
        for coeffs in itertools.product(range(self.q), repeat=self.dim):
            yield _combine(F, coeffs, self.basis, self.n)

    def to_json(self):
        return {"ambient_dim": self.n, "q_desc": self.field.desc, "basis": [list(r) for r in self.basis]}

    @classmethod
    def from_json(cls, d):
        desc = d["q_desc"]
        F = gf(desc["p"] ** desc["e"]) if isinstance(desc, dict) else gf(desc)
        V = span_of(d["basis"], n=d["ambient_dim"], q=F)
        if [list(r) for r in V.basis] != [list(r) for r in d["basis"]]:
            raise NotASubspace("stored basis is not in canonical RREF form")
        return V


def _same(a, b):
    if a.n != b.n:
        raise DimMismatch(f"ambient dimensions {a.n} and {b.n} differ")
    if a.field != b.field:
        raise DimMismatch("subspaces over different fields")


def span_of(vectors, n=None, q=2):
    F = gf(q)
    vectors = [tuple(int(x) for x in v) for v in vectors]
    if n is None:
        if not vectors:
            raise DimMismatch("ambient dimension needed for an empty generating set")
        n = len(vectors[0])
    for v in vectors:
        if len(v) != n:
            raise DimMismatch(f"vector of length {len(v)} in F_q^{n}")
        if any(not 0 <= x < F.q for x in v):
            raise ValueError(f"entries of {v} outside F_{F.q}")
    basis, piv = fq_rref(F, vectors, n)
    return FqSubspace(F, n, basis, piv)


def zero_space(n, q=2):
    return FqSubspace(gf(q), n, (), ())


def full_space(n, q=2):
    return span_of([unit(n, i) for i in range(n)], n, q)


def unit(n, i):
    v = [0] * n
    v[i] = 1
    return tuple(v)


def subspace_sum(a, b):
    _same(a, b)
    return span_of(a.basis + b.basis, a.n, a.field)


def intersect(a, b):
    """V1 ∩ V2 from the left null space of the stacked bases."""
    _same(a, b)
    F, n = a.field, a.n
    if a.dim == 0 or b.dim == 0:
        return zero_space(n, F)
    stacked = list(a.basis) + list(b.basis)
    # y = (u, w) with u·B1 + w·B2 = 0  <=>  transpose(stacked) y = 0
    cols = [tuple(row[j] for row in stacked) for j in range(n)]
    null = fq_null_space(F, cols, len(stacked))
    vecs = [_combine(F, y[: a.dim], a.basis, n) for y in null]
    out = span_of(vecs, n, F)
    if a.dim + b.dim != subspace_sum(a, b).dim + out.dim:
        raise InternalInvariantViolated("dimension formula failed for intersection")
    return out


def intersect_all(spaces, n=None, q=2):
    spaces = list(spaces)
    if not spaces:
        return full_space(n, q)
    out = spaces[0]
    for s in spaces[1:]:
        out = intersect(out, s)
    return out


def orthogonal_complement(V):
    F = V.field
    if V.dim == 0:
        return full_space(V.n, F)
    return span_of(fq_null_space(F, V.basis, V.n), V.n, F)


def gaussian_binomial(n, d, q):
    if d < 0 or d > n:
        return 0
    num = den = 1
    for i in range(d):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def enumerate_subspaces(n, d, q=2):
    """All d-dimensional subspaces of F_q^n, streamed by RREF pivot profile."""
    F = gf(q)
    q = F.q
    _guard.check(gaussian_binomial(n, d, q), f"subspaces of dim {d} in F_{q}^{n}")
    for piv in itertools.combinations(range(n), d):
        pivset = set(piv)
        free = [(i, j) for i, pc in enumerate(piv) for j in range(pc + 1, n) if j not in pivset]
        for values in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(d)]
            for i, pc in enumerate(piv):
                rows[i][pc] = 1
            for (i, j), x in zip(free, values):
                rows[i][j] = x
            yield FqSubspace(F, n, [tuple(r) for r in rows], piv)


def enumerate_upto(n, max_dim, q=2):
    """All subspaces of dimension 0..max_dim, by dimension."""
    for d in range(0, min(max_dim, n) + 1):
        yield from enumerate_subspaces(n, d, q)


def sample_subspace(n, d, q, rng):
    """Uniform d-dimensional subspace: rejection-sampled full-rank d×n matrix."""
    F = gf(q)
    if not 0 <= d <= n:
        raise DimMismatch(f"no {d}-dimensional subspace of F_q^{n}")
    while True:
        rows = [tuple(rng.randrange(F.q) for _ in range(n)) for _ in range(d)]
        basis, piv = fq_rref(F, rows, n)
        if len(basis) == d:
            return FqSubspace(F, n, basis, piv)


def complement_in(V, W):
    """U with V ⊕ U = W: greedy over W's basis in canonical vector order."""
    _same(V, W)
    if not V.is_subspace_of(W):
        raise NotASubspace("complement_in requires V ⊆ W")
    F, n = V.field, V.n
    cur = V
    chosen = []
    for v in sorted(W.basis, key=lambda r: vector_index(r, F.q)):
        if cur.dim == W.dim:
            break
        if not cur.contains(v):
            chosen.append(v)
            cur = span_of(cur.basis + (v,), n, F)
    return span_of(chosen, n, F)
