"""Linear rank-metric codes over F_{q^m}, Gabidulin codes and their duals.

Words are lists of tower ints.  ``G_V`` for an F_q-subspace ``V`` of F_q^n is
the column span of ``G·A`` where the columns of ``A`` span ``V``.
"""

import itertools

from . import _guard
from . import extlinalg as la
from .errors import DegenerateSystem, DimMismatch, LengthMismatch, SizeGuardExceeded
from .ffield import FieldTower
from .fqspace import enumerate_subspaces, fq_null_space, fq_rref, span_of
from .qlinpoly import QLinPoly, fq_rank_of_elements, moore_matrix


def rank_fq(t, v):
    """F_q-rank of a word: dim of the F_q-span of its coordinates."""
    return fq_rank_of_elements(t, [x for x in v if x])


def rank_distance(t, u, v):
    return rank_fq(t, [t.sub(a, b) for a, b in zip(u, v)])


def kernel_subspace(t, v):
    """{u in F_q^n : sum u_i v_i = 0}."""
    n = len(v)
    cols = [t.coords(x) for x in v]
    rows = [tuple(c[r] for c in cols) for r in range(t.m)]
    return span_of(fq_null_space(t.fq, rows, n), n, t.fq)


def hamming_weight(v):
    return sum(1 for x in v if x)


class LinearCode:
    """An [n, k] code over F_{q^m} given by a full-rank k×n generator."""

    def __init__(self, tower, generator, check=True):
        rows = [[int(x) for x in r] for r in generator]
        if not rows:
            raise DimMismatch("a code needs at least one generator row")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise DimMismatch("ragged generator matrix")
        for r in rows:
            for x in r:
                tower.check(x)
        self.tower = tower
        self.n = n
        self.k = len(rows)
        self.generator = rows
        if check and la.rank(tower, rows, n) != self.k:
            raise DimMismatch("generator rows are linearly dependent")

    def encode(self, message):
        return encode(self, message)

    def codewords(self):
        """All q^{mk} codewords in message order (guarded)."""
        t = self.tower
        _guard.check(t.order**self.k, "enumerate codewords")
        for msg in itertools.product(range(t.order), repeat=self.k):
            yield encode(self, msg)

    def ga(self, V):
        return ga_matrix(self.tower, self.generator, V)

    def to_json(self):
        t = self.tower
        return {
            "tower": t.to_json(),
            "n": self.n,
            "k": self.k,
            "generator": [[t.residues(x) for x in r] for r in self.generator],
        }

    @classmethod
    def from_json(cls, d):
        if "alphas" in d and "generator" not in d:
            return GabidulinCode.from_json(d)
        t = FieldTower.from_json(d["tower"])
        gen = [[t.from_residues(x) if isinstance(x, list) else x for x in r] for r in d["generator"]]
        code = cls(t, gen)
        if (code.n, code.k) != (d.get("n", code.n), d.get("k", code.k)):
            raise DimMismatch("n/k fields disagree with the generator shape")
        return code

    def __repr__(self):
        return f"LinearCode(n={self.n}, k={self.k}, {self.tower!r})"


class GabidulinCode(LinearCode):
    """G_{n,k}(alpha): generator entry (i, j) = alpha_j^{q^i}."""

    def __init__(self, tower, k, alphas):
        alphas = [int(a) for a in alphas]
        n = len(alphas)
        if not 1 <= k <= n:
            raise DimMismatch(f"need 1 <= k <= n, got k={k}, n={n}")
        if n > tower.m:
            raise DimMismatch(f"n={n} exceeds m={tower.m}; no F_q-independent points")
        if fq_rank_of_elements(tower, alphas) != n:
            raise DegenerateSystem("evaluation points are F_q-dependent")
        self.alphas = alphas
        super().__init__(tower, moore_matrix(tower, alphas, k), check=False)

    def message_poly(self, message):
        return QLinPoly(self.tower, message)

    def to_json(self):
        t = self.tower
        return {"tower": t.to_json(), "n": self.n, "k": self.k, "alphas": [t.residues(a) for a in self.alphas]}

    @classmethod
    def from_json(cls, d):
        t = FieldTower.from_json(d["tower"])
        alphas = [t.from_residues(a) if isinstance(a, list) else a for a in d["alphas"]]
        code = cls(t, d["k"], alphas)
        if code.n != d.get("n", code.n):
            raise DimMismatch("n field disagrees with the number of points")
        return code

    def __repr__(self):
        return f"GabidulinCode(n={self.n}, k={self.k}, {self.tower!r})"


def encode(C, message):
    message = [int(x) for x in message]
    if len(message) != C.k:
        raise LengthMismatch(f"message of length {len(message)} for k={C.k}")
    return la.vecmat(C.tower, message, C.generator, C.n)


def random_alphas(t, n, rng):
    """Uniform F_q-independent n-tuple.

    Each alpha_i is s + u with s uniform in the span S of the previous picks
    and u uniform nonzero in a fixed complement of S (coordinates at the
    non-pivot columns), which is a bijection onto F_{q^m} minus S.
    """
    if n > t.m:
        raise DimMismatch(f"cannot pick {n} independent points in F_{{q^{t.m}}}")
    q, m, F = t.q, t.m, t.fq
    picks = []
    basis, piv = [], []
    for _ in range(n):
        free = [j for j in range(m) if j not in piv]
        idx = rng.randrange(1, q ** len(free))
        u = [0] * m
        for j in free:
            idx, u[j] = divmod(idx, q)
        s = [0] * m
        for row in basis:
            c = rng.randrange(q)
            if c:
                s = [F.add(x, F.mul(c, y)) for x, y in zip(s, row)]
        vec = [F.add(x, y) for x, y in zip(s, u)]
        picks.append(t.from_coords(vec))
        basis, piv = fq_rref(F, basis + [tuple(vec)], m)
    return picks


def random_gabidulin(t, n, k, rng):
    return GabidulinCode(t, k, random_alphas(t, n, rng))


def random_linear_code(t, n, k, rng):
    while True:
        gen = [[t.random_element(rng) for _ in range(n)] for _ in range(k)]
        if la.rank(t, gen, n) == k:
            return LinearCode(t, gen, check=False)


def min_rank_distance(C):
    """Exact minimum F_q-rank over nonzero codewords, by message enumeration."""
    t = C.tower
    total = t.order**C.k
    _guard.check(total, "min_rank_distance message scan", exc=SizeGuardExceeded)
    best = C.n
    for msg in itertools.product(range(t.order), repeat=C.k):
        if not any(msg):
            continue
        r = rank_fq(t, encode(C, msg))
        if r < best:
            best = r
            if best <= 1:
                break
    return best


def ga_matrix(t, G, V):
    """G·A (k × dim V) where the columns of A are V's canonical basis."""
    n = len(G[0])
    if V.n != n:
        raise DimMismatch(f"subspace of F_q^{V.n} against a length-{n} code")
    out = []
    for row in G:
        out.append([la.dot(t, row, b) for b in V.basis])
    return out


def column_span_image(t, G, V):
    """Row-reduced basis (vectors in F^k) of G_V."""
    M = ga_matrix(t, G, V)
    if V.dim == 0:
        return []
    rows, _ = la.rref(t, la.transpose(M, V.dim), len(G))
    return rows


def stacked_block_rank(t, G, spaces):
    """Rank of the block matrix whose block row i is [G A_1, 0, .., G A_{i+1}, ..].

    With ell subspaces this has (ell-1) block rows of height k, so
    dim(∩ G_{V_i}) = sum_i dim G_{V_i} - rank.
    """
    spaces = list(spaces)
    k = len(G)
    blocks = [ga_matrix(t, G, V) for V in spaces]
    widths = [V.dim for V in spaces]
    total = sum(widths)
    offsets = list(itertools.accumulate([0] + widths))
    rows = []
    for i in range(1, len(spaces)):
        for r in range(k):
            row = [0] * total
            row[offsets[0] : offsets[0] + widths[0]] = blocks[0][r]
            row[offsets[i] : offsets[i] + widths[i]] = blocks[i][r]
            rows.append(row)
    if not rows or total == 0:
        return 0
    return la.rank(t, rows, total)


def image_dim(t, G, V):
    if V.dim == 0:
        return 0
    return la.rank(t, ga_matrix(t, G, V), V.dim)


def mrd_violation(C):
    """First k-dimensional V (enumeration order) with G·A singular, else None."""
    t = C.tower
    for V in enumerate_subspaces(C.n, C.k, t.fq):
        if la.det(t, ga_matrix(t, C.generator, V)) == 0:
            return V
    return None


def is_mrd(C):
    return mrd_violation(C) is None


def pairing_sums(t, alphas, betas, k):
    """All sums sum_i alpha_i^{q^j} beta_i^{q^h}, j < k, h < n-k."""
    n = len(alphas)
    out = []
    for j in range(k):
        for h in range(n - k):
            acc = 0
            for a, b in zip(alphas, betas):
                acc = t.add(acc, t.mul(t.frob(a, j), t.frob(b, h)))
            out.append(acc)
    return out


def dual_basis(t, alphas, k):
    """beta with G_{n,k}(alpha)^⊥ = G_{n,n-k}(beta), first coordinate 1.

    Applying the inverse Frobenius q^{-h} to each pairing equation gives the
    linear system sum_i alpha_i^{q^s} beta_i = 0 for s in [-(n-k-1), k-1]
    (taken mod m).  Its n-1 rows come from a shifted Moore matrix, so the
    solution space is one-dimensional.
    """
    alphas = [int(a) for a in alphas]
    n = len(alphas)
    if not 1 <= k < n:
        raise DegenerateSystem(f"dual basis needs 1 <= k < n, got k={k}, n={n}")
    if n > t.m or fq_rank_of_elements(t, alphas) != n:
        raise DegenerateSystem("alphas are not F_q-independent")
    rows = [[t.frob(a, s % t.m) for a in alphas] for s in range(-(n - k - 1), k)]
    null = la.right_null_space(t, rows, n)
    if len(null) != 1:
        raise DegenerateSystem(f"solution space has dimension {len(null)}, expected 1")
    beta = null[0]
    lead = next(b for b in beta if b)
    inv = t.inv(lead)
    beta = [t.mul(b, inv) for b in beta]
    if any(pairing_sums(t, alphas, beta, k)):
        raise DegenerateSystem("pairing equations not satisfied")
    if fq_rank_of_elements(t, beta) != n:
        raise DegenerateSystem("dual points are F_q-dependent")
    return beta


def dual_code(C):
    beta = dual_basis(C.tower, C.alphas, C.k)
    return GabidulinCode(C.tower, C.n - C.k, beta)


def dual_code_linear(C):
    """Dual of any linear code: right null space of its generator."""
    t = C.tower
    null = la.right_null_space(t, C.generator, C.n)
    if not null:
        raise DegenerateSystem("the dual of a full-length code is zero")
    return LinearCode(t, null, check=False)


def same_code(C1, C2):
    """Equal row spans (compared via RREF)."""
    if C1.tower != C2.tower or C1.n != C2.n:
        return False
    t = C1.tower
    return la.rref(t, C1.generator, C1.n)[0] == la.rref(t, C2.generator, C2.n)[0]


def orthogonal(C1, C2):
    t = C1.tower
    return all(la.dot(t, a, b) == 0 for a in C1.generator for b in C2.generator)
