"""Generic kernel patterns, Hall-type padding, attainment and the M_S matrices."""

import itertools
from dataclasses import dataclass, field

from . import _guard
from . import extlinalg as la
from .errors import (
    DimMismatch,
    DirectSumFailure,
    HypothesisViolated,
    InternalInvariantViolated,
    NotGkp,
    PartitionGuardExceeded,
    SpecInvariantViolated,
)
from .fqspace import (
    FqSubspace,
    enumerate_upto,
    intersect,
    span_of,
    vector_from_index,
    zero_space,
)
from .ffield import gf
from .gabidulin import ga_matrix
from .partitions import BELL_GUARD, set_partitions
from .qlinpoly import QLinPoly, compose, power_compose_annihilator


def intersection_dim(spaces):
    spaces = list(spaces)
    out = spaces[0]
    for s in spaces[1:]:
        if out.dim == 0:
            return 0
        out = intersect(out, s)
    return out.dim


def _nonempty_subsets(n):
    for r in range(1, n + 1):
        yield from itertools.combinations(range(n), r)


# ---------------------------------------------------------------------------
# kernel patterns
# ---------------------------------------------------------------------------


class KernelPattern:
    """Distinct nonzero subspaces with multiplicities; zero copies fill up to k."""

    __slots__ = ("k", "n", "entries", "field")

    def __init__(self, k, entries, n=None, q=2):
        entries = list(entries)
        self.field = entries[0][0].field if entries else gf(q)
        merged = {}
        order = []
        for V, delta in entries:
            if delta < 1:
                raise ValueError("multiplicities must be positive")
            if n is None:
                n = V.n
            elif V.n != n:
                raise DimMismatch("pattern subspaces live in different ambient spaces")
            if V.dim == 0:
                continue
            if V not in merged:
                order.append(V)
                merged[V] = 0
            merged[V] += delta
        total = sum(d for _, d in entries)
        if total > k:
            raise ValueError(f"multiplicities sum to {total} > k={k}")
        if n is None:
            raise DimMismatch("ambient dimension needed for an all-zero pattern")
        self.k = k
        self.n = n
        self.entries = tuple(sorted(((V, merged[V]) for V in order), key=lambda e: (e[0].sort_key(), e[1])))

    @classmethod
    def from_slots(cls, slots, k=None):
        slots = list(slots)
        if k is None:
            k = len(slots)
        if len(slots) != k:
            raise ValueError("a kernel pattern has exactly k slots")
        if not slots:
            raise ValueError("a pattern needs k >= 1 slots")
        return cls(k, [(V, 1) for V in slots], n=slots[0].n, q=slots[0].field)

    @property
    def order(self):
        return len(self.entries)

    @property
    def zero_copies(self):
        return self.k - sum(d for _, d in self.entries)

    @property
    def subspaces(self):
        return [V for V, _ in self.entries]

    @property
    def deltas(self):
        return [d for _, d in self.entries]

    def slots(self):
        """Expanded k-tuple: entry copies in order, then zero subspaces."""
        out = []
        for V, d in self.entries:
            out.extend([V] * d)
        out.extend([zero_space(self.n, self.field)] * self.zero_copies)
        return out

    def key(self):
        return (self.k, self.n, tuple((V.sort_key(), d) for V, d in self.entries))

    def __eq__(self, other):
        return isinstance(other, KernelPattern) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        body = ", ".join(f"({[list(r) for r in V.basis]}, {d})" for V, d in self.entries)
        return f"KernelPattern(k={self.k}, [{body}])"

    def to_json(self):
        return {"k": self.k, "n": self.n, "entries": [{"subspace": V.to_json(), "delta": d} for V, d in self.entries]}

    @classmethod
    def from_json(cls, d):
        entries = [(FqSubspace.from_json(e["subspace"]), e["delta"]) for e in d["entries"]]
        return cls(d["k"], entries, n=d.get("n"))


def multiplicity_condition(k, spaces, deltas):
    """First violating subset for dim(∩_Ω V_i) <= k - sum_Ω delta_i, else None."""
    for omega in _nonempty_subsets(len(spaces)):
        if intersection_dim([spaces[i] for i in omega]) > k - sum(deltas[i] for i in omega):
            return omega
    return None


def is_gkp(P):
    """Multiplicity form: 2^order - 1 checks over the distinct entries."""
    return multiplicity_condition(P.k, P.subspaces, P.deltas) is None


def is_gkp_slots(k, slots):
    """The defining k-slot form: 2^k - 1 checks."""
    for omega in _nonempty_subsets(len(slots)):
        if intersection_dim([slots[i] for i in omega]) > k - len(omega):
            return False
    return True


# ---------------------------------------------------------------------------
# Hall padding
# ---------------------------------------------------------------------------


def hall_pad_multiplicity(k, spaces, deltas):
    """Pad V_i ⊆ V'_i with dim V'_i = k - delta_i, keeping the inequality family.

    Greedy: candidates are tried in canonical vector order and the first one
    that keeps every inequality is adjoined.  By the Hall-type extension
    theorem some candidate is always valid, so running out is a bug.
    """
    spaces = list(spaces)
    deltas = list(deltas)
    if len(spaces) != len(deltas):
        raise ValueError("one multiplicity per subspace")
    if not spaces:
        return []
    n = spaces[0].n
    F = spaces[0].field
    if any(k - d > n for d in deltas):
        raise HypothesisViolated(f"target dimension exceeds ambient dimension {n}")
    bad = multiplicity_condition(k, spaces, deltas)
    if bad is not None:
        raise HypothesisViolated(f"inequality fails for subset {bad}")
    ell = len(spaces)
    total = F.q**n
    _guard.check(total, "padding candidates")
    for i in range(ell):
        target = k - deltas[i]
        while spaces[i].dim < target:
            cur = spaces[i]
            for idx in range(1, total):
                v = vector_from_index(idx, n, F.q)
                if cur.contains(v):
                    continue
                cand = span_of(cur.basis + (v,), n, F)
                trial = spaces[:i] + [cand] + spaces[i + 1 :]
                if _family_ok_at(k, trial, deltas, i):
                    spaces[i] = cand
                    break
            else:
                raise InternalInvariantViolated(f"no valid padding vector for slot {i}")
    if multiplicity_condition(k, spaces, deltas) is not None:
        raise InternalInvariantViolated("padded family violates the inequalities")
    return spaces


def _family_ok_at(k, spaces, deltas, i):
    others = [j for j in range(len(spaces)) if j != i]
    for r in range(0, len(others) + 1):
        for rest in itertools.combinations(others, r):
            omega = (i,) + rest
            if intersection_dim([spaces[j] for j in omega]) > k - sum(deltas[j] for j in omega):
                return False
    return True


def hall_pad_dual(spaces, k=None):
    """Pad a k-slot generic kernel pattern to all dims k - 1."""
    spaces = list(spaces)
    if k is None:
        k = len(spaces)
    if len(spaces) != k:
        raise ValueError("expected exactly k subspaces")
    return hall_pad_multiplicity(k, spaces, [1] * k)


# ---------------------------------------------------------------------------
# order-ell characterization
# ---------------------------------------------------------------------------


@dataclass
class OrderCharacterization:
    partition_ok: bool
    deltas: tuple = None
    witness_partition: tuple = None
    details: dict = field(default_factory=dict)


def partition_condition(k, d, spaces):
    """First partition with sum_i dim(∩ P_i) > (s-1)k + d, else None."""
    for part in set_partitions(len(spaces)):
        s = len(part)
        total = sum(intersection_dim([spaces[j] for j in block]) for block in part)
        if total > (s - 1) * k + d:
            return part
    return None


def compositions(total, parts):
    """Nonnegative integer vectors of length ``parts`` summing to ``total``, lexicographic."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def delta_search(k, d, spaces):
    for deltas in compositions(k - d, len(spaces)):
        if multiplicity_condition(k, spaces, deltas) is None:
            return deltas
    return None


def order_ell_characterize(spaces, k, d):
    """Evaluate the partition condition and, when it holds, find a delta vector."""
    spaces = list(spaces)
    if len(spaces) > BELL_GUARD:
        raise PartitionGuardExceeded(f"ell={len(spaces)} exceeds the partition guard {BELL_GUARD}")
    if any(V.dim > k for V in spaces):
        raise DimMismatch("subspace dimension exceeds k")
    if not 0 <= d <= k:
        raise ValueError("need 0 <= d <= k")
    bad = partition_condition(k, d, spaces)
    if bad is not None:
        return OrderCharacterization(False, witness_partition=bad)
    deltas = delta_search(k, d, spaces)
    if deltas is None:
        raise InternalInvariantViolated("partition condition holds but no delta vector exists")
    return OrderCharacterization(True, deltas=deltas)


# ---------------------------------------------------------------------------
# pattern enumeration
# ---------------------------------------------------------------------------


def enumerate_gkp_patterns(n, k, ell, q=2):
    """Generic kernel patterns of order <= ell, one per permutation class.

    Entries are distinct nonzero subspaces of dim <= k-1 with positive
    multiplicities summing to at most k.  The all-zero pattern comes first.
    """
    cands = [V for V in enumerate_upto(n, k - 1, q) if V.dim > 0]
    out = [KernelPattern(k, [], n=n, q=q)]
    for order in range(1, min(ell, k) + 1):
        for subset in itertools.combinations(cands, order):
            for deltas in itertools.product(range(1, k + 1), repeat=order):
                if sum(deltas) > k:
                    continue
                if multiplicity_condition(k, subset, deltas) is None:
                    out.append(KernelPattern(k, list(zip(subset, deltas)), n=n))
    return out


# ---------------------------------------------------------------------------
# attainment
# ---------------------------------------------------------------------------


@dataclass
class AttainmentCertificate:
    M: list
    pattern: KernelPattern
    padded: list
    verified: dict

    def to_json(self, tower):
        return {
            "M": [[tower.residues(x) for x in row] for row in self.M],
            "pattern": self.pattern.to_json(),
            "verified": dict(self.verified),
        }


def attain(t, G, P):
    """Build an invertible M whose slot rows annihilate G·A_i.

    Pads the pattern to dims k - delta_i, takes left null spaces U_i of the
    padded G·A'_i, checks that they form a direct sum and completes with
    standard basis vectors.  DirectSumFailure means the code does not attain
    the padded pattern, which is a legitimate outcome for non-MRD(ell) codes.
    """
    k = len(G)
    if P.k != k:
        raise DimMismatch(f"pattern for k={P.k} against a {k}-row generator")
    if not is_gkp(P):
        raise NotGkp(repr(P))
    padded = hall_pad_multiplicity(k, P.subspaces, P.deltas) if P.entries else []
    rows = []
    for V, delta in zip(padded, P.deltas):
        GA = ga_matrix(t, G, V)
        U = la.left_null_space(t, GA, V.dim)
        if len(U) != delta:
            raise DirectSumFailure(f"left null space of dim {len(U)} where {delta} was needed")
        rows.extend(U)
    if la.rank(t, rows, k) != len(rows):
        raise DirectSumFailure("left null spaces do not form a direct sum")
    basis = list(rows)
    for i in range(k):
        if len(basis) == k:
            break
        e = [0] * k
        e[i] = 1
        if la.rank(t, basis + [e], k) > len(basis):
            basis.append(e)
    M = basis
    verified = verify_certificate(t, G, P, M)
    if not all(verified.values()):
        raise InternalInvariantViolated(f"certificate failed verification: {verified}")
    return AttainmentCertificate(M, P, padded, verified)


def verify_certificate(t, G, P, M):
    """Independent re-check: det(M) != 0 and m_i G A_i = 0 slot by slot."""
    k = len(G)
    ok_rows = True
    for row, V in zip(M, P.slots()):
        if V.dim == 0:
            continue
        prod = la.vecmat(t, row, ga_matrix(t, G, V), V.dim)
        if any(prod):
            ok_rows = False
            break
    return {"det_nonzero": len(M) == k and la.det(t, M) != 0, "rows_annihilate": ok_rows}


def attains(t, G, P):
    try:
        attain(t, G, P)
        return True
    except DirectSumFailure:
        return False


def rado_attainable(t, G, P):
    """Exact per-pattern test: dim sum_{i in Ω} N_i >= sum_{i in Ω} delta_i for all Ω.

    N_i is the left null space of G·A_i for the unpadded subspaces; by Rado's
    theorem a transversal of independent rows exists iff these hold.
    """
    nulls = [la.left_null_space(t, ga_matrix(t, G, V), V.dim) for V in P.subspaces]
    k = len(G)
    for omega in _nonempty_subsets(len(nulls)):
        vecs = [v for i in omega for v in nulls[i]]
        if la.rank(t, vecs, k) < sum(P.deltas[i] for i in omega):
            return False
    return True


# ---------------------------------------------------------------------------
# M_S matrices
# ---------------------------------------------------------------------------


class MsSpec:
    """Parts (V_i, r_i) with sum r_i = k, dim V_i + r_i <= k, embedded by alphas."""

    __slots__ = ("k", "parts", "alphas")

    def __init__(self, k, parts, alphas):
        parts = [(V, int(r)) for V, r in parts]
        if not parts:
            raise SpecInvariantViolated("an MsSpec needs at least one part")
        if any(r < 1 for _, r in parts):
            raise SpecInvariantViolated("every r_i must be positive")
        if sum(r for _, r in parts) != k:
            raise SpecInvariantViolated("the r_i must sum to k")
        if any(V.dim + r > k for V, r in parts):
            raise SpecInvariantViolated("dim V_i + r_i exceeds k")
        if any(V.n != len(alphas) for V, _ in parts):
            raise SpecInvariantViolated("subspace ambient dim differs from the embedding")
        self.k = k
        self.parts = tuple(parts)
        self.alphas = tuple(alphas)

    def __repr__(self):
        body = ", ".join(f"({[list(b) for b in V.basis]}, {r})" for V, r in self.parts)
        return f"MsSpec(k={self.k}, [{body}])"


def ms_polys(t, S):
    """f_i = annihilator(V_i)^{q^{k - dim V_i - r_i}}."""
    return [power_compose_annihilator(t, V, S.alphas, S.k - V.dim - r) for V, r in S.parts]


def ms_matrix(t, S, polys=None):
    """Block i, row j: first k coefficients of X^{q^j} ∘ f_i."""
    if polys is None:
        polys = ms_polys(t, S)
    k = S.k
    rows = []
    for f, (_, r) in zip(polys, S.parts):
        for j in range(r):
            rows.append([t.frob(f.coeff(c - j), j) if c >= j else 0 for c in range(k)])
    return rows


def ms_condition(S):
    """dim(∩_Ω V_i) + sum_Ω r_i <= max_Ω (dim V_i + r_i) for all nonempty Ω."""
    return ms_violation(S) is None


def ms_violation(S):
    for omega in _nonempty_subsets(len(S.parts)):
        spaces = [S.parts[i][0] for i in omega]
        lhs = intersection_dim(spaces) + sum(S.parts[i][1] for i in omega)
        rhs = max(S.parts[i][0].dim + S.parts[i][1] for i in omega)
        if lhs > rhs:
            return omega
    return None


@dataclass
class MsVerdict:
    det_zero: bool
    condition: bool

    @property
    def status(self):
        if not self.det_zero and not self.condition:
            return "hard_violation"
        if self.det_zero and self.condition:
            return "probabilistic_miss"
        return "ok"


def ms_theorem_check(t, S):
    return MsVerdict(det_zero=la.det(t, ms_matrix(t, S)) == 0, condition=ms_condition(S))


def ms_null_witness(t, S):
    """g_i with deg_q g_i <= r_i - 1 and sum g_i ∘ f_i = 0, or None if det != 0."""
    polys = ms_polys(t, S)
    M = ms_matrix(t, S, polys)
    null = la.left_null_space(t, M, S.k)
    if not null:
        return None
    y = null[0]
    gs = []
    pos = 0
    for _, r in S.parts:
        gs.append(QLinPoly(t, y[pos : pos + r]))
        pos += r
    total = QLinPoly(t)
    for g, f in zip(gs, polys):
        total = total + compose(g, f)
    if not total.is_zero():
        raise InternalInvariantViolated("left null vector does not give a composition identity")
    return gs
