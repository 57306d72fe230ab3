"""Higher-order MRD checkers: MRD(ell), LD-MRD(<= ell), GKP(ell) and the harness."""

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from . import _guard
from .errors import (
    Disagreement,
    DirectSumFailure,
    InternalInvariantViolated,
    PartitionGuardExceeded,
    SizeGuardExceeded,
)
from .fqspace import enumerate_upto, gaussian_binomial, intersect, sample_subspace
from .gabidulin import (
    dual_code_linear,
    image_dim,
    is_mrd,
    mrd_violation,
    rank_fq,
    stacked_block_rank,
)
from .partitions import BELL_GUARD, set_partitions
from .patterns import attain, enumerate_gkp_patterns


@dataclass
class CheckerVerdict:
    property: str
    holds: bool
    witness: object = None
    tuples_checked: int = 0
    mode: str = "exhaustive"
    params: dict = field(default_factory=dict)
    seed: object = None

    def to_json(self):
        return {
            "property": self.property,
            "params": self.params,
            "holds": self.holds,
            "witness": _witness_json(self.witness),
            "tuples_checked": self.tuples_checked,
            "mode": self.mode,
            "seed": self.seed,
        }


def _witness_json(w):
    if w is None:
        return None
    if hasattr(w, "to_json"):
        return w.to_json()
    if isinstance(w, dict):
        return {k: _witness_json(v) for k, v in w.items()}
    if isinstance(w, (list, tuple)):
        return [_witness_json(x) for x in w]
    return w


# ---------------------------------------------------------------------------
# generic vs actual intersection dimensions
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1 << 16)
def _block_dim(block):
    out = block[0]
    for V in block[1:]:
        if out.dim == 0:
            return 0
        out = intersect(out, V)
    return out.dim


def _canon(spaces):
    return tuple(sorted(spaces, key=lambda V: V.sort_key()))


@lru_cache(maxsize=1 << 16)
def _generic_cached(spaces, k):
    best = 0
    for part in set_partitions(len(spaces)):
        s = len(part)
        val = sum(_block_dim(_canon(spaces[j] for j in block)) for block in part) - (s - 1) * k
        if val > best:
            best = val
    return best


def generic_intersection_dim(spaces, k):
    """max over partitions P_1..P_s of sum dim(∩_{P_i} V_j) - (s-1)k."""
    spaces = _canon(spaces)
    if len(spaces) > BELL_GUARD:
        raise PartitionGuardExceeded(f"ell={len(spaces)} exceeds the partition guard {BELL_GUARD}")
    if any(V.dim > k for V in spaces):
        raise ValueError("subspace dimension exceeds k")
    if not spaces:
        raise ValueError("need at least one subspace")
    return _generic_cached(spaces, k)


def actual_intersection_dim(t, G, spaces):
    """dim ∩ G_{V_i} = sum dim G_{V_i} - rank of the stacked block matrix."""
    spaces = list(spaces)
    return sum(image_dim(t, G, V) for V in spaces) - stacked_block_rank(t, G, spaces)


# ---------------------------------------------------------------------------
# MRD(ell)
# ---------------------------------------------------------------------------


def _tuples(C, ell, mode, samples, rng):
    n, k, F = C.n, C.k, C.tower.fq
    if mode == "sampled":
        if rng is None:
            raise ValueError("sampled mode needs an rng")
        dims = list(range(0, min(k, n) + 1))
        # weight dimensions by subspace count so that draws are uniform over all subspaces
        weights = [gaussian_binomial(n, d, F.q) for d in dims]
        for _ in range(samples):
            yield tuple(sample_subspace(n, rng.choices(dims, weights)[0], F, rng) for _ in range(ell))
        return
    spaces = list(enumerate_upto(n, k, F))
    _guard.check(len(spaces) ** ell, f"MRD({ell}) subspace tuples", exc=SizeGuardExceeded)
    yield from itertools.product(spaces, repeat=ell)


def is_mrd_ell(C, ell, mode="exhaustive", samples=1000, rng=None, seed=None):
    """Compare actual and generic intersection dims over ell-tuples of subspaces.

    mode: "exhaustive" (all ordered tuples of subspaces of dim <= k),
    "sampled" (``samples`` uniform tuples) or "fast" (exhaustive, but only
    zero/nonzero agreement of the intersection is compared on top of MRD).
    """
    t, G, k = C.tower, C.generator, C.k
    params = {"n": C.n, "k": k, "ell": ell, "q": t.q, "m": t.m}
    bad = mrd_violation(C)
    if bad is not None:
        return CheckerVerdict(f"MRD({ell})", False, {"not_mrd": bad}, 0, mode, params, seed)
    seen = {}
    checked = 0
    for tup in _tuples(C, ell, "sampled" if mode == "sampled" else "exhaustive", samples, rng):
        checked += 1
        key = _canon(tup)
        res = seen.get(key)
        if res is None:
            gen = generic_intersection_dim(key, k)
            act = actual_intersection_dim(t, G, key)
            if act < gen:
                raise InternalInvariantViolated(f"actual {act} < generic {gen} for an MRD code at {key}")
            if mode == "fast":
                res = (act == 0) == (gen == 0)
            else:
                res = act == gen
            seen[key] = res
            if not res:
                return CheckerVerdict(
                    f"MRD({ell})",
                    False,
                    {"tuple": list(tup), "actual": act, "generic": gen},
                    checked,
                    mode,
                    params,
                    seed,
                )
    return CheckerVerdict(f"MRD({ell})", True, None, checked, mode, params, seed)


# ---------------------------------------------------------------------------
# LD-MRD
# ---------------------------------------------------------------------------


def is_ld_mrd(C, ell):
    """Brute-force LD-MRD(<= ell) on tiny codes.

    By translation invariance of rank distance and linearity, every list can
    be shifted to contain the zero codeword.  For a center y and list size
    L + 1 the worst case is d(y, 0) plus the L smallest distances from y to
    nonzero codewords.
    """
    t, n, k = C.tower, C.n, C.k
    params = {"n": n, "k": k, "ell": ell, "q": t.q, "m": t.m}
    _guard.check(t.order**k, "LD-MRD codewords", exc=SizeGuardExceeded)
    _guard.check(t.order**n, "LD-MRD centers", exc=SizeGuardExceeded)
    words = [w for w in C.codewords() if any(w)]
    if ell == 0:
        return CheckerVerdict("LD-MRD(<=0)", is_mrd(C), None, 0, "exhaustive", params)
    lmax = min(ell, len(words))
    checked = 0
    for y in itertools.product(range(t.order), repeat=n):
        checked += 1
        d0 = rank_fq(t, y)
        dists = sorted((rank_fq(t, [t.sub(a, b) for a, b in zip(y, w)]), i) for i, w in enumerate(words))
        acc = d0
        for L in range(1, lmax + 1):
            acc += dists[L - 1][0]
            if acc <= L * (n - k):
                wit = {
                    "center": list(y),
                    "L": L,
                    "codewords": [[0] * n] + [words[i] for _, i in dists[:L]],
                    "total_distance": acc,
                    "bound": L * (n - k),
                }
                return CheckerVerdict(f"LD-MRD(<={ell})", False, wit, checked, "exhaustive", params)
    return CheckerVerdict(f"LD-MRD(<={ell})", True, None, checked, "exhaustive", params)


def is_ld_mrd_via_dual(C, ell, mode="exhaustive", samples=1000, rng=None):
    """LD-MRD(<= ell) of C through MRD(ell + 1) of its dual."""
    if ell == 0:
        D = dual_code_linear(C)
        return CheckerVerdict("LD-MRD(<=0)", is_mrd(D), None, 0, mode, {"n": C.n, "k": C.k, "ell": 0})
    D = dual_code_linear(C)
    v = is_mrd_ell(D, ell + 1, mode=mode, samples=samples, rng=rng)
    v.property = f"LD-MRD(<={ell}) via dual MRD({ell + 1})"
    return v


def verify_ld_witness(C, wit):
    """Recompute the total distance of a brute-force LD-MRD witness."""
    t = C.tower
    y = wit["center"]
    total = sum(rank_fq(t, [t.sub(a, b) for a, b in zip(y, c)]) for c in wit["codewords"])
    return total == wit["total_distance"] and total <= wit["bound"]


# ---------------------------------------------------------------------------
# GKP(ell)
# ---------------------------------------------------------------------------


def is_gkp_ell(C, ell):
    """MRD and attains every generic kernel pattern of order <= ell."""
    t, G = C.tower, C.generator
    params = {"n": C.n, "k": C.k, "ell": ell, "q": t.q, "m": t.m}
    bad = mrd_violation(C)
    if bad is not None:
        return CheckerVerdict(f"GKP({ell})", False, {"not_mrd": bad}, 0, "exhaustive", params)
    pats = enumerate_gkp_patterns(C.n, C.k, ell, t.fq)
    for i, P in enumerate(pats):
        try:
            attain(t, G, P)
        except DirectSumFailure:
            return CheckerVerdict(f"GKP({ell})", False, {"pattern": P}, i + 1, "exhaustive", params)
    return CheckerVerdict(f"GKP({ell})", True, None, len(pats), "exhaustive", params)


# ---------------------------------------------------------------------------
# equivalence harness
# ---------------------------------------------------------------------------


def equivalence_harness(C, ell, raise_on_disagreement=True):
    """GKP(ell+1), MRD(ell+1) and LD-MRD(<= ell) of the dual must agree."""
    t = C.tower
    report = {"n": C.n, "k": C.k, "ell": ell, "q": t.q, "m": t.m}
    if ell == 0:
        plain = is_mrd(C)
        a = b = plain
        c = is_mrd(dual_code_linear(C))
        report.update(gkp=a, mrd_ell=b, ld_mrd_dual=c, ld_mrd_feasible=True)
    else:
        va = is_gkp_ell(C, ell + 1)
        vb = is_mrd_ell(C, ell + 1)
        a, b = va.holds, vb.holds
        report.update(gkp=a, mrd_ell=b, gkp_witness=_witness_json(va.witness), mrd_witness=_witness_json(vb.witness))
        D = dual_code_linear(C)
        feasible = t.order ** max(D.k, D.n) <= _guard.limit(1 << 16)
        c = None
        if feasible:
            vc = is_ld_mrd(D, ell)
            c = vc.holds
            report["ld_witness"] = _witness_json(vc.witness)
        report.update(ld_mrd_dual=c, ld_mrd_feasible=feasible)
    verdicts = [v for v in (a, b, c) if v is not None]
    report["agree"] = len(set(verdicts)) == 1
    if not report["agree"] and raise_on_disagreement:
        raise Disagreement("equivalence verdicts disagree", report)
    return report


def ld_witness_translation(t, y, codewords, c):
    """Distances from y to a list equal those from y - c to the translated list."""
    before = sorted(rank_fq(t, [t.sub(a, b) for a, b in zip(y, w)]) for w in codewords)
    ys = [t.sub(a, b) for a, b in zip(y, c)]
    moved = [[t.sub(a, b) for a, b in zip(w, c)] for w in codewords]
    after = sorted(rank_fq(t, [t.sub(a, b) for a, b in zip(ys, w)]) for w in moved)
    return before == after

