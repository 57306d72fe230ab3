"""Seeded experiments behind the command-line interface.

Every ``cmd_*`` takes an :class:`ExperimentConfig` and returns a report dict.
Trial ``i`` draws from its own ``random.Random`` seeded by a hash of
``(seed, i)``, so any trial can be re-run alone and reports are identical
across runs apart from ``wall_clock_s``.
"""

import hashlib
import itertools
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from . import __version__
from . import extlinalg as la
from .errors import DirectSumFailure, NonPrime
from .ffield import is_prime, tower_create
from .fqspace import enumerate_upto
from .gabidulin import (
    GabidulinCode,
    LinearCode,
    dual_basis,
    dual_code,
    encode,
    is_mrd,
    min_rank_distance,
    pairing_sums,
    random_alphas,
    random_gabidulin,
    random_linear_code,
    same_code,
)
from .highermrd import (
    actual_intersection_dim,
    equivalence_harness,
    generic_intersection_dim,
    is_gkp_ell,
    is_ld_mrd,
    is_ld_mrd_via_dual,
)
from .patterns import MsSpec, attain, enumerate_gkp_patterns, ms_condition, ms_matrix
from .qlinpoly import fq_rank_of_elements


class ValidationError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    command: str
    p: int = 2
    e: int = 1
    m: int = 3
    n: int = 3
    k: int = 2
    ell: int = 1
    trials: int = 1
    seed: int = 0
    mode: str = "exhaustive"
    out: str = None
    format: str = "json"
    code: str = None
    message: list = field(default=None)
    workers: int = 1

    def validate(self):
        if not is_prime(self.p):
            raise ValidationError(f"p={self.p} is not prime")
        if self.e < 1 or self.m < 1:
            raise ValidationError("e and m must be positive")
        if self.code is None and not 1 <= self.k <= self.n <= self.m:
            raise ValidationError(f"need 1 <= k <= n <= m, got k={self.k}, n={self.n}, m={self.m}")
        if self.ell < 0:
            raise ValidationError("ell must be nonnegative")
        if self.trials < 0:
            raise ValidationError("trials must be nonnegative")
        if not 0 <= self.seed < 1 << 64:
            raise ValidationError("seed must be a 64-bit unsigned integer")
        if self.mode not in ("exhaustive", "sampled", "fast"):
            raise ValidationError(f"unknown mode {self.mode!r}")
        if self.format not in ("json", "csv"):
            raise ValidationError(f"unknown format {self.format!r}")
        return self

    def echo(self):
        d = asdict(self)
        d.pop("out", None)
        d.pop("workers", None)
        return d


def trial_rng(seed, index):
    digest = hashlib.sha256(f"{seed}:{index}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "little"))


def gkp_floor(q, n, k, ell, m):
    """1 - 3k q^{nk min(ell, k) + k - m}."""
    return 1 - 3 * k * float(q) ** (n * k * min(ell, k) + k - m)


def floor_expr(q, n, k, ell, m):
    return f"1 - {3 * k}*{q}^{n * k * min(ell, k) + k - m}"


def _tower(cfg):
    return tower_create(cfg.p, cfg.e, cfg.m)


def _run_trials(fn, cfg, extra=()):
    args = [(cfg, i) + tuple(extra) for i in range(cfg.trials)]
    if cfg.workers > 1 and cfg.trials > 1:
        with ProcessPoolExecutor(cfg.workers) as ex:
            return list(ex.map(_star, [(fn,) + a for a in args]))
    return [fn(*a) for a in args]


def _star(packed):
    fn, *rest = packed
    return fn(*rest)


def _report(cfg, start, trials, aggregate, **extra):
    out = {
        "command": cfg.command,
        "version": __version__,
        "config": cfg.echo(),
        "trials": trials,
        "aggregate": aggregate,
    }
    out.update(extra)
    out["wall_clock_s"] = round(time.perf_counter() - start, 4)
    return out


def load_code(path):
    with open(path) as fh:
        d = json.load(fh)
    return LinearCode.from_json(d)


# ---------------------------------------------------------------------------
# gkp-mc
# ---------------------------------------------------------------------------


def _gkp_trial(cfg, i):
    t = _tower(cfg)
    rng = trial_rng(cfg.seed, i)
    C = random_gabidulin(t, cfg.n, cfg.k, rng)
    rec = {"trial": i, "alphas": C.alphas, "mrd": is_mrd(C)}
    if not rec["mrd"]:
        rec.update(passed=False, failed_pattern=None, patterns=0)
        return rec
    pats = enumerate_gkp_patterns(cfg.n, cfg.k, cfg.ell, t.fq)
    failed = None
    for P in pats:
        try:
            attain(t, C.generator, P)
        except DirectSumFailure:
            failed = P.to_json()
            break
    rec.update(passed=failed is None, failed_pattern=failed, patterns=len(pats))
    return rec


def cmd_gkp_mc(cfg):
    """Monte-Carlo: fraction of random Gabidulin codes that are GKP(ell)."""
    start = time.perf_counter()
    if cfg.ell < 1:
        raise ValidationError("gkp-mc needs ell >= 1")
    trials = _run_trials(_gkp_trial, cfg)
    passed = sum(1 for r in trials if r["passed"])
    floor = gkp_floor(cfg.p**cfg.e, cfg.n, cfg.k, cfg.ell, cfg.m)
    agg = {
        "pass_count": passed,
        "trials": cfg.trials,
        "pass_rate": passed / cfg.trials if cfg.trials else None,
    }
    return _report(
        cfg,
        start,
        trials,
        agg,
        floor=floor,
        floor_expr=floor_expr(cfg.p**cfg.e, cfg.n, cfg.k, cfg.ell, cfg.m),
        floor_vacuous=floor <= 0,
        violations=0,
    )


# ---------------------------------------------------------------------------
# equivalence
# ---------------------------------------------------------------------------


def _equiv_trial(cfg, i):
    t = _tower(cfg)
    rng = trial_rng(cfg.seed, i)
    if i % 2 == 0:
        C = random_gabidulin(t, cfg.n, cfg.k, rng)
        kind = "gabidulin"
    else:
        C = random_linear_code(t, cfg.n, cfg.k, rng)
        kind = "random"
    rep = equivalence_harness(C, cfg.ell, raise_on_disagreement=False)
    rep["trial"] = i
    rep["kind"] = kind
    rep["generator"] = C.generator
    return rep


def cmd_equivalence(cfg):
    start = time.perf_counter()
    trials = _run_trials(_equiv_trial, cfg)
    disagree = [r["trial"] for r in trials if not r["agree"]]
    agg = {
        "trials": cfg.trials,
        "agreements": cfg.trials - len(disagree),
        "disagreements": disagree,
        "true_count": sum(1 for r in trials if r["mrd_ell"]),
    }
    return _report(cfg, start, trials, agg, violations=len(disagree))


# ---------------------------------------------------------------------------
# ld-mrd
# ---------------------------------------------------------------------------


def ld_floors(q, n, k, ell, m):
    """Floor with the original k, and the GKP floor applied to the dual code."""
    stated = 1 - 3 * (n - k) * float(q) ** (n * k * min(ell + 1, k) + k - m)
    kd = n - k
    dual = 1 - 3 * kd * float(q) ** (n * kd * min(ell + 1, kd) + kd - m)
    return stated, dual


def _ld_trial(cfg, i):
    t = _tower(cfg)
    rng = trial_rng(cfg.seed, i)
    C = random_gabidulin(t, cfg.n, cfg.k, rng)
    sub = trial_rng(cfg.seed ^ 0x5EED, i) if cfg.mode == "sampled" else None
    v = is_ld_mrd_via_dual(C, cfg.ell, mode=cfg.mode, rng=sub)
    rec = {"trial": i, "alphas": C.alphas, "holds": v.holds, "tuples_checked": v.tuples_checked}
    if t.order ** max(C.n, C.k) <= 1 << 12:
        b = is_ld_mrd(C, cfg.ell)
        rec["brute_force"] = b.holds
        rec["agree"] = b.holds == v.holds
    return rec


def cmd_ld_mrd(cfg):
    start = time.perf_counter()
    if cfg.k >= cfg.n:
        raise ValidationError("ld-mrd needs k < n (the dual must be nonzero)")
    trials = _run_trials(_ld_trial, cfg)
    holds = sum(1 for r in trials if r["holds"])
    disagree = [r["trial"] for r in trials if r.get("agree") is False]
    stated, dual = ld_floors(cfg.p**cfg.e, cfg.n, cfg.k, cfg.ell, cfg.m)
    agg = {"trials": cfg.trials, "holds_count": holds, "rate": holds / cfg.trials if cfg.trials else None}
    return _report(
        cfg,
        start,
        trials,
        agg,
        floor=stated,
        floor_dual=dual,
        floor_vacuous=stated <= 0,
        violations=len(disagree),
        disagreements=disagree,
    )


# ---------------------------------------------------------------------------
# ms-scan
# ---------------------------------------------------------------------------


def _positive_compositions(k):
    for cuts in itertools.product((0, 1), repeat=k - 1):
        parts, cur = [], 1
        for c in cuts:
            if c:
                parts.append(cur)
                cur = 1
            else:
                cur += 1
        parts.append(cur)
        yield tuple(parts)


def enumerate_ms_parts(n, kmax, q, max_parts=None):
    """Ordered ((V_i, r_i)) tuples with sum r_i = k <= kmax and dim V_i + r_i <= k."""
    spaces = list(enumerate_upto(n, kmax, q))
    for k in range(1, kmax + 1):
        for rs in _positive_compositions(k):
            if max_parts is not None and len(rs) > max_parts:
                continue
            choices = [[V for V in spaces if V.dim + r <= k] for r in rs]
            for vs in itertools.product(*choices):
                yield k, list(zip(vs, rs))


def _ms_trial(cfg, i):
    t = _tower(cfg)
    rng = trial_rng(cfg.seed, i)
    alphas = random_alphas(t, cfg.n, rng)
    specs = list(enumerate_ms_parts(cfg.n, cfg.k, t.fq))
    hard, misses, cond_true = [], [], 0
    for idx, (k, parts) in enumerate(specs):
        S = MsSpec(k, parts, alphas)
        cond = ms_condition(S)
        det_zero = la.det(t, ms_matrix(t, S)) == 0
        cond_true += cond
        if cond and det_zero:
            misses.append(idx)
        elif not cond and not det_zero:
            hard.append(idx)
    redraw = random_alphas(t, cfg.n, rng)
    still = []
    for idx in misses:
        k, parts = specs[idx]
        if la.det(t, ms_matrix(t, MsSpec(k, parts, redraw))) == 0:
            still.append(idx)
    return {
        "trial": i,
        "alphas": alphas,
        "specs": len(specs),
        "condition_true": cond_true,
        "hard_violations": [_spec_json(specs[j]) for j in hard],
        "probabilistic_misses": len(misses),
        "miss_rate": len(misses) / cond_true if cond_true else 0.0,
        "misses_after_redraw": len(still),
    }


def _spec_json(spec):
    k, parts = spec
    return {"k": k, "parts": [{"subspace": V.to_json(), "r": r} for V, r in parts]}


def cmd_ms_scan(cfg):
    """Exhaustive M_S scan; the deterministic direction must never fail."""
    start = time.perf_counter()
    trials = _run_trials(_ms_trial, cfg)
    hard = sum(len(r["hard_violations"]) for r in trials)
    agg = {
        "trials": cfg.trials,
        "hard_violations": hard,
        "max_miss_rate": max((r["miss_rate"] for r in trials), default=0.0),
        "misses_after_redraw": sum(r["misses_after_redraw"] for r in trials),
    }
    return _report(cfg, start, trials, agg, violations=hard)


# ---------------------------------------------------------------------------
# dual / intersection / encode / min-distance
# ---------------------------------------------------------------------------


def _gabidulin_from_cfg(cfg, rng):
    if cfg.code:
        C = load_code(cfg.code)
        if not isinstance(C, GabidulinCode):
            raise ValidationError("this command needs a Gabidulin code file (with alphas)")
        return C
    return random_gabidulin(_tower(cfg), cfg.n, cfg.k, rng)


def cmd_dual(cfg):
    start = time.perf_counter()
    C = _gabidulin_from_cfg(cfg, trial_rng(cfg.seed, 0))
    t = C.tower
    beta = dual_basis(t, C.alphas, C.k)
    sums = pairing_sums(t, C.alphas, beta, C.k)
    D = dual_code(C)
    checks = {
        "pairings": len(sums),
        "all_pairings_zero": not any(sums),
        "beta_independent": fq_rank_of_elements(t, beta) == C.n,
        "double_dual_equal": same_code(dual_code(D), C),
        "dual_mrd": is_mrd(D),
    }
    violations = sum(1 for key in ("all_pairings_zero", "beta_independent", "double_dual_equal") if not checks[key])
    trial = {
        "alphas": [t.residues(a) for a in C.alphas],
        "beta": [t.residues(b) for b in beta],
        "verification": checks,
    }
    return _report(cfg, start, [trial], checks, violations=violations)


def _intersection_trial(cfg, i):
    t = _tower(cfg)
    rng = trial_rng(cfg.seed, i)
    C = random_gabidulin(t, cfg.n, cfg.k, rng)
    cert = is_gkp_ell(C, cfg.ell)
    spaces = list(enumerate_upto(C.n, C.k, t.fq))
    mismatches = 0
    pairs = 0
    cache = {}
    for tup in itertools.product(spaces, repeat=cfg.ell):
        pairs += 1
        key = tuple(sorted(tup, key=lambda V: V.sort_key()))
        if key not in cache:
            cache[key] = (
                actual_intersection_dim(t, C.generator, key),
                generic_intersection_dim(key, C.k),
            )
        a, g = cache[key]
        mismatches += a != g
    return {
        "trial": i,
        "alphas": C.alphas,
        "gkp_certified": cert.holds,
        "tuples": pairs,
        "mismatches": mismatches,
        "violation": cert.holds and mismatches > 0,
    }


def cmd_intersection(cfg):
    start = time.perf_counter()
    if cfg.ell < 1:
        raise ValidationError("intersection needs ell >= 1")
    trials = _run_trials(_intersection_trial, cfg)
    v = sum(1 for r in trials if r["violation"])
    agg = {
        "trials": cfg.trials,
        "certified": sum(1 for r in trials if r["gkp_certified"]),
        "violations": v,
    }
    return _report(cfg, start, trials, agg, violations=v)


def cmd_encode(cfg):
    start = time.perf_counter()
    if not cfg.code:
        raise ValidationError("encode needs --code")
    C = load_code(cfg.code)
    if cfg.message is None:
        raise ValidationError("encode needs --message")
    t = C.tower
    msg = [t.from_residues(x) if isinstance(x, list) else int(x) for x in cfg.message]
    word = encode(C, msg)
    res = {"codeword": [t.residues(x) for x in word], "codeword_ints": word}
    return _report(cfg, start, [res], res, violations=0)


def cmd_min_distance(cfg):
    start = time.perf_counter()
    if cfg.code:
        C = load_code(cfg.code)
    else:
        C = random_gabidulin(_tower(cfg), cfg.n, cfg.k, trial_rng(cfg.seed, 0))
    d = min_rank_distance(C)
    res = {"n": C.n, "k": C.k, "min_rank_distance": d, "singleton": C.n - C.k + 1, "mrd": d == C.n - C.k + 1}
    return _report(cfg, start, [res], res, violations=0)


COMMANDS = {
    "gkp-mc": cmd_gkp_mc,
    "equivalence": cmd_equivalence,
    "ld-mrd": cmd_ld_mrd,
    "ms-scan": cmd_ms_scan,
    "dual": cmd_dual,
    "intersection": cmd_intersection,
    "encode": cmd_encode,
    "min-distance": cmd_min_distance,
}


def run(cfg):
    cfg.validate()
    try:
        return COMMANDS[cfg.command](cfg)
    except NonPrime as exc:
        raise ValidationError(str(exc)) from exc
