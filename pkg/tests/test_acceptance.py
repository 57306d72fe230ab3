"""Acceptance criteria 1-10, each at its stated tolerance and time limit.

Each test records one PASS/FAIL line; the lines are printed in the pytest
terminal summary and also when this file is run as a script.
"""

import itertools
import random
import time

import pytest

from oracles import linearized_from_ordinary, naive_annihilator, span_elements
from rmlab.experiments import ExperimentConfig, cmd_gkp_mc, cmd_ld_mrd, cmd_ms_scan, gkp_floor, ld_floors
from rmlab.ffield import tower_create
from rmlab.fqspace import enumerate_upto
from rmlab.gabidulin import (
    GabidulinCode,
    dual_basis,
    dual_code,
    kernel_subspace,
    min_rank_distance,
    pairing_sums,
    random_gabidulin,
    random_linear_code,
    rank_fq,
    same_code,
)
from rmlab.highermrd import (
    actual_intersection_dim,
    generic_intersection_dim,
    is_gkp_ell,
    is_ld_mrd,
    is_ld_mrd_via_dual,
    is_mrd_ell,
)
from rmlab.qlinpoly import annihilator, embed_vector, fq_rank_of_elements

RESULTS = {}


def record(num, ok, detail, elapsed, limit):
    ok = ok and elapsed < limit
    RESULTS[num] = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}  ({elapsed:.2f}s / {limit}s)"
    print(RESULTS[num])
    return ok


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def test_c01_gabidulin_min_distance():
    t = tower_create(2, 1, 3)
    with Timer() as tm:
        C = GabidulinCode(t, 2, [1, 2, 4])
        nonzero = sum(1 for w in C.codewords() if any(w))
        d = min_rank_distance(C)
    assert record(1, d == 2 and nonzero == 63, f"d={d} over {nonzero} nonzero codewords", tm.elapsed, 1)


def test_c02_rank_kernel_identity():
    t = tower_create(2, 1, 3)
    with Timer() as tm:
        bad = 0
        count = 0
        for v in itertools.product(range(8), repeat=3):
            count += 1
            bad += rank_fq(t, v) + kernel_subspace(t, v).dim != 3
    assert record(2, bad == 0 and count == 512, f"{count} vectors, {bad} failures", tm.elapsed, 1)


def test_c03_annihilators_f16():
    t = tower_create(2, 1, 4)
    alphas = [1, 2, 4, 8]
    with Timer() as tm:
        bad = 0
        count = 0
        for V in enumerate_upto(4, 3):
            count += 1
            f = annihilator(t, V, alphas)
            pts = span_elements(t, [embed_vector(t, b, alphas) for b in V.basis])
            zeros = {a for a in t.elements() if f(a) == 0}
            naive = linearized_from_ordinary(t, naive_annihilator(t, sorted(pts)))
            ok = f.is_monic() and f.q_degree == V.dim and zeros == pts and naive == list(f.coeffs)
            bad += not ok
    assert record(3, bad == 0, f"{count} subspaces, {bad} failures", tm.elapsed, 5)


def test_c04_duality_sweep():
    with Timer() as tm:
        bad = 0
        cases = 0
        for n in (2, 3, 4):
            for m in range(n, n + 4):
                t = tower_create(2, 1, m)
                rng = random.Random(1000 * n + m)
                for k in range(1, n):
                    cases += 1
                    C = random_gabidulin(t, n, k, rng)
                    beta = dual_basis(t, C.alphas, k)
                    sums = pairing_sums(t, C.alphas, beta, k)
                    ok = len(sums) == k * (n - k) and not any(sums)
                    ok = ok and fq_rank_of_elements(t, beta) == n
                    ok = ok and same_code(dual_code(dual_code(C)), C)
                    bad += not ok
    assert record(4, bad == 0, f"{cases} (n, m, k) cases, {bad} failures", tm.elapsed, 10)


def test_c05_intersection_formula():
    t = tower_create(2, 1, 28)
    with Timer() as tm:
        rng = random.Random(505)
        C = random_gabidulin(t, 3, 2, rng)
        cert = is_gkp_ell(C, 2)
        spaces = list(enumerate_upto(3, 2))
        pairs = mismatches = 0
        for a, b in itertools.product(spaces, repeat=2):
            pairs += 1
            mismatches += actual_intersection_dim(t, C.generator, [a, b]) != generic_intersection_dim([a, b], 2)
    ok = cert.holds and pairs == 225 and mismatches == 0
    assert record(5, ok, f"GKP(2) certified={cert.holds}, {pairs} pairs, {mismatches} mismatches", tm.elapsed, 30)


def test_c06_ms_determinant_criterion():
    cfg = ExperimentConfig(command="ms-scan", m=28, n=3, k=3, trials=3, seed=606).validate()
    with Timer() as tm:
        rep = cmd_ms_scan(cfg)
    hard = rep["aggregate"]["hard_violations"]
    rates = [r["miss_rate"] for r in rep["trials"]]
    after = rep["aggregate"]["misses_after_redraw"]
    specs = rep["trials"][0]["specs"]
    ok = hard == 0 and all(r <= 0.01 for r in rates) and after == 0
    detail = f"{specs} specs per draw, hard violations={hard}, miss rates={rates}, after re-draw={after}"
    assert record(6, ok, detail, tm.elapsed, 120)


def test_c07_gkp_vs_mrd2():
    t = tower_create(2, 1, 3)
    with Timer() as tm:
        rng = random.Random(707)
        agree = 0
        verdicts = []
        codes = 24
        for i in range(codes):
            k = 2 if i % 4 else 1
            C = random_gabidulin(t, 3, k, rng) if i % 3 == 0 else random_linear_code(t, 3, k, rng)
            a, b = is_gkp_ell(C, 2).holds, is_mrd_ell(C, 2).holds
            agree += a == b
            verdicts.append(a)
    ok = agree == codes and True in verdicts and False in verdicts
    detail = f"{agree}/{codes} agree ({verdicts.count(True)} hold, {verdicts.count(False)} fail)"
    assert record(7, ok, detail, tm.elapsed, 120)


def test_c08_ld_brute_vs_dual():
    t = tower_create(2, 1, 3)
    with Timer() as tm:
        rng = random.Random(808)
        codes = 50
        agree = 0
        holds = 0
        for i in range(codes):
            C = random_gabidulin(t, 3, 1, rng) if i % 2 == 0 else random_linear_code(t, 3, 1, rng)
            for ell in (1, 2):
                brute = is_ld_mrd(C, ell).holds
                agree += brute == is_ld_mrd_via_dual(C, ell).holds
                holds += brute
    ok = agree == 2 * codes
    detail = f"{agree}/{2 * codes} (code, ell) verdicts agree, {holds} hold"
    assert record(8, ok, detail, tm.elapsed, 300)


def test_c09_ld_mrd_desk_instance():
    cfg = ExperimentConfig(command="ld-mrd", m=28, n=3, k=1, ell=2, trials=100, seed=909).validate()
    with Timer() as tm:
        rep = cmd_ld_mrd(cfg)
    held = rep["aggregate"]["holds_count"]
    stated, dual = ld_floors(2, 3, 1, 2, 28)
    detail = f"{held}/100 hold; floor (original k) 1-6*2^-24={stated:.10f}, floor (dual) 1-6*2^-14={dual:.10f}"
    assert record(9, held >= 99, detail, tm.elapsed, 300)


def test_c10_gkp_monte_carlo():
    cfg = ExperimentConfig(command="gkp-mc", m=28, n=3, k=2, ell=2, trials=100, seed=7).validate()
    with Timer() as tm:
        rep = cmd_gkp_mc(cfg)
    rate = rep["aggregate"]["pass_rate"]
    floor = gkp_floor(2, 3, 2, 2, 28)
    detail = f"pass rate {rate:.2f}; floor {rep['floor_expr']}={floor:.10f} (quoted 1-6*2^-12={1 - 6 * 2.0**-12:.10f})"
    assert record(10, rate >= 0.99, detail, tm.elapsed, 300)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
