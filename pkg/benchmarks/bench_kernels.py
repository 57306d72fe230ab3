"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat N]

Micro-benchmarks call both backends directly.  The end-to-end row runs an
MRD(2) check at m=28 in a subprocess per backend (RMLAB_PURE_PYTHON=1 forces
the fallback).
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from rmlab._core import available_backends

M, MOD = 28, (1 << 28) | 0b11

END_TO_END = """
import random, time
from rmlab.ffield import tower_create
from rmlab.gabidulin import random_gabidulin
from rmlab.highermrd import is_mrd_ell
t = tower_create(2, 1, 28)
rng = random.Random(0)
codes = [random_gabidulin(t, 3, 2, rng) for _ in range(10)]
s = time.perf_counter()
for C in codes:
    assert is_mrd_ell(C, 2).holds
print(time.perf_counter() - s)
"""


def micro(be, repeat):
    rng = random.Random(1)
    pairs = [(rng.randrange(1 << M), rng.randrange(1 << M)) for _ in range(1000)]
    mats = [[[rng.randrange(1 << M) for _ in range(4)] for _ in range(4)] for _ in range(100)]
    vecs = [[rng.randrange(1 << M) for _ in range(3)] for _ in range(1000)]

    def mul():
        for a, b in pairs:
            be.bin_mul(a, b, MOD, M)

    def inv():
        for a, _ in pairs:
            if a:
                be.bin_inv(a, MOD, M)

    def det():
        for mat in mats:
            be.bin_det(mat, MOD, M)

    def f2rank():
        for v in vecs:
            be.f2_rank(v)

    out = {}
    for name, fn in [("mul x1000", mul), ("inv x1000", inv), ("det4 x100", det), ("f2_rank x1000", f2rank)]:
        out[name] = min(timeit.repeat(fn, number=1, repeat=repeat))
    return out


def end_to_end(pure):
    env = dict(os.environ)
    env.pop("RMLAB_PURE_PYTHON", None)
    if pure:
        env["RMLAB_PURE_PYTHON"] = "1"
    r = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
    return float(r.stdout.strip())


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = available_backends()
    results = {be.BACKEND: micro(be, args.repeat) for be in backends}
    names = list(results)
    print(f"{'benchmark':<24}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for bench in results[names[0]]:
        row = [results[n][bench] for n in names]
        line = f"{bench:<24}" + "".join(f"{x * 1e3:>10.2f}ms" for x in row)
        if len(row) > 1:
            line += f"{row[0] / row[1]:>11.1f}x"
        print(line)
    py = end_to_end(pure=True)
    line = f"{'MRD(2) x10 codes, m=28':<24}{py * 1e3:>10.2f}ms"
    if len(names) > 1:
        cy = end_to_end(pure=False)
        line += f"{cy * 1e3:>10.2f}ms{py / cy:>11.1f}x"
    print(line)


if __name__ == "__main__":
    main()
