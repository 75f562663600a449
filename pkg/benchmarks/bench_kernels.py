"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each timing runs in a fresh interpreter so the module-level caches start
empty and the backend is chosen at import time (``BRMULT_PURE=1`` forces
the fallback).
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, sys, timeit
from brmult import kernels
from brmult import brfunction, monomial
from brmult.brfunction import big_lambda_fast
from brmult.corpus import builtin_corpus
from brmult.monomial import colength_box, ideal_power

repeat = int(sys.argv[1])
corpus = builtin_corpus()
stair = corpus["d2-staircase"].ideals[0]
big = ideal_power(stair, 12)
gens = list(big.gens) + [tuple(e + 1 for e in g) for g in big.gens]
left, right = list(ideal_power(stair, 6).gens), list(ideal_power(stair, 7).gens)
bounds = tuple(max(g[i] for g in big.gens) for i in range(2))
d3 = ideal_power(corpus["d3-m2-pure"].ideals[0], 6)
d3_bounds = tuple(max(g[i] for g in d3.gens) for i in range(3))


def lam():
    for fn in (brfunction._closed_form, brfunction._reduced, brfunction._fiber_colength,
               monomial.ideal_product, monomial.ideal_power, monomial._power_product, colength_box):
        fn.cache_clear()
    big_lambda_fast(corpus["d2-three-nonnested"], 3, 18)


cases = {
    "minimal_generators": lambda: kernels.minimal_generators(gens),
    "count_standard d=2": lambda: kernels.count_standard(list(big.gens), bounds),
    "count_standard d=3": lambda: kernels.count_standard(list(d3.gens), d3_bounds),
    "pairwise_sums": lambda: kernels.pairwise_sums(left, right),
    "Lambda(3,18) r=3": lam,
}
out = {"backend": kernels.BACKEND}
for name, fn in cases.items():
    out[name] = min(timeit.repeat(fn, number=1, repeat=repeat))
print(json.dumps(out))
"""


def run(pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("BRMULT_PURE", None)
    if pure:
        env["BRMULT_PURE"] = "1"
    proc = subprocess.run(
        [sys.executable, "-c", WORKLOAD, str(repeat)], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(proc.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    fast, slow = run(False, args.repeat), run(True, args.repeat)
    if fast["backend"] != "cython":
        print("compiled extension not available; both columns use the fallback", file=sys.stderr)
    print(f"{'kernel':<22}{'compiled ms':>14}{'python ms':>12}{'speedup':>10}")
    for key in fast:
        if key == "backend":
            continue
        a, b = fast[key] * 1e3, slow[key] * 1e3
        print(f"{key:<22}{a:>14.3f}{b:>12.3f}{b / a:>9.1f}x")


if __name__ == "__main__":
    main()
