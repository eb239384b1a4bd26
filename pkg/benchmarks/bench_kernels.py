"""Compare the numba kernels with the pure-numpy fallback.

Each backend runs in its own interpreter, because the choice is made at
import time from ``TORUSLAT_NUMBA``.  Timings exclude the first call, so
numba compilation (cached on disk after the first run) is not counted.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import json
import os
import subprocess
import sys
import time

WORKER = r"""
import json, sys, time
import numpy as np
from toruslat import _accel, _kernels
from toruslat.group_catalog import symmetric, direct_product, cyclic, group_by_name
from toruslat.lattice import norm_one_lattice, regular_lattice

repeat = int(sys.argv[1])
G = symmetric(6)
T = np.ascontiguousarray(G.table, dtype=np.int64)
gens = np.array(G.generator_indices, dtype=np.int64)
right = np.ascontiguousarray(T[:, gens])
parent = np.asarray(G.word_parent, dtype=np.int64)
word = np.asarray(G.word_gen, dtype=np.int64)
D = group_by_name("C2xD4")
Areg = regular_lattice(D).action
rng = np.random.default_rng(0)
# sparse 0/+-1 entries, like coboundary matrices; these stay inside int64
sparse = [((rng.random((32, 32)) < 0.15) * rng.integers(-1, 2, (32, 32))).astype(np.int64)
          for _ in range(20)]
# dense entries overflow, so both backends end on the exact fallback
dense = [rng.integers(-9, 10, size=(24, 24)).astype(np.int64) for _ in range(5)]

def snf_all(mats):
    def run():
        for M in mats:
            n = M.shape[0]
            _kernels.smith_reduce(M, np.eye(n, dtype=np.int64), np.eye(n, dtype=np.int64))
    return run

cases = {
    "mult_table S6 (720)": lambda: _kernels.mult_table(right, parent, word),
    "closure S6": lambda: _kernels.closure(T, gens),
    "element_orders S6": lambda: _kernels.element_orders(T),
    "is_homomorphism Z[C2xD4]": lambda: _kernels.is_homomorphism(D.table, Areg),
    "smith 20 x sparse 32x32": snf_all(sparse),
    "smith 5 x dense 24x24 (fallback)": snf_all(dense),
}
out = {"backend": _accel.backend()}
for name, fn in cases.items():
    fn()
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    out[name] = best
print(json.dumps(out))
"""


def run(flag, repeat):
    env = dict(os.environ, TORUSLAT_NUMBA=flag)
    proc = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                          capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    t0 = time.time()
    fast, slow = run("1", args.repeat), run("0", args.repeat)
    print(f"{'kernel':34s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for key in fast:
        if key == "backend":
            continue
        a, b = fast[key], slow[key]
        print(f"{key:34s} {a * 1e3:9.2f}ms {b * 1e3:9.2f}ms {b / a:7.1f}x")
    print(f"(backends: {fast['backend']} vs {slow['backend']}, best of {args.repeat}, "
          f"{time.time() - t0:.0f}s total)")


if __name__ == "__main__":
    main()
