#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python/numpy fallback.

Times the four hot kernels on representative workloads and prints a table
with per-call medians and the ext-over-pure speedup.  Run from the repo root:

    python benchmarks/bench_backends.py [--repeat 5]
"""

import argparse
import statistics
import time

from cubefree._kernels import pure
from cubefree.ambient import Ambient
from cubefree.constructions import residue_construction
from cubefree.search import PAIR, DIAGONAL, Problem, forbidden_masks

try:
    from cubefree._kernels import _ext as ext
except ImportError:
    ext = None


def timed(fn, repeat):
    samples = []
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples), result


def workloads():
    residue_mask = residue_construction(60, 5).mask
    pair20 = forbidden_masks(Problem(PAIR, 2, Ambient.cyclic(20)))
    diag25 = forbidden_masks(Problem(DIAGONAL, 5, Ambient.cyclic(25)))
    return [
        ("cube_search residue(60,5)",
         lambda impl: impl.cube_search(60, 5, residue_mask, True)),
        ("subset_scan pair-free Z_20",
         lambda impl: impl.subset_scan_max(20, pair20)),
        ("branch&bound diagonal Z_25",
         lambda impl: impl.dfs_bnb_max(25, diag25)),
        ("alternating_walk N=10^6 d=2",
         lambda impl: impl.alternating_walk(10**6, 2)),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    print(f"{'workload':34} {'pure':>12} {'ext':>12} {'speedup':>9}")
    for name, call in workloads():
        t_pure, r_pure = timed(lambda: call(pure), args.repeat)
        if ext is None:
            print(f"{name:34} {t_pure * 1e3:10.2f}ms {'n/a':>12} {'n/a':>9}")
            continue
        t_ext, r_ext = timed(lambda: call(ext), args.repeat)
        matches = _comparable(r_pure) == _comparable(r_ext)
        flag = "" if matches else "  RESULTS DIFFER"
        print(f"{name:34} {t_pure * 1e3:10.2f}ms {t_ext * 1e3:10.2f}ms "
              f"{t_pure / t_ext:8.1f}x{flag}")


def _comparable(result):
    if isinstance(result, tuple) and result and isinstance(result[-1], bytearray):
        return result[:-1] + (bytes(result[-1]),)
    return result


if __name__ == "__main__":
    main()
