"""Time the compiled depth kernels against the numpy fallback.

Each case computes the depth of every observation in its symmetrized
sample, which is the work done once per replication by the runs tests.

    python benchmarks/bench_kernels.py --sizes 50 100 200 --repeat 5
"""

from __future__ import annotations

import argparse
import sys
import timeit

import numpy as np

from symruns import _pykernels
from symruns.ordering import symmetrize

try:
    from symruns import _ckernels
except ImportError:
    _ckernels = None

KERNELS = ("halfspace_counts", "simplicial_counts", "oja_area_sums")


def best_time(fn, repeat: int) -> float:
    timer = timeit.Timer(fn)
    number, _ = timer.autorange()
    return min(timer.repeat(repeat=repeat, number=number)) / number


def run(sizes, repeat: int, seed: int) -> list[dict]:
    rng = np.random.default_rng(seed)
    rows = []
    for n in sizes:
        x = rng.standard_normal((n, 2))
        ref = np.ascontiguousarray(symmetrize(x))
        for name in KERNELS:
            py = getattr(_pykernels, name)
            t_py = best_time(lambda: py(x, ref), repeat)
            row = {"kernel": name, "n": n, "python_s": t_py, "cython_s": None, "speedup": None}
            if _ckernels is not None:
                cy = getattr(_ckernels, name)
                a, b = py(x, ref), cy(x, ref)
                same = np.array_equal(a, b) if name != "oja_area_sums" else np.allclose(a, b, rtol=1e-12)
                if not same:
                    raise SystemExit(f"{name} disagrees between backends at n={n}")
                t_cy = best_time(lambda: cy(x, ref), repeat)
                row.update(cython_s=t_cy, speedup=t_py / t_cy)
            rows.append(row)
    return rows


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=[30, 100, 300])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels not built; timing the numpy fallback only", file=sys.stderr)
    print(f"{'kernel':<20}{'n':>6}{'numpy (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for r in run(args.sizes, args.repeat, args.seed):
        cy = f"{1e3 * r['cython_s']:14.3f}" if r["cython_s"] is not None else f"{'-':>14}"
        sp = f"{r['speedup']:9.1f}x" if r["speedup"] is not None else f"{'-':>10}"
        print(f"{r['kernel']:<20}{r['n']:>6}{1e3 * r['python_s']:14.3f}{cy}{sp}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
