"""Compare the compiled quadrature core with the pure-Python fallback.

Run with ``python3 benchmarks/bench_core.py``.  Both cores integrate the
same Green-tensor problems; the script reports the median wall time per
call, the speed-up, and the largest relative difference of the results.
"""
from __future__ import annotations

import argparse
import statistics
import timeit

import numpy as np

from planar_qed import _backend, _pycore
from planar_qed.green import QuadratureConfig, green_solution
from planar_qed.units import lhm

CASES = [
    ("near surface, eta=1e-3", 0.05, 1e-3, 5.0),
    ("barrier region, eta=1e-3", 0.35, 1e-3, 5.0),
    ("retarded, eta=1e-2", 6.0, 1e-2, 5.0),
    ("far field, eta=1e-3", 60.0, 1e-3, 5.0),
    ("trap, eta=2e-6", 0.1, 2e-6, 9.0),
]


def _time(fn, repeat):
    return statistics.median(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not _backend.COMPILED:
        print("compiled core not available; only the pure-Python timings are shown")
    cfg = QuadratureConfig()
    print(f"{'case':28s} {'compiled [ms]':>14s} {'python [ms]':>12s} {'speed-up':>9s} {'max rel diff':>13s}")
    for label, z, eta, d in CASES:
        m = lhm(eta)
        green_solution(z, m, d, cfg)  # warm the pole cache
        t_py = _time(lambda: green_solution(z, m, d, cfg, core=_pycore), args.repeat)
        ref = green_solution(z, m, d, cfg, core=_pycore).total
        if _backend.COMPILED:
            t_c = _time(lambda: green_solution(z, m, d, cfg, core=_backend.core), args.repeat)
            got = green_solution(z, m, d, cfg, core=_backend.core).total
            diff = float(np.max(np.abs(got - ref) / np.maximum(np.abs(ref), 1e-300)))
            print(f"{label:28s} {1e3 * t_c:14.3f} {1e3 * t_py:12.3f} {t_py / t_c:9.1f} {diff:13.2e}")
        else:
            print(f"{label:28s} {'-':>14s} {1e3 * t_py:12.3f} {'-':>9s} {'-':>13s}")


if __name__ == "__main__":
    main()
