"""Timing comparison of the pure-Python and compiled scan kernels.

Run as a script:

    python3 benchmarks/bench_kernels.py [--repeat 3]

Times the full-enumeration scan on rings (single-word and multiword
masks) and the windowed scan on a 2D torus, for every importable
backend, and prints one table. Results double as a sanity check: all
backends must return identical (weight, mask) pairs.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from muniform.kernels import available_backends  # noqa: E402
from muniform.lattice import Lattice, cluster_generators  # noqa: E402


def _packed_generators(lat):
    gens = cluster_generators(lat)
    return [g.x for g in gens], [g.z for g in gens], lat.n


def _ball_masks(lat, radius):
    balls = []
    for v in range(lat.n):
        mask = 0
        for u in range(lat.n):
            if lat.hamming(u, v) <= radius:
                mask |= 1 << u
        balls.append(mask)
    return balls


def _time(fn, repeat):
    best = float("inf")
    value = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t0)
    return best, value


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing repetitions; the best run counts")
    args = parser.parse_args(argv)

    ring20 = _packed_generators(Lattice.chain(20, periodic=True))
    ring80 = _packed_generators(Lattice.chain(80, periodic=True))
    torus = Lattice.hypercube(2, 8, periodic=True)
    gx, gz, tn = _packed_generators(torus)
    balls = _ball_masks(torus, 4)

    cases = [
        ("full scan, ring n=20 (2^20 products)",
         lambda impl: impl.min_weight_scan(ring20[0], ring20[1], ring20[2])),
        ("full scan, ring n=80 multiword (2^20 window)",
         lambda impl: impl.min_weight_scan(
             ring80[0][:20], ring80[1][:20], ring80[2])),
        ("windowed scan, 8x8 torus radius 4",
         lambda impl: impl.windowed_scan(gx, gz, tn, balls, 22, 0, tn + 1)),
    ]

    backends = available_backends()
    width = max(len(name) for name, _ in cases)
    print(f"{'case':<{width}}  " +
          "  ".join(f"{b:>12}" for b in backends) + "  speedup")
    for name, runner in cases:
        row = []
        results = []
        for impl in backends.values():
            seconds, value = _time(lambda: runner(impl), args.repeat)
            row.append(seconds)
            results.append(value[:2])  # (weight, mask) must agree
        if len(set(results)) != 1:
            print(f"{name}: BACKEND MISMATCH {results}", file=sys.stderr)
            return 1
        cells = "  ".join(f"{s * 1e3:>10.2f}ms" for s in row)
        speedup = f"{row[0] / row[-1]:10.1f}x" if len(row) > 1 else "       n/a"
        print(f"{name:<{width}}  {cells}  {speedup}")
    if len(backends) == 1:
        print("note: compiled extension unavailable; timed pure Python only")
    return 0


if __name__ == "__main__":
    sys.exit(main())
