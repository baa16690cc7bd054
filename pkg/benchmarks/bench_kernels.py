"""Compare the compiled and NumPy brute-force kernels.

    python benchmarks/bench_kernels.py [--points N] [--samples M] [--repeat R]
"""

import argparse
import math
import time

import numpy as np

from funk_conics.kernels import available_backends


def _points(n, rng):
    r = 0.95 * np.sqrt(rng.uniform(size=n))
    a = rng.uniform(0.0, 2.0 * math.pi, size=n)
    return r * np.cos(a), r * np.sin(a)


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=200)
    ap.add_argument("--samples", type=int, default=10_000)
    ap.add_argument("--pairs", type=int, default=1_000_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    px, py = _points(args.points, rng)
    ax, ay = _points(args.pairs, rng)
    bx, by = _points(args.pairs, rng)
    y0 = 0.3
    backends = available_backends()
    ref = None
    print(f"{'backend':<8} {'chord_minimum':>14} {'distance_batch':>15} {'max |diff|':>11}")
    for name, mod in backends.items():
        t_chord = _best(lambda: mod.chord_minimum(px, py, y0, True, args.samples), args.repeat)
        t_batch = _best(lambda: mod.funk_distance_batch(ax, ay, bx, by), args.repeat)
        d1, _ = mod.chord_minimum(px, py, y0, False, args.samples)
        diff = 0.0 if ref is None else float(np.max(np.abs(d1 - ref)))
        ref = d1 if ref is None else ref
        print(f"{name:<8} {t_chord * 1e3:>11.1f} ms {t_batch * 1e3:>12.1f} ms {diff:>11.2e}")
    if "cython" not in backends:
        print("compiled extension not built; only the NumPy backend was timed")


if __name__ == "__main__":
    main()
