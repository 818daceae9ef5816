"""Compare the compiled and pure-Python elimination kernels.

    python3 benchmarks/bench_elimination.py [--repeat N]

Each row times rank computation on an operator matrix, with and without
the block-splitting pre-pass. Ranks are cross-checked between kernels.
"""

import argparse
import time

from caloric import linalg, spaces

CASES = [
    ("laplacian n=3 A12->A10", lambda: spaces.laplacian_matrix(3, 12)),
    ("laplacian n=4 A12->A10", lambda: spaces.laplacian_matrix(4, 12)),
    ("heat n=2 P12->P10", lambda: spaces.heat_matrix(2, 12)),
    ("heat n=3 P10->P8", lambda: spaces.heat_matrix(3, 10)),
]


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = sorted(linalg.KERNELS)
    if "cython" not in backends:
        print("compiled kernel not built; timing the Python fallback only")
    print(f"{'matrix':28s} {'shape':>10s} {'backend':>8s} {'split':>6s} {'seconds':>9s}")
    for label, build in CASES:
        M = build()
        ranks = set()
        for backend in backends:
            for split in (True, False):
                secs, r = best_of(lambda: linalg.rank(M, kernel=linalg.KERNELS[backend],
                                                      split_blocks=split), args.repeat)
                ranks.add(r)
                print(f"{label:28s} {M.rows:>4d}x{M.cols:<5d} {backend:>8s} "
                      f"{'on' if split else 'off':>6s} {secs:9.3f}")
        assert len(ranks) == 1, f"kernels disagree on {label}: {ranks}"


if __name__ == "__main__":
    main()
