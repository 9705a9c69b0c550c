"""Compare the compiled and pure-Python enumeration kernels.

Runs each algorithm on the same random instances with both backends, checks
that they agree, and prints wall time and candidate throughput.

    python3 benchmarks/bench_backends.py --n 34 --k 6 --count 2
"""

from __future__ import annotations

import argparse
import statistics
import sys

from symdist import kernels
from symdist.distance import compute_distance, random_stabilizer


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=34)
    p.add_argument("--k", type=int, default=6)
    p.add_argument("--count", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--alg", action="append", choices=["saved_1_gamma", "saved_2_gamma", "saved_isometry"])
    args = p.parse_args(argv)

    backends = kernels.available_backends()
    if len(backends) < 2:
        print("compiled extension not built; only the Python kernel is available", file=sys.stderr)
    algs = args.alg or ["saved_1_gamma", "saved_2_gamma", "saved_isometry"]
    print(f"# n={args.n} k={args.k} count={args.count} seed={args.seed} threads={args.threads}")
    print(f"{'algorithm':>15} {'backend':>8} {'median s':>10} {'mean s':>10} {'Mcand/s':>9}")
    for alg in algs:
        times = {b: [] for b in backends}
        cands = {b: 0 for b in backends}
        for i in range(args.count):
            inst = random_stabilizer(args.n, args.k, seed=args.seed + i)
            dists = set()
            for b in backends:
                rep = compute_distance(inst, alg, args.threads, backend=b, trace=False)
                times[b].append(rep.elapsed_seconds)
                cands[b] += rep.candidates_enumerated
                dists.add(rep.distance)
            if len(dists) != 1:
                print(f"backends disagree on instance {i}: {sorted(dists)}", file=sys.stderr)
                return 1
        for b in backends:
            total = sum(times[b])
            rate = cands[b] / total / 1e6 if total else float("nan")
            print(
                f"{alg:>15} {b:>8} {statistics.median(times[b]):10.4f} "
                f"{statistics.fmean(times[b]):10.4f} {rate:9.2f}"
            )
        if len(backends) == 2:
            ratio = sum(times["python"]) / sum(times["cython"])
            print(f"{alg:>15} {'ratio':>8} {'':>10} {'':>10} {ratio:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
