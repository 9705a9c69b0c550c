"""Command-line interface: ``symdist compute | verify | bench | random``."""

from __future__ import annotations

import argparse
import json
import statistics
import sys
from collections.abc import Sequence

from . import kernels
from .distance import (
    BRUTE_FORCE_MAX_ROWS,
    ValidationError,
    brute_force_distance,
    compute_distance,
    random_stabilizer,
)
from .engine import NoAdmissibleCodeword
from .gf2 import RankError
from .io import MatrixFileError, format_matrix, parse_matrix_file

EXIT_OK, EXIT_INPUT, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2, 3

ALG_NAMES = {
    "auto": "auto",
    "1gamma": "saved_1_gamma",
    "2gamma": "saved_2_gamma",
    "isometry": "saved_isometry",
    "brute": "brute_force",
}


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symdist", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    backend_help = f"kernel backend (available: {', '.join(kernels.available_backends())})"

    p = sub.add_parser("compute", help="compute the minimum distance of one normalizer matrix")
    p.add_argument("file")
    p.add_argument("--alg", choices=list(ALG_NAMES), default="auto")
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--json", action="store_true", help="also print the full report as JSON")
    p.add_argument("--trace", action="store_true", help="print the (g, L, U) trace")
    p.add_argument("--no-validate", action="store_true")
    p.add_argument("--no-dual-filter", action="store_true", help="ignore the stabilizer; plain rowspace minimum")
    p.add_argument("--backend", choices=["cython", "python"], default=None, help=backend_help)

    p = sub.add_parser("verify", help="run every algorithm (and the oracle, size permitting) and compare")
    p.add_argument("file")
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--backend", choices=["cython", "python"], default=None, help=backend_help)

    p = sub.add_parser("bench", help="time the algorithms on random instances")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--count", type=_positive, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--alg", choices=["1gamma", "2gamma", "isometry"], action="append")
    p.add_argument("--backend", choices=["cython", "python"], default=None, help=backend_help)

    p = sub.add_parser("random", help="write a random normalizer matrix")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default="-")
    return parser


def _compute(args) -> int:
    inst = parse_matrix_file(args.file)
    report = compute_distance(
        inst,
        ALG_NAMES[args.alg],
        args.threads,
        validate=not args.no_validate,
        dual_filter=not args.no_dual_filter,
        backend=args.backend,
    )
    print(f"distance {report.distance}")
    if args.trace:
        for g, lower, upper in report.bounds_trace:
            print(f"g={g} L={lower} U={upper}")
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    return EXIT_OK


def _verify(args) -> int:
    inst = parse_matrix_file(args.file)
    results = {}
    for name in ("saved_1_gamma", "saved_2_gamma", "saved_isometry"):
        results[name] = compute_distance(inst, name, args.threads, backend=args.backend).distance
    if inst.a.n_rows <= BRUTE_FORCE_MAX_ROWS:
        results["brute_force"] = brute_force_distance(inst, validate=True).distance
    for name, d in results.items():
        print(f"{name:16s} {d}")
    values = set(results.values())
    if len(values) == 1:
        print(f"AGREE d={values.pop()}")
        return EXIT_OK
    print("DISAGREE " + " ".join(f"{k}={v}" for k, v in results.items()))
    return EXIT_INTERNAL


def _bench(args) -> int:
    algs = [ALG_NAMES[a] for a in (args.alg or ["1gamma", "2gamma", "isometry"])]
    times: dict[str, list[float]] = {a: [] for a in algs}
    backend = args.backend or kernels.DEFAULT_BACKEND
    print(f"# n={args.n} k={args.k} count={args.count} seed={args.seed} threads={args.threads} backend={backend}")
    print(f"{'instance':>8} {'d':>3} " + " ".join(f"{a:>15}" for a in algs))
    for i in range(args.count):
        inst = random_stabilizer(args.n, args.k, seed=args.seed + i)
        row, dist = [], set()
        for a in algs:
            rep = compute_distance(inst, a, args.threads, backend=args.backend, trace=False)
            times[a].append(rep.elapsed_seconds)
            dist.add(rep.distance)
            row.append(f"{rep.elapsed_seconds:15.4f}")
        if len(dist) != 1:
            print(f"algorithms disagree on instance {i}: {sorted(dist)}", file=sys.stderr)
            return EXIT_INTERNAL
        print(f"{i:>8} {dist.pop():>3} " + " ".join(row))
    print(f"{'median':>12} " + " ".join(f"{statistics.median(times[a]):15.4f}" for a in algs))
    print(f"{'mean':>12} " + " ".join(f"{statistics.fmean(times[a]):15.4f}" for a in algs))
    return EXIT_OK


def _random(args) -> int:
    text = format_matrix(random_stabilizer(args.n, args.k, seed=args.seed))
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    handler = {"compute": _compute, "verify": _verify, "bench": _bench, "random": _random}[args.command]
    try:
        return handler(args)
    except MatrixFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (RankError, ValidationError) as exc:
        print(f"invalid normalizer: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NoAdmissibleCodeword as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RuntimeError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
