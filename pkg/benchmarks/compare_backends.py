"""Sweep prover/verifier timings over both kernel backends.

Usage: python benchmarks/compare_backends.py [--repeat 5] [--json]
"""
import argparse
import json

from subsetcert import _kernels
from subsetcert.bench import run_bench

GRID = [(10, 1_000), (16, 625), (20, 5_000), (10, 10_000), (40, 2_000), (10, 100_000)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    backends = _kernels.available_backends()
    results = [run_bench(n, t, seed=args.seed, repeat=args.repeat, backends=backends)
               for n, t in GRID]
    if args.json:
        print(json.dumps([r.to_dict() for r in results], indent=2))
        return
    for r in results:
        print(r.render_text())
        print()


if __name__ == "__main__":
    main()
