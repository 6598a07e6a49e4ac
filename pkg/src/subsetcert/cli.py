"""Command-line front end.

Exit codes: 0 success or Accept, 1 Reject or a failed property check,
2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .audit import audit_example1, audit_recurrence_identity
from .bench import run_bench
from .counting import CountTable, Instance, PolicyProfile, brute_force_counts, subset_count_table
from .errors import SubsetCertError
from .primes import pick_p, pick_q
from .protocol import Certificate, VerifierParams, draw_params, prove, verify

EXIT_OK, EXIT_REJECT, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _emit(data) -> None:
    print(json.dumps(data, separators=(",", ":")))


def _policy(args) -> PolicyProfile:
    return PolicyProfile.named(args.policy)


def cmd_count(args) -> int:
    inst = Instance.from_dict(_read_json(args.instance))
    _emit(subset_count_table(inst, _policy(args)).to_dict())
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst = Instance.from_dict(_read_json(args.instance))
    _emit(brute_force_counts(inst).to_dict())
    return EXIT_OK


def cmd_prove(args) -> int:
    inst = Instance.from_dict(_read_json(args.instance))
    _emit(prove(inst, _policy(args)).to_dict())
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.instance == "-" and args.certificate == "-":
        raise UsageError("only one of instance and certificate may come from stdin")
    inst = Instance.from_dict(_read_json(args.instance))
    cert = Certificate.from_dict(_read_json(args.certificate))
    policy = _policy(args)
    if args.params:
        params = VerifierParams.from_dict(_read_json(args.params))
    else:
        if args.q_mode == "random" and args.seed is None:
            raise UsageError("--q-mode random requires --seed")
        seed = 0 if args.seed is None else args.seed
        params = draw_params(inst.n, inst.t, policy, args.q_mode, seed)
        if args.r is not None:
            params = VerifierParams(params.q, args.r, params.q_mode, params.seed)
    verdict = verify(inst, cert, params, policy)
    _emit({**verdict.to_dict(), "params": params.to_dict()})
    return EXIT_OK if verdict.accepted else EXIT_REJECT


def cmd_audit(args) -> int:
    if args.which == "example1":
        report = audit_example1()
        status = EXIT_OK
    else:
        if args.trials < 1:
            raise UsageError("--trials must be >= 1")
        report = audit_recurrence_identity(args.seed, args.trials)
        status = EXIT_OK if report.all_match else EXIT_REJECT
    print(report.to_json() if args.json else report.render_text())
    return status


def cmd_primes(args) -> int:
    if args.which == "p":
        pick = pick_p(args.n, args.t)
    else:
        if args.mode == "random" and args.seed is None:
            raise UsageError("--mode random requires --seed")
        pick = pick_q(args.n, args.t, args.mode, seed=args.seed)
    if args.json:
        _emit(pick.to_dict())
    else:
        print(pick.prime)
    return EXIT_OK


def cmd_bench(args) -> int:
    backends = None if args.backend == "all" else [args.backend]
    result = run_bench(args.n, args.t, seed=args.seed, repeat=args.repeat, backends=backends)
    print(json.dumps(result.to_dict(), indent=2) if args.json else result.render_text())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="subsetcert", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_policy(p):
        p.add_argument("--policy", choices=("corrected", "aswritten"), default="corrected")
        return p

    p = with_policy(sub.add_parser("count", help="subset-count table over [0, nt]"))
    p.add_argument("instance")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("oracle", help="brute-force count table (n <= 24)")
    p.add_argument("instance")
    p.set_defaults(func=cmd_oracle)

    p = with_policy(sub.add_parser("prove", help="emit a certificate"))
    p.add_argument("instance")
    p.set_defaults(func=cmd_prove)

    p = with_policy(sub.add_parser("verify", help="check a certificate"))
    p.add_argument("instance")
    p.add_argument("certificate")
    p.add_argument("--q-mode", choices=("smallest", "random"), default="smallest")
    p.add_argument("--seed", type=int, help="seed for q and r draws (default 0)")
    p.add_argument("--r", type=int, help="use this evaluation point instead of drawing one")
    p.add_argument("--params", help="verifier params JSON file; overrides the other flags")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("audit", help="recompute the worked counterexample or the recurrence check")
    p.add_argument("which", choices=("example1", "equivalence"))
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("primes", help="the prime p or q for given n and t")
    p.add_argument("which", choices=("p", "q"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--mode", choices=("smallest", "random"), default="smallest")
    p.add_argument("--seed", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_primes)

    p = sub.add_parser("bench", help="prover vs verifier table cost")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--backend", choices=("all", "numba", "numpy"), default="all")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (UsageError, SubsetCertError) as exc:
        print(f"subsetcert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
