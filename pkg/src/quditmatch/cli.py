"""Command-line front end: matching, decomposition inspection, verification,
cost conformance and noise sweeps.

Exit codes: 0 success / verified match, 1 verified no-match (or failed
verification), 2 runtime error, 3 support budget exceeded (partial report on
stdout), 64 usage error.  All outputs are deterministic: identical
invocations produce byte-identical bytes.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import List, Optional

from .circuit import verify_on_binary_subspace
from .decompositions import DECOMPOSITIONS, build_named, reference_named
from .engine import MatchProblem, ascii_bits, run_match
from .errors import DomainError, QuditMatchError, SupportBudgetError
from .resources import (NOISE_MODES, conformance, fredkin_sweep,
                        sweep_csv, sweep_ordering_note)

MAX_VERIFY_WIRES = 12
MAX_COST_TEXT = 256

EXIT_MATCH = 0
EXIT_NO_MATCH = 1
EXIT_ERROR = 2
EXIT_BUDGET = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports bad invocations as exit 64 instead of 2."""

    def error(self, message):
        raise UsageError(message)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(payload, out: Optional[str]) -> None:
    _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", out)


def cmd_match(args) -> int:
    text, pattern = args.text, args.pattern
    if args.ascii:
        text, pattern = ascii_bits(text), ascii_bits(pattern)
    try:
        problem = MatchProblem(text, pattern,
                               iterations=args.iterations,
                               expected_matches=args.expected_matches,
                               support_budget=args.support_budget)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    result = run_match(problem)
    payload = result.to_json_dict()
    if args.shots:
        rng = random.Random(args.seed)
        dist = sorted(result.offsets.items())
        counts = {}
        for _ in range(args.shots):
            u, acc = rng.random(), 0.0
            drawn = dist[-1][0]
            for offset, p in dist:
                acc += p
                if u < acc:
                    drawn = offset
                    break
            counts[str(drawn)] = counts.get(str(drawn), 0) + 1
        payload["samples"] = counts
    if args.format == "plain":
        lines = [f"iterations {result.iterations}",
                 f"verified {str(result.verified).lower()}"]
        lines += [f"offset {o} probability {p!r}" for o, p in result.top]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit_json(payload, args.out)
    return EXIT_MATCH if result.verified else EXIT_NO_MATCH


def _named_circuit(args):
    name = args.name
    if name not in DECOMPOSITIONS:
        raise UsageError(
            f"unknown decomposition {name!r}; choose from {sorted(DECOMPOSITIONS)}")
    spec = DECOMPOSITIONS[name]
    if spec.parametric:
        if args.n is None:
            raise UsageError(f"decomposition {name!r} needs a wire count n")
        if args.n < 2:
            raise UsageError("mct needs n >= 2 wires")
    elif args.n is not None and args.n != 3:
        raise UsageError(f"decomposition {name!r} is fixed at 3 wires")
    circuit, spec = build_named(name, args.n if spec.parametric else None)
    return circuit, spec


def cmd_decompose(args) -> int:
    circuit, spec = _named_circuit(args)
    cost = circuit.cost()
    if args.format == "json":
        _emit_json({"name": spec.name,
                    "summary": spec.summary,
                    "circuit": circuit.dump().splitlines(),
                    "cost": cost.as_dict()}, args.out)
    else:
        cost_line = " ".join(f"{k}={v}" for k, v in cost.as_dict().items())
        _emit(circuit.dump() + "\n" + f"# cost {cost_line}\n", args.out)
    return 0


def cmd_verify(args) -> int:
    circuit, spec = _named_circuit(args)
    if circuit.layout.wire_count > MAX_VERIFY_WIRES:
        raise UsageError(
            f"exhaustive verification supports up to {MAX_VERIFY_WIRES} wires")
    reference = reference_named(spec.name, args.n if spec.parametric else None)
    report = verify_on_binary_subspace(circuit, reference)
    payload = {"name": spec.name, "wires": circuit.layout.wire_count,
               "gates": len(circuit.ops), "report": report.as_dict()}
    if args.format == "plain":
        lines = [f"{k} {v}" for k, v in sorted(report.as_dict().items())]
        _emit("\n".join([f"name {spec.name}"] + lines) + "\n", args.out)
    else:
        _emit_json(payload, args.out)
    return 0 if report.ok() else EXIT_NO_MATCH


def cmd_cost(args) -> int:
    if not 1 <= args.pattern_len <= args.text_len:
        raise UsageError("need 1 <= M <= N")
    if args.text_len > MAX_COST_TEXT:
        raise UsageError(f"conformance supports N <= {MAX_COST_TEXT}")
    report = conformance(args.text_len, args.pattern_len)
    _emit_json(report.as_dict(), args.out)
    return 0


def cmd_noise(args) -> int:
    if not (0.0 <= args.eps_min <= args.eps_max < 1.0):
        raise UsageError("need 0 <= eps-min <= eps-max < 1")
    if args.steps < 1:
        raise UsageError("steps must be >= 1")
    if args.steps == 1:
        epsilons = [args.eps_min]
    else:
        step = (args.eps_max - args.eps_min) / (args.steps - 1)
        epsilons = [args.eps_min + i * step for i in range(args.steps)]
        epsilons[-1] = args.eps_max
    rows = fredkin_sweep(epsilons, args.mode)
    _emit(sweep_csv(rows), args.out)
    note = sweep_ordering_note(rows)
    if note:
        print(note, file=sys.stderr)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="quditmatch",
                     description="Qudit-assisted Grover string matching toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("match", parents=[], help="run a substring match",
                       description="Simulate the Grover match and print the result")
    p.add_argument("text")
    p.add_argument("pattern")
    p.add_argument("--iterations", type=int, default=None,
                   help="override the Grover iteration count")
    p.add_argument("--expected-matches", type=int, default=None,
                   help="tune the schedule for this many matches")
    p.add_argument("--ascii", action="store_true",
                   help="treat inputs as ASCII (8 bits per character, "
                        "offsets are bit offsets)")
    p.add_argument("--support-budget", type=int, default=None,
                   help="abort when the sparse support exceeds this size")
    p.add_argument("--shots", type=int, default=0,
                   help="additionally sample this many measurement shots")
    p.add_argument("--seed", type=int, default=0, help="shot-sampling seed")
    p.add_argument("--format", choices=("json", "plain"), default="json")
    p.add_argument("--out", default=None, help="write output to a file")
    p.set_defaults(func=cmd_match)

    names = sorted(DECOMPOSITIONS)
    p = sub.add_parser("decompose", help="print a named decomposition")
    p.add_argument("name", help=f"one of {names}")
    p.add_argument("n", type=int, nargs="?", default=None,
                   help="wire count (mct only)")
    p.add_argument("--format", choices=("json", "plain"), default="plain")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="exhaustively verify a decomposition")
    p.add_argument("name", help=f"one of {names}")
    p.add_argument("n", type=int, nargs="?", default=None,
                   help="wire count (mct only)")
    p.add_argument("--format", choices=("json", "plain"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cost", help="predicted vs measured circuit cost")
    p.add_argument("text_len", type=int, metavar="N")
    p.add_argument("pattern_len", type=int, metavar="M")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("noise", help="Fredkin success-probability sweep (CSV)")
    p.add_argument("--eps-min", type=float, default=0.0)
    p.add_argument("--eps-max", type=float, default=0.05)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--mode", choices=NOISE_MODES, default="uniform")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_noise)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SupportBudgetError as exc:
        _emit_json({"error": str(exc), "support_trace": list(exc.trace)}, None)
        return EXIT_BUDGET
    except QuditMatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
