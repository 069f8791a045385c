"""Command-line front end: synthesize, check, simulate, grover, reduce.

Exit status is 0 on success and 2 on any invalid input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import wire
from .grover import build_grover
from .measurement import IncompatibleMeasurementError, reduce_measurement
from .protocols import Strategy, is_error_detector, synthesize_protocols
from .simulator import IncompatibleProtocolError, run_monitored_exact, run_monitored_sampled
from .sml import NotAProjectorError

DEFAULT_SEED = 20140101


class UsageError(Exception):
    pass


def _read(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return wire.loads(text)


def _write(obj, out: str | None):
    text = wire.emit(obj)
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _detector_from(doc):
    """A detector file is either a bare matrix or an object holding ``detector``."""
    if isinstance(doc, dict) and "detector" in doc:
        return wire.parse_matrix(doc["detector"], "$.detector")
    return wire.parse_matrix(doc)


def cmd_synthesize(args) -> int:
    process = wire.parse_process(_read(args.process))
    if not process.is_time_independent:
        raise UsageError("synthesis requires time-independent step (single-unitary alphabet)")
    protocols = synthesize_protocols(process.alphabet[0], process.initial_state)
    shown = [p for p in protocols if args.verbose or not p.trivial]
    hidden = len(protocols) - len(shown)
    note = None
    if not shown:
        note = "no nontrivial detector: every residue class spans the whole space"
    elif hidden:
        note = f"{hidden} rank-0 protocol(s) omitted; use --verbose to list them"
    _write({"protocols": [wire.protocol_obj(p, with_rank=True) for p in shown], "note": note}, args.output)
    return 0


def cmd_check(args) -> int:
    process = wire.parse_process(_read(args.process))
    if not process.is_time_independent:
        raise UsageError("progression check requires time-independent step (single-unitary alphabet)")
    P = _detector_from(_read(args.detector))
    found = is_error_detector(P, process.alphabet[0], process.initial_state)
    if found is None:
        verdict = {"period": None, "residue": None, "message": "no progression: detector invalid"}
    else:
        verdict = {"period": found.period, "residue": found.residue, "message": f"progression p={found.period} r={found.residue}"}
    _write(verdict, args.output)
    return 0


def cmd_simulate(args) -> int:
    process = wire.parse_process(_read(args.process))
    doc = _read(args.protocol)
    if isinstance(doc, dict) and "protocols" in doc:
        items = doc["protocols"]
        if not isinstance(items, list) or not 0 <= args.protocol_index < len(items):
            raise UsageError(f"protocol index {args.protocol_index} not present in {args.protocol}")
        period, residue, P = wire.parse_protocol(items[args.protocol_index], f"$.protocols[{args.protocol_index}]")
    else:
        period, residue, P = wire.parse_protocol(doc)
    bug = wire.parse_bug(_read(args.bug)) if args.bug else None
    horizon = len(process.schedule) if args.horizon is None else args.horizon
    if not 1 <= horizon <= len(process.schedule):
        raise UsageError(f"--horizon must be in [1, {len(process.schedule)}] for this schedule")
    if args.trials < 0:
        raise UsageError("--trials must be non-negative")
    protocol = (P, Strategy.periodic(period, residue))
    if args.trials:
        report = run_monitored_sampled(process, protocol, bug, horizon, trials=args.trials, master_seed=args.seed, workers=args.workers)
    else:
        report = run_monitored_exact(process, protocol, bug, horizon)
    _write(wire.report_obj(report), args.output)
    return 0


def cmd_grover(args) -> int:
    inst = build_grover(args.qubits, args.target)
    steps = inst.N if args.steps is None else args.steps
    process = inst.circuit_process(steps) if args.circuit else inst.process(steps)
    _write(wire.process_obj(process), args.output)
    return 0


def cmd_reduce(args) -> int:
    m = wire.parse_measurement(_read(args.measurement))
    doc = _read(args.state)
    if isinstance(doc, dict):
        psi = wire.parse_vector(doc.get("state"), "$.state")
    else:
        psi = wire.parse_vector(doc)
    _write(wire.reduction_obj(reduce_measurement(m, psi)), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qdebug", description="Debugging protocols for discrete-time quantum processes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synthesize", help="all maximal detectors with periodic strategies")
    p.add_argument("process")
    p.add_argument("--verbose", action="store_true", help="also list rank-0 protocols")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("check", help="decide whether a projector is an error detector")
    p.add_argument("process")
    p.add_argument("detector")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("simulate", help="monitored run with an optional injected bug")
    p.add_argument("process")
    p.add_argument("protocol")
    p.add_argument("bug", nargs="?")
    p.add_argument("--protocol-index", type=int, default=0)
    p.add_argument("--horizon", type=int)
    p.add_argument("--trials", type=int, default=0)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("grover", help="emit a Grover-search process file")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--steps", type=int, help="number of Grover iterations (default N)")
    p.add_argument("--circuit", action="store_true", help="start from |0...0> and prepend the Hadamard layer")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_grover)

    p = sub.add_parser("reduce", help="reduce a compatible measurement to its support projector")
    p.add_argument("measurement")
    p.add_argument("state")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_reduce)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except IncompatibleProtocolError as exc:
        print(f"error: {exc} (violating step {exc.step})", file=sys.stderr)
    except IncompatibleMeasurementError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (UsageError, wire.WireFormatError, NotAProjectorError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
