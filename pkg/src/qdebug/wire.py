"""JSON wire format.

Rationals travel as canonical text ``"p/q"`` (lowest terms, q >= 1, so
integers are ``"3/1"`` and zero is ``"0/1"``); complex entries as
``{"re": ..., "im": ...}``; matrices as ``{"rows", "cols", "entries"}`` with
nested row-major entries; unitaries add ``"scale_sq"``. Parse errors carry a
JSON path such as ``$.alphabet[0].entries[1][0].re``.
"""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction
from typing import Any

from .algebra import GaussianRational, Matrix, ScaledUnitary, as_gaussian
from .algebra.unitary import NotUnitaryError
from .measurement import GeneralMeasurement, ReductionResult
from .process import ProcessSpec
from .protocols import Protocol
from .simulator import BugModel, RunReport, SampledSection

__all__ = [
    "WireFormatError",
    "emit",
    "loads",
    "rational_text",
    "parse_rational",
    "complex_obj",
    "parse_complex",
    "matrix_obj",
    "parse_matrix",
    "unitary_obj",
    "parse_unitary",
    "vector_obj",
    "parse_vector",
    "process_obj",
    "parse_process",
    "protocol_obj",
    "parse_protocol",
    "bug_obj",
    "parse_bug",
    "measurement_obj",
    "parse_measurement",
    "reduction_obj",
    "parse_reduction",
    "report_obj",
    "parse_report",
]

_RATIONAL = re.compile(r"^(-?)(0|[1-9][0-9]*)/([1-9][0-9]*)$")


class WireFormatError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def emit(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise WireFormatError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None


# scalars -----------------------------------------------------------------


def rational_text(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(value: Any, path: str = "$") -> Fraction:
    if not isinstance(value, str):
        raise WireFormatError(path, f"expected rational text 'p/q', got {type(value).__name__}")
    m = _RATIONAL.match(value)
    if m is None:
        raise WireFormatError(path, f"malformed rational {value!r}")
    sign, num, den = m.groups()
    p, q = int(num), int(den)
    if sign and p == 0:
        raise WireFormatError(path, f"non-canonical rational {value!r} (negative zero)")
    if math.gcd(p, q) != 1:
        raise WireFormatError(path, f"non-canonical rational {value!r} (not in lowest terms)")
    return Fraction(-p if sign else p, q)


def _expect(value: Any, kind: type, path: str):
    if kind is int:
        if not isinstance(value, int) or isinstance(value, bool):
            raise WireFormatError(path, f"expected integer, got {value!r}")
    elif not isinstance(value, kind):
        raise WireFormatError(path, f"expected {kind.__name__}, got {type(value).__name__}")
    return value


def _keys(obj: Any, required: tuple[str, ...], path: str, optional: tuple[str, ...] = ()) -> dict:
    _expect(obj, dict, path)
    missing = [k for k in required if k not in obj]
    if missing:
        raise WireFormatError(path, f"missing key(s) {', '.join(missing)}")
    extra = sorted(set(obj) - set(required) - set(optional))
    if extra:
        raise WireFormatError(path, f"unexpected key(s) {', '.join(extra)}")
    return obj


def complex_obj(z) -> dict:
    z = as_gaussian(z)
    return {"re": rational_text(z.re), "im": rational_text(z.im)}


def parse_complex(value: Any, path: str = "$") -> GaussianRational:
    obj = _keys(value, ("re", "im"), path)
    return GaussianRational(parse_rational(obj["re"], f"{path}.re"), parse_rational(obj["im"], f"{path}.im"))


def vector_obj(v) -> list:
    return [complex_obj(z) for z in v]


def parse_vector(value: Any, path: str = "$") -> tuple:
    _expect(value, list, path)
    return tuple(parse_complex(z, f"{path}[{k}]") for k, z in enumerate(value))


# matrices ----------------------------------------------------------------


def matrix_obj(m: Matrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[complex_obj(z) for z in m.row(i)] for i in range(m.rows)],
    }


def parse_matrix(value: Any, path: str = "$", optional: tuple[str, ...] = ()) -> Matrix:
    obj = _keys(value, ("rows", "cols", "entries"), path, optional)
    rows = _expect(obj["rows"], int, f"{path}.rows")
    cols = _expect(obj["cols"], int, f"{path}.cols")
    entries = _expect(obj["entries"], list, f"{path}.entries")
    if rows < 0 or cols < 0:
        raise WireFormatError(path, "negative matrix dimension")
    if len(entries) != rows:
        raise WireFormatError(f"{path}.entries", f"expected {rows} rows, got {len(entries)}")
    flat = []
    for i, row in enumerate(entries):
        _expect(row, list, f"{path}.entries[{i}]")
        if len(row) != cols:
            raise WireFormatError(f"{path}.entries[{i}]", f"expected {cols} columns, got {len(row)}")
        flat.extend(parse_complex(z, f"{path}.entries[{i}][{j}]") for j, z in enumerate(row))
    return Matrix(rows, cols, flat)


def unitary_obj(u: ScaledUnitary) -> dict:
    out = matrix_obj(u.mat)
    out["scale_sq"] = rational_text(u.scale_sq)
    return out


def parse_unitary(value: Any, path: str = "$") -> ScaledUnitary:
    m = parse_matrix(value, path, optional=("scale_sq",))
    scale = parse_rational(value["scale_sq"], f"{path}.scale_sq") if "scale_sq" in value else Fraction(1)
    try:
        return ScaledUnitary(m, scale)
    except NotUnitaryError as exc:
        raise WireFormatError(path, str(exc)) from None


# documents ---------------------------------------------------------------


def process_obj(p: ProcessSpec) -> dict:
    return {
        "dimension": p.dimension,
        "initial_state": vector_obj(p.initial_state),
        "alphabet": [unitary_obj(u) for u in p.alphabet],
        "schedule": list(p.schedule),
    }


def parse_process(value: Any, path: str = "$") -> ProcessSpec:
    obj = _keys(value, ("dimension", "initial_state", "alphabet", "schedule"), path)
    dim = _expect(obj["dimension"], int, f"{path}.dimension")
    psi = parse_vector(obj["initial_state"], f"{path}.initial_state")
    alphabet = [parse_unitary(u, f"{path}.alphabet[{k}]") for k, u in enumerate(_expect(obj["alphabet"], list, f"{path}.alphabet"))]
    schedule = [_expect(a, int, f"{path}.schedule[{k}]") for k, a in enumerate(_expect(obj["schedule"], list, f"{path}.schedule"))]
    try:
        return ProcessSpec(dim, psi, tuple(alphabet), tuple(schedule))
    except (ValueError, IndexError) as exc:
        raise WireFormatError(path, str(exc)) from None


def protocol_obj(proto: Protocol, with_rank: bool = False) -> dict:
    out: dict = {"period": proto.period, "residue": proto.residue}
    if with_rank:
        out["rank"] = proto.rank
    out["detector"] = matrix_obj(proto.detector)
    return out


def parse_protocol(value: Any, path: str = "$") -> tuple[int, int, Matrix]:
    """(period, residue, detector). The residue is the first breakpoint and may exceed the period."""
    obj = _keys(value, ("period", "residue", "detector"), path, ("rank",))
    period = _expect(obj["period"], int, f"{path}.period")
    residue = _expect(obj["residue"], int, f"{path}.residue")
    if period < 1 or residue < 0:
        raise WireFormatError(path, f"need period >= 1 and residue >= 0, got ({period}, {residue})")
    detector = parse_matrix(obj["detector"], f"{path}.detector")
    if "rank" in obj:
        _expect(obj["rank"], int, f"{path}.rank")
    return period, residue, detector


def bug_obj(bug: BugModel) -> dict:
    if bug.kind == "init_bug":
        return {"kind": "init_bug", "rho": matrix_obj(bug.rho)}
    return {
        "kind": "gate_bug",
        "start": bug.start,
        "stop": bug.stop,
        "target": bug.target,
        "replacement": unitary_obj(bug.replacement),
    }


def _optional_int(value: Any, path: str) -> int | None:
    return None if value is None else _expect(value, int, path)


def parse_bug(value: Any, path: str = "$") -> BugModel:
    _expect(value, dict, path)
    kind = value.get("kind")
    try:
        if kind == "init_bug":
            obj = _keys(value, ("kind", "rho"), path)
            return BugModel.init(parse_matrix(obj["rho"], f"{path}.rho"))
        if kind == "gate_bug":
            obj = _keys(value, ("kind", "replacement"), path, ("start", "stop", "target"))
            return BugModel.gate(
                parse_unitary(obj["replacement"], f"{path}.replacement"),
                start=_expect(obj.get("start", 1), int, f"{path}.start"),
                stop=_optional_int(obj.get("stop"), f"{path}.stop"),
                target=_optional_int(obj.get("target"), f"{path}.target"),
            )
    except WireFormatError:
        raise
    except ValueError as exc:
        raise WireFormatError(path, str(exc)) from None
    raise WireFormatError(f"{path}.kind", f"unknown bug kind {kind!r}")


def measurement_obj(m: GeneralMeasurement) -> dict:
    return {"operators": [matrix_obj(op) for op in m.operators]}


def parse_measurement(value: Any, path: str = "$") -> GeneralMeasurement:
    obj = _keys(value, ("operators",), path)
    ops = [parse_matrix(op, f"{path}.operators[{k}]") for k, op in enumerate(_expect(obj["operators"], list, f"{path}.operators"))]
    try:
        return GeneralMeasurement(tuple(ops))
    except ValueError as exc:
        raise WireFormatError(path, str(exc)) from None


def reduction_obj(r: ReductionResult) -> dict:
    return {
        "error_outcomes": sorted(r.error_outcomes),
        "eigenvalues": [complex_obj(z) for z in r.eigenvalues],
        "effect": matrix_obj(r.effect),
        "support_projector": matrix_obj(r.support_projector),
    }


def parse_reduction(value: Any, path: str = "$") -> ReductionResult:
    obj = _keys(value, ("error_outcomes", "eigenvalues", "effect", "support_projector"), path)
    outcomes = [_expect(k, int, f"{path}.error_outcomes[{i}]") for i, k in enumerate(_expect(obj["error_outcomes"], list, f"{path}.error_outcomes"))]
    return ReductionResult(
        frozenset(outcomes),
        parse_matrix(obj["effect"], f"{path}.effect"),
        parse_matrix(obj["support_projector"], f"{path}.support_projector"),
        parse_vector(obj["eigenvalues"], f"{path}.eigenvalues"),
    )


def report_obj(r: RunReport) -> dict:
    out: dict = {
        "breakpoints": list(r.breakpoints),
        "exact_probabilities": [rational_text(p) for p in r.exact_probabilities],
        "cumulative_detection": rational_text(r.cumulative_detection),
        "sampled": None,
    }
    if r.sampled is not None:
        out["sampled"] = {
            "trials": r.sampled.trials,
            "master_seed": r.sampled.master_seed,
            "detections": list(r.sampled.detections),
            "frequencies": list(r.sampled.frequencies),
        }
    return out


def parse_report(value: Any, path: str = "$") -> RunReport:
    obj = _keys(value, ("breakpoints", "exact_probabilities", "cumulative_detection", "sampled"), path)
    bps = [_expect(n, int, f"{path}.breakpoints[{k}]") for k, n in enumerate(_expect(obj["breakpoints"], list, f"{path}.breakpoints"))]
    probs = [parse_rational(p, f"{path}.exact_probabilities[{k}]") for k, p in enumerate(_expect(obj["exact_probabilities"], list, f"{path}.exact_probabilities"))]
    cum = parse_rational(obj["cumulative_detection"], f"{path}.cumulative_detection")
    sampled = None
    if obj["sampled"] is not None:
        sp = f"{path}.sampled"
        s = _keys(obj["sampled"], ("trials", "master_seed", "detections", "frequencies"), sp)
        sampled = SampledSection(
            _expect(s["trials"], int, f"{sp}.trials"),
            _expect(s["master_seed"], int, f"{sp}.master_seed"),
            tuple(_expect(c, int, f"{sp}.detections[{k}]") for k, c in enumerate(_expect(s["detections"], list, f"{sp}.detections"))),
        )
    return RunReport(tuple(bps), tuple(probs), cum, sampled)
