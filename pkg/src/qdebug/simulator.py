"""Monitored execution of a process with injected bugs.

Exact runs propagate an unnormalized density matrix with rational entries.
At each breakpoint the detection probability is tr(P rho)/tr(rho); a
non-detection collapses rho to (I-P) rho (I-P), which is the identity on
bug-free runs because the designed state lies in ker P.

Sampled runs draw detection outcomes from the exact conditional
probabilities. Trial t uses a generator seeded from (master_seed, t), so
the counts do not depend on how trials are split across threads.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .algebra import Matrix, ScaledUnitary
from .process import ProcessSpec
from .protocols import Protocol, Strategy, verify_protocol

__all__ = [
    "BugModel",
    "RunReport",
    "SampledSection",
    "IncompatibleProtocolError",
    "is_density_matrix",
    "fidelity_sq",
    "run_monitored_exact",
    "run_monitored_sampled",
]

ProtocolLike = Union[Protocol, "tuple[Matrix, Strategy]"]


class IncompatibleProtocolError(ValueError):
    def __init__(self, step: int):
        super().__init__(f"protocol is incompatible with the designed process: P psi_{step} != 0")
        self.step = step


def _is_psd(m: Matrix) -> bool:
    # symmetric elimination with diagonal pivots; a zero pivot needs a zero row
    n = m.rows
    a = m.to_rows()
    for k in range(n):
        piv = a[k][k]
        if piv.im or piv.re < 0:
            return False
        if not piv:
            if any(a[k][j] for j in range(k + 1, n)):
                return False
            continue
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if f:
                for j in range(k, n):
                    a[i][j] = a[i][j] - f * a[k][j]
    return True


def is_density_matrix(rho: Matrix) -> bool:
    """Hermitian, positive semidefinite and of nonzero trace (normalization is free)."""
    return rho.is_hermitian() and bool(rho.trace()) and _is_psd(rho)


def fidelity_sq(rho: Matrix) -> Fraction:
    """f^2 = <0...0|rho|0...0> / tr(rho)."""
    return rho[0, 0].re / rho.trace().re


@dataclass(frozen=True)
class BugModel:
    """Either a wrong initial state or a replaced step unitary.

    A gate bug replaces the unitary at steps ``start <= k < stop`` (1-based,
    ``stop=None`` keeps it forever). With ``target`` set, only steps that
    schedule alphabet symbol ``target`` are affected.
    """

    kind: str
    rho: Matrix | None = None
    replacement: ScaledUnitary | None = None
    start: int = 1
    stop: int | None = None
    target: int | None = None

    def __post_init__(self):
        if self.kind == "init_bug":
            if self.rho is None or not is_density_matrix(self.rho):
                raise ValueError("init_bug needs a Hermitian positive semidefinite rho with nonzero trace")
        elif self.kind == "gate_bug":
            if self.replacement is None:
                raise ValueError("gate_bug needs a replacement unitary")
            if self.start < 1 or (self.stop is not None and self.stop < self.start):
                raise ValueError(f"bad gate_bug step range [{self.start}, {self.stop})")
        else:
            raise ValueError(f"unknown bug kind {self.kind!r}")

    @classmethod
    def init(cls, rho: Matrix) -> "BugModel":
        return cls("init_bug", rho=rho)

    @classmethod
    def gate(cls, replacement: ScaledUnitary, start: int = 1, stop: int | None = None, target: int | None = None) -> "BugModel":
        return cls("gate_bug", replacement=replacement, start=start, stop=stop, target=target)

    def dimension(self) -> int:
        return self.rho.rows if self.kind == "init_bug" else self.replacement.dim

    def applies_at(self, step: int, symbol: int) -> bool:
        if self.kind != "gate_bug":
            return False
        in_range = step >= self.start and (self.stop is None or step < self.stop)
        return in_range and (self.target is None or self.target == symbol)


@dataclass(frozen=True)
class SampledSection:
    trials: int
    master_seed: int
    detections: tuple[int, ...]

    @property
    def frequencies(self) -> tuple[float, ...]:
        return tuple(c / self.trials for c in self.detections)


@dataclass(frozen=True)
class RunReport:
    breakpoints: tuple[int, ...]
    exact_probabilities: tuple[Fraction, ...]
    cumulative_detection: Fraction
    sampled: SampledSection | None = None

    def first_detection_probabilities(self) -> tuple[Fraction, ...]:
        """Unconditional probability that the first click happens at each breakpoint."""
        out, survive = [], Fraction(1)
        for p in self.exact_probabilities:
            out.append(survive * p)
            survive *= 1 - p
        return tuple(out)


def _unpack(protocol: ProtocolLike) -> tuple[Matrix, Strategy]:
    if isinstance(protocol, Protocol):
        return protocol.detector, protocol.strategy
    P, s = protocol
    return P, s


def run_monitored_exact(
    process: ProcessSpec,
    protocol: ProtocolLike,
    bug: BugModel | None = None,
    horizon: int | None = None,
) -> RunReport:
    horizon = len(process.schedule) if horizon is None else horizon
    P, strategy = _unpack(protocol)
    check = verify_protocol(process, P, strategy, horizon)
    if not check.ok:
        raise IncompatibleProtocolError(check.violation)
    d = process.dimension
    if bug is not None and bug.dimension() != d:
        raise ValueError(f"bug acts on dimension {bug.dimension()}, process has dimension {d}")

    if bug is not None and bug.kind == "init_bug":
        rho = bug.rho
    else:
        rho = Matrix.outer(process.initial_state, process.initial_state)
    keep = Matrix.identity(d) - P

    breakpoints, probs = [], []
    survive = Fraction(1)
    for n in range(horizon + 1):
        if n:
            symbol = process.schedule[n - 1]
            u = process.alphabet[symbol]
            if bug is not None and bug.applies_at(n, symbol):
                u = bug.replacement
            rho = u.conjugate_density(rho)
        if not strategy(n):
            continue
        total = rho.trace()
        mass = (P @ rho).trace()
        if mass.im or total.im:
            raise ArithmeticError("non-real trace of a Hermitian operator")
        prob = mass.re / total.re if total else Fraction(0)
        rho = keep @ rho @ keep
        breakpoints.append(n)
        probs.append(prob)
        survive *= 1 - prob
    return RunReport(tuple(breakpoints), tuple(probs), 1 - survive)


def _trial_first_clicks(probs: np.ndarray, master_seed: int, trials: range) -> np.ndarray:
    counts = np.zeros(len(probs), dtype=np.int64)
    k = len(probs)
    if k == 0:
        return counts
    for t in trials:
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(master_seed, spawn_key=(t,))))
        hits = np.flatnonzero(rng.random(k) < probs)
        if hits.size:
            counts[hits[0]] += 1
    return counts


def run_monitored_sampled(
    process: ProcessSpec,
    protocol: ProtocolLike,
    bug: BugModel | None = None,
    horizon: int | None = None,
    *,
    trials: int,
    master_seed: int,
    workers: int = 1,
) -> RunReport:
    """Exact report plus ``trials`` Monte-Carlo runs; counts are first clicks per breakpoint."""
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    if not 0 <= master_seed < 2 ** 64:
        raise ValueError("master_seed must be a 64-bit unsigned integer")
    exact = run_monitored_exact(process, protocol, bug, horizon)
    probs = np.array([float(p) for p in exact.exact_probabilities], dtype=float)
    workers = max(1, workers)
    bounds = np.linspace(0, trials, workers + 1).astype(int)
    chunks = [range(bounds[i], bounds[i + 1]) for i in range(workers)]
    if workers == 1:
        parts = [_trial_first_clicks(probs, master_seed, chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda c: _trial_first_clicks(probs, master_seed, c), chunks))
    counts = np.sum(parts, axis=0) if parts else np.zeros(len(probs), dtype=np.int64)
    sampled = SampledSection(trials, master_seed, tuple(int(c) for c in counts))
    return RunReport(exact.breakpoints, exact.exact_probabilities, exact.cumulative_detection, sampled)
