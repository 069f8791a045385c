"""Debugging protocols (P, S): synthesis for a fixed step unitary, verification in general."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import Matrix, ScaledUnitary, Subspace, complement_projector, orbit, vector
from .process import ProcessSpec, anticipated_trajectory
from .sml import (
    PeriodCertificate,
    Progression,
    check_projector,
    find_p,
    find_progression,
)

__all__ = [
    "Strategy",
    "Protocol",
    "Verification",
    "is_error_detector",
    "synthesize_protocols",
    "verify_protocol",
]


@dataclass(frozen=True)
class Strategy:
    """When to measure: either every p-th step starting at r, or a finite list."""

    kind: str
    period: int = 0
    offset: int = 0
    points: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.kind == "periodic":
            if self.period < 1 or self.offset < 0:
                raise ValueError(f"periodic strategy needs period >= 1 and offset >= 0, got ({self.period}, {self.offset})")
        elif self.kind == "explicit":
            if any(n < 0 for n in self.points):
                raise ValueError("breakpoints must be non-negative")
        else:
            raise ValueError(f"unknown strategy kind {self.kind!r}")

    @classmethod
    def periodic(cls, period: int, offset: int = 0) -> "Strategy":
        return cls("periodic", period=period, offset=offset)

    @classmethod
    def explicit(cls, points: Iterable[int]) -> "Strategy":
        return cls("explicit", points=frozenset(points))

    def __call__(self, n: int) -> bool:
        if self.kind == "periodic":
            return n >= self.offset and (n - self.offset) % self.period == 0
        return n in self.points

    def yes_points(self, horizon: int) -> list[int]:
        """Breakpoints n with 0 <= n <= horizon."""
        if self.kind == "periodic":
            return list(range(self.offset, horizon + 1, self.period))
        return sorted(n for n in self.points if n <= horizon)

    @property
    def liveness_guaranteed(self) -> bool:
        # a finite breakpoint list can never say yes infinitely often
        return self.kind == "periodic"


@dataclass(frozen=True)
class Protocol:
    detector: Matrix
    period: int
    residue: int
    annihilated: Subspace

    @property
    def rank(self) -> int:
        return self.annihilated.dim_ambient - self.annihilated.dim

    @property
    def trivial(self) -> bool:
        """Rank-0 detector: V_r is the whole space, nothing can be detected."""
        return self.annihilated.dim == self.annihilated.dim_ambient

    @property
    def strategy(self) -> Strategy:
        return Strategy.periodic(self.period, self.residue)


@dataclass(frozen=True)
class Verification:
    checked: tuple[int, ...]
    violation: int | None
    liveness: str

    @property
    def ok(self) -> bool:
        return self.violation is None


def is_error_detector(P: Matrix, u: ScaledUnitary, psi0, certificate: PeriodCertificate | None = None) -> Progression | None:
    """(p, r) such that P U^{pn+r} psi0 = 0 for all n, or None if no progression exists."""
    return find_progression(P, u, psi0, certificate)


def synthesize_protocols(
    u: ScaledUnitary,
    psi0: Sequence,
    certificate: PeriodCertificate | None = None,
    include_trivial: bool = True,
) -> list[Protocol]:
    """One maximal-rank protocol per residue r in [0, p), sorted by r.

    V_r is spanned by U^{pn+r} psi0 for n < d, which already spans the whole
    U^p-orbit by Cayley-Hamilton; the detector projects onto V_r's complement.
    """
    psi = vector(psi0)
    if len(psi) != u.dim:
        raise ValueError(f"state has length {len(psi)}, unitary acts on dimension {u.dim}")
    if not any(psi):
        raise ValueError("initial state is the zero vector")
    cert = certificate or find_p(u)
    p, d = cert.p, u.dim
    step = u.power(p)
    out = []
    for r, start in enumerate(orbit(u, psi, p)):
        v_r = Subspace(d, orbit(step, start, d))
        proto = Protocol(complement_projector(v_r), p, r, v_r)
        if include_trivial or not proto.trivial:
            out.append(proto)
    return out


def verify_protocol(process: ProcessSpec, P: Matrix, s: Strategy, horizon: int) -> Verification:
    """Check P U_s psi0 = 0 at every breakpoint n <= horizon of the designed run."""
    if horizon < 1:
        raise ValueError(f"horizon must be at least 1, got {horizon}")
    check_projector(P, process.dimension)
    states = anticipated_trajectory(process, horizon)
    checked = []
    for n in s.yes_points(horizon):
        checked.append(n)
        if any(P.apply(states[n])):
            return Verification(tuple(checked), n, _liveness(s))
    return Verification(tuple(checked), None, _liveness(s))


def _liveness(s: Strategy) -> str:
    return "guaranteed" if s.liveness_guaranteed else "not certified"
