"""Reducing a compatible general measurement to a single projective error detector.

Outcomes whose operator annihilates the anticipated state are the error
outcomes; their effects sum to E_t, and the projector onto the support of
E_t detects at least as often as E_t does.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import ZERO, GaussianRational, Matrix, Subspace, inner, vector

__all__ = [
    "IncompatibleMeasurementError",
    "GeneralMeasurement",
    "ReductionResult",
    "check_compatibility",
    "reduce_measurement",
]


class IncompatibleMeasurementError(ValueError):
    def __init__(self, index: int):
        super().__init__(f"measurement operator {index} does not have the state as an eigenvector")
        self.index = index


@dataclass(frozen=True)
class GeneralMeasurement:
    operators: tuple[Matrix, ...]

    def __post_init__(self):
        ops = tuple(self.operators)
        object.__setattr__(self, "operators", ops)
        if not ops:
            raise ValueError("a measurement needs at least one operator")
        d = ops[0].cols
        total = Matrix.zeros(d)
        for k, m in enumerate(ops):
            if m.shape != (d, d):
                raise ValueError(f"operator {k} has shape {m.shape}, expected {(d, d)}")
            total = total + m.adjoint() @ m
        if total != Matrix.identity(d):
            raise ValueError("measurement operators are not complete: sum M_i^dagger M_i != I")

    @property
    def dim(self) -> int:
        return self.operators[0].cols


@dataclass(frozen=True)
class ReductionResult:
    error_outcomes: frozenset[int]
    effect: Matrix
    support_projector: Matrix
    eigenvalues: tuple[GaussianRational, ...]


def _eigenvalue(m: Matrix, psi) -> GaussianRational | None:
    image = m.apply(psi)
    # M psi = lambda psi forces lambda = <psi|M psi> / <psi|psi>
    lam = inner(psi, image) / inner(psi, psi)
    if any(a != lam * b for a, b in zip(image, psi)):
        return None
    return lam


def check_compatibility(m: GeneralMeasurement, psi: Sequence) -> tuple[GaussianRational, ...] | None:
    """Eigenvalues lambda_i with M_i psi = lambda_i psi, or None if some M_i psi is not parallel to psi."""
    psi = vector(psi)
    if len(psi) != m.dim:
        raise ValueError(f"state has length {len(psi)}, measurement acts on dimension {m.dim}")
    if not any(psi):
        raise ValueError("state is the zero vector")
    lams = []
    for op in m.operators:
        lam = _eigenvalue(op, psi)
        if lam is None:
            return None
        lams.append(lam)
    return tuple(lams)


def reduce_measurement(m: GeneralMeasurement, psi: Sequence) -> ReductionResult:
    psi = vector(psi)
    if len(psi) != m.dim or not any(psi):
        raise ValueError("state must be a nonzero vector of the measurement's dimension")
    lams = [_eigenvalue(op, psi) for op in m.operators]
    if None in lams:
        raise IncompatibleMeasurementError(lams.index(None))
    errors = frozenset(k for k, lam in enumerate(lams) if lam == ZERO)
    effect = Matrix.zeros(m.dim)
    for k in sorted(errors):
        op = m.operators[k]
        effect = effect + op.adjoint() @ op
    support = Subspace.column_space(effect).projector()
    return ReductionResult(errors, effect, support, tuple(lams))
