from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import ScaledUnitary, Vector, vector

__all__ = ["ProcessSpec", "anticipated_trajectory"]


@dataclass(frozen=True)
class ProcessSpec:
    """A designed discrete-time process psi_0 -> U_{a1} psi_0 -> ...

    ``schedule`` holds 0-based indices into ``alphabet``; step k (1-based)
    applies ``alphabet[schedule[k - 1]]`` and produces state k.
    """

    dimension: int
    initial_state: Vector
    alphabet: tuple[ScaledUnitary, ...]
    schedule: tuple[int, ...] = field(default=())

    def __post_init__(self):
        psi = vector(self.initial_state)
        object.__setattr__(self, "initial_state", psi)
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "schedule", tuple(int(a) for a in self.schedule))
        if len(psi) != self.dimension:
            raise ValueError(f"initial state has length {len(psi)}, dimension is {self.dimension}")
        if not any(psi):
            raise ValueError("initial state is the zero vector")
        if not self.alphabet:
            raise ValueError("alphabet is empty")
        for k, u in enumerate(self.alphabet):
            if u.dim != self.dimension:
                raise ValueError(f"alphabet[{k}] acts on dimension {u.dim}, expected {self.dimension}")
        for k, a in enumerate(self.schedule):
            if not 0 <= a < len(self.alphabet):
                raise IndexError(f"schedule[{k}] = {a} is outside the alphabet (size {len(self.alphabet)})")

    @classmethod
    def repeated(cls, u: ScaledUnitary, psi0: Sequence, steps: int) -> "ProcessSpec":
        """Time-independent process applying ``u`` for ``steps`` steps."""
        return cls(u.dim, vector(psi0), (u,), (0,) * steps)

    @property
    def is_time_independent(self) -> bool:
        return len(self.alphabet) == 1

    def step_unitary(self, k: int) -> ScaledUnitary:
        """Unitary applied at step k (1-based)."""
        return self.alphabet[self.schedule[k - 1]]


def anticipated_trajectory(p: ProcessSpec, horizon: int | None = None) -> list[Vector]:
    """Unnormalized designed states psi_0, ..., psi_horizon."""
    horizon = len(p.schedule) if horizon is None else horizon
    if horizon < 0 or horizon > len(p.schedule):
        raise ValueError(f"horizon {horizon} exceeds the schedule length {len(p.schedule)}")
    states = [p.initial_state]
    for k in range(1, horizon + 1):
        states.append(p.step_unitary(k).mat.apply(states[-1]))
    return states
