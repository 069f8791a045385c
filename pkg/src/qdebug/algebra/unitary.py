from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .matrix import Matrix, Vector, vector

__all__ = ["ScaledUnitary", "NotUnitaryError", "orbit"]


class NotUnitaryError(ValueError):
    pass


@dataclass(frozen=True)
class ScaledUnitary:
    """A unitary stored as ``mat / sqrt(scale_sq)``.

    ``mat`` has Gaussian-rational entries and ``scale_sq`` is a positive
    rational, which keeps Hadamard-type gates exact (H = [[1,1],[1,-1]]/sqrt(2)).
    """

    mat: Matrix
    scale_sq: Fraction = Fraction(1)

    def __post_init__(self):
        s = Fraction(self.scale_sq)
        object.__setattr__(self, "scale_sq", s)
        if s <= 0:
            raise NotUnitaryError(f"scale_sq must be positive, got {s}")
        if not self.mat.is_square() or self.mat.rows < 1:
            raise NotUnitaryError(f"unitary must be square with d >= 1, got {self.mat.shape}")
        if self.mat.adjoint() @ self.mat != Matrix.identity(self.mat.rows) * s:
            raise NotUnitaryError("mat^dagger mat != scale_sq * I")

    @classmethod
    def of(cls, rows: Sequence[Sequence], scale_sq=1) -> "ScaledUnitary":
        return cls(Matrix.from_rows(rows), Fraction(scale_sq))

    @property
    def dim(self) -> int:
        return self.mat.rows

    def adjoint(self) -> "ScaledUnitary":
        return ScaledUnitary(self.mat.adjoint(), self.scale_sq)

    def __matmul__(self, other: "ScaledUnitary") -> "ScaledUnitary":
        """Composition ``self * other`` (other acts first)."""
        return ScaledUnitary(self.mat @ other.mat, self.scale_sq * other.scale_sq)

    def power(self, k: int) -> "ScaledUnitary":
        return ScaledUnitary(self.mat ** k, self.scale_sq ** k)

    def conjugate_density(self, rho: Matrix) -> Matrix:
        """U rho U^dagger, exact."""
        return (self.mat @ rho @ self.mat.adjoint()) / self.scale_sq


def orbit(u: ScaledUnitary, psi: Sequence, count: int) -> list[Vector]:
    """Unnormalized orbit ``[psi, M psi, M^2 psi, ...]`` of length ``count``.

    The global factor 1/sqrt(s) is dropped at every step; every condition
    built on top of orbits is homogeneous in the state.
    """
    psi = vector(psi)
    if len(psi) != u.dim:
        raise ValueError(f"state has length {len(psi)}, unitary acts on dimension {u.dim}")
    if not any(psi):
        raise ValueError("orbit of the zero vector")
    out = []
    cur = psi
    for _ in range(count):
        out.append(cur)
        cur = u.mat.apply(cur)
    return out
