"""Subspaces of Q(i)^n with a canonical basis, so equality is structural."""

from __future__ import annotations

from typing import Iterable, Sequence

from .gaussian import ZERO, ONE
from .matrix import Matrix, Vector, _field_rows, _rref_rows, _wrap, vector

__all__ = ["Subspace", "kernel_basis", "subspace_intersect", "complement_projector"]


def _canonical_rows(vectors: Sequence[Vector], n: int) -> tuple[tuple[Vector, ...], tuple[int, ...]]:
    if not vectors:
        return (), ()
    m = Matrix(len(vectors), n, [e for v in vectors for e in v])
    rows, piv = _rref_rows(_field_rows(m))
    canon = tuple(tuple(_wrap(e) for e in rows[k]) for k in range(len(piv)))
    return canon, tuple(piv)


class Subspace:
    """Column space of ``basis`` inside an ``dim_ambient``-dimensional space.

    The stored basis is the reduced column-echelon form (leading entries 1),
    which is unique per subspace.
    """

    __slots__ = ("dim_ambient", "_vecs", "_pivots", "_basis")

    def __init__(self, dim_ambient: int, vectors: Iterable = ()):
        vecs = [vector(v) for v in vectors]
        for v in vecs:
            if len(v) != dim_ambient:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {dim_ambient}")
        self.dim_ambient = dim_ambient
        self._vecs, self._pivots = _canonical_rows(vecs, dim_ambient)
        self._basis = None

    @classmethod
    def span(cls, vectors: Sequence, dim_ambient: int | None = None) -> "Subspace":
        vectors = list(vectors)
        if dim_ambient is None:
            if not vectors:
                raise ValueError("ambient dimension needed for an empty span")
            dim_ambient = len(vectors[0])
        return cls(dim_ambient, vectors)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, Matrix.identity(n).columns())

    @classmethod
    def column_space(cls, m: Matrix) -> "Subspace":
        return cls(m.rows, m.columns())

    @property
    def dim(self) -> int:
        return len(self._vecs)

    @property
    def basis(self) -> Matrix:
        """Basis vectors as the columns of a ``dim_ambient x dim`` matrix."""
        if self._basis is None:
            self._basis = Matrix.from_columns(self._vecs, self.dim_ambient)
        return self._basis

    canonical = basis

    def vectors(self) -> list[Vector]:
        return list(self._vecs)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.dim_ambient == other.dim_ambient and self._vecs == other._vecs

    def __hash__(self):
        return hash((self.dim_ambient, self._vecs))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.dim_ambient})"

    def _check(self, other: "Subspace"):
        if self.dim_ambient != other.dim_ambient:
            raise ValueError(f"ambient dimension mismatch: {self.dim_ambient} vs {other.dim_ambient}")

    def contains(self, v: Sequence) -> bool:
        v = list(vector(v))
        if len(v) != self.dim_ambient:
            raise ValueError("vector length does not match ambient dimension")
        for b, p in zip(self._vecs, self._pivots):
            c = v[p]
            if c:
                for j in range(p, self.dim_ambient):
                    if b[j]:
                        v[j] = v[j] - c * b[j]
        return not any(v)

    __contains__ = contains

    def issubset(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(v) for v in self._vecs)

    def __le__(self, other: "Subspace") -> bool:
        return self.issubset(other)

    def join(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.dim_ambient, self._vecs + other._vecs)

    def image(self, m: Matrix) -> "Subspace":
        """``m`` applied to every vector of the subspace."""
        if m.cols != self.dim_ambient:
            raise ValueError("matrix does not act on this ambient space")
        return Subspace(m.rows, [m.apply(v) for v in self._vecs])

    def intersect(self, other: "Subspace") -> "Subspace":
        return subspace_intersect(self, other)

    def __and__(self, other):
        return subspace_intersect(self, other)

    def orthogonal_complement(self) -> "Subspace":
        if not self._vecs:
            return Subspace.full(self.dim_ambient)
        return kernel_basis(self.basis.adjoint())

    def projector(self) -> Matrix:
        """Orthogonal projector B (B^dagger B)^{-1} B^dagger onto the subspace."""
        n = self.dim_ambient
        if not self._vecs:
            return Matrix.zeros(n)
        b = self.basis
        bd = b.adjoint()
        return b @ (bd @ b).inverse() @ bd

    def complement_projector(self) -> Matrix:
        return complement_projector(self)


def kernel_basis(m: Matrix) -> Subspace:
    """Null space ``{psi : m psi = 0}`` by exact Gauss-Jordan elimination."""
    n = m.cols
    if m.rows == 0:
        return Subspace.full(n)
    rows, piv = _rref_rows(_field_rows(m))
    pivset = set(piv)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = [ZERO] * n
        v[f] = ONE
        for r, p in enumerate(piv):
            c = rows[r][f]
            if c:
                v[p] = -_wrap(c)
        basis.append(v)
    return Subspace(n, basis)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """A ∩ B from the null space of the joint matrix [A | -B]."""
    a._check(b)
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.dim_ambient)
    joint = Matrix.from_columns(a.vectors() + [tuple(-e for e in v) for v in b.vectors()])
    null = kernel_basis(joint)
    ab = a.basis
    return Subspace(a.dim_ambient, [ab.apply(coef[: a.dim]) for coef in null.vectors()])


def complement_projector(v: Subspace) -> Matrix:
    """I - B (B^dagger B)^{-1} B^dagger: the projector onto v's orthogonal complement."""
    return Matrix.identity(v.dim_ambient) - v.projector()
