"""Immutable dense matrices over Q(i) with exact elimination."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .gaussian import ZERO, ONE, GaussianRational, as_gaussian
from .polynomial import Polynomial

__all__ = [
    "Vector",
    "Matrix",
    "vector",
    "inner",
    "mat_mul",
    "mat_adjoint",
    "kron",
    "charpoly",
    "rref",
]

Vector = tuple  # tuple[GaussianRational, ...]


def vector(values: Iterable) -> Vector:
    return tuple(as_gaussian(v) for v in values)


def inner(u: Sequence[GaussianRational], v: Sequence[GaussianRational]) -> GaussianRational:
    """<u|v>, conjugate-linear in the first argument."""
    if len(u) != len(v):
        raise ValueError(f"vector length mismatch: {len(u)} vs {len(v)}")
    acc = ZERO
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a.conjugate() * b
    return acc


class Matrix:
    """Row-major ``rows x cols`` matrix of Gaussian rationals."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        ent = tuple(as_gaussian(e) for e in entries)
        if rows < 0 or cols < 0 or len(ent) != rows * cols:
            raise ValueError(f"{len(ent)} entries do not fill a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self.entries = ent
        self._hash = None

    # construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [e for r in rows for e in r])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        columns = [list(c) for c in columns]
        if not columns:
            return cls(nrows or 0, 0, [])
        n = len(columns[0])
        if any(len(c) != n for c in columns):
            raise ValueError("ragged columns")
        return cls(n, len(columns), [columns[j][i] for i in range(n) for j in range(len(columns))])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, [ZERO] * (rows * cols))

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        vals = [as_gaussian(v) for v in values]
        n = len(vals)
        return cls(n, n, [vals[i] if i == j else ZERO for i in range(n) for j in range(n)])

    @classmethod
    def outer(cls, u: Sequence, v: Sequence) -> "Matrix":
        """|u><v|."""
        u, v = vector(u), vector(v)
        return cls(len(u), len(v), [a * b.conjugate() for a in u for b in v])

    # access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx: tuple[int, int]) -> GaussianRational:
        i, j = idx
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"index {idx} out of range for {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[GaussianRational]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[Vector]:
        return [self.col(j) for j in range(self.cols)]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_real(self) -> bool:
        return all(e.is_real() for e in self.entries)

    def is_zero(self) -> bool:
        return not any(self.entries)

    # arithmetic -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def _check_same_shape(self, other: "Matrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [-a for a in self.entries])

    def __mul__(self, scalar) -> "Matrix":
        if isinstance(scalar, Matrix):
            raise TypeError("use @ for matrix products")
        c = as_gaussian(scalar)
        return Matrix(self.rows, self.cols, [a * c for a in self.entries])

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Matrix":
        c = as_gaussian(scalar).inverse()
        return self * c

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return mat_mul(self, other)
        if isinstance(other, (tuple, list)):
            return self.apply(other)
        return NotImplemented

    def apply(self, v: Sequence[GaussianRational]) -> Vector:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ValueError(f"cannot apply {self.rows}x{self.cols} matrix to length-{len(v)} vector")
        v = vector(v)
        nz = [(j, x) for j, x in enumerate(v) if x]
        out = []
        c = self.cols
        e = self.entries
        for i in range(self.rows):
            base = i * c
            acc = ZERO
            for j, x in nz:
                a = e[base + j]
                if a:
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def adjoint(self) -> "Matrix":
        return mat_adjoint(self)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def trace(self) -> GaussianRational:
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        acc = ZERO
        for i in range(self.rows):
            acc = acc + self.entries[i * self.cols + i]
        return acc

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative matrix powers are not supported")
        result, base = Matrix.identity(self.rows), self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    # predicates -------------------------------------------------------

    def is_hermitian(self) -> bool:
        return self.is_square() and self == self.adjoint()

    def is_projector(self) -> bool:
        """P^2 = P = P^dagger, exactly."""
        return self.is_hermitian() and self @ self == self

    def rank(self) -> int:
        return len(rref(self)[1])

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        rows = _field_rows(self)
        one, zero = (Fraction(1), Fraction(0)) if self.is_real() else (ONE, ZERO)
        aug = [r + [one if i == j else zero for j in range(n)] for i, r in enumerate(rows)]
        red, piv = _rref_rows(aug, n)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise ZeroDivisionError("matrix is singular")
        return Matrix(n, n, [e for r in red for e in r[n:]])

    def __repr__(self):
        return f"Matrix({self.rows}, {self.cols}, {[[str(e) for e in r] for r in self.to_rows()]})"


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise ValueError(f"inner dimensions disagree: {a.shape} @ {b.shape}")
    n, m, p = a.rows, a.cols, b.cols
    ae, be = a.entries, b.entries
    brows = [[(j, be[k * p + j]) for j in range(p) if be[k * p + j]] for k in range(m)]
    out = []
    for i in range(n):
        acc = [ZERO] * p
        for k in range(m):
            x = ae[i * m + k]
            if not x:
                continue
            for j, y in brows[k]:
                acc[j] = acc[j] + x * y
        out.extend(acc)
    return Matrix(n, p, out)


def mat_adjoint(a: Matrix) -> Matrix:
    return Matrix(a.cols, a.rows, [a[i, j].conjugate() for j in range(a.cols) for i in range(a.rows)])


def kron(a: Matrix, b: Matrix) -> Matrix:
    ra, ca, rb, cb = a.rows, a.cols, b.rows, b.cols
    out = [ZERO] * (ra * rb * ca * cb)
    width = ca * cb
    for i in range(ra):
        for j in range(ca):
            x = a[i, j]
            if not x:
                continue
            for k in range(rb):
                base = (i * rb + k) * width + j * cb
                for l in range(cb):
                    y = b.entries[k * cb + l]
                    if y:
                        out[base + l] = x * y
    return Matrix(ra * rb, ca * cb, out)


# elimination kernels -----------------------------------------------------
#
# These operate on lists of rows whose scalars are either all Fraction (fast
# path for real matrices) or all GaussianRational.


def _field_rows(m: Matrix) -> list[list]:
    if m.is_real():
        return [[e.re for e in m.row(i)] for i in range(m.rows)]
    return m.to_rows()


def _rref_rows(rows: list[list], ncols: int | None = None) -> tuple[list[list], list[int]]:
    """In-place Gauss-Jordan; pivots are searched in the first ``ncols`` columns."""
    if not rows:
        return rows, []
    width = len(rows[0])
    ncols = width if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = 1 / prow[c]
        if inv != 1:
            prow = [x * inv if x else x for x in prow]
            rows[r] = prow
        nzc = [j for j in range(c, width) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                row = rows[i]
                for j in nzc:
                    row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return rows, pivots


def _wrap(value) -> GaussianRational:
    return value if type(value) is GaussianRational else GaussianRational(value)


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    rows, piv = _rref_rows(_field_rows(m))
    return Matrix(m.rows, m.cols, [_wrap(e) for r in rows for e in r]), piv


def _hessenberg_charpoly(a: list[list], one, zero) -> list:
    """Coefficients (lowest first) of det(xI - a) via similarity to Hessenberg form."""
    n = len(a)
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if a[i][m - 1]), None)
        if piv is None:
            continue
        if piv != m:
            a[piv], a[m] = a[m], a[piv]
            for row in a:
                row[piv], row[m] = row[m], row[piv]
        t = a[m][m - 1]
        for i in range(m + 1, n):
            if not a[i][m - 1]:
                continue
            u = a[i][m - 1] / t
            ri, rm = a[i], a[m]
            for j in range(m - 1, n):
                if rm[j]:
                    ri[j] = ri[j] - u * rm[j]
            for row in a:
                if row[i]:
                    row[m] = row[m] + u * row[i]
    # p[k] is the characteristic polynomial of the leading k x k block
    p = [[one]]
    for k in range(1, n + 1):
        hkk = a[k - 1][k - 1]
        prev = p[k - 1]
        cur = [zero] + list(prev)
        for j, c in enumerate(prev):
            if c and hkk:
                cur[j] = cur[j] - hkk * c
        t = one
        for i in range(1, k):
            t = t * a[k - i][k - i - 1]
            if not t:
                break
            h = a[k - i - 1][k - 1]
            if not h:
                continue
            th = t * h
            for j, c in enumerate(p[k - i - 1]):
                if c:
                    cur[j] = cur[j] - th * c
        p.append(cur)
    return p[n]


def charpoly(m: Matrix) -> Polynomial:
    """det(xI - m), computed exactly."""
    if not m.is_square():
        raise ValueError(f"charpoly of non-square {m.rows}x{m.cols} matrix")
    if m.is_real():
        coeffs = _hessenberg_charpoly(_field_rows(m), Fraction(1), Fraction(0))
    else:
        coeffs = _hessenberg_charpoly(m.to_rows(), ONE, ZERO)
    return Polynomial(coeffs)
