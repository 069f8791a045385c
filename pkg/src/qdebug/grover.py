"""Exact Grover-search processes and their monitoring quantities."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import ONE, ZERO, Matrix, ScaledUnitary, Subspace, inner, vector
from .process import ProcessSpec

__all__ = [
    "GroverInstance",
    "QBound",
    "build_grover",
    "hadamard_layer",
    "phase_flip",
    "basis_swap",
    "grover_q_bound",
]


def hadamard_layer(n: int) -> ScaledUnitary:
    """H^{⊗n} as a ±1 matrix with scale 2^n."""
    N = 1 << n
    rows = [[-1 if bin(i & j).count("1") % 2 else 1 for j in range(N)] for i in range(N)]
    return ScaledUnitary(Matrix.from_rows(rows), Fraction(N))


def phase_flip(N: int, z: int) -> ScaledUnitary:
    """I - 2|z><z|."""
    return ScaledUnitary(Matrix.diag([-1 if k == z else 1 for k in range(N)]))


def basis_swap(N: int, a: int, b: int) -> ScaledUnitary:
    perm = list(range(N))
    perm[a], perm[b] = perm[b], perm[a]
    return ScaledUnitary(Matrix.from_rows([[1 if perm[j] == i else 0 for j in range(N)] for i in range(N)]))


@dataclass(frozen=True)
class GroverInstance:
    qubits: int
    target: int
    oracle: Matrix
    iteration: Matrix
    xi: tuple
    uniform: tuple

    @property
    def N(self) -> int:
        return 1 << self.qubits

    @property
    def unitary(self) -> ScaledUnitary:
        return ScaledUnitary(self.iteration)

    @property
    def target_state(self) -> tuple:
        return tuple(ONE if k == self.target else ZERO for k in range(self.N))

    @property
    def span(self) -> Subspace:
        """span{|x>, |xi>}, where every designed state after an iteration lives."""
        return Subspace(self.N, [self.target_state, self.xi])

    def detector(self) -> Matrix:
        """I - |x><x| - |xi><xi| with |xi> normalized, i.e. xi xi^dagger / (N-1)."""
        N = self.N
        x = self.target_state
        return Matrix.identity(N) - Matrix.outer(x, x) - Matrix.outer(self.xi, self.xi) / (N - 1)

    def process(self, steps: int) -> ProcessSpec:
        """Time-independent process: start from the uniform superposition, apply G ``steps`` times."""
        return ProcessSpec.repeated(self.unitary, self.uniform, steps)

    def circuit_process(self, steps: int) -> ProcessSpec:
        """|0...0>, then H^{⊗n}, then ``steps`` Grover iterations (alphabet [H, G])."""
        N = self.N
        zero = tuple(ONE if k == 0 else ZERO for k in range(N))
        return ProcessSpec(N, zero, (hadamard_layer(self.qubits), self.unitary), (0,) + (1,) * steps)


def build_grover(n: int, x: int) -> GroverInstance:
    """O = I - 2|x><x| and G = (2|psi0><psi0| - I) O with psi0 uniform."""
    if not 1 <= n <= 6:
        raise ValueError(f"qubit count must be in [1, 6], got {n}")
    N = 1 << n
    if not 0 <= x < N:
        raise ValueError(f"target {x} outside [0, {N})")
    two_over_n = Fraction(2, N)
    oracle = Matrix.diag([-1 if k == x else 1 for k in range(N)])
    diffusion = [[two_over_n - (1 if i == j else 0) for j in range(N)] for i in range(N)]
    # right-multiplying by O negates column x
    g = [[-c if j == x else c for j, c in enumerate(row)] for row in diffusion]
    xi = vector(0 if k == x else 1 for k in range(N))
    uniform = vector([1] * N)
    return GroverInstance(n, x, oracle, Matrix.from_rows(g), xi, uniform)


@dataclass(frozen=True)
class QBound:
    """q as a float together with a rational enclosure lower <= q <= upper."""

    value: float
    lower: Fraction
    upper: Fraction
    trace: Fraction
    det: Fraction


def _sqrt_bounds(r: Fraction, digits: int = 30) -> tuple[Fraction, Fraction]:
    if r < 0:
        raise ArithmeticError("negative discriminant for a Hermitian 2x2 matrix")
    scale = 10 ** digits
    # sqrt(a/b) = sqrt(a*b)/b
    a, b = r.numerator, r.denominator
    root = math.isqrt(a * b * scale * scale)
    lo = Fraction(root, scale * b)
    hi = lo if root * root == a * b * scale * scale else Fraction(root + 1, scale * b)
    return lo, hi


def grover_q_bound(inst: GroverInstance, gprime: ScaledUnitary) -> QBound:
    """Largest |<x|G'|psi>|^2 + |<xi|G'|psi>|^2 over unit psi in span{|x>, |xi>}.

    With the unnormalized basis b = (|x>, xi) and Gram matrix S = diag(1, N-1),
    q is the top eigenvalue of S^{-1} W, W_ab = <b_a|G'^dagger Pi G'|b_b> and
    Pi the projector onto the span. Trace and determinant of S^{-1} W are
    rational, so only one square root is irrational.
    """
    N = inst.N
    if gprime.dim != N:
        raise ValueError(f"G' acts on dimension {gprime.dim}, instance has N = {N}")
    pi = Matrix.identity(N) - inst.detector()
    basis = [inst.target_state, inst.xi]
    images = [gprime.mat.apply(b) for b in basis]
    w = [[inner(images[a], pi.apply(images[b])) / gprime.scale_sq for b in range(2)] for a in range(2)]
    gram = [Fraction(1), Fraction(N - 1)]
    t = w[0][0].re / gram[0] + w[1][1].re / gram[1]
    det = (w[0][0] * w[1][1] - w[0][1] * w[1][0]).re / (gram[0] * gram[1])
    disc = t * t - 4 * det
    lo, hi = _sqrt_bounds(disc)
    lower, upper = (t + lo) / 2, (t + hi) / 2
    return QBound(float((t + (lo + hi) / 2) / 2), lower, upper, t, det)
