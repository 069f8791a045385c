from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import reduce
from itertools import permutations
from pathlib import Path

import pytest

from qdebug.algebra import ONE, ZERO, GaussianRational, Matrix, ScaledUnitary, inner

FIXTURES = Path(__file__).parent / "fixtures"

PHASES = [GaussianRational(1), GaussianRational(-1), GaussianRational(0, 1), GaussianRational(0, -1)]
# i^k for k = 0..3, used by the eigenvalue oracle below
PHASE_QUARTERS = {PHASES[0]: 0, PHASES[1]: 2, PHASES[2]: 1, PHASES[3]: 3}


def half(n=1):
    return Fraction(n, 2)


def random_monomial(rng: random.Random, d: int) -> tuple[ScaledUnitary, list[int], list[GaussianRational]]:
    """Random exactly-unitary signed/phased permutation matrix: column j has phase[j] in row perm[j]."""
    perm = list(range(d))
    rng.shuffle(perm)
    phases = [rng.choice(PHASES) for _ in range(d)]
    rows = [[ZERO] * d for _ in range(d)]
    for j in range(d):
        rows[perm[j]][j] = phases[j]
    return ScaledUnitary(Matrix.from_rows(rows)), perm, phases


def monomial_eigen_angles(perm: list[int], phases: list[GaussianRational]) -> list[Fraction]:
    """Eigenvalue angles (in turns, mod 1) of a phased permutation, from its cycle structure.

    A cycle of length L whose phases multiply to i^a has eigenvalues
    exp(2 pi i (a/4 + k)/L), k = 0..L-1.
    """
    d = len(perm)
    seen = [False] * d
    angles = []
    for s in range(d):
        if seen[s]:
            continue
        j, length, quarters = s, 0, 0
        while not seen[j]:
            seen[j] = True
            quarters += PHASE_QUARTERS[phases[j]]
            j = perm[j]
            length += 1
        for k in range(length):
            angles.append((Fraction(quarters, 4) + k) / length % 1)
    return angles


def monomial_period_oracle(perm, phases) -> int:
    """lcm of the orders of all eigenvalue quotients; all are roots of unity here."""
    angles = monomial_eigen_angles(perm, phases)
    orders = {((a - b) % 1).denominator for a in angles for b in angles}
    return reduce(math.lcm, orders, 1)


def random_gaussian_vector(rng: random.Random, d: int, lo: int = -2, hi: int = 2, complex_: bool = True):
    while True:
        v = [GaussianRational(rng.randint(lo, hi), rng.randint(lo, hi) if complex_ else 0) for _ in range(d)]
        if any(v):
            return tuple(v)


def gram_schmidt(vectors):
    """Exact orthogonalisation without normalisation; drops dependent vectors."""
    out = []
    for v in vectors:
        w = list(v)
        for b in out:
            c = inner(b, w) / inner(b, b)
            w = [wi - c * bi for wi, bi in zip(w, b)]
        if any(w):
            out.append(tuple(w))
    return out


def leibniz_det(rows):
    n = len(rows)
    total = ZERO
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = ONE
        for i in range(n):
            term = term * rows[i][perm[i]]
        total = total + (term if sign > 0 else -term)
    return total


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


@pytest.fixture
def qubit_z():
    return ScaledUnitary.of([[1, 0], [0, -1]])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
