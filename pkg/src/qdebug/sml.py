"""Arithmetic progressions inside the zero set {n : P U^n psi0 = 0}.

The zero set of a linear recurrence is a finite set plus finitely many
arithmetic progressions. This module decides which progressions exist
without touching the sporadic part:

* :func:`find_p` computes a period p such that every root-of-unity quotient
  of two eigenvalues of U satisfies (lambda/mu)^p = 1. The quotients are the
  roots of f = charpoly(U ⊗ U^dagger), and a primitive n-th root of unity is a
  root of f iff the cyclotomic polynomial Phi_n divides f.
* :func:`invariant_core` computes the largest subspace of ker P that is
  invariant under U^q.
* :func:`find_progression` returns (p, r) with U^r psi0 in K_p, which is the
  case exactly when some progression lies in the zero set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import NamedTuple, Sequence

from .algebra import (
    Matrix,
    Polynomial,
    ScaledUnitary,
    Subspace,
    charpoly,
    cyclotomic,
    kernel_basis,
    kron,
    orbit,
    vector,
)
from .algebra.polynomial import cyclotomic_coefficients

__all__ = [
    "PeriodCertificate",
    "Progression",
    "ZeroScan",
    "NotAProjectorError",
    "totients",
    "candidate_orders",
    "quotient_polynomial",
    "find_p",
    "invariant_core",
    "find_residues",
    "find_progression",
    "zero_set_scan",
]

# Mersenne prime used to reject non-divisors cheaply before the exact check.
_FILTER_PRIME = (1 << 61) - 1


class NotAProjectorError(ValueError):
    pass


@dataclass(frozen=True)
class PeriodCertificate:
    p: int
    divisor_orders: tuple[int, ...]
    f: Polynomial


class Progression(NamedTuple):
    period: int
    residue: int


@dataclass(frozen=True)
class ZeroScan:
    zeros: tuple[int, ...]
    horizon: int

    def __contains__(self, n: int) -> bool:
        return n in set(self.zeros)


def totients(limit: int) -> list[int]:
    """Euler's phi for 0..limit by sieve."""
    phi = list(range(limit + 1))
    for i in range(2, limit + 1):
        if phi[i] == i:
            for j in range(i, limit + 1, i):
                phi[j] -= phi[j] // i
    return phi


def candidate_orders(d: int) -> list[int]:
    """All n >= 1 with phi(n) <= d^2.

    deg f = d^2 bounds deg Phi_n = phi(n), and phi(n) >= sqrt(n/2) confines
    every such n to n <= 2 d^4.
    """
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    bound = d * d
    phi = totients(2 * bound * bound)
    return [n for n in range(1, len(phi)) if phi[n] <= bound]


def _kron_charpoly(u: ScaledUnitary) -> Polynomial:
    return charpoly(kron(u.mat, u.mat.adjoint()) / u.scale_sq)


def _power_sum_charpoly(u: ScaledUnitary) -> Polynomial:
    # Power sums of the quotients: sum_{i,j} (mu_i/mu_j)^k = |tr M^k|^2 / s^k,
    # then Newton's identities turn them into coefficients.
    g = charpoly(u.mat)
    d = u.dim
    e_g = [(-1) ** k * g.coefficients[d - k] for k in range(d + 1)]
    big = d * d
    traces = [None]
    for k in range(1, big + 1):
        acc = (-1) ** (k - 1) * k * e_g[k] if k <= d else 0
        for i in range(1, min(k - 1, d) + 1):
            acc = acc + (-1) ** (i - 1) * e_g[i] * traces[k - i]
        traces.append(acc)
    s = u.scale_sq
    p = [None] + [traces[k].norm() / s ** k for k in range(1, big + 1)]
    e = [Fraction(1)]
    for k in range(1, big + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            term = e[k - i] * p[i]
            acc += term if i % 2 else -term
        e.append(acc / k)
    return Polynomial([(-1) ** (big - j) * e[big - j] for j in range(big + 1)])


def quotient_polynomial(u: ScaledUnitary, method: str = "kron") -> Polynomial:
    """f(x), whose roots are all quotients lambda/mu of eigenvalues of u.

    ``method="kron"`` forms U ⊗ U^dagger = (M ⊗ M^dagger)/s and takes its
    characteristic polynomial directly. ``method="power_sums"`` derives the
    same polynomial from charpoly(M) through power sums, which is far cheaper
    for d >= 16.
    """
    if method == "kron":
        f = _kron_charpoly(u)
    elif method == "power_sums":
        f = _power_sum_charpoly(u)
    else:
        raise ValueError(f"unknown method {method!r}")
    if not f.is_real():
        raise ArithmeticError("quotient polynomial has a non-real coefficient")
    return f


def _mod_prime(coeffs: Sequence[Fraction], prime: int) -> list[int] | None:
    out = []
    for c in coeffs:
        if c.denominator % prime == 0:
            return None
        out.append(c.numerator * pow(c.denominator, -1, prime) % prime)
    return out


def _divisible_mod(f_mod: list[int], g: Sequence[int], prime: int) -> bool:
    rem = list(f_mod)
    dg = len(g) - 1
    for k in range(len(rem) - 1 - dg, -1, -1):
        c = rem[k + dg]
        if c:
            for j in range(dg):
                rem[k + j] = (rem[k + j] - c * g[j]) % prime
    return not any(rem[:dg])


def find_p(u: ScaledUnitary, method: str = "kron") -> PeriodCertificate:
    f = quotient_polynomial(u, method)
    real = [c.re for c in f.coefficients]
    f_mod = _mod_prime(real, _FILTER_PRIME)
    orders = []
    for n in candidate_orders(u.dim):
        phi_n = cyclotomic_coefficients(n)
        if len(phi_n) > len(real):
            continue
        if f_mod is not None and not _divisible_mod(f_mod, phi_n, _FILTER_PRIME):
            continue
        if (f % cyclotomic(n)).is_zero():
            orders.append(n)
    if 1 not in orders:
        raise ArithmeticError("x - 1 does not divide the quotient polynomial")
    return PeriodCertificate(reduce(math.lcm, orders, 1), tuple(orders), f)


def invariant_core(k: Subspace, u: ScaledUnitary, q: int) -> Subspace:
    """Largest subspace S of k with U^q S = S, by iterating S <- S ∩ U^q S."""
    if k.dim_ambient != u.dim:
        raise ValueError("subspace and unitary act on different dimensions")
    if q < 1:
        raise ValueError(f"q must be positive, got {q}")
    step = u.mat ** q
    cur = k
    for _ in range(k.dim + 1):
        nxt = cur & cur.image(step)
        if nxt.dim == cur.dim:
            return cur
        cur = nxt
    raise AssertionError("invariant core iteration did not stabilise")


def _checked_state(psi0, d: int):
    psi = vector(psi0)
    if len(psi) != d:
        raise ValueError(f"state has length {len(psi)}, expected {d}")
    if not any(psi):
        raise ValueError("initial state is the zero vector")
    return psi


def find_residues(u: ScaledUnitary, psi0, p: int, detector_kernel: Subspace) -> list[int]:
    """All r in [0, p) with U^r psi0 inside the U^p-invariant core of the kernel."""
    psi = _checked_state(psi0, u.dim)
    core = invariant_core(detector_kernel, u, p)
    if core.dim == 0:
        return []
    return [r for r, v in enumerate(orbit(u, psi, p)) if core.contains(v)]


def check_projector(P: Matrix, d: int):
    if P.shape != (d, d):
        raise ValueError(f"detector has shape {P.shape}, expected {(d, d)}")
    if not P.is_projector():
        raise NotAProjectorError("detector is not an orthogonal projector (P^2 = P = P^dagger fails)")


def find_progression(P: Matrix, u: ScaledUnitary, psi0, certificate: PeriodCertificate | None = None) -> Progression | None:
    """Smallest-residue progression {p n + r} contained in the zero set, if any.

    ``None`` means the zero set is finite.
    """
    check_projector(P, u.dim)
    psi = _checked_state(psi0, u.dim)
    cert = certificate or find_p(u)
    residues = find_residues(u, psi, cert.p, kernel_basis(P))
    if not residues:
        return None
    return Progression(cert.p, residues[0])


def zero_set_scan(P: Matrix, u: ScaledUnitary, psi0, horizon: int) -> ZeroScan:
    """Brute force: every n < horizon with P M^n psi0 = 0."""
    if horizon < 1:
        raise ValueError(f"horizon must be at least 1, got {horizon}")
    zeros = tuple(n for n, v in enumerate(orbit(u, psi0, horizon)) if not any(P.apply(v)))
    return ZeroScan(zeros, horizon)
