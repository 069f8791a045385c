"""Dense univariate polynomials over Q(i) and cyclotomic polynomials."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .gaussian import ZERO, ONE, GaussianRational, as_gaussian

__all__ = ["Polynomial", "cyclotomic", "poly_divides"]


class Polynomial:
    """Polynomial with coefficients stored lowest degree first.

    Trailing zeros are stripped, so the zero polynomial has no coefficients
    and degree -1.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable = ()):
        coeffs = [as_gaussian(c) for c in coefficients]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coefficients: tuple[GaussianRational, ...] = tuple(coeffs)

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Polynomial":
        out = cls([1])
        for r in roots:
            out = out * cls([-as_gaussian(r), 1])
        return out

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def leading(self) -> GaussianRational:
        return self.coefficients[-1] if self.coefficients else ZERO

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.coefficients)

    def monic(self) -> "Polynomial":
        lc = self.leading()
        return Polynomial(c / lc for c in self.coefficients)

    def __call__(self, value):
        acc = ZERO
        for c in reversed(self.coefficients):
            acc = acc * value + c
        return acc

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coefficients == other.coefficients
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coefficients)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = as_gaussian(other)
            return Polynomial(a * c for a in self.coefficients)
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return Polynomial()
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        result, base = Polynomial([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coefficients)
        dg = other.degree
        lead_inv = other.leading().inverse()
        if len(rem) - 1 < dg:
            return Polynomial(), Polynomial(rem)
        quot = [ZERO] * (len(rem) - dg)
        div = other.coefficients
        for k in range(len(rem) - 1 - dg, -1, -1):
            c = rem[k + dg] * lead_inv
            quot[k] = c
            if c:
                for j in range(dg + 1):
                    rem[k + j] = rem[k + j] - c * div[j]
        return Polynomial(quot), Polynomial(rem[:dg])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __repr__(self):
        return f"Polynomial({[str(c) for c in self.coefficients]})"

    def __str__(self):
        if not self.coefficients:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if c == ONE and mono:
                terms.append(mono)
            elif c == -ONE and mono:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ")


def poly_divides(g: Polynomial, f: Polynomial) -> bool:
    """True iff ``g`` divides ``f`` exactly."""
    if g.is_zero():
        raise ZeroDivisionError("divisor polynomial is zero")
    return (f % g).is_zero()


def _int_divexact_monic(num: Sequence[int], den: Sequence[int]) -> list[int]:
    # den is monic with integer coefficients, so the quotient stays integral
    rem = list(num)
    dg = len(den) - 1
    quot = [0] * (len(rem) - dg)
    for k in range(len(rem) - 1 - dg, -1, -1):
        c = rem[k + dg]
        quot[k] = c
        if c:
            for j in range(dg + 1):
                rem[k + j] -= c * den[j]
    if any(rem[:dg]):
        raise ArithmeticError("inexact division while building cyclotomic polynomial")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_coefficients(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, lowest first."""
    if n < 1:
        raise ValueError(f"cyclotomic index must be positive, got {n}")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _int_divexact_monic(num, cyclotomic_coefficients(d))
    return tuple(num)


def cyclotomic(n: int) -> Polynomial:
    """Phi_n, obtained by dividing x^n - 1 by Phi_d for every proper divisor d."""
    return Polynomial(cyclotomic_coefficients(n))
