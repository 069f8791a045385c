import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdebug.algebra import (
    ONE,
    ZERO,
    GaussianRational,
    I,
    Matrix,
    NotUnitaryError,
    Polynomial,
    ScaledUnitary,
    Subspace,
    as_gaussian,
    charpoly,
    complement_projector,
    cyclotomic,
    kernel_basis,
    kron,
    mat_adjoint,
    orbit,
    poly_divides,
    subspace_intersect,
)
from qdebug.grover import build_grover

from conftest import leibniz_det

X = Polynomial.x()
h = Fraction(1, 2)


def mobius(n):
    result, k, m = 1, 2, n
    while k * k <= m:
        if m % k == 0:
            m //= k
            if m % k == 0:
                return 0
            result = -result
        k += 1
    return -result if m > 1 else result


def cyclotomic_by_mobius(n):
    """Phi_n = prod_{d|n} (x^d - 1)^{mu(n/d)}, independent of the division route."""
    num, den = Polynomial([1]), Polynomial([1])
    for d in range(1, n + 1):
        if n % d == 0:
            mu = mobius(n // d)
            factor = X ** d - Polynomial([1])
            if mu == 1:
                num = num * factor
            elif mu == -1:
                den = den * factor
    q, r = divmod(num, den)
    assert r.is_zero()
    return q


# scalars -------------------------------------------------------------------


def test_gaussian_canonical_and_arithmetic():
    a = GaussianRational(Fraction(2, 4), Fraction(-3, 6))
    assert (a.re, a.im) == (Fraction(1, 2), Fraction(-1, 2))
    assert a == GaussianRational("1/2", "-1/2")
    assert I * I == -1
    assert (1 + I) / (1 - I) == I
    assert a * a.inverse() == ONE
    assert (2 + 3 * I).conjugate() == 2 - 3 * I
    assert (2 + 3 * I).norm() == 13
    assert hash(GaussianRational(3)) == hash(Fraction(3))


def test_gaussian_rejects_floats():
    with pytest.raises(TypeError):
        as_gaussian(0.5)
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


# matrix products -------------------------------------------------------------


def test_identity_product():
    assert Matrix.identity(2) @ Matrix.identity(2) == Matrix.identity(2)


def test_adjoint_conjugates():
    a = Matrix.from_rows([[0, I], [0, 0]])
    assert mat_adjoint(a) == Matrix.from_rows([[0, 0], [-I, 0]])


def test_hadamard_scaled_unitary():
    m = Matrix.from_rows([[1, 1], [1, -1]])
    assert m.adjoint() @ m == Matrix.identity(2) * 2
    u = ScaledUnitary(m, 2)
    assert u.scale_sq == 2
    with pytest.raises(NotUnitaryError):
        ScaledUnitary(m, 1)
    with pytest.raises(ValueError):
        Matrix.identity(2) @ Matrix.identity(3)


def test_kron_examples():
    assert kron(Matrix.identity(2), Matrix.identity(2)) == Matrix.identity(4)
    z = Matrix.diag([1, -1])
    assert kron(z, z) == Matrix.diag([1, -1, -1, 1])


def test_kron_matches_definition(rng):
    for _ in range(20):
        a = Matrix.from_rows([[GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(2)] for _ in range(2)])
        b = Matrix.from_rows([[GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(3)] for _ in range(2)])
        k = kron(a, b)
        assert k.shape == (4, 6)
        for i in range(2):
            for j in range(2):
                for r in range(2):
                    for c in range(3):
                        assert k[i * 2 + r, j * 3 + c] == a[i, j] * b[r, c]


# characteristic polynomials ----------------------------------------------


def test_charpoly_examples():
    assert charpoly(Matrix.identity(2)) == (X - Polynomial([1])) ** 2
    z = Matrix.diag([1, -1])
    assert charpoly(kron(z, z)) == (X - Polynomial([1])) ** 2 * (X + Polynomial([1])) ** 2


@pytest.mark.parametrize("seed", range(25))
def test_charpoly_against_leibniz(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    rows = [[GaussianRational(rng.randint(-3, 3), rng.randint(-2, 2) * (seed % 2)) for _ in range(n)] for _ in range(n)]
    f = charpoly(Matrix.from_rows(rows))
    assert f.degree == n and f.leading() == ONE
    for t in range(n + 1):
        shifted = [[(t if i == j else 0) - rows[i][j] for j in range(n)] for i in range(n)]
        assert f(GaussianRational(t)) == leibniz_det(shifted)


def test_grover_charpoly_n8():
    # G = (2|psi0><psi0| - I) O has eigenvalue -1 on the complement of span{x, xi}
    g = build_grover(3, 5)
    one = Polynomial([1])
    expected = (X + one) ** 6 * Polynomial([1, Fraction(-3, 2), 1])
    assert charpoly(g.iteration) == expected
    # (x-1)^(N-2) (x^2 + 2(1-2/N) x + 1) is the characteristic polynomial of -G
    assert charpoly(-g.iteration) == (X - one) ** 6 * Polynomial([1, Fraction(3, 2), 1])


def test_charpoly_rejects_non_square():
    with pytest.raises(ValueError):
        charpoly(Matrix.zeros(2, 3))


# cyclotomic polynomials -----------------------------------------------------


def test_cyclotomic_small():
    assert cyclotomic(1) == Polynomial([-1, 1])
    assert cyclotomic(4) == Polynomial([1, 0, 1])
    assert cyclotomic(6) == Polynomial([1, -1, 1])
    with pytest.raises(ValueError):
        cyclotomic(0)


@pytest.mark.parametrize("n", [1, 2, 3, 12, 15, 30, 36, 60, 105])
def test_cyclotomic_matches_mobius_product(n):
    assert cyclotomic(n) == cyclotomic_by_mobius(n)


def test_cyclotomic_product_identity():
    for n in range(1, 61):
        prod = Polynomial([1])
        total = 0
        for d in range(1, n + 1):
            if n % d == 0:
                prod = prod * cyclotomic(d)
                total += cyclotomic(d).degree
        assert prod == X ** n - Polynomial([1])
        assert total == n


def test_poly_divides():
    one = Polynomial([1])
    f = (X - one) ** 2 * (X + one) ** 2
    assert poly_divides(X + one, f)
    assert not poly_divides(Polynomial([1, 0, 1]), f)
    assert f % Polynomial([1, 0, 1]) == Polynomial([4])
    with pytest.raises(ZeroDivisionError):
        poly_divides(Polynomial(), f)
    g = build_grover(3, 1).iteration
    assert poly_divides(X - one, charpoly(kron(g, g.adjoint())))


def test_polynomial_divmod_roundtrip(rng):
    for _ in range(30):
        a = Polynomial([GaussianRational(rng.randint(-4, 4), rng.randint(-4, 4)) for _ in range(rng.randint(1, 7))])
        b = Polynomial([GaussianRational(rng.randint(-4, 4), rng.randint(-1, 1)) for _ in range(rng.randint(1, 4))] + [1])
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.degree < b.degree


# kernels and subspaces -------------------------------------------------------


def test_kernel_examples():
    assert kernel_basis(Matrix.zeros(2)) == Subspace.full(2)
    assert kernel_basis(Matrix.identity(2)) == Subspace.zero(2)
    p = Matrix.from_rows([[h, h], [h, h]])
    assert kernel_basis(p) == Subspace.span([(1, -1)])


@pytest.mark.parametrize("seed", range(15))
def test_kernel_rank_nullity(seed):
    rng = random.Random(seed)
    r, c = rng.randint(1, 5), rng.randint(1, 5)
    base = [[GaussianRational(rng.randint(-2, 2), rng.randint(-1, 1)) for _ in range(c)] for _ in range(max(1, r - 2))]
    rows = base + [[sum((rng.randint(-1, 1) * b[j] for b in base), ZERO) for j in range(c)] for _ in range(r - len(base))]
    m = Matrix.from_rows(rows)
    k = kernel_basis(m)
    assert k.dim == c - m.rank()
    for v in k.vectors():
        assert not any(m.apply(v))


def test_intersection_examples():
    e = Matrix.identity(3).columns()
    assert subspace_intersect(Subspace.span([e[0], e[1]]), Subspace.span([e[1], e[2]])) == Subspace.span([e[1]])
    a = Subspace.span([(1, 2, 0), (0, 1, I)])
    assert a & a == a
    assert Subspace.span([(1, 1)]) & Subspace.span([(1, -1)]) == Subspace.zero(2)
    with pytest.raises(ValueError):
        Subspace.zero(2) & Subspace.zero(3)


def test_canonical_form_is_basis_independent():
    a = Subspace.span([(1, 1, 0), (0, 1, 1)])
    b = Subspace.span([(1, 2, 1), (1, 0, -1), (2, 2, 0)])
    assert a == b and hash(a) == hash(b)
    assert a.basis == a.canonical
    assert a.basis.col(0)[0] == ONE


def test_complement_projector_examples():
    assert complement_projector(Subspace.full(2)) == Matrix.zeros(2)
    assert complement_projector(Subspace.span([(1, 1)])) == Matrix.from_rows([[h, -h], [-h, h]])


def test_complement_projector_grover():
    g = build_grover(3, 2)
    expected = g.detector()
    q = complement_projector(g.span)
    assert q == expected
    N = 8
    for i in range(N):
        for j in range(N):
            if i == 2 or j == 2:
                want = Fraction(0)
            else:
                want = (1 if i == j else 0) - Fraction(1, N - 1)
            assert q[i, j] == want


gauss = st.builds(GaussianRational, st.integers(-2, 2), st.integers(-2, 2))


def subspaces(n):
    return st.lists(st.lists(gauss, min_size=n, max_size=n), max_size=n).map(lambda vs: Subspace(n, vs))


@settings(max_examples=60, deadline=None)
@given(subspaces(3))
def test_complement_projector_properties(v):
    q = complement_projector(v)
    assert q @ q == q
    assert q.adjoint() == q
    for b in v.vectors():
        assert not any(q.apply(b))
    assert q.rank() == v.dim_ambient - v.dim


@settings(max_examples=60, deadline=None)
@given(subspaces(3), subspaces(3), subspaces(3))
def test_intersection_lattice_laws(a, b, c):
    assert a & b == b & a
    assert (a & b) & c == a & (b & c)
    assert (a & b) <= a and (a & b) <= b
    # dim(A ∩ B) + dim(A + B) = dim A + dim B
    assert (a & b).dim + a.join(b).dim == a.dim + b.dim
    # monotone in each argument
    assert (a & b) <= (a.join(c) & b)


def test_orbit_examples():
    assert orbit(ScaledUnitary(Matrix.identity(2)), (1, 0), 3) == [(ONE, ZERO)] * 3
    z = ScaledUnitary.of([[1, 0], [0, -1]])
    assert orbit(z, (1, 1), 3) == [(ONE, ONE), (ONE, -ONE), (ONE, ONE)]
    with pytest.raises(ValueError):
        orbit(z, (0, 0), 2)


def test_orbit_grover_n4_reaches_target():
    g = build_grover(2, 3)
    states = orbit(g.unitary, g.uniform, 2)
    assert Subspace.span([states[1]]) == Subspace.span([g.target_state])
