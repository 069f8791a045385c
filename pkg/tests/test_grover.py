from fractions import Fraction

import numpy as np
import pytest

from qdebug.algebra import ONE, ZERO, Matrix, Subspace, orbit
from qdebug.grover import (
    basis_swap,
    build_grover,
    grover_q_bound,
    hadamard_layer,
    phase_flip,
)
from qdebug.protocols import synthesize_protocols
from qdebug.sml import find_p


def sampled_q(inst, gprime, grid=721, rounds=4):
    """Maximise |<x|G'psi>|^2 + |<xi^|G'psi>|^2 over psi = cos t x^ + e^{ip} sin t xi^ by zooming grids."""
    N = inst.N
    x = np.zeros(N)
    x[inst.target] = 1
    xi = np.array([float(v.re) for v in inst.xi]) / np.sqrt(N - 1)
    g = np.array([[complex(v) for v in row] for row in gprime.mat.to_rows()]) / np.sqrt(float(gprime.scale_sq))
    gx, gxi = g @ x, g @ xi

    def value(t, p):
        t, p = np.meshgrid(t, p, indexing="ij")
        out = np.cos(t)[..., None] * gx + (np.exp(1j * p) * np.sin(t))[..., None] * gxi
        return np.abs(out @ x) ** 2 + np.abs(out @ xi) ** 2

    lo_t, hi_t, lo_p, hi_p = 0.0, np.pi, 0.0, 2 * np.pi
    best = 0.0
    for _ in range(rounds):
        ts, ps = np.linspace(lo_t, hi_t, grid), np.linspace(lo_p, hi_p, grid)
        v = value(ts, ps)
        i, j = np.unravel_index(np.argmax(v), v.shape)
        best = max(best, float(v[i, j]))
        dt, dp = 4 * (hi_t - lo_t) / grid, 4 * (hi_p - lo_p) / grid
        lo_t, hi_t, lo_p, hi_p = ts[i] - dt, ts[i] + dt, ps[j] - dp, ps[j] + dp
    return best


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_oracle_and_iteration(n):
    g = build_grover(n, (1 << n) - 1)
    N = g.N
    assert g.oracle @ g.oracle == Matrix.identity(N)
    for k in range(N):
        e = tuple(ONE if i == k else ZERO for i in range(N))
        assert g.oracle.apply(e) == tuple(-v if k == g.target else v for v in e)
    assert g.iteration.adjoint() @ g.iteration == Matrix.identity(N)
    assert g.span.image(g.iteration) == g.span
    assert g.xi[g.target] == 0 and sum(v.re for v in g.xi) == N - 1


def test_entries_are_small_rationals():
    g = build_grover(3, 6)
    allowed = {Fraction(s * v) for s in (1, -1) for v in (Fraction(1, 4), Fraction(3, 4))}
    assert {e.re for e in g.iteration.entries} <= allowed and g.iteration.is_real()


def test_n4_single_iteration_is_exact():
    g = build_grover(2, 1)
    psi1 = orbit(g.unitary, g.uniform, 2)[1]
    assert Subspace.span([psi1]) == Subspace.span([g.target_state])


def test_build_rejects_bad_arguments():
    with pytest.raises(ValueError):
        build_grover(3, 8)
    with pytest.raises(ValueError):
        build_grover(0, 0)
    with pytest.raises(ValueError):
        build_grover(7, 0)


def test_helper_gates():
    hd = hadamard_layer(2)
    assert hd.scale_sq == 4 and hd.power(2).mat == Matrix.identity(4) * 4
    assert phase_flip(4, 2).mat == Matrix.diag([1, 1, -1, 1])
    sw = basis_swap(4, 0, 3).mat
    assert sw.apply((1, 2, 3, 4)) == (4, 2, 3, 1)


@pytest.mark.parametrize("x", [0, 5])
def test_q_is_one_for_span_preserving_gprime(x):
    g = build_grover(3, x)
    q = grover_q_bound(g, g.unitary)
    assert q.lower <= 1 <= q.upper and q.value == pytest.approx(1.0, abs=1e-15)
    z = (x + 3) % 8
    # G^{-1}|x> lies in the span and Z_z fixes |x>, so the bound stays 1
    q = grover_q_bound(g, phase_flip(8, z) @ g.unitary)
    assert q.lower <= 1 <= q.upper
    assert abs(sampled_q(g, phase_flip(8, z) @ g.unitary) - 1) < 1e-6


@pytest.mark.parametrize("x,y,z", [(5, 0, 3), (0, 7, 1), (2, 1, 6)])
def test_q_below_one_matches_sampling(x, y, z):
    g = build_grover(3, x)
    gp = phase_flip(8, z) @ basis_swap(8, x, y) @ g.unitary
    q = grover_q_bound(g, gp)
    assert q.lower <= q.upper < 1
    assert q.upper - q.lower < Fraction(1, 10 ** 25)
    assert abs(q.value - sampled_q(g, gp)) < 1e-6


@pytest.mark.parametrize("y", [0, 3])
def test_swap_bound_matches_sampling(y):
    g = build_grover(3, 6)
    gp = basis_swap(8, 6, y) @ g.unitary
    assert abs(grover_q_bound(g, gp).value - sampled_q(g, gp)) < 1e-6


def test_q_bound_on_n4_instance():
    g = build_grover(4, 9)
    gp = phase_flip(16, 2) @ basis_swap(16, 9, 4) @ g.unitary
    q = grover_q_bound(g, gp)
    assert q.upper < 1 and abs(q.value - sampled_q(g, gp)) < 1e-6


@pytest.mark.parametrize("x", range(8))
def test_synthesis_n3(x):
    g = build_grover(3, x)
    protos = synthesize_protocols(g.unitary, g.uniform)
    assert len(protos) == 1
    (pr,) = protos
    assert (pr.period, pr.residue, pr.annihilated.dim) == (1, 0, 2)
    assert pr.detector == g.detector()


@pytest.mark.slow
@pytest.mark.parametrize("x", range(16))
def test_synthesis_n4(x):
    g = build_grover(4, x)
    cert = find_p(g.unitary, method="power_sums")
    assert cert.p == 1
    (pr,) = synthesize_protocols(g.unitary, g.uniform, certificate=cert)
    assert (pr.period, pr.residue) == (1, 0)
    assert pr.annihilated == g.span
    assert pr.detector == g.detector()
    off = Fraction(-1, 15)
    for i in range(16):
        for j in range(16):
            if i != x and j != x:
                assert pr.detector[i, j] == (1 + off if i == j else off)
