"""Bound formulas and their brute-force verifiers."""

import math

import numpy as np
import pytest

from spinrings.bounds import (GaussianSpec, dispersion_bound, far_gate_residual,
                              hybrid_argument_check, matrix_exp_sensitivity_check,
                              sum_bound_check, transient_bound, trotter_error_bound)
from spinrings.hamiltonian import GateRegion, SparseHamiltonian, build_gate
from spinrings.lattice import RingSystem
from spinrings.packets import PacketSpec, tensor_encode


def test_dispersion_bound_shape():
    assert dispersion_bound(0.0, 8.0, 64, 1, 2.0) == 0.0
    one = dispersion_bound(3.0, 8.0, 64, 1, 2.0)
    assert dispersion_bound(3.0, 8.0, 64, 2, 2.0) == pytest.approx(2 * one)
    assert one == pytest.approx(2.0 * 3.0 * 512 / 64 ** 3)


def test_transient_bound_shape():
    disp_only = transient_bound(1, 4.0, 0.0, 8.0, 64, 5.0, 2.0)
    assert disp_only == pytest.approx(dispersion_bound(4.0, 8.0, 64, 1, 2.0))
    b1 = transient_bound(1, 4.0, 0.01, 8.0, 64, 5.0, 2.0)
    b2 = transient_bound(1, 8.0, 0.01, 8.0, 64, 5.0, 2.0)
    assert b2 == pytest.approx(2 * b1)


def test_trotter_bound_limits():
    Cs = (1.0, 1.0, 1.0, 1.0)
    assert trotter_error_bound(1, 0.0, 100, 100, 8.0, 64, 12.0, 4.0, Cs) == 0.0
    finite = trotter_error_bound(1, 2.0, 10, 10, 8.0, 64, 12.0, 4.0, Cs)
    huge_n = trotter_error_bound(1, 2.0, 10 ** 12, 10 ** 12, 8.0, 64, 12.0, 4.0, Cs)
    survivors = (64 ** 2 * 2.0 * math.exp(-144 / 32.0)
                 + dispersion_bound(2.0, 8.0, 64, 1, 1.0))
    assert huge_n == pytest.approx(survivors)
    assert finite > huge_n


def test_matrix_exp_zero_perturbation():
    reports = matrix_exp_sensitivity_check(dim=4, trials=3, seed=1)
    assert all(r.satisfied for r in reports)
    # explicit scalar case: A = 0, E = i*eps*I
    from spinrings.bounds import _expm_skew
    eps, t = 0.3, 1.7
    E = 1j * eps * np.eye(3)
    lhs = np.linalg.norm(_expm_skew(E, t) - np.eye(3), 2)
    assert lhs == pytest.approx(abs(np.exp(1j * eps * t) - 1))
    assert lhs <= eps * t * math.exp(eps * t)


def test_matrix_exp_hundred_trials_clean():
    reports = matrix_exp_sensitivity_check(dim=16, trials=100, seed=42)
    assert len(reports) == 100
    assert all(r.satisfied for r in reports)


def test_hybrid_single_factor_is_tight():
    rng = np.random.default_rng(0)
    from spinrings.experiments import _haar_unitary
    U, V = _haar_unitary(rng, 6), _haar_unitary(rng, 6)
    psi = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    psi /= np.linalg.norm(psi)
    rep = hybrid_argument_check([U], [V], psi)
    assert rep.measured_value == pytest.approx(rep.bound_value, rel=1e-12)
    ident = hybrid_argument_check([U, U], [U, U], psi)
    assert ident.measured_value == pytest.approx(0.0, abs=1e-14)
    assert ident.satisfied


def test_hybrid_random_products():
    rng = np.random.default_rng(11)
    from spinrings.experiments import _haar_unitary
    for _ in range(20):
        Us = [_haar_unitary(rng, 8) for _ in range(5)]
        Vs = [_haar_unitary(rng, 8) for _ in range(5)]
        psi = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        psi /= np.linalg.norm(psi)
        assert hybrid_argument_check(Us, Vs, psi).satisfied


def test_hybrid_shape_mismatch():
    with pytest.raises(ValueError):
        hybrid_argument_check([np.eye(4)], [np.eye(3)], np.ones(4))


def test_sum_bound_gaussians():
    assert sum_bound_check(GaussianSpec(center=16.0, width=8.0), 64).satisfied
    assert sum_bound_check(GaussianSpec(center=32.0, width=10.0), 64).satisfied
    # sharply peaked: the sum collapses to at most f_max above the integral
    rep = sum_bound_check(GaussianSpec(center=10.0, width=0.05), 64)
    assert rep.satisfied
    assert rep.measured_value <= rep.parameters["upper"]


def test_far_gate_residual_cases():
    N = 128
    sys = RingSystem(N, 1)
    dx = float(N) ** (1 / 3)
    spec = PacketSpec.from_delta_x(N, dx, x0=float(N // 2))
    psi = tensor_encode("1", spec, sys).normalized()
    phi = 0.05

    empty = SparseHamiltonian(sys)
    assert far_gate_residual(psi, empty) == 0.0

    on_top = build_gate(GateRegion("Z", (0,), N // 2 - 8, 16, phi), sys)
    assert far_gate_residual(psi, on_top) == pytest.approx(phi, rel=5e-2)

    d = int(round(3 * dx))
    far = build_gate(GateRegion("Z", (0,), (N // 2 + d) % N, 16, phi), sys)
    resid = far_gate_residual(psi, far)
    envelope = phi * N * math.exp(-d ** 2 / (2 * dx ** 2)) * 10
    assert 0.0 < resid <= envelope


def test_far_gate_residual_superpolynomial_decay():
    # at a literally constant d/dx the exponential factor is scale-free, so
    # the meaningful decay claim has the gap ratio growing with N (as the
    # compiled geometry's d/dx = N**eps1 does); then successive residual
    # ratios fall below any fixed power of N
    phi = 0.05
    dx = 4.0
    resids = []
    sizes = (64, 128, 256, 512)
    for N in sizes:
        sys = RingSystem(N, 1)
        spec = PacketSpec.from_delta_x(N, dx, x0=float(N // 2))
        psi = tensor_encode("1", spec, sys).normalized()
        d = int(round(3 * dx * math.sqrt(N / 64)))
        far = build_gate(GateRegion("Z", (0,), (N // 2 + d) % N, N // 4, phi), sys)
        resids.append(far_gate_residual(psi, far))
    ratios = [resids[i + 1] / resids[i] for i in range(3)]
    assert all(r < 2.0 ** -6 for r in ratios)  # beats N**-6 at every doubling
    # a power law keeps a constant doubling ratio; here it keeps collapsing
    assert all(ratios[i + 1] < ratios[i] / 4 for i in range(2))
