"""Evolution, translation, and the translate-plus-phase ideal unitaries."""

import math

import numpy as np
import pytest

from oracle_cases import oracle_instances, random_state
from spinrings.hamiltonian import GateRegion, build_gate, build_ring
from spinrings.lattice import RingSystem, StateVector, inner_product
from spinrings.packets import PacketSpec, make_packet, phase_distance, tensor_encode
from spinrings.propagate import (DIRECTION, PropagatorConfig, evolve,
                                 ideal_gate_unitary, ideal_translate)


def test_zero_time_is_identity():
    sys = RingSystem(16, 1)
    psi = random_state(sys, 0)
    out = evolve(psi, build_ring(sys), 0.0)
    assert np.array_equal(out.amps, psi.amps)
    assert out.amps is not psi.amps


def test_momentum_eigenstate_gets_pure_phase():
    sys = RingSystem(16, 1)
    spec = PacketSpec.from_delta_p(16, 4.0, x0=8.0)
    H = build_ring(sys)
    p = 5
    wave = np.exp(2j * np.pi * p * np.arange(16) / 16) / 4.0
    amps = np.zeros(32, dtype=complex)
    amps[:16] = wave
    psi = StateVector(sys, amps)
    t = 2.3
    out = evolve(psi, H, t, PropagatorConfig(tol=1e-12))
    expected = np.exp(-1j * 2.0 * math.cos(2 * math.pi * p / 16) * t) * amps
    assert np.linalg.norm(out.amps - expected) < 1e-11
    assert np.allclose(np.abs(out.amps), np.abs(amps), atol=1e-11)


@pytest.mark.parametrize("label,sys,H,t", oracle_instances(),
                         ids=[c[0] for c in oracle_instances()])
def test_iterative_matches_dense_oracle(label, sys, H, t):
    tol = 1e-10
    psi = random_state(sys, 42)
    fast = evolve(psi, H, t, PropagatorConfig(tol=tol))
    slow = evolve(psi, H, t, PropagatorConfig(tol=tol, method="dense-eigen"))
    assert np.linalg.norm(fast.amps - slow.amps) <= 10 * tol


def test_evolve_preserves_norm():
    sys = RingSystem(32, 1)
    H = build_ring(sys)
    psi = random_state(sys, 9)
    for t in (0.4, 7.7, 31.0):
        out = evolve(psi, H, t, PropagatorConfig(tol=1e-11))
        assert abs(out.norm() - 1.0) < 1e-10


def test_evolve_max_step_splitting_agrees():
    sys = RingSystem(16, 1)
    H = build_ring(sys)
    psi = random_state(sys, 3)
    whole = evolve(psi, H, 5.0, PropagatorConfig(tol=1e-12))
    split = evolve(psi, H, 5.0, PropagatorConfig(tol=1e-12, max_step=0.7))
    assert np.linalg.norm(whole.amps - split.amps) < 1e-10


def test_translate_periodicity_and_inverse():
    sys = RingSystem(16, 1)
    psi = random_state(sys, 1)
    full = ideal_translate(psi, 16.0)
    assert np.linalg.norm(full.amps - psi.amps) < 1e-12
    back = ideal_translate(ideal_translate(psi, 2.5), -2.5)
    assert np.linalg.norm(back.amps - psi.amps) < 1e-12
    assert abs(ideal_translate(psi, 0.37).norm() - 1.0) < 1e-12


def test_translate_moves_packet_center():
    N = 128
    sys = RingSystem(N, 1)
    spec = PacketSpec.from_delta_p(N, float(N) ** 0.5, x0=10.0)
    psi = tensor_encode("0", spec, sys)
    moved = ideal_translate(psi, 2.5)
    assert int(np.argmax(np.abs(moved.amps[:N]))) in (12, 13)
    rebuilt = tensor_encode("0", spec.shifted(2.5), sys)
    overlap = abs(inner_product(rebuilt, moved))
    assert overlap == pytest.approx(rebuilt.norm() ** 2, rel=5e-3)


def test_propagation_direction_and_speed():
    # re-derives the sign stored in DIRECTION from a small simulation
    N = 64
    sys = RingSystem(N, 1)
    spec = PacketSpec.from_delta_x(N, float(N) ** (1 / 3), x0=float(N // 2))
    psi = tensor_encode("0", spec, sys)
    t = N / 8.0
    out = evolve(psi, build_ring(sys), t, PropagatorConfig(tol=1e-10))
    peak = int(np.argmax(np.abs(out.amps[:N])))
    expected = (N // 2 + DIRECTION * int(2 * t)) % N
    assert min(abs(peak - expected), N - abs(peak - expected)) <= 1


def test_empty_block_is_pure_translation():
    sys = RingSystem(16, 1)
    psi = random_state(sys, 7)
    a = ideal_gate_unitary(psi, [], 1.3)
    b = ideal_translate(psi, 2.6 * DIRECTION)
    assert np.array_equal(a.amps, b.amps)


def test_z_block_leaves_encoded_zero_alone():
    sys = RingSystem(32, 1)
    spec = PacketSpec.from_delta_x(32, 32 ** (1 / 3), x0=16.0)
    psi = tensor_encode("0", spec, sys)
    block = [GateRegion("Z", (0,), 4, 8, 0.3)]
    gated = ideal_gate_unitary(psi, block, 2.0)
    plain = ideal_translate(psi, 4.0 * DIRECTION)
    assert np.linalg.norm(gated.amps - plain.amps) < 1e-12


def test_z_block_half_turn_flips_plus_to_minus():
    N = 64
    sys = RingSystem(N, 1)
    spec = PacketSpec.from_delta_x(N, float(N) ** (1 / 3), x0=float(N // 2))
    e0, e1 = tensor_encode("0", spec, sys), tensor_encode("1", spec, sys)
    plus = StateVector(sys, (e0.amps + e1.amps) / math.sqrt(2))
    t = 4.0
    phi = math.pi / t
    out = ideal_gate_unitary(plus, [GateRegion("Z", (0,), 0, N, phi)], t)
    shifted = spec.shifted(2 * t * DIRECTION)
    minus = StateVector(sys, (tensor_encode("0", shifted, sys).amps
                              - tensor_encode("1", shifted, sys).amps) / math.sqrt(2))
    assert phase_distance(out.amps, minus.amps) < 1e-10


def test_z_block_matches_extended_gate_evolution_relative_phase():
    # the potential part of the ideal unitary reproduces the true encoded
    # phase; only translation-side dispersion separates the two
    N = 32
    sys = RingSystem(N, 1)
    spec = PacketSpec.from_delta_x(N, float(N) ** (1 / 3), x0=float(N // 2))
    e0, e1 = tensor_encode("0", spec, sys), tensor_encode("1", spec, sys)
    plus = StateVector(sys, (e0.amps + e1.amps) / math.sqrt(2))
    t, phi = 4.0, 0.19
    region = GateRegion("Z", (0,), 0, N, phi)
    H = build_ring(sys) + build_gate(region, sys, extended=True)
    sim = evolve(plus, H, t, PropagatorConfig(tol=1e-12))
    shifted = spec.shifted(2 * t * DIRECTION)
    refs = [tensor_encode(b, shifted, sys) for b in "01"]
    rel_sim = (np.angle(inner_product(refs[1], sim))
               - np.angle(inner_product(refs[0], sim)))
    assert abs((rel_sim + phi * t + math.pi) % (2 * math.pi) - math.pi) < 1e-9


def test_x_block_rotates_rail_pair():
    N = 32
    sys = RingSystem(N, 1)
    spec = PacketSpec.from_delta_x(N, float(N) ** (1 / 3), x0=16.0)
    e0 = tensor_encode("0", spec, sys)
    t, phi = 3.0, 0.4
    out = ideal_gate_unitary(e0, [GateRegion("X", (0,), 0, N, phi)], t)
    shifted = spec.shifted(2 * t * DIRECTION)
    want = (math.cos(phi * t) * tensor_encode("0", shifted, sys).amps
            - 1j * math.sin(phi * t) * tensor_encode("1", shifted, sys).amps)
    # the translated state keeps the original center's global carrier phase
    assert phase_distance(out.amps, want) < 1e-12


def test_cphase_block_phases_11_only():
    N = 16
    sys = RingSystem(N, 2)
    spec = PacketSpec.from_delta_x(N, float(N) ** (1 / 3), x0=8.0)
    amps = sum(tensor_encode(b, spec, sys).amps for b in ("00", "01", "10", "11"))
    psi = StateVector(sys, amps / 2.0)
    t, phi = 2.0, 0.3
    out = ideal_gate_unitary(psi, [GateRegion("CPHASE", (0, 1), 0, N, phi,
                                              band_width=1)], t)
    shifted = spec.shifted(2 * t * DIRECTION)
    want = sum(np.exp(-1j * phi * t * (b == "11")) *
               tensor_encode(b, shifted, sys).amps
               for b in ("00", "01", "10", "11")) / 2.0
    assert phase_distance(out.amps, want) < 1e-12


def test_extended_gate_error_is_dispersion_only():
    # with ring-wide gates the only gap to the ideal is free dispersion
    N = 64
    sys = RingSystem(N, 1)
    spec = PacketSpec.from_delta_x(N, float(N) ** (1 / 3), x0=float(N // 2))
    e0, e1 = tensor_encode("0", spec, sys), tensor_encode("1", spec, sys)
    plus = StateVector(sys, (e0.amps + e1.amps) / math.sqrt(2))
    t, phi = 6.0, 0.11
    region = GateRegion("Z", (0,), 0, N, phi)
    H = build_ring(sys) + build_gate(region, sys, extended=True)
    gated_err = phase_distance(
        evolve(plus, H, t, PropagatorConfig(tol=1e-12)).amps,
        ideal_gate_unitary(plus, [region], t).amps)
    free_err = phase_distance(
        evolve(plus, build_ring(sys), t, PropagatorConfig(tol=1e-12)).amps,
        ideal_translate(plus, 2 * t * DIRECTION).amps)
    assert gated_err == pytest.approx(free_err, rel=1e-6, abs=1e-12)
