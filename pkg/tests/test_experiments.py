"""Scenario runners, decoding, CSV schema and reproducibility."""

import csv
import io
import math

import numpy as np
import pytest

from spinrings.compiler import LogicalCircuit, LogicalOp, compile_circuit
from spinrings.experiments import (CSV_COLUMNS, ConfigError, ExperimentConfig,
                                   all_satisfied, bit_string, decode,
                                   encoded_logical_state, ideal_logical_unitary,
                                   rows_to_csv, run_bounds_suite,
                                   run_compiled_circuit, run_dispersion_scaling,
                                   run_gate_phase, run_transient, write_csv)
from spinrings.hamiltonian import GateRegion, build_gate, build_ring
from spinrings.lattice import StateVector, inner_product
from spinrings.packets import tensor_encode
from spinrings.propagate import DIRECTION, PropagatorConfig, evolve


def _rz_circuit(theta=math.pi / 4):
    return LogicalCircuit(1, ((LogicalOp("RZ", theta, (0,)),),))


def test_bit_string_is_little_endian():
    assert bit_string(1, 2) == "10"
    assert bit_string(2, 2) == "01"
    assert bit_string(5, 3) == "101"


def test_ideal_logical_unitary_conventions():
    rz = ideal_logical_unitary(_rz_circuit(0.7))
    assert np.allclose(rz, np.diag([1.0, np.exp(0.7j)]))
    rx = ideal_logical_unitary(LogicalCircuit(1, ((LogicalOp("RX", 0.3, (0,)),),)))
    want = np.array([[math.cos(0.3), 1j * math.sin(0.3)],
                     [1j * math.sin(0.3), math.cos(0.3)]])
    assert np.allclose(rx, want)
    cp = ideal_logical_unitary(
        LogicalCircuit(2, ((LogicalOp("CPHASE", math.pi, (0, 1)),),)))
    assert np.allclose(cp, np.diag([1, 1, 1, -1]))


def test_decode_self_overlap():
    layout = compile_circuit(_rz_circuit(), 128)
    sys = layout.ring
    state = tensor_encode("1", layout.packet_spec, sys)
    logical, leakage = decode(state, layout, elapsed=0.0)
    assert abs(logical[1]) == pytest.approx(state.norm(), rel=1e-12)
    assert abs(logical[0]) < 1e-12
    assert leakage <= 1e-9


def test_decode_orthogonal_state_leaks_everything():
    layout = compile_circuit(_rz_circuit(), 128)
    sys = layout.ring
    state = StateVector(sys)
    x_far = (int(layout.packet_spec.x0) + 64) % 128
    state.amps[x_far] = 1.0  # a lone site excitation far from the packet
    logical, leakage = decode(state, layout, elapsed=0.0)
    assert np.max(np.abs(logical)) < 1e-6
    assert leakage == pytest.approx(1.0, abs=1e-9)


def test_decode_tracks_motion_and_extended_z_phase():
    layout = compile_circuit(_rz_circuit(), 128)
    sys = layout.ring
    spec = layout.packet_spec
    e0, e1 = tensor_encode("0", spec, sys), tensor_encode("1", spec, sys)
    psi = StateVector(sys, (e0.amps + e1.amps) / math.sqrt(2))
    phi, t = 0.05, 8.0
    H = build_ring(sys) + build_gate(GateRegion("Z", (0,), 0, 128, phi),
                                     sys, extended=True)
    out = evolve(psi, H, t, PropagatorConfig(tol=1e-12))
    logical, leakage = decode(out, layout, elapsed=t)
    assert leakage < 1e-3
    assert abs(logical[0]) == pytest.approx(abs(logical[1]), rel=1e-9)
    rel = np.angle(logical[1]) - np.angle(logical[0])
    assert abs((rel + phi * t + math.pi) % (2 * math.pi) - math.pi) < 1e-9


def test_dispersion_rows_monotone_and_bounded():
    cfg = ExperimentConfig(scenario="dispersion", n_values=(32, 64), m=1,
                           eps=(0.1, 0.15, 1 / 3), tol=1e-10)
    rows = run_dispersion_scaling(cfg)
    assert len(rows) == 6  # three times per size
    assert all_satisfied(rows)
    full = {r.N: r.measured_error for r in rows if r.t == r.N / 2.0}
    assert full[64] < full[32]
    zero = [r for r in rows if r.t == 0.0]
    assert all(r.measured_error <= cfg.tol for r in zero)


def test_dispersion_rejects_multi_qubit():
    with pytest.raises(ConfigError):
        run_dispersion_scaling(ExperimentConfig(scenario="dispersion", m=2))


def test_transient_rows_linear_in_phi():
    cfg = ExperimentConfig(scenario="transient", n_values=(64,),
                           phi_values=(0.005, 0.01, 0.02))
    rows = run_transient(cfg)
    assert len(rows) == 3
    assert all_satisfied(rows)
    errs = {r.phi: r.measured_error for r in rows}
    gain1 = errs[0.01] - errs[0.005]
    gain2 = errs[0.02] - errs[0.01]
    assert gain2 == pytest.approx(2 * gain1, rel=0.1)


def test_zero_strength_gates_leave_no_phase():
    from spinrings.experiments import _extended_phase_rows
    for row in _extended_phase_rows(32, 0.0, tol=1e-12):
        assert row.measured_error <= 1e-10


def test_gate_phase_rows_hit_tolerance():
    cfg = ExperimentConfig(scenario="gates", n_values=(32,), phi_values=(0.05,),
                           tol=1e-12)
    rows = run_gate_phase(cfg)
    by_name = {r.scenario for r in rows}
    assert {"gates-extended-Z", "gates-extended-X", "gates-extended-CPHASE",
            "gates-localized-block"} <= by_name
    assert all_satisfied(rows)
    for r in rows:
        if r.scenario.startswith("gates-extended"):
            assert r.measured_error <= 1e-9


def test_bounds_suite_rows():
    cfg = ExperimentConfig(scenario="bounds-suite", n_values=(128,), seed=5)
    rows = run_bounds_suite(cfg)
    names = {r.scenario for r in rows}
    assert names == {"bounds-matrix-exp", "bounds-hybrid", "bounds-sum",
                     "bounds-far-gate"}
    assert all_satisfied(rows)


def test_circuit_run_small():
    cfg = ExperimentConfig(scenario="circuit", n_values=(128, 256), tol=1e-10)
    rows = run_compiled_circuit(_rz_circuit(), cfg)
    assert len(rows) == 2
    assert all_satisfied(rows)
    fids = {r.N: r.fidelity for r in rows}
    assert fids[256] >= fids[128] - 1e-3
    assert fids[256] > 0.98


def test_encoded_logical_state_matches_decode():
    layout = compile_circuit(_rz_circuit(), 128)
    coeffs = np.array([1.0, 1j]) / math.sqrt(2)
    state = encoded_logical_state(coeffs, layout.packet_spec, layout.ring)
    logical, leakage = decode(state, layout, 0.0)
    norm1 = tensor_encode("0", layout.packet_spec, layout.ring).norm()
    assert leakage < 1e-9
    assert np.allclose(logical / norm1, coeffs, atol=1e-9)


def test_csv_header_and_reproducibility(tmp_path):
    cfg = ExperimentConfig(scenario="dispersion", n_values=(32,), m=1)
    text1 = rows_to_csv(run_dispersion_scaling(cfg))
    text2 = rows_to_csv(run_dispersion_scaling(cfg))
    lines1 = text1.splitlines()
    assert lines1[0] == "scenario,N,m,g,t,delta_p,phi,measured_error,bound_value,fidelity,runtime_seconds"
    strip = lambda text: [row[:-1] for row in csv.reader(io.StringIO(text))]
    assert strip(text1) == strip(text2)  # identical apart from runtime
    out = tmp_path / "rows.csv"
    write_csv(run_dispersion_scaling(cfg), str(out))
    assert out.read_text().splitlines()[0] == lines1[0]


def test_config_validation():
    with pytest.raises(ConfigError):
        ExperimentConfig(scenario="nope")
    with pytest.raises(ConfigError):
        ExperimentConfig(n_values=(30,))
    with pytest.raises(ConfigError):
        ExperimentConfig(tol=0.0)
