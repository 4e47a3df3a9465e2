"""Time evolution and the ideal (dispersion-free) reference unitaries.

evolve computes exp(-iHt)|psi> either by dense eigendecomposition
(small dimensions, the test oracle) or by a Chebyshev expansion of the
propagator with certified coefficient-tail truncation.

ideal_translate shifts every rail's waveform by a (possibly fractional)
number of sites via momentum phases; ideal_gate_unitary combines that
translation with the exact per-component phases a gate block imprints.

A carrier-momentum N/4 packet under the hopping sign used here moves
toward decreasing site index at speed 2; DIRECTION records that sign
once so every ideal reference and every experiment agrees with evolve.
The propagation-direction test re-derives it from a small simulation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import jv

from .hamiltonian import DENSE_LIMIT, GateRegion, SparseHamiltonian
from .lattice import RingSystem, StateVector

# Sign of dx/dt for a p0 = +N/4 packet; the speed itself is 2.
DIRECTION = -1


class PropagationError(RuntimeError):
    """Iterative propagation could not reach the requested tolerance."""


@dataclass(frozen=True)
class PropagatorConfig:
    tol: float = 1e-10
    method: str = "iterative-polynomial"
    max_step: float | None = None

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.method not in ("iterative-polynomial", "dense-eigen"):
            raise ValueError(f"unknown method {self.method!r}")


def _chebyshev_coefficients(z: float, tol: float) -> np.ndarray:
    """Coefficients a_k with exp(-i*z*u) = sum_k a_k T_k(u) on [-1, 1],
    truncated so the dropped coefficient mass is below tol."""
    k_turn = int(abs(z))
    k_cap = k_turn + int(12.0 * (abs(z) + 4.0) ** (1.0 / 3.0)) + 60
    ks = np.arange(k_cap + 1)
    bessel = jv(ks, z)
    mags = 2.0 * np.abs(bessel)
    # tail[k] = coefficient mass strictly above k
    tail = np.cumsum(mags[::-1])[::-1] - mags
    usable = np.nonzero(tail <= 0.5 * tol)[0]
    if usable.size == 0:
        raise PropagationError(
            f"Chebyshev tail not below tol={tol} within {k_cap} terms "
            f"(z={z}, residual mass {tail[-1]:.3e})")
    K = int(usable[0])
    coeffs = ((-1j) ** ks[:K + 1]) * bessel[:K + 1]
    coeffs[1:] *= 2.0
    return coeffs


def _evolve_chebyshev(amps: np.ndarray, H: SparseHamiltonian, t: float,
                      tol: float) -> np.ndarray:
    radius = H.norm_bound()
    if radius == 0.0:
        return amps.astype(complex)
    coeffs = _chebyshev_coefficients(radius * t, tol)
    inv_r = 1.0 / radius
    u_prev = amps.astype(complex)
    acc = coeffs[0] * u_prev
    if len(coeffs) > 1:
        u_cur = inv_r * H.apply(u_prev)
        acc = acc + coeffs[1] * u_cur
        for a_k in coeffs[2:]:
            u_next = 2.0 * inv_r * H.apply(u_cur) - u_prev
            acc = acc + a_k * u_next
            u_prev, u_cur = u_cur, u_next
    return acc


def evolve(state: StateVector, H: SparseHamiltonian, t: float,
           cfg: PropagatorConfig | None = None) -> StateVector:
    """exp(-iHt)|state> within cfg.tol in 2-norm."""
    cfg = cfg or PropagatorConfig()
    if H.sys != state.ring:
        raise ValueError("state and Hamiltonian live on different ring systems")
    if t == 0.0:
        return state.copy()
    if cfg.method == "dense-eigen":
        w, V = H.eigensystem(DENSE_LIMIT)
        out = V @ (np.exp(-1j * w * t) * (V.conj().T @ state.amps))
        return StateVector(state.ring, out)
    n_steps = 1
    if cfg.max_step is not None and abs(t) > cfg.max_step:
        n_steps = math.ceil(abs(t) / cfg.max_step)
    amps = state.amps
    step_tol = cfg.tol / n_steps
    for _ in range(n_steps):
        amps = _evolve_chebyshev(amps, H, t / n_steps, step_tol)
    in_norm = np.linalg.norm(state.amps)
    drift = abs(np.linalg.norm(amps) - in_norm)
    if in_norm > 0 and drift > 10.0 * cfg.tol * in_norm + 1e-13:
        raise PropagationError(
            f"norm drift {drift:.3e} exceeds tolerance {cfg.tol:.3e}")
    return StateVector(state.ring, amps)


def _per_rail_momentum_phase(amps: np.ndarray, sys: RingSystem,
                             phases: np.ndarray) -> np.ndarray:
    """Multiply every rail's momentum coefficients by the given phases."""
    d, m, N = sys.digit, sys.m, sys.N
    T = amps.reshape((d,) * m).astype(complex)
    for ax in range(m):
        moved = np.moveaxis(T, ax, m - 1)
        shape = moved.shape
        waves = moved.reshape(-1, 2, N)
        coeff = np.fft.fft(waves, axis=-1)
        coeff *= phases
        waves = np.fft.ifft(coeff, axis=-1)
        T = np.moveaxis(waves.reshape(shape), m - 1, ax)
    return T.reshape(amps.shape)


def ideal_translate(state: StateVector, s: float) -> StateVector:
    """Shift every rail's waveform by s sites (s may be fractional).

    Momentum coefficient p picks up exp(-2i*pi*p*s/N), so a packet
    centered at x0 moves to x0 + s mod N.  Exactly unitary.
    """
    sys = state.ring
    phases = np.exp(-2j * np.pi * np.arange(sys.N) * s / sys.N)
    return StateVector(sys, _per_rail_momentum_phase(state.amps, sys, phases))


def ideal_gate_unitary(state: StateVector, block: list[GateRegion],
                       t: float) -> StateVector:
    """Translate a distance 2t along the travel direction and imprint the
    phases an extended version of each gate would apply over time t.

    Z on qubit q: factor exp(-i*phi*t) on components with the qubit-q
    excitation on rail 1.  X on qubit q: the rail pair rotates by
    exp(-i*phi*t*sigma_x).  CPHASE: exp(-i*phi*t) on components with
    both target excitations on rail 1.
    """
    sys = state.ring
    out = ideal_translate(state, 2.0 * t * DIRECTION)
    d, m, N = sys.digit, sys.m, sys.N
    T = out.amps.reshape((d,) * m)
    for region in block:
        if region.kind == "Z":
            ax = m - 1 - region.qubits[0]
            view = np.moveaxis(T, ax, 0)
            view[N:] *= np.exp(-1j * region.phi * t)
        elif region.kind == "X":
            ax = m - 1 - region.qubits[0]
            view = np.moveaxis(T, ax, 0)
            r0 = view[:N].copy()
            r1 = view[N:].copy()
            c, s = math.cos(region.phi * t), math.sin(region.phi * t)
            view[:N] = c * r0 - 1j * s * r1
            view[N:] = c * r1 - 1j * s * r0
        else:  # CPHASE
            ax1 = m - 1 - region.qubits[0]
            ax2 = m - 1 - region.qubits[1]
            view = np.moveaxis(T, (ax1, ax2), (0, 1))
            view[N:, N:] *= np.exp(-1j * region.phi * t)
    return out
