"""Periodic Gaussian wavepackets and the finite Fourier transform.

A packet on an N-site ring is a Gaussian envelope wrapped around the
ring (sum over wrap copies) riding on a plane-wave carrier at momentum
p0 = N/4, where the group velocity is stationary.  Position width dx
and momentum width dp are tied by 2*pi*dx*dp = N.

The same packet can be synthesized from its position samples or from
its momentum coefficients.  The two are exact finite-Fourier pairs once
two pieces of phase bookkeeping are tracked: each momentum wrap copy
alpha carries a phase exp(-2i*pi*alpha*x0) (nontrivial for fractional
centers x0), and the whole momentum sum carries a global factor
exp(2i*pi*p0*x0/N).  With both in place the constructions agree to
machine precision; dropping them costs only wrap-tail weight, which
vanishes for large N but is visible at small N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lattice import RingSystem, StateVector

# Single-rail amplitude vector of length N.
RailWave = np.ndarray

PAIRING_RTOL = 1e-12


@dataclass(frozen=True)
class PacketSpec:
    """Parameters of one N-periodic Gaussian packet.

    x0 may be fractional; p0 defaults to N/4; delta_x and delta_p must
    satisfy 2*pi*delta_x*delta_p = N.  wrap_cutoff bounds the wrap sum
    |alpha| <= wrap_cutoff (3 wraps put the dropped terms far below
    1e-14 for any width that fits on the ring).
    """

    N: int
    x0: float
    delta_p: float
    delta_x: float
    p0: int
    wrap_cutoff: int = 3

    def __post_init__(self):
        if self.N < 8 or self.N % 4 != 0:
            raise ValueError(f"packet ring size must be a multiple of 4, >= 8 (got {self.N})")
        if self.delta_p <= 0 or self.delta_x <= 0:
            raise ValueError("widths must be positive")
        prod = 2.0 * math.pi * self.delta_x * self.delta_p
        if abs(prod - self.N) > PAIRING_RTOL * self.N:
            raise ValueError(
                f"width pairing violated: 2*pi*dx*dp = {prod!r}, expected N = {self.N}"
            )
        if self.wrap_cutoff < 1:
            raise ValueError("wrap_cutoff must be >= 1")

    @classmethod
    def from_delta_p(cls, N: int, delta_p: float, x0: float = 0.0,
                     p0: int | None = None, wrap_cutoff: int = 3) -> "PacketSpec":
        dx = N / (2.0 * math.pi * delta_p)
        return cls(N, x0, delta_p, dx, N // 4 if p0 is None else p0, wrap_cutoff)

    @classmethod
    def from_delta_x(cls, N: int, delta_x: float, x0: float = 0.0,
                     p0: int | None = None, wrap_cutoff: int = 3) -> "PacketSpec":
        dp = N / (2.0 * math.pi * delta_x)
        return cls(N, x0, dp, delta_x, N // 4 if p0 is None else p0, wrap_cutoff)

    @classmethod
    def default(cls, N: int, x0: float = 0.0) -> "PacketSpec":
        """Default width delta_p = N**(2/3)."""
        return cls.from_delta_p(N, float(N) ** (2.0 / 3.0), x0)

    def shifted(self, s: float) -> "PacketSpec":
        """Same packet with the center moved by s (mod N)."""
        return PacketSpec(self.N, (self.x0 + s) % self.N, self.delta_p,
                          self.delta_x, self.p0, self.wrap_cutoff)


def finite_fourier(A: np.ndarray, direction: str = "forward") -> np.ndarray:
    """Unitary finite Fourier transform.

    forward: a_p = N**-0.5 * sum_x A_x exp(-2i*pi*p*x/N); inverse undoes it.
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim != 1 or A.size == 0:
        raise ValueError("expected a nonempty 1-d array")
    n = A.size
    if direction == "forward":
        return np.fft.fft(A) / math.sqrt(n)
    if direction == "inverse":
        return np.fft.ifft(A) * math.sqrt(n)
    raise ValueError(f"direction must be 'forward' or 'inverse' (got {direction!r})")


def make_packet(spec: PacketSpec, sys: RingSystem, basis: str = "position") -> RailWave:
    """Build one packet (length-N amplitude vector on a single rail).

    basis='position' evaluates the wrapped Gaussian times the carrier on
    the sites; basis='momentum' builds the wrapped momentum Gaussian and
    carries it back by the inverse finite Fourier transform.  The two
    agree to machine precision (see module docstring).
    """
    if sys.N != spec.N:
        raise ValueError(f"spec is for N={spec.N}, system has N={sys.N}")
    N, x0, p0 = spec.N, spec.x0, spec.p0
    alphas = range(-spec.wrap_cutoff, spec.wrap_cutoff + 1)
    if basis == "position":
        x = np.arange(N)
        env = np.zeros(N)
        for a in alphas:
            env = env + np.exp(-((a * N + x - x0) ** 2) / (2.0 * spec.delta_x ** 2))
        wave = np.exp(2j * np.pi * p0 * x / N) * env
        return wave / math.sqrt(spec.delta_x * math.sqrt(math.pi))
    if basis == "momentum":
        p = np.arange(N)
        acc = np.zeros(N, dtype=complex)
        for a in alphas:
            acc = acc + (np.exp(-2j * np.pi * a * x0)
                         * np.exp(-((a * N + p - p0) ** 2) / (2.0 * spec.delta_p ** 2)))
        coeff = (np.exp(2j * np.pi * p0 * x0 / N)
                 * np.exp(-2j * np.pi * p * x0 / N) * acc)
        coeff /= math.sqrt(spec.delta_p * math.sqrt(math.pi))
        return finite_fourier(coeff, "inverse")
    raise ValueError(f"basis must be 'position' or 'momentum' (got {basis!r})")


def packet_norm_bounds(spec: PacketSpec) -> tuple[float, float]:
    """Band 1 -+ 1/(dp*sqrt(pi)) that the squared norm of a packet sits in."""
    half = 1.0 / (spec.delta_p * math.sqrt(math.pi))
    return 1.0 - half, 1.0 + half


def tensor_encode(bits: str, spec: PacketSpec, sys: RingSystem) -> StateVector:
    """Encode a computational basis string as packets on the chosen rails.

    Qubit b gets the packet on rail bits[b] and vacuum on the partner
    rail.  bits may be a str like "01" or any 0/1 sequence; bits[0] is
    qubit 0.  Superpositions are formed by the caller adding results.
    """
    vals = [int(c) for c in bits]
    if len(vals) != sys.m:
        raise ValueError(f"bit string has length {len(vals)}, system has m={sys.m}")
    if any(v not in (0, 1) for v in vals):
        raise ValueError("bits must be 0 or 1")
    wave = make_packet(spec, sys, "position")
    amps = np.ones(1, dtype=complex)
    for b in range(sys.m - 1, -1, -1):
        digit = np.zeros(sys.digit, dtype=complex)
        digit[vals[b] * sys.N:(vals[b] + 1) * sys.N] = wave
        amps = np.kron(amps, digit)
    return StateVector(sys, amps)


def phase_aligned(reference: np.ndarray, wave: np.ndarray) -> np.ndarray:
    """Rotate wave by a global phase so its largest-|.| entry matches reference's."""
    k = int(np.argmax(np.abs(reference)))
    if wave[k] == 0 or reference[k] == 0:
        return wave.copy()
    rot = (reference[k] / abs(reference[k])) * (abs(wave[k]) / wave[k])
    return wave * rot


def phase_distance(u: np.ndarray, v: np.ndarray) -> float:
    """2-norm distance between u and v minimized over a global phase on v."""
    c = np.vdot(u, v)
    if c == 0:
        return float(np.sqrt(np.real(np.vdot(u, u)) + np.real(np.vdot(v, v))))
    return float(np.linalg.norm(u - (np.conj(c) / abs(c)) * v))
