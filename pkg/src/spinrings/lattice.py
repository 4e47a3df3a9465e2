"""Ring geometry and the dual-rail sector basis.

Each logical qubit lives on a pair of periodic rails of N sites.  The
simulator never touches the full spin Hilbert space: it works in the
sector with exactly one excitation per rail pair, which every operator
built here preserves.  A basis configuration assigns each qubit a rail
bit and a site, and flattens to a dense index little-endian in the
qubit number:

    index = sum_b (rail_b * N + site_b) * (2N)**b

so qubit 0 is the fastest-varying digit and the sector dimension is
(2N)**m.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# One (rail, site) pair per qubit.
DualRailConfig = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class RingSystem:
    """Geometry of 2m rails of N sites each.

    N must be a multiple of 4 so the carrier momentum N/4 is an integer.
    """

    N: int
    m: int

    def __post_init__(self):
        if self.N < 4 or self.N % 4 != 0:
            raise ValueError(f"N must be a multiple of 4, >= 4 (got {self.N})")
        if self.m < 1:
            raise ValueError(f"m must be >= 1 (got {self.m})")

    @property
    def digit(self) -> int:
        """Size of one qubit's digit: 2N (rail bit times site)."""
        return 2 * self.N

    @property
    def dim(self) -> int:
        """Dual-rail sector dimension (2N)**m."""
        return self.digit ** self.m

    @property
    def p0(self) -> int:
        """Carrier momentum N/4 where the dispersion vanishes to 2nd order."""
        return self.N // 4


def config_to_index(cfg: DualRailConfig, sys: RingSystem) -> int:
    """Flatten a per-qubit (rail, site) configuration to a dense index."""
    if len(cfg) != sys.m:
        raise ValueError(f"config has {len(cfg)} qubits, system has {sys.m}")
    idx = 0
    for b in range(sys.m - 1, -1, -1):
        rail, site = cfg[b]
        if rail not in (0, 1):
            raise ValueError(f"rail bit must be 0 or 1 (got {rail})")
        if not 0 <= site < sys.N:
            raise ValueError(f"site {site} out of range [0, {sys.N})")
        idx = idx * sys.digit + (rail * sys.N + site)
    return idx


def index_to_config(i: int, sys: RingSystem) -> DualRailConfig:
    """Inverse of config_to_index."""
    if not 0 <= i < sys.dim:
        raise ValueError(f"index {i} out of range [0, {sys.dim})")
    pairs = []
    for _ in range(sys.m):
        d = i % sys.digit
        pairs.append((d // sys.N, d % sys.N))
        i //= sys.digit
    return tuple(pairs)


@dataclass
class StateVector:
    """Complex amplitudes over the dual-rail sector basis."""

    ring: RingSystem
    amps: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.amps is None:
            self.amps = np.zeros(self.ring.dim, dtype=complex)
        else:
            self.amps = np.asarray(self.amps, dtype=complex).reshape(self.ring.dim)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalized(self) -> "StateVector":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero state")
        return StateVector(self.ring, self.amps / n)

    def copy(self) -> "StateVector":
        return StateVector(self.ring, self.amps.copy())

    def tensor(self) -> np.ndarray:
        """View as an m-axis tensor; axis m-1-b carries qubit b's digit."""
        return self.amps.reshape((self.ring.digit,) * self.ring.m)


def basis_state(cfg: DualRailConfig, sys: RingSystem) -> StateVector:
    """Unit vector on a single dual-rail configuration."""
    v = StateVector(sys)
    v.amps[config_to_index(cfg, sys)] = 1.0
    return v


def inner_product(u: StateVector, v: StateVector) -> complex:
    """<u|v>, conjugate-linear in the first argument."""
    if u.ring != v.ring:
        raise ValueError("states live on different ring systems")
    return complex(np.vdot(u.amps, v.amps))


def qubit_axis(b: int, m: int) -> int:
    """Tensor axis carrying qubit b's digit (C-order, little-endian flat index)."""
    return m - 1 - b
