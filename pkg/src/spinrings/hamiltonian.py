"""Hermitian operators on the dual-rail sector.

Everything the simulator evolves under decomposes into one-qubit terms
(ring hopping, on-rail potentials, rail-pair couplings) plus diagonal
two-qubit terms (controlled-phase pair interactions), so an operator is
stored as a sparse (2N x 2N) matrix per qubit digit plus a dense
(2N x 2N) diagonal table per qubit pair.  Applying it to a state costs
O(m * nnz) and never materializes the (2N)**m matrix; a dense cast
exists for small dimensions so tests can diff against brute force.

Hopping amplitude is exactly 1 between neighboring sites of a rail, so
single-rail momentum modes have energy 2*cos(2*pi*p/N).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .lattice import RingSystem

DENSE_LIMIT = 4096

GATE_KINDS = ("Z", "X", "CPHASE")


class IterationError(RuntimeError):
    """An iterative eigensolve failed to converge; carries diagnostics."""


@dataclass(frozen=True)
class GateRegion:
    """One gate's kind, target qubit(s), site interval, strength and band.

    The interval covers sites {start, ..., start+length-1} mod N.  phi
    may be negative (flips the phase direction).  band_width applies to
    CPHASE only: sites i, j interact iff both lie in the interval and
    their ring distance is <= band_width.
    """

    kind: str
    qubits: tuple[int, ...]
    start: int
    length: int
    phi: float
    band_width: int | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.kind == "CPHASE":
            if len(self.qubits) != 2:
                raise ValueError("CPHASE takes an ordered pair of qubits")
            if self.qubits[0] == self.qubits[1]:
                raise ValueError("CPHASE qubits must be distinct")
            if self.band_width is None or self.band_width < 1:
                raise ValueError("CPHASE needs band_width >= 1")
        else:
            if len(self.qubits) != 1:
                raise ValueError(f"{self.kind} gate takes exactly one qubit")
        if self.length < 1:
            raise ValueError("interval length must be >= 1")

    def sites(self, N: int) -> np.ndarray:
        if self.length > N:
            raise ValueError(f"gate length {self.length} exceeds ring size {N}")
        return (self.start + np.arange(self.length)) % N


class SparseHamiltonian:
    """Matrix-free Hermitian action on the dual-rail sector."""

    def __init__(self, sys: RingSystem,
                 site_ops: dict[int, sp.spmatrix] | None = None,
                 pair_diags: dict[tuple[int, int], np.ndarray] | None = None):
        self.sys = sys
        self.site_ops = dict(site_ops or {})
        self.pair_diags = dict(pair_diags or {})
        self._dense = None
        self._eig = None

    @property
    def dim(self) -> int:
        return self.sys.dim

    def __add__(self, other: "SparseHamiltonian") -> "SparseHamiltonian":
        if other.sys != self.sys:
            raise ValueError("operands live on different ring systems")
        ops = dict(self.site_ops)
        for b, M in other.site_ops.items():
            ops[b] = (ops[b] + M) if b in ops else M
        pairs = {k: D.copy() for k, D in self.pair_diags.items()}
        for k, D in other.pair_diags.items():
            pairs[k] = (pairs[k] + D) if k in pairs else D
        return SparseHamiltonian(self.sys, ops, pairs)

    def apply(self, amps: np.ndarray) -> np.ndarray:
        """H @ amps for a flat amplitude array of length (2N)**m."""
        d, m = self.sys.digit, self.sys.m
        T = amps.reshape((d,) * m)
        out = np.zeros(T.shape, dtype=np.result_type(amps.dtype, np.float64))
        for b, M in self.site_ops.items():
            ax = m - 1 - b
            moved = np.moveaxis(T, ax, 0)
            res = (M @ moved.reshape(d, -1)).reshape(moved.shape)
            out += np.moveaxis(res, 0, ax)
        for (b1, b2), D in self.pair_diags.items():
            ax1, ax2 = m - 1 - b1, m - 1 - b2
            shape = [1] * m
            shape[ax2] = d
            shape[ax1] = d
            out += D.T.reshape(shape) * T
        return out.reshape(amps.shape)

    def norm_bound(self) -> float:
        """Cheap certain upper bound on the spectral radius (Gershgorin)."""
        total = 0.0
        for M in self.site_ops.values():
            total += float(np.max(np.abs(M).sum(axis=1)))
        for D in self.pair_diags.values():
            total += float(np.max(np.abs(D)))
        return total

    def to_dense(self, limit: int = DENSE_LIMIT) -> np.ndarray:
        if self.dim > limit:
            raise ValueError(f"dimension {self.dim} exceeds dense limit {limit}")
        if self._dense is None:
            d, m = self.sys.digit, self.sys.m
            H = np.zeros((self.dim, self.dim))
            eye = sp.identity(d, format="csr")
            for b, M in self.site_ops.items():
                term = None
                for k in range(m - 1, -1, -1):
                    factor = M if k == b else eye
                    term = factor if term is None else sp.kron(term, factor, format="csr")
                H += term.toarray()
            if self.pair_diags:
                idx = np.arange(self.dim)
                digits = [(idx // d ** b) % d for b in range(m)]
                diag = np.zeros(self.dim)
                for (b1, b2), D in self.pair_diags.items():
                    diag += D[digits[b1], digits[b2]]
                H += np.diag(diag)
            self._dense = H
        return self._dense

    def eigensystem(self, limit: int = DENSE_LIMIT):
        """Cached dense eigendecomposition (small dimensions only)."""
        if self._eig is None:
            w, V = np.linalg.eigh(self.to_dense(limit))
            self._eig = (w, V)
        return self._eig


def build_ring(sys: RingSystem) -> SparseHamiltonian:
    """Nearest-neighbor hopping (amplitude 1) on every rail of every qubit."""
    N = sys.N
    x = np.arange(N)
    rows = np.concatenate([x, (x + 1) % N, N + x, N + (x + 1) % N])
    cols = np.concatenate([(x + 1) % N, x, N + (x + 1) % N, N + x])
    vals = np.ones(4 * N)
    hop = sp.csr_matrix((vals, (rows, cols)), shape=(sys.digit, sys.digit))
    return SparseHamiltonian(sys, {b: hop for b in range(sys.m)})


def build_gate(region: GateRegion, sys: RingSystem, extended: bool = False) -> SparseHamiltonian:
    """One gate's interaction, localized to its interval or ring-wide.

    Z adds +phi on rail-1 sites of the interval (vacuum stays at 0);
    X couples rail 0 to rail 1 with amplitude phi at each interval site;
    CPHASE adds +phi on configurations whose two target excitations are
    both on their 1-rails, inside the interval, within the band.
    """
    N, d = sys.N, sys.digit
    for q in region.qubits:
        if not 0 <= q < sys.m:
            raise ValueError(f"qubit {q} out of range for m={sys.m}")
    sites = np.arange(N) if extended else region.sites(N)
    if region.kind == "Z":
        diag = np.zeros(d)
        diag[N + sites] = region.phi
        return SparseHamiltonian(sys, {region.qubits[0]: sp.diags(diag, format="csr")})
    if region.kind == "X":
        rows = np.concatenate([sites, N + sites])
        cols = np.concatenate([N + sites, sites])
        vals = np.full(2 * sites.size, region.phi)
        M = sp.csr_matrix((vals, (rows, cols)), shape=(d, d))
        return SparseHamiltonian(sys, {region.qubits[0]: M})
    # CPHASE
    D = np.zeros((d, d))
    if extended:
        D[N:, N:] = region.phi
    else:
        s1 = sites[:, None]
        s2 = sites[None, :]
        gap = np.abs(s1 - s2) % N
        ring_dist = np.minimum(gap, N - gap)
        block = np.where(ring_dist <= region.band_width, region.phi, 0.0)
        D[np.ix_(N + sites, N + sites)] = block
    q1, q2 = region.qubits
    if q1 < q2:
        return SparseHamiltonian(sys, {}, {(q1, q2): D})
    return SparseHamiltonian(sys, {}, {(q2, q1): D.T})


def assemble(regions: list[GateRegion], sys: RingSystem,
             extended: bool = False) -> SparseHamiltonian:
    """Ring hopping plus every listed gate term."""
    H = build_ring(sys)
    for region in regions:
        H = H + build_gate(region, sys, extended)
    return H


def operator_norm_on_V(H: SparseHamiltonian, tol: float = 1e-6) -> float:
    """Largest |eigenvalue| on the sector; dense below the dense limit."""
    if H.dim <= DENSE_LIMIT:
        w, _ = H.eigensystem()
        return float(np.max(np.abs(w)))
    op = spla.LinearOperator((H.dim, H.dim), matvec=H.apply, dtype=np.float64)
    try:
        vals = spla.eigsh(op, k=1, which="LM", tol=tol,
                          maxiter=max(5000, 100 * H.dim // 1000),
                          return_eigenvectors=False)
    except spla.ArpackNoConvergence as exc:
        raise IterationError(
            f"Lanczos failed to converge on dim {H.dim}: {exc}") from exc
    return float(np.max(np.abs(vals)))


def dump_triplets(H: SparseHamiltonian, path: str) -> None:
    """Write nonzero entries as 'row col re im' lines (dense-castable only)."""
    dense = H.to_dense()
    rows, cols = np.nonzero(dense)
    with open(path, "w") as fh:
        for r, c in zip(rows, cols):
            v = complex(dense[r, c])
            fh.write(f"{r} {c} {v.real:.17g} {v.imag:.17g}\n")
