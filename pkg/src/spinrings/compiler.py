"""Logical circuits and their static gate-region layouts.

A circuit is an ordered list of blocks, each a set of simultaneous
one- and two-qubit operations with disjoint qubit support.  Compilation
places one spatial gate segment per block on the rings, sizes segments
and margins from the exponent triple (eps, eps1, eps2)

    packet width  dx = N**(1/3 + eps)
    truncation    d  = round(N**(1/3 + eps1))
    gate length   L  = round(N**(1/3 + eps2))

and calibrates each gate strength so the phase collected while a packet
crosses a segment equals the requested angle.  Packets travel toward
decreasing site index (propagate.DIRECTION), so block 1 sits at the top
of the program span and later blocks follow below it.

External text formats: circuit files are line-oriented (one block per
line, ops separated by ';', qubits labeled q1..qm, e.g.
``RZ 0.785398 q1; CPHASE 3.141593 q2 q3``); layouts export to a JSON
document, schema documented on save_layout.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .hamiltonian import GateRegion
from .lattice import RingSystem
from .packets import PacketSpec
from .propagate import DIRECTION

OP_KINDS = {"RZ": "Z", "RX": "X", "CPHASE": "CPHASE"}


class CapacityError(ValueError):
    """The requested program does not fit on the ring."""


@dataclass(frozen=True)
class LogicalOp:
    kind: str  # RZ | RX | CPHASE
    theta: float
    qubits: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in OP_KINDS:
            raise ValueError(f"unknown op {self.kind!r}")
        want = 2 if self.kind == "CPHASE" else 1
        if len(self.qubits) != want:
            raise ValueError(f"{self.kind} takes {want} qubit(s)")
        if self.kind == "CPHASE" and self.qubits[0] == self.qubits[1]:
            raise ValueError("CPHASE qubits must be distinct")


@dataclass(frozen=True)
class LogicalCircuit:
    m: int
    blocks: tuple[tuple[LogicalOp, ...], ...]

    def __post_init__(self):
        for i, block in enumerate(self.blocks):
            seen: set[int] = set()
            for op in block:
                for q in op.qubits:
                    if not 0 <= q < self.m:
                        raise ValueError(f"qubit {q} out of range for m={self.m}")
                    if q in seen:
                        raise ValueError(
                            f"block {i} uses qubit {q} twice; simultaneous ops "
                            "need disjoint support")
                    seen.add(q)

    @property
    def g(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class LayoutParams:
    epsilon: float = 0.0
    epsilon1: float = 0.05
    epsilon2: float = 1.0 / 3.0
    start_margin: int = 3
    inter_block_gap: int | None = None  # None: use the truncation length d

    def __post_init__(self):
        if not self.epsilon < self.epsilon1 < self.epsilon2:
            raise ValueError("exponents must satisfy eps < eps1 < eps2")
        if self.start_margin < 1:
            raise ValueError("start_margin must be >= 1")


@dataclass
class CompiledLayout:
    ring: RingSystem
    regions: list[list[GateRegion]]  # grouped by block, circuit order
    packet_spec: PacketSpec
    total_time: float
    block_times: list[tuple[float, float, float]]  # (trans in, interior, trans out)
    gate_length: int
    truncation: int
    params: LayoutParams = field(repr=False, default_factory=LayoutParams)

    @property
    def all_regions(self) -> list[GateRegion]:
        return [r for block in self.regions for r in block]


def calibrate_phi(theta: float, length: int) -> float:
    """Strength realizing relative phase exp(i*theta) across a length-L gate.

    A packet crosses L sites in time L/2 and a +phi potential imprints
    exp(-i*phi*t), so phi = -2*theta/L.
    """
    if length < 1:
        raise ValueError("gate length must be >= 1")
    return -2.0 * theta / length


def recommended_N(m: int, g: int, delta: float) -> int:
    """Smallest multiple of 4 at or above (m*g)**(3+delta)."""
    if m < 1 or g < 1:
        raise ValueError("m and g must be >= 1")
    if delta <= 0:
        raise ValueError("delta must be > 0")
    raw = float(m * g) ** (3.0 + delta)
    if raw > 2.0 ** 53:
        raise CapacityError(f"recommended size {raw:.3e} is not representable")
    n = math.ceil(raw)
    return max(4, ((n + 3) // 4) * 4)


def _geometry(N: int, g: int, params: LayoutParams) -> tuple[int, int, int, int]:
    L = max(1, round(N ** (1.0 / 3.0 + params.epsilon2)))
    d = max(1, round(N ** (1.0 / 3.0 + params.epsilon1)))
    gap = d if params.inter_block_gap is None else params.inter_block_gap
    margin = params.start_margin * d
    span = 2 * margin + g * L + max(0, g - 1) * gap if g else margin
    return L, d, gap, span


def minimal_ring_size(g: int, params: LayoutParams) -> int:
    """Smallest multiple-of-4 N whose program span fits."""
    N = 8
    while N <= 2 ** 40:
        if _geometry(N, g, params)[3] <= N:
            return N
        N += 4
    raise CapacityError("no feasible ring size below 2**40")


def compile_circuit(circuit: LogicalCircuit, N: int,
                    params: LayoutParams | None = None) -> CompiledLayout:
    """Deterministic layout of the circuit's blocks on rings of N sites.

    Blocks are traversed in circuit order; gaps of one truncation length
    separate them and a start_margin*d run-up precedes block 1 (and
    trails the last block, so decoding happens clear of any gate).
    """
    params = params or LayoutParams()
    sys = RingSystem(N, circuit.m)
    g = circuit.g
    L, d, gap, span = _geometry(N, g, params)
    if span > N:
        raise CapacityError(
            f"{g} block(s) need {span} sites but the ring has {N}; "
            f"smallest feasible N is {minimal_ring_size(g, params)}")
    margin = params.start_margin * d
    delta_x = float(N) ** (1.0 / 3.0 + params.epsilon)
    if g == 0:
        x0 = float(margin)
        spec = PacketSpec.from_delta_x(N, delta_x, x0)
        return CompiledLayout(sys, [], spec, margin / 2.0, [], L, d, params)
    # travel distance from the start center to the entry edge of block j
    entries = [margin + j * (L + gap) for j in range(g)]
    x0 = float(entries[-1] + L)  # last block's interval starts at site 0
    regions: list[list[GateRegion]] = []
    for j, block in enumerate(circuit.blocks):
        start = int(x0) - entries[j] - L
        placed = []
        for op in block:
            placed.append(GateRegion(
                kind=OP_KINDS[op.kind],
                qubits=op.qubits,
                start=start % N,
                length=L,
                phi=calibrate_phi(op.theta, L),
                band_width=3 * d if op.kind == "CPHASE" else None,
            ))
        regions.append(placed)
    travel = 2 * margin + g * L + (g - 1) * gap
    interior = L - 2 * d
    if interior <= 0:
        raise CapacityError(
            f"gate length {L} cannot absorb two transit skips of {d}; "
            "raise N or lower epsilon1")
    block_times = [(d / 2.0, interior / 2.0, d / 2.0)] * g
    spec = PacketSpec.from_delta_x(N, delta_x, x0)
    return CompiledLayout(sys, regions, spec, travel / 2.0, block_times, L, d, params)


def parse_circuit_file(path: str, m: int | None = None) -> LogicalCircuit:
    """Load a line-oriented circuit file (see module docstring)."""
    blocks: list[tuple[LogicalOp, ...]] = []
    max_q = -1
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            ops = []
            for piece in line.split(";"):
                tokens = piece.split()
                if not tokens:
                    continue
                if len(tokens) < 3:
                    raise ValueError(f"{path}:{lineno}: malformed op {piece.strip()!r}")
                kind = tokens[0].upper()
                if kind not in OP_KINDS:
                    raise ValueError(f"{path}:{lineno}: unknown op {tokens[0]!r}")
                theta = float(tokens[1])
                qubits = []
                for tok in tokens[2:]:
                    if not tok.lower().startswith("q"):
                        raise ValueError(f"{path}:{lineno}: expected qubit label, got {tok!r}")
                    label = int(tok[1:])
                    if label < 1:
                        raise ValueError(f"{path}:{lineno}: qubit labels start at q1")
                    qubits.append(label - 1)
                max_q = max(max_q, *qubits)
                ops.append(LogicalOp(kind, theta, tuple(qubits)))
            if ops:
                blocks.append(tuple(ops))
    if m is None:
        m = max_q + 1
    if m < 1:
        raise ValueError(f"{path}: no qubits found")
    return LogicalCircuit(m, tuple(blocks))


def layout_document(layout: CompiledLayout) -> dict:
    """JSON-ready description of a compiled layout.

    Schema: {"N", "m", "g", "delta_x", "delta_p", "x0", "total_time",
    "gate_length", "truncation", "block_times": [[in, interior, out]...],
    "regions": [{"block", "kind", "qubits" (1-based labels), "start",
    "length", "phi", "band_width"}...]}.
    """
    doc = {
        "N": layout.ring.N,
        "m": layout.ring.m,
        "g": len(layout.regions),
        "delta_x": layout.packet_spec.delta_x,
        "delta_p": layout.packet_spec.delta_p,
        "x0": layout.packet_spec.x0,
        "total_time": layout.total_time,
        "gate_length": layout.gate_length,
        "truncation": layout.truncation,
        "block_times": [list(bt) for bt in layout.block_times],
        "regions": [],
    }
    for j, block in enumerate(layout.regions):
        for r in block:
            doc["regions"].append({
                "block": j + 1,
                "kind": r.kind,
                "qubits": [q + 1 for q in r.qubits],
                "start": r.start,
                "length": r.length,
                "phi": r.phi,
                "band_width": r.band_width,
            })
    return doc


def save_layout(layout: CompiledLayout, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(layout_document(layout), fh, indent=2, sort_keys=True)
        fh.write("\n")
