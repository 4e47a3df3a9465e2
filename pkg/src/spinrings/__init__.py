"""Dual-rail wavepacket computing on XY spin rings.

A desk-scale simulator for time-independent computation with packets
propagating on periodic spin rings: packet construction, sparse sector
Hamiltonians, certified propagators, a circuit-to-layout compiler, and
numerical verifiers for every error bound the scheme relies on.
"""

from .lattice import (
    DualRailConfig,
    RingSystem,
    StateVector,
    basis_state,
    config_to_index,
    index_to_config,
    inner_product,
)
from .packets import (
    PacketSpec,
    finite_fourier,
    make_packet,
    packet_norm_bounds,
    phase_aligned,
    phase_distance,
    tensor_encode,
)
from .hamiltonian import (
    GateRegion,
    IterationError,
    SparseHamiltonian,
    assemble,
    build_gate,
    build_ring,
    dump_triplets,
    operator_norm_on_V,
)
from .propagate import (
    DIRECTION,
    PropagationError,
    PropagatorConfig,
    evolve,
    ideal_gate_unitary,
    ideal_translate,
)
from .compiler import (
    CapacityError,
    CompiledLayout,
    LayoutParams,
    LogicalCircuit,
    LogicalOp,
    calibrate_phi,
    compile_circuit,
    parse_circuit_file,
    recommended_N,
)
from .bounds import (
    BoundReport,
    dispersion_bound,
    far_gate_residual,
    hybrid_argument_check,
    matrix_exp_sensitivity_check,
    sum_bound_check,
    transient_bound,
    trotter_error_bound,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
