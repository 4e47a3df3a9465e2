"""Computable error bounds and their numerical verifiers.

Each analytic bound the scheme relies on appears here twice over: as a
formula with explicit fitted constants (the asymptotic statements fix
only the shape, so constants are fitted once on the smallest instance
and then must keep holding, with slack, on larger ones), and as a
seeded brute-force checker that hunts for violations on small random
instances.  A violation from any checker indicates an implementation
bug, never an unlucky draw: the inequalities are proved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .hamiltonian import SparseHamiltonian
from .lattice import StateVector


@dataclass
class BoundReport:
    """Outcome of checking one bound on one instance."""

    name: str
    bound_value: float
    measured_value: float
    satisfied: bool
    parameters: dict = field(default_factory=dict)


def dispersion_bound(t: float, delta_p: float, N: int, m: int, C: float) -> float:
    """C * m * t * dp**3 / N**3: drift between exact evolution and pure
    translation for m rings of carrier-momentum packets."""
    return C * m * abs(t) * delta_p ** 3 / N ** 3


def transient_bound(m: int, t: float, phi: float, delta_p: float, N: int,
                    C1: float, C2: float) -> float:
    """C1*m*t*|phi| + C2*m*t*dp**3/N**3: cost of ignoring weak gates while
    packets cross their edges."""
    return C1 * m * abs(t) * abs(phi) + dispersion_bound(t, delta_p, N, m, C2)


def trotter_error_bound(m: int, t: float, n: int, n_prime: int,
                        delta_p: float, N: int, d: float, delta_x: float,
                        Cs: tuple[float, float, float, float]) -> float:
    """Block-traversal bound: far-gate leakage + dispersion + two
    Trotter-splitting terms.

    Cs = (c_exp, c_disp, c_mix, c_outer).  The far-gate term carries the
    N**2 interaction count and one power of t (it enters per time slice),
    beside exp(-d^2 / (2*dx^2)).
    """
    c_exp, c_disp, c_mix, c_outer = Cs
    return (c_exp * N ** 2 * abs(t) * math.exp(-d * d / (2.0 * delta_x * delta_x))
            + dispersion_bound(t, delta_p, N, m, c_disp)
            + c_mix * (m * t) ** 2 / (n * n_prime)
            + c_outer * (m * t) ** 2 / n_prime)


def _random_skew_hermitian(rng: np.random.Generator, dim: int, scale: float) -> np.ndarray:
    M = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return scale * 0.5 * (M - M.conj().T)


def _expm_skew(X: np.ndarray, t: float) -> np.ndarray:
    """exp(X*t) for skew-Hermitian X, via the Hermitian part's spectrum."""
    B = -1j * X  # Hermitian
    w, V = np.linalg.eigh(B)
    return (V * np.exp(1j * w * t)) @ V.conj().T


def matrix_exp_sensitivity_check(dim: int, trials: int, seed: int) -> list[BoundReport]:
    """||exp((A+E)t) - exp(At)|| <= ||E|| * t * exp(||E||t) on random
    skew-Hermitian A, E and t in (0, 2]."""
    if dim > 64:
        raise ValueError("dense check limited to dim <= 64")
    reports = []
    for trial in range(trials):
        rng = np.random.default_rng(seed + trial)
        A = _random_skew_hermitian(rng, dim, 1.0)
        E = _random_skew_hermitian(rng, dim, float(rng.uniform(0.01, 0.5)))
        t = float(rng.uniform(0.0, 2.0)) or 1e-3
        lhs = float(np.linalg.norm(_expm_skew(A + E, t) - _expm_skew(A, t), 2))
        e_norm = float(np.linalg.norm(E, 2))
        rhs = e_norm * t * math.exp(e_norm * t)
        reports.append(BoundReport(
            name="matrix_exp_sensitivity",
            bound_value=rhs,
            measured_value=lhs,
            satisfied=lhs <= rhs + 1e-10,
            parameters={"dim": dim, "trial": trial, "t": t, "E_norm": e_norm},
        ))
    return reports


def hybrid_argument_check(Us: list[np.ndarray], Vs: list[np.ndarray],
                          psi: np.ndarray) -> BoundReport:
    """||(U_n...U_1 - V_n...V_1)psi|| <= sum_j ||(U_j - V_j) U_{j-1}...U_1 psi||."""
    if len(Us) != len(Vs):
        raise ValueError("need equally many U and V factors")
    dim = psi.shape[0]
    if dim > 256:
        raise ValueError("dense check limited to dim <= 256")
    for M in (*Us, *Vs):
        if M.shape != (dim, dim):
            raise ValueError("factor shape does not match the state dimension")
    u_state = psi.astype(complex)
    v_state = psi.astype(complex)
    rhs = 0.0
    for U, V in zip(Us, Vs):
        rhs += float(np.linalg.norm((U - V) @ u_state))
        u_state = U @ u_state
        v_state = V @ v_state
    lhs = float(np.linalg.norm(u_state - v_state))
    return BoundReport(
        name="hybrid_argument",
        bound_value=rhs,
        measured_value=lhs,
        satisfied=lhs <= rhs + 1e-10,
        parameters={"n": len(Us), "dim": dim},
    )


@dataclass(frozen=True)
class GaussianSpec:
    """Single-peak positive Gaussian f(x) = amplitude * exp(-(x-center)^2/width^2)."""

    center: float
    width: float
    amplitude: float = 1.0

    def __call__(self, x):
        return self.amplitude * np.exp(-((x - self.center) ** 2) / self.width ** 2)


def sum_bound_check(f: GaussianSpec, N: int) -> BoundReport:
    """Sandwich sum_{j=0}^{N-1} f(j) between integral-based bounds:
    integral - tails - f_max <= sum <= integral + f_max.

    Integration windows are finite (center +- 40 widths, beyond which the
    integrand underflows) so adaptive quadrature cannot step over a
    narrow peak on an infinite interval.
    """
    total = float(np.sum(f(np.arange(N))))
    f_max = f.amplitude
    lo = f.center - 40.0 * f.width
    hi = f.center + 40.0 * f.width
    whole, _ = quad(f, lo, hi)
    left_tail = quad(f, lo, -1.0)[0] if lo < -1.0 else 0.0
    right_tail = quad(f, float(N), hi)[0] if hi > N else 0.0
    upper = whole + f_max
    lower = whole - left_tail - right_tail - f_max
    ok = lower - 1e-10 <= total <= upper + 1e-10
    return BoundReport(
        name="sum_bound",
        bound_value=upper,
        measured_value=total,
        satisfied=ok,
        parameters={"N": N, "center": f.center, "width": f.width,
                    "lower": lower, "upper": upper},
    )


def far_gate_residual(state: StateVector, H_far: SparseHamiltonian) -> float:
    """||H_far |psi>||: how hard distant gate terms act on a packet."""
    return float(np.linalg.norm(H_far.apply(state.amps)))
