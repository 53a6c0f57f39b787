import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .qmath import NORM_TOLERANCE, StateVector, DensityMatrix

logger = logging.getLogger(__name__)

# Largest accepted dt * E * sqrt(N) for the Runge-Kutta propagator
MAX_STEP_SCALE = 0.1
DEFAULT_ENERGY_STEP = 1e-3
UNIFORM_OVERLAP_TOLERANCE = 1e-12


class SearchParams:
    """Problem instance of the analog search: find the marked basis state |w>
    of an N = 2**n dimensional register by evolving the uniform state |s>
    under H = E|w><w| + E|s><s|.

    Usage:
        params = SearchParams(n_qubits=5, energy=1.0)
        peak_time(params)

    Args:
        n_qubits (int): register size n, N = 2**n. Defaults to 2.
        energy (float): the energy scale E (hbar = 1). Defaults to 1.
        overlap (float, optional): x = <s|w> in (0, 1]. Defaults to None,
            meaning the uniform start state value 1/sqrt(N). Only the two
            level closed forms are available for other values.
        marked (int): index w of the marked basis state. Defaults to 0.
    """

    def __init__(
        self,
        n_qubits: int = 2,
        energy: float = 1.0,
        overlap: Optional[float] = None,
        marked: int = 0,
    ):
        self.n_qubits = n_qubits
        self.energy = energy
        self.overlap = overlap
        self.marked = marked

    @classmethod
    def from_dim(cls, dim: int, **kwargs):
        """Builds the parameters from the dimension N instead of n."""
        if isinstance(dim, bool) or not isinstance(dim, (int, np.integer)) or dim < 2:
            raise ValueError("Dimension must be an integer >= 2")
        n_qubits = int(dim).bit_length() - 1
        if 2**n_qubits != dim:
            raise ValueError(f"Dimension {dim} is not a power of two")
        return cls(n_qubits=n_qubits, **kwargs)

    @property
    def n_qubits(self):
        return self._n_qubits

    @n_qubits.setter
    def n_qubits(self, value):
        if isinstance(value, (int, np.integer)) and not isinstance(value, bool) and value >= 1:
            if getattr(self, "_marked", 0) >= 2**value:
                raise ValueError("Marked index does not fit in the new register size")
            self._n_qubits = int(value)
        else:
            raise ValueError("n_qubits must be an integer greater or equal to 1")

    @property
    def energy(self):
        return self._energy

    @energy.setter
    def energy(self, value):
        if (
            isinstance(value, (int, float, np.floating))
            and not isinstance(value, bool)
            and math.isfinite(value)
            and value > 0
        ):
            self._energy = float(value)
        else:
            raise ValueError("Energy must be a finite number strictly greater than 0")

    @property
    def overlap(self):
        return self._overlap

    @overlap.setter
    def overlap(self, value):
        if value is None:
            self._overlap = None
        elif (
            isinstance(value, (int, float, np.floating))
            and not isinstance(value, bool)
            and 0 < value <= 1
        ):
            self._overlap = float(value)
        else:
            # x = 0 would make the search time infinite
            raise ValueError("Overlap must be a number in (0, 1]")

    @property
    def marked(self):
        return self._marked

    @marked.setter
    def marked(self, value):
        if (
            isinstance(value, (int, np.integer))
            and not isinstance(value, bool)
            and 0 <= value < self.dim
        ):
            self._marked = int(value)
        else:
            raise ValueError(f"Marked index must be an integer in [0, {self.dim})")

    @property
    def dim(self):
        return 2**self.n_qubits

    @property
    def x(self):
        """The overlap <s|w> actually used by the closed forms."""
        if self._overlap is None:
            return 1.0 / math.sqrt(self.dim)
        return self._overlap

    @property
    def is_uniform(self):
        """True when x equals 1/sqrt(N), i.e. |s> is the uniform superposition."""
        return abs(self.x - 1.0 / math.sqrt(self.dim)) <= UNIFORM_OVERLAP_TOLERANCE

    def require_uniform(self, what: str):
        if not self.is_uniform:
            raise ValueError(
                f"{what} needs the uniform start state (overlap 1/sqrt(N) = "
                f"{1.0 / math.sqrt(self.dim):.6g}), got overlap {self.x:.6g}"
            )

    def __repr__(self):
        return (
            f"SearchParams(n_qubits={self.n_qubits}, energy={self.energy}, "
            f"overlap={self.overlap}, marked={self.marked})"
        )


@dataclass(frozen=True)
class TwoLevelState:
    """Amplitudes of |psi> = alpha|w> + beta|r>."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        norm_sq = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm_sq - 1.0) > 1e-12:
            raise ValueError(f"TwoLevelState must be normalized, got |a|^2+|b|^2={norm_sq!r}")

    def density_matrix(self) -> DensityMatrix:
        """The 2 x 2 density matrix in the {|w>, |r>} basis."""
        a, b = self.alpha, self.beta
        return DensityMatrix(
            [
                [abs(a) ** 2, a * np.conj(b)],
                [np.conj(a) * b, abs(b) ** 2],
            ]
        )


def _times(t):
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("Time must not be negative")
    return t


def _scalar_or_array(value):
    return float(value) if np.ndim(value) == 0 else value


def hamiltonian_full(p: SearchParams) -> np.ndarray:
    """Dense N x N Hamiltonian E|w><w| + E|s><s|."""
    p.require_uniform("hamiltonian_full")
    s = uniform_state(p).amplitudes
    h = p.energy * np.outer(s, s.conj())
    h[p.marked, p.marked] += p.energy
    return h


def apply_hamiltonian(p: SearchParams, amplitudes) -> np.ndarray:
    """H|psi> without forming H: E psi_w |w> + E <s|psi> |s>."""
    p.require_uniform("apply_hamiltonian")
    amplitudes = np.asarray(amplitudes, dtype=complex)
    result = np.full(amplitudes.shape, p.energy * np.mean(amplitudes), dtype=complex)
    result[p.marked] += p.energy * amplitudes[p.marked]
    return result


def hamiltonian_2d(p: SearchParams) -> np.ndarray:
    """The Hamiltonian restricted to the {|w>, |r>} basis."""
    x = p.x
    off_diagonal = x * math.sqrt(1.0 - x**2)
    return p.energy * np.array(
        [[1.0 + x**2, off_diagonal], [off_diagonal, 1.0 - x**2]], dtype=complex
    )


def uniform_state(p: SearchParams) -> StateVector:
    """|s>, the equal superposition of all N basis states."""
    p.require_uniform("uniform_state")
    return StateVector(np.full(p.dim, 1.0 / math.sqrt(p.dim), dtype=complex))


def basis_state(p: SearchParams, index: int) -> StateVector:
    if not 0 <= index < p.dim:
        raise ValueError(f"Basis index must lie in [0, {p.dim})")
    amplitudes = np.zeros(p.dim, dtype=complex)
    amplitudes[index] = 1.0
    return StateVector(amplitudes)


def two_level_basis(p: SearchParams) -> np.ndarray:
    """N x 2 isometry whose columns are |w> and |r>."""
    p.require_uniform("two_level_basis")
    basis = np.zeros((p.dim, 2), dtype=complex)
    basis[p.marked, 0] = 1.0
    basis[:, 1] = 1.0 / math.sqrt(p.dim - 1)
    basis[p.marked, 1] = 0.0
    return basis


def evolve_closed_form(p: SearchParams, t: float) -> TwoLevelState:
    """Closed-form state at time t in the {|w>, |r>} basis, global phase
    e^{-iEt} included.
    """
    t = float(_times(t))
    x, energy = p.x, p.energy
    phase = np.exp(-1j * energy * t)
    c, s = math.cos(energy * x * t), math.sin(energy * x * t)
    return TwoLevelState(
        alpha=complex(phase * (x * c - 1j * s)),
        beta=complex(phase * math.sqrt(1.0 - x**2) * c),
    )


def success_probability(p: SearchParams, t):
    """P(t) = sin^2(Ext) + x^2 cos^2(Ext).

    Args:
        p (SearchParams): the problem instance
        t (float, ndarray): time(s), non-negative

    Returns:
        float, ndarray: probability of measuring |w>
    """
    t = _times(t)
    phase = p.energy * p.x * t
    probability = np.sin(phase) ** 2 + p.x**2 * np.cos(phase) ** 2
    return _scalar_or_array(np.clip(probability, 0.0, 1.0))


def success_probability_rate(p: SearchParams, t):
    """dP/dt = (1 - x^2) E x sin(2Ext)."""
    t = _times(t)
    x = p.x
    return _scalar_or_array((1.0 - x**2) * p.energy * x * np.sin(2.0 * p.energy * x * t))


def peak_time(p: SearchParams) -> float:
    """t_m = pi / (2Ex), the first time the success probability reaches 1."""
    return math.pi / (2.0 * p.energy * p.x)


def embed_full(s: TwoLevelState, p: SearchParams) -> StateVector:
    """Maps alpha|w> + beta|r> onto the N dimensional register."""
    p.require_uniform("embed_full")
    amplitudes = np.full(p.dim, s.beta / math.sqrt(p.dim - 1), dtype=complex)
    amplitudes[p.marked] = s.alpha
    return StateVector(amplitudes)


def energy_expectation(p: SearchParams, psi) -> float:
    """<psi|H|psi>."""
    amplitudes = psi.amplitudes if isinstance(psi, StateVector) else np.asarray(psi)
    return float(np.real(np.vdot(amplitudes, apply_hamiltonian(p, amplitudes))))


def rk4_step(apply: Callable[[np.ndarray], np.ndarray], psi: np.ndarray, dt: float):
    """One fourth-order Runge-Kutta step of d|psi>/dt = -i H|psi>."""
    dt2 = dt / 2.0

    k1 = -1j * apply(psi)
    k2 = -1j * apply(psi + k1 * dt2)
    k3 = -1j * apply(psi + k2 * dt2)
    k4 = -1j * apply(psi + k3 * dt)

    return psi + (k1 + 2 * k2 + 2 * k3 + k4) / 6.0 * dt


def default_time_step(p: SearchParams) -> float:
    return DEFAULT_ENERGY_STEP / p.energy


def propagate(p: SearchParams, times, dt: Optional[float] = None, step=rk4_step):
    """Integrates the Schrodinger equation from |s> at t = 0 through a grid.

    Each interval between consecutive grid points is split into equal
    substeps no longer than dt, so the grid points are hit exactly.

    Args:
        p (SearchParams): the problem instance, uniform overlap only
        times (iterable of floats): non-decreasing, non-negative grid
        dt (float, optional): maximum step. Defaults to 1e-3 / E.
        step (callable): single step integrator with the rk4_step signature

    Returns:
        ndarray: one row of amplitudes per grid point
    """
    p.require_uniform("propagate")
    dt = default_time_step(p) if dt is None else float(dt)
    if not dt > 0:
        raise ValueError("Time step must be strictly positive")
    if dt * p.energy * math.sqrt(p.dim) > MAX_STEP_SCALE:
        raise ValueError(
            f"Time step {dt:g} too large: dt * E * sqrt(N) must not exceed {MAX_STEP_SCALE}"
        )
    times = _times(times)
    if times.ndim != 1:
        raise ValueError("times must be a one dimensional grid")
    if np.any(np.diff(times) < 0):
        raise ValueError("times must be non-decreasing")

    def apply(amplitudes):
        return apply_hamiltonian(p, amplitudes)

    psi = uniform_state(p).amplitudes.copy()
    current = 0.0
    states = np.empty((times.size, p.dim), dtype=complex)
    n_steps = 0
    for i, target in enumerate(times):
        span = target - current
        if span > 0:
            substeps = math.ceil(span / dt)
            h = span / substeps
            for _ in range(substeps):
                psi = step(apply, psi, h)
            n_steps += substeps
            current = target
        states[i] = psi
    logger.debug("propagated N=%d over %d grid points in %d steps", p.dim, times.size, n_steps)

    drift = np.max(np.abs(np.linalg.norm(states, axis=1) - 1.0)) if times.size else 0.0
    if drift > 1e-9:
        logger.warning("norm drift %.3e exceeds 1e-9 during propagation", drift)
    return states


def evolve_numeric(p: SearchParams, t: float, dt: Optional[float] = None) -> StateVector:
    """Numerically integrated state at time t, independent of the closed form.

    Raises:
        ValueError: if dt exceeds t (for t > 0) or breaks the step size bound
    """
    t = float(_times(t))
    if dt is None:
        dt = min(default_time_step(p), t) if t > 0 else default_time_step(p)
    dt = float(dt)
    if t > 0 and dt > t:
        raise ValueError("Time step must not exceed the evolution time")
    amplitudes = propagate(p, [t], dt)[0]
    if abs(np.linalg.norm(amplitudes) - 1.0) > NORM_TOLERANCE:
        raise ValueError("Numerical propagation lost normalization; reduce dt")
    return StateVector(amplitudes)
