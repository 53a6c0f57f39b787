"""entanglement.py

Entanglement of the n-qubit search state: reduced states, entanglement
entropy, tangle, Wootters concurrence and entanglement of formation, each
next to the closed form it is checked against.
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .analog_search import SearchParams, _scalar_or_array, _times, evolve_closed_form
from .qmath import (
    PAULI_X,
    SIGMA_YY,
    Bipartition,
    DensityMatrix,
    StateVector,
    amplitude_matrix,
    binary_entropy,
    outer,
    reduced_density_matrix,
    schmidt_coefficients,
    shannon_entropy,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PairEigs:
    """Descending square roots of the eigenvalues of rho * gamma."""

    lambdas: Tuple[float, float, float, float]

    def __post_init__(self):
        if len(self.lambdas) != 4:
            raise ValueError("PairEigs holds exactly four values")
        if any(value < 0 for value in self.lambdas):
            raise ValueError("PairEigs values must be non-negative")
        if any(a < b for a, b in zip(self.lambdas, self.lambdas[1:])):
            raise ValueError("PairEigs values must be in descending order")

    @classmethod
    def from_factor(cls, factor):
        """Computes the roots for rho = F F^dagger without forming rho.

        The roots are the singular values of F^dagger Y F*, Y = sigma_y x
        sigma_y, which keeps their absolute accuracy near zero.
        """
        factor = np.asarray(factor, dtype=complex)
        if factor.ndim != 2 or factor.shape[0] != 4:
            raise ValueError(f"Factor must have four rows, got shape {factor.shape}")
        u, s, _ = np.linalg.svd(factor, full_matrices=False)
        reduced = u * s
        roots = np.linalg.svd(reduced.conj().T @ SIGMA_YY @ reduced.conj(), compute_uv=False)
        roots = np.concatenate([roots, np.zeros(4 - roots.size)])
        return cls(tuple(float(v) for v in np.sort(roots)[::-1]))

    @classmethod
    def from_density_matrix(cls, rho: DensityMatrix):
        """Computes the roots for a two-qubit density matrix."""
        if rho.dim != 4:
            raise ValueError(f"Wootters concurrence needs a two-qubit state, got dim {rho.dim}")
        weights, vectors = np.linalg.eigh(rho.entries)
        return cls.from_factor(vectors * np.sqrt(np.clip(weights, 0.0, None)))

    @property
    def concurrence(self):
        l1, l2, l3, l4 = self.lambdas
        return max(l1 - l2 - l3 - l4, 0.0)


def _require_register(p: SearchParams, what: str):
    p.require_uniform(what)
    if p.dim < 4:
        raise ValueError(f"{what} needs at least two qubits (N >= 4)")


def single_qubit_rdm_closed(p: SearchParams, t: float, qubit: int = 0) -> DensityMatrix:
    """Closed-form reduced state of one qubit of the search register.

    Args:
        p (SearchParams): uniform overlap, N >= 4
        t (float): time
        qubit (int): which qubit is kept. Defaults to 0.

    Returns:
        DensityMatrix: 2 x 2 reduced state
    """
    _require_register(p, "single_qubit_rdm_closed")
    if not 0 <= qubit < p.n_qubits:
        raise ValueError(f"qubit must lie in [0, {p.n_qubits})")
    state = evolve_closed_form(p, t)
    a, b = state.alpha, state.beta
    N = p.dim
    shared = (N - 2) * abs(b) ** 2 / (2 * N - 2)
    coupling = a * np.conj(b) / math.sqrt(N - 1)
    rho = np.array(
        [
            [abs(a) ** 2 + shared, coupling + shared],
            [np.conj(coupling) + shared, N * abs(b) ** 2 / (2 * N - 2)],
        ],
        dtype=complex,
    )
    # the |w> branch sits on |1> when the marked bit of this qubit is set
    if p.marked >> (p.n_qubits - 1 - qubit) & 1:
        rho = PAULI_X @ rho @ PAULI_X
    return DensityMatrix(rho)


def rdm_eigvals_closed(p: SearchParams, t):
    """Eigenvalues (lambda_plus, lambda_minus) of a single-qubit reduced state.

    Args:
        p (SearchParams): uniform overlap
        t (float, ndarray): time(s)
    """
    p.require_uniform("rdm_eigvals_closed")
    t = _times(t)
    N = p.dim
    radicand = N * ((N - 2) * np.cos(4.0 * p.energy * t / math.sqrt(N)) + 3 * N + 2)
    root = np.sqrt(np.maximum(radicand, 0.0))
    plus = (2 * N + root) / (4 * N)
    minus = np.maximum((2 * N - root) / (4 * N), 0.0)
    return _scalar_or_array(plus), _scalar_or_array(minus)


def entanglement_entropy(psi: StateVector, part: Bipartition, log_base=2) -> float:
    """Von Neumann entropy of either reduced state of a pure state."""
    return shannon_entropy(schmidt_coefficients(psi, part) ** 2, log_base)


def tangle(psi: StateVector, part: Bipartition) -> float:
    """tau = 2 (1 - Tr rho_A^2); sqrt(tau) is the concurrence across the cut.

    Evaluated as 4 sum_{i<j} p_i p_j over the Schmidt weights p, which equals
    2 (1 - sum p_i^2) for normalized weights and has no cancellation near
    product states.
    """
    weights = schmidt_coefficients(psi, part) ** 2
    weights = weights / np.sum(weights)
    tail = np.cumsum(weights[::-1])[::-1]
    return float(4.0 * np.sum(weights[:-1] * tail[1:]))


def concurrence_one_vs_rest_closed(p: SearchParams, t):
    """sqrt((N - 2) / 2N) |sin(2Et / sqrt(N))|, one qubit against the rest."""
    p.require_uniform("concurrence_one_vs_rest_closed")
    t = _times(t)
    N = p.dim
    return _scalar_or_array(
        math.sqrt((N - 2) / (2 * N)) * np.abs(np.sin(2.0 * p.energy * t / math.sqrt(N)))
    )


def concurrence_rate_closed(p: SearchParams, t):
    """(E sqrt(2 (N - 2)) / N) cos(2Et / sqrt(N)).

    This is the derivative of the signed expression; where the sine is
    negative the one-vs-rest concurrence falls at minus this rate.
    """
    p.require_uniform("concurrence_rate_closed")
    t = _times(t)
    N = p.dim
    return _scalar_or_array(
        p.energy * math.sqrt(2 * (N - 2)) / N * np.cos(2.0 * p.energy * t / math.sqrt(N))
    )


def wootters_concurrence(rho: DensityMatrix) -> float:
    """max(l1 - l2 - l3 - l4, 0) over the roots of rho * gamma."""
    return PairEigs.from_density_matrix(rho).concurrence


def pair_density_matrix(psi: StateVector, i: int, j: int) -> DensityMatrix:
    """Reduced state of qubits i and j; the state itself for two qubits."""
    n = psi.n_qubits
    if i == j or not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"Need two distinct qubits in [0, {n})")
    rho = outer(psi) if n == 2 else reduced_density_matrix(psi, Bipartition(n, [i, j]))
    if i > j:
        # rows follow the requested qubit order
        swap = np.eye(4)[[0, 2, 1, 3]]
        rho = DensityMatrix(swap @ rho.entries @ swap)
    return rho


def pair_concurrence(psi: StateVector, i: int, j: int) -> float:
    """Wootters concurrence of qubits i and j of a pure state.

    Works from the 4 x 2**(n-2) amplitude matrix, which factors the pair
    state, instead of the square root of its density matrix.
    """
    n = psi.n_qubits
    if i == j or not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"Need two distinct qubits in [0, {n})")
    return PairEigs.from_factor(amplitude_matrix(psi, [i, j])).concurrence


def pair_concurrence_closed(p: SearchParams, t):
    """(1 / sqrt(N)) |sin(2Et / sqrt(N))|, identical for every pair of qubits."""
    _require_register(p, "pair_concurrence_closed")
    t = _times(t)
    N = p.dim
    return _scalar_or_array(np.abs(np.sin(2.0 * p.energy * t / math.sqrt(N))) / math.sqrt(N))


def pair_spin_flip_roots_closed(p: SearchParams, t: float) -> PairEigs:
    """Closed-form roots of rho_AB * gamma: two vanish, the others are
    ((sqrt(N) +- 2) / (4 sqrt(N))) |sin(2Et / sqrt(N))|.
    """
    _require_register(p, "pair_spin_flip_roots_closed")
    N = p.dim
    amplitude = abs(math.sin(2.0 * p.energy * float(_times(t)) / math.sqrt(N)))
    scale = 4.0 * math.sqrt(N)
    upper = (math.sqrt(N) + 2.0) / scale * amplitude
    lower = (math.sqrt(N) - 2.0) / scale * amplitude
    return PairEigs((upper, lower, 0.0, 0.0))


def eof_from_concurrence(C):
    """Two-qubit entanglement of formation H((1 + sqrt(1 - C^2)) / 2), in bits.

    Args:
        C (float, ndarray): concurrence in [0, 1]

    Raises:
        ValueError: if C lies outside [0, 1]
    """
    C = np.asarray(C, dtype=float)
    if np.any(C < -1e-12) or np.any(C > 1 + 1e-12):
        raise ValueError("Concurrence must lie in [0, 1]")
    C = np.clip(C, 0.0, 1.0)
    return binary_entropy((1.0 + np.sqrt(1.0 - C**2)) / 2.0)
