"""coherence.py

The l1-norm and relative entropy coherence monotones, their closed forms for
the analog search state, and the same quantities in the computational basis
of the n-qubit register.
"""

import logging
import math

import numpy as np

from .analog_search import (
    SearchParams,
    _scalar_or_array,
    _times,
    evolve_closed_form,
    success_probability,
)
from .qmath import (
    DensityMatrix,
    StateVector,
    binary_entropy,
    log_base_value,
    shannon_entropy,
    von_neumann_entropy,
)

logger = logging.getLogger(__name__)

PROBABILITY_TOLERANCE = 1e-12


def _probabilities(P):
    P = np.asarray(P, dtype=float)
    if np.any(P < -PROBABILITY_TOLERANCE) or np.any(P > 1 + PROBABILITY_TOLERANCE):
        raise ValueError("Probability must lie in [0, 1]")
    return np.clip(P, 0.0, 1.0)


def l1_coherence(rho: DensityMatrix) -> float:
    """Sum of the moduli of the off-diagonal entries of rho."""
    entries = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho)
    magnitudes = np.abs(entries)
    return max(0.0, float(np.sum(magnitudes) - np.trace(magnitudes)))


def l1_coherence_of_state(psi: StateVector) -> float:
    """Computational basis l1 coherence of |psi><psi|, (sum_i |psi_i|)^2 - 1."""
    amplitudes = psi.amplitudes if isinstance(psi, StateVector) else np.asarray(psi)
    return max(0.0, float(np.sum(np.abs(amplitudes)) ** 2 - 1.0))


def rel_ent_coherence(rho: DensityMatrix, log_base=2) -> float:
    """S(rho_diag) - S(rho)."""
    value = shannon_entropy(rho.diagonal(), log_base) - von_neumann_entropy(rho, log_base)
    return max(0.0, value)


def l1_from_probability(P):
    """C_l1 = 2 sqrt(P (1 - P)).

    Args:
        P (float, ndarray): success probability in [0, 1]

    Raises:
        ValueError: if P lies outside [0, 1]
    """
    P = _probabilities(P)
    return _scalar_or_array(2.0 * np.sqrt(np.maximum(P * (1.0 - P), 0.0)))


def rel_ent_from_probability(P, log_base=2):
    """C_r = H(P), the binary entropy of the success probability."""
    return binary_entropy(_probabilities(P), log_base)


def coherence_closed_form(p: SearchParams, t, log_base=2):
    """Both monotones of the analog search state in the {|w>, |r>} basis,
    written in t rather than in P.

    Returns:
        (float, ndarray), (float, ndarray): C_l1 and C_r
    """
    t = _times(t)
    x = p.x
    c_sq = np.cos(p.energy * x * t) ** 2
    s_sq = np.sin(p.energy * x * t) ** 2
    r_population = np.clip((1.0 - x**2) * c_sq, 0.0, 1.0)
    w_population = np.clip(x**2 * c_sq + s_sq, 0.0, 1.0)
    l1 = 2.0 * np.sqrt(c_sq) * np.sqrt(np.maximum((1.0 - x**2) * w_population, 0.0))
    rel_ent = -(_xlogx(r_population) + _xlogx(w_population)) / math.log(
        log_base_value(log_base)
    )
    return _scalar_or_array(l1), _scalar_or_array(np.maximum(rel_ent, 0.0))


def _xlogx(q):
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(q > 0, q * np.log(np.where(q > 0, q, 1.0)), 0.0)


def coherence_two_level(p: SearchParams, t: float, log_base=2):
    """C_l1 and C_r measured on the evolved 2 x 2 density matrix."""
    rho = evolve_closed_form(p, t).density_matrix()
    return l1_coherence(rho), rel_ent_coherence(rho, log_base)


def l1_coherence_full_basis_closed(p: SearchParams, t):
    """Computational basis l1 coherence of the n-qubit search state,
    (|alpha| + sqrt(N - 1) |beta|)^2 - 1.

    Equals N - 1 (maximal) at t = 0 and vanishes at the success peak.
    """
    p.require_uniform("l1_coherence_full_basis_closed")
    t = _times(t)
    x = p.x
    phase = p.energy * x * t
    alpha = np.sqrt(x**2 * np.cos(phase) ** 2 + np.sin(phase) ** 2)
    beta = math.sqrt(1.0 - x**2) * np.abs(np.cos(phase))
    value = (alpha + math.sqrt(p.dim - 1) * beta) ** 2 - 1.0
    return _scalar_or_array(np.maximum(value, 0.0))


def coherence_from_probability(p: SearchParams, t, log_base=2):
    """C_l1 and C_r routed through P(t); the middle leg of the identity chain."""
    P = success_probability(p, t)
    return l1_from_probability(P), rel_ent_from_probability(P, log_base)
