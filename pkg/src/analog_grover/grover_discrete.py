"""grover_discrete.py

The circuit model Grover iteration (oracle sign flip followed by inversion
about the mean) on the same register as the analog search, with the
entanglement of every iterate.
"""

import logging
import math
from dataclasses import dataclass
from typing import List

import numpy as np

from .analog_search import SearchParams, _scalar_or_array, uniform_state
from .entanglement import pair_concurrence, tangle
from .qmath import Bipartition, StateVector

logger = logging.getLogger(__name__)


def grover_step(psi: StateVector, w: int) -> StateVector:
    """One Grover iteration: flip the sign of |w>, then reflect about |s>.

    Args:
        psi (StateVector): current state
        w (int): marked index

    Returns:
        StateVector: (2|s><s| - I) O_w |psi>
    """
    amplitudes = np.array(psi.amplitudes, dtype=complex)
    if not 0 <= w < amplitudes.size:
        raise ValueError(f"Marked index must lie in [0, {amplitudes.size})")
    amplitudes[w] = -amplitudes[w]
    return StateVector(2.0 * np.mean(amplitudes) - amplitudes)


@dataclass(frozen=True)
class GroverIteration:
    k: int
    success_prob: float
    concurrence_one_vs_rest: float
    concurrence_pair: float = 0.0


class GroverTrace:
    """Ordered record of a Grover run, one entry per iteration count k.

    Args:
        iterations (list of GroverIteration): k must run 0, 1, 2, ...
    """

    def __init__(self, iterations: List[GroverIteration]):
        iterations = list(iterations)
        if not iterations:
            raise ValueError("A GroverTrace needs at least one iteration")
        for expected, item in enumerate(iterations):
            if item.k != expected:
                raise ValueError("Iterations must be numbered 0, 1, 2, ... without gaps")
            if not -1e-12 <= item.success_prob <= 1 + 1e-12:
                raise ValueError(f"Success probability {item.success_prob!r} outside [0, 1]")
            if item.concurrence_one_vs_rest < 0:
                raise ValueError("Concurrence must not be negative")
        self._iterations = tuple(iterations)

    @property
    def iterations(self):
        return self._iterations

    def __len__(self):
        return len(self._iterations)

    def __iter__(self):
        return iter(self._iterations)

    @property
    def success_probabilities(self):
        return np.array([item.success_prob for item in self._iterations])

    @property
    def concurrences(self):
        return np.array([item.concurrence_one_vs_rest for item in self._iterations])

    def concurrence_differences(self):
        """C(k + 1) - C(k) for k = 0 .. k_max - 1, the discrete rate."""
        return np.diff(self.concurrences)


def rotation_angle(p: SearchParams) -> float:
    """theta = arcsin(1 / sqrt(N)), half the rotation of one iteration."""
    return math.asin(1.0 / math.sqrt(p.dim))


def amplitude_closed(p: SearchParams, k):
    """<w|psi_k> = sin((2k + 1) theta)."""
    k = np.asarray(k)
    if np.any(k < 0):
        raise ValueError("Iteration count must not be negative")
    return _scalar_or_array(np.sin((2 * k + 1) * rotation_angle(p)))


def optimal_iterations(p: SearchParams) -> int:
    """round(pi sqrt(N) / 4 - 1/2), the iteration count closest to the peak."""
    return int(round(math.pi * math.sqrt(p.dim) / 4.0 - 0.5))


def default_iteration_count(p: SearchParams) -> int:
    """Enough iterations to cover two success probability peaks."""
    return int(math.ceil(math.pi / rotation_angle(p) - 1e-9))


def grover_trace(p: SearchParams, k_max: int) -> GroverTrace:
    """Runs k_max Grover iterations from |s> and records every iterate.

    Args:
        p (SearchParams): register size and marked index, uniform overlap
        k_max (int): number of iterations, at least 1

    Returns:
        GroverTrace: k_max + 1 entries, k = 0 being the start state
    """
    if isinstance(k_max, bool) or not isinstance(k_max, (int, np.integer)) or k_max < 1:
        raise ValueError("k_max must be an integer greater or equal to 1")

    psi = uniform_state(p)
    iterations = []
    for k in range(int(k_max) + 1):
        if k:
            psi = grover_step(psi, p.marked)
        success = min(1.0, abs(psi.amplitudes[p.marked]) ** 2)
        if p.n_qubits >= 2:
            c_one_vs_rest = math.sqrt(tangle(psi, Bipartition(p.n_qubits, [0])))
            c_pair = pair_concurrence(psi, 0, 1)
        else:
            c_one_vs_rest = c_pair = 0.0
        iterations.append(GroverIteration(k, success, c_one_vs_rest, c_pair))
    logger.debug("ran %d Grover iterations at N=%d", k_max, p.dim)
    return GroverTrace(iterations)
