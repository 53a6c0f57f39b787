import logging
import math
from dataclasses import dataclass

import numpy as np

from .analog_search import SearchParams, _scalar_or_array, _times
from .entanglement import (
    concurrence_one_vs_rest_closed,
    eof_from_concurrence,
    pair_concurrence,
    pair_concurrence_closed,
    tangle,
)
from .qmath import Bipartition, StateVector

logger = logging.getLogger(__name__)

NEGATIVE_SCORE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class MonogamyReport:
    """One-vs-rest correlation of an anchor qubit against the sum of its
    pairwise correlations.

    Attributes:
        t (float): time the state belongs to (0 when not on a trajectory)
        c_sq_one_vs_rest (float): C^2 of the anchor against the rest
        sum_pair_c_sq (float): sum over the other qubits of the pair C^2
        delta_c (float): c_sq_one_vs_rest - sum_pair_c_sq
        delta_eof_sq (float): the same score built from the squared
            entanglement of formation
    """

    t: float
    c_sq_one_vs_rest: float
    sum_pair_c_sq: float
    delta_c: float
    delta_eof_sq: float

    def __post_init__(self):
        expected = self.c_sq_one_vs_rest - self.sum_pair_c_sq
        if abs(self.delta_c - expected) > 1e-12:
            raise ValueError(
                f"delta_c {self.delta_c!r} does not match its parts ({expected!r})"
            )

    @property
    def satisfied(self):
        return self.delta_c >= -NEGATIVE_SCORE_TOLERANCE


def ckw_check(
    psi: StateVector, n: int, anchor: int = 0, squared: bool = True, t: float = 0.0
) -> MonogamyReport:
    """Coffman-Kundu-Wootters check of a pure n-qubit state,
    sum_j C^2(anchor, j) <= C^2(anchor | rest).

    Args:
        psi (StateVector): pure state of n qubits
        n (int): number of qubits, at least 2
        anchor (int): the qubit playing A. Defaults to 0.
        squared (bool): False uses the unsquared concurrences, which need
            not obey the inequality. Defaults to True.
        t (float): time stamp stored in the report. Defaults to 0.

    Returns:
        MonogamyReport: the two sides, their difference and the squared
            entanglement of formation score
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 2:
        raise ValueError("A monogamy check needs an integer n >= 2")
    if psi.n_qubits != n:
        raise ValueError(f"State holds {psi.n_qubits} qubits, expected {n}")
    if not 0 <= anchor < n:
        raise ValueError(f"anchor must lie in [0, {n})")

    c_one_vs_rest = math.sqrt(tangle(psi, Bipartition(n, [anchor])))
    pair_c = [pair_concurrence(psi, anchor, j) for j in range(n) if j != anchor]

    power = 2 if squared else 1
    one_vs_rest = c_one_vs_rest**power
    pairs = float(sum(c**power for c in pair_c))

    eof_one_vs_rest = float(eof_from_concurrence(min(c_one_vs_rest, 1.0)))
    eof_pairs = float(sum(eof_from_concurrence(min(c, 1.0)) ** 2 for c in pair_c))

    report = MonogamyReport(
        t=float(t),
        c_sq_one_vs_rest=one_vs_rest,
        sum_pair_c_sq=pairs,
        delta_c=one_vs_rest - pairs,
        delta_eof_sq=eof_one_vs_rest**2 - eof_pairs,
    )
    if squared and not report.satisfied:
        logger.warning("CKW inequality violated by %.3e at t=%g", -report.delta_c, t)
    return report


def monogamy_score_closed(p: SearchParams, t, squared: bool = True):
    """Monogamy score of the analog search state,
    ((N - 2) / 2N - log2(N / 2) / N) sin^2(2Et / sqrt(N)) for squared
    concurrences.

    With squared=False the score of the plain concurrences is returned,
    which turns negative for small registers.
    """
    if p.dim < 4:
        raise ValueError("The monogamy score needs at least two qubits (N >= 4)")
    one_vs_rest = concurrence_one_vs_rest_closed(p, t)
    pair = pair_concurrence_closed(p, t)
    power = 2 if squared else 1
    score = np.asarray(one_vs_rest) ** power - (p.n_qubits - 1) * np.asarray(pair) ** power
    return _scalar_or_array(score)


def monogamy_score_eof_sq(psi: StateVector, n: int) -> float:
    """E_f^2(A | rest) - sum_j E_f^2(A, j), evaluated on the state."""
    return ckw_check(psi, n).delta_eof_sq


def monogamy_score_eof_sq_closed(p: SearchParams, t):
    """Squared entanglement of formation score composed from the closed form
    concurrences, every pair contributing equally.
    """
    if p.dim < 4:
        raise ValueError("The monogamy score needs at least two qubits (N >= 4)")
    _times(t)
    one_vs_rest = eof_from_concurrence(concurrence_one_vs_rest_closed(p, t))
    pair = eof_from_concurrence(pair_concurrence_closed(p, t))
    score = np.asarray(one_vs_rest) ** 2 - (p.n_qubits - 1) * np.asarray(pair) ** 2
    return _scalar_or_array(score)
