"""sweep.py

Evaluates the search observables over a time grid and serializes the rows.
Every column is computed for the whole grid at once; a column that does not
exist for the configuration (entanglement of a single qubit, or a
non-uniform start state) is emitted as empty fields.
"""

import csv
import json
import logging
import math
from dataclasses import asdict, dataclass, fields
from typing import Dict, List, Optional, Sequence

import numpy as np

from .analog_search import (
    SearchParams,
    embed_full,
    evolve_closed_form,
    peak_time,
    success_probability,
    success_probability_rate,
)
from .coherence import coherence_closed_form
from .entanglement import (
    concurrence_one_vs_rest_closed,
    concurrence_rate_closed,
    pair_concurrence_closed,
    rdm_eigvals_closed,
)
from .monogamy import ckw_check, monogamy_score_closed
from .qmath import binary_entropy

logger = logging.getLogger(__name__)

SIGNIFICANT_DIGITS = 12
NEGATIVE_TOLERANCE = 1e-9
# every field but t, P and the signed rate dC_dt
NON_NEGATIVE = ("C_l1", "C_r", "S_ent", "C_1_rest", "C_pair", "delta_C", "delta_EoF2")


@dataclass(frozen=True)
class SweepRecord:
    """Observables of the search state at one grid time. Entanglement fields
    are None where they are undefined.
    """

    t: float
    P: float
    C_l1: float
    C_r: float
    S_ent: Optional[float] = None
    C_1_rest: Optional[float] = None
    dC_dt: Optional[float] = None
    C_pair: Optional[float] = None
    delta_C: Optional[float] = None
    delta_EoF2: Optional[float] = None

    def __post_init__(self):
        for name, value in asdict(self).items():
            if value is not None and not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if not 0.0 <= self.P <= 1.0:
            raise ValueError(f"P must lie in [0, 1], got {self.P!r}")
        for name in NON_NEGATIVE:
            value = getattr(self, name)
            if value is not None and value < -NEGATIVE_TOLERANCE:
                raise ValueError(f"{name} must not be negative, got {value!r}")


FIELDS = tuple(f.name for f in fields(SweepRecord))


def time_grid(t_max: float, steps: int) -> np.ndarray:
    """steps equally spaced times covering [0, t_max], both ends included."""
    if isinstance(steps, bool) or not isinstance(steps, (int, np.integer)) or steps < 2:
        raise ValueError("steps must be an integer greater or equal to 2")
    if not (math.isfinite(t_max) and t_max > 0):
        raise ValueError("t_max must be a finite number strictly greater than 0")
    return np.linspace(0.0, float(t_max), int(steps))


def default_t_max(p: SearchParams) -> float:
    """Two peak times, one full period of the success probability."""
    return 2.0 * peak_time(p)


def has_entanglement(p: SearchParams) -> bool:
    return p.is_uniform and p.n_qubits >= 2


def _l1(p, times, log_base):
    return coherence_closed_form(p, times, log_base)[0]


def _rel_ent(p, times, log_base):
    return coherence_closed_form(p, times, log_base)[1]


def _entanglement_entropy(p, times, log_base):
    plus, _ = rdm_eigvals_closed(p, times)
    return binary_entropy(plus, log_base)


def _delta_eof_sq(p, times, log_base):
    return np.array(
        [
            ckw_check(embed_full(evolve_closed_form(p, t), p), p.n_qubits).delta_eof_sq
            for t in times
        ]
    )


# name -> (needs the n-qubit entanglement picture, evaluator)
COLUMNS: Dict[str, tuple] = {
    "P": (False, lambda p, times, log_base: success_probability(p, times)),
    "C_l1": (False, _l1),
    "C_r": (False, _rel_ent),
    "S_ent": (True, _entanglement_entropy),
    "C_1_rest": (True, lambda p, times, log_base: concurrence_one_vs_rest_closed(p, times)),
    "dC_dt": (True, lambda p, times, log_base: concurrence_rate_closed(p, times)),
    "C_pair": (True, lambda p, times, log_base: pair_concurrence_closed(p, times)),
    "delta_C": (True, lambda p, times, log_base: monogamy_score_closed(p, times)),
    "delta_EoF2": (True, _delta_eof_sq),
    "dP_dt": (False, lambda p, times, log_base: success_probability_rate(p, times)),
}


def sweep_columns(
    p: SearchParams, times, names: Sequence[str], log_base="2"
) -> Dict[str, List[Optional[float]]]:
    """Evaluates the named columns on the grid.

    Args:
        p (SearchParams): the problem instance
        times (ndarray): the grid
        names (sequence of str): column names, "t" and any key of COLUMNS
        log_base (str): "2" or "e", used by the entropy columns

    Returns:
        dict: column name -> list of floats (None where undefined)
    """
    times = np.asarray(times, dtype=float)
    columns = {}
    for name in names:
        if name == "t":
            columns[name] = [float(t) for t in times]
            continue
        if name not in COLUMNS:
            raise ValueError(f"Unknown column {name!r}, options are {['t', *COLUMNS]}")
        needs_entanglement, evaluate = COLUMNS[name]
        if needs_entanglement and not has_entanglement(p):
            columns[name] = [None] * times.size
            continue
        values = np.broadcast_to(np.asarray(evaluate(p, times, log_base), dtype=float), times.shape)
        columns[name] = [float(v) for v in values]
    logger.debug("evaluated %d columns on %d grid points", len(columns), times.size)
    return columns


def sweep_records(p: SearchParams, times, log_base="2") -> List[SweepRecord]:
    """One SweepRecord per grid time."""
    columns = sweep_columns(p, times, FIELDS, log_base)
    return [
        SweepRecord(**{name: columns[name][i] for name in FIELDS})
        for i in range(len(columns["t"]))
    ]


def format_value(value) -> str:
    """Renders a value with SIGNIFICANT_DIGITS digits; None becomes ""."""
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    text = format(float(value), f".{SIGNIFICANT_DIGITS}g")
    return "0" if text == "-0" else text


def _rounded(value):
    if value is None or isinstance(value, (int, np.integer)):
        return value
    return float(format_value(value))


def write_csv(rows: Sequence[Dict], columns: Sequence[str], stream):
    """Writes a header and one line per row, LF terminated."""
    writer = csv.DictWriter(stream, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({name: format_value(row[name]) for name in columns})


def write_json(rows: Sequence[Dict], columns: Sequence[str], stream, config: Optional[Dict] = None):
    """Writes {"config": ..., "records": [...]} with the CSV rounding."""
    document = {
        "config": config or {},
        "records": [{name: _rounded(row[name]) for name in columns} for row in rows],
    }
    json.dump(document, stream, indent=2)
    stream.write("\n")


def rows_from_columns(columns: Dict[str, List]) -> List[Dict]:
    names = list(columns)
    length = len(columns[names[0]]) if names else 0
    return [{name: columns[name][i] for name in names} for i in range(length)]
