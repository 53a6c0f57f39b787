import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .analog_search import SearchParams
from .grover_discrete import default_iteration_count, grover_trace
from .sweep import rows_from_columns, sweep_columns

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FigureSpec:
    """Column set and default parameters of one reproducible figure.

    Attributes:
        name (str): the figure id as given on the command line
        columns (tuple of str): emitted columns, in order
        defaults (dict): RunConfig defaults, overridden by user flags
        discrete (bool): rows are Grover iterations rather than grid times
    """

    name: str
    columns: Tuple[str, ...]
    description: str
    defaults: Dict[str, object] = field(default_factory=dict)
    discrete: bool = False


FIGURES: Dict[str, FigureSpec] = {
    spec.name: spec
    for spec in [
        FigureSpec(
            "1",
            ("t", "P", "C_l1", "C_r"),
            "l1-norm and relative entropy of coherence with the success probability",
            {"n_qubits": 1, "energy": 1.0, "overlap": 0.707},
        ),
        FigureSpec(
            "2",
            ("t", "P", "S_ent", "C_1_rest"),
            "entanglement entropy and one-vs-rest concurrence with the success probability",
            {"n_qubits": 2, "energy": 1.0},
        ),
        FigureSpec(
            "3a",
            ("t", "dC_dt"),
            "rate of change of the one-vs-rest concurrence, analog search",
            {"n_qubits": 2, "energy": 1.0},
        ),
        FigureSpec(
            "3b",
            ("k", "P", "C_1_rest", "dC"),
            "per-iteration change of the one-vs-rest concurrence, circuit Grover search",
            {"n_qubits": 2, "energy": 1.0},
            discrete=True,
        ),
        FigureSpec(
            "4",
            ("t", "C_pair", "dP_dt"),
            "two-qubit concurrence with the rate of the success probability",
            {"n_qubits": 2, "energy": 1.0},
        ),
        FigureSpec(
            "5",
            ("t", "P", "delta_C", "delta_EoF2"),
            "monogamy scores of the squared concurrence and squared entanglement of formation",
            {"n_qubits": 5, "energy": 1.0},
        ),
    ]
}


def get_figure(name: str) -> FigureSpec:
    try:
        return FIGURES[name]
    except KeyError as e:
        raise ValueError(f"Unknown figure {name!r}, options are {list(FIGURES)}") from e


def grover_rows(p: SearchParams, k_max: Optional[int] = None) -> List[Dict]:
    """(k, P, C_1_rest, dC) rows of a Grover run; dC is empty on the last row."""
    k_max = default_iteration_count(p) if k_max is None else k_max
    trace = grover_trace(p, k_max)
    differences = list(trace.concurrence_differences()) + [None]
    return [
        {
            "k": item.k,
            "P": item.success_prob,
            "C_1_rest": item.concurrence_one_vs_rest if p.n_qubits >= 2 else None,
            "dC": None if delta is None or p.n_qubits < 2 else float(delta),
        }
        for item, delta in zip(trace, differences)
    ]


def figure_rows(
    figure: FigureSpec, p: SearchParams, times=None, log_base="2", k_max: Optional[int] = None
) -> List[Dict]:
    """Data rows of a figure, keyed by its column names."""
    if figure.discrete:
        rows = grover_rows(p, k_max)
    else:
        if times is None:
            raise ValueError(f"Figure {figure.name} needs a time grid")
        rows = rows_from_columns(sweep_columns(p, times, figure.columns, log_base))
    logger.info("figure %s: %d rows", figure.name, len(rows))
    return rows
