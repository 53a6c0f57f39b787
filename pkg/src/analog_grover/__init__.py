try:
    from importlib.metadata import version, PackageNotFoundError
except (ModuleNotFoundError, ImportError):
    from importlib_metadata import version, PackageNotFoundError
try:
    __version__ = version("analog_grover")
except PackageNotFoundError:
    from setuptools_scm import get_version

    __version__ = get_version(root="..", relative_to=__file__)

__all__ = ["__version__"]

from .qmath import StateVector, DensityMatrix, Bipartition
from .analog_search import (
    SearchParams,
    TwoLevelState,
    evolve_closed_form,
    evolve_numeric,
    embed_full,
    peak_time,
    propagate,
    success_probability,
)
from .coherence import (
    coherence_closed_form,
    l1_coherence,
    l1_from_probability,
    rel_ent_coherence,
    rel_ent_from_probability,
)
from .entanglement import (
    PairEigs,
    concurrence_one_vs_rest_closed,
    concurrence_rate_closed,
    entanglement_entropy,
    eof_from_concurrence,
    pair_concurrence,
    pair_concurrence_closed,
    rdm_eigvals_closed,
    single_qubit_rdm_closed,
    tangle,
    wootters_concurrence,
)
from .monogamy import (
    MonogamyReport,
    ckw_check,
    monogamy_score_closed,
    monogamy_score_eof_sq,
)
from .grover_discrete import GroverTrace, grover_step, grover_trace
from .sweep import SweepRecord, sweep_records
from .config import RunConfig
