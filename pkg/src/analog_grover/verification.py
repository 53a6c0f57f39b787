"""verification.py

Self-checks of the library: every closed form against the numerically
integrated oracle or against the direct measurement on the state, plus
seeded property checks on random states.

Each check returns its largest deviation, which is compared against the
tolerance it is registered with. Checks that do not apply to a
configuration (entanglement of one qubit, full-register checks for a
non-uniform overlap) are reported as skipped.
"""

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, List, Optional, Sequence

import numpy as np

from .analog_search import (
    SearchParams,
    apply_hamiltonian,
    embed_full,
    evolve_closed_form,
    peak_time,
    propagate,
    rk4_step,
    success_probability,
    uniform_state,
)
from .coherence import (
    coherence_closed_form,
    coherence_two_level,
    l1_coherence_full_basis_closed,
    l1_coherence_of_state,
    l1_from_probability,
    rel_ent_from_probability,
)
from .entanglement import (
    concurrence_one_vs_rest_closed,
    concurrence_rate_closed,
    pair_concurrence,
    pair_concurrence_closed,
    rdm_eigvals_closed,
    single_qubit_rdm_closed,
    tangle,
    wootters_concurrence,
)
from .grover_discrete import (
    amplitude_closed,
    default_iteration_count,
    grover_step,
    grover_trace,
)
from .monogamy import ckw_check, monogamy_score_closed, monogamy_score_eof_sq_closed
from .qmath import (
    Bipartition,
    DensityMatrix,
    StateVector,
    bipartitions,
    hermitian_eigvals,
    kron,
    outer,
    pure_state_distance,
    random_state,
    random_unitary,
    reduced_density_matrix,
    spin_flip,
    von_neumann_entropy,
)
from .sweep import default_t_max, time_grid

logger = logging.getLogger(__name__)

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"

# grid points kept by the checks that decompose the state at every time
SUBSAMPLE_POINTS = 50
# grid steps kept away from the zeros of sin(2Et/sqrt(N))
KINK_MARGIN = 10
FINITE_DIFFERENCE_STEP = 1e-5
RANDOM_STATE_SAMPLES = 10


@dataclass(frozen=True)
class CheckResult:
    name: str
    n_qubits: Optional[int]
    status: str
    deviation: Optional[float] = None
    tolerance: Optional[float] = None
    detail: str = ""

    @property
    def passed(self):
        return self.status != FAIL


@dataclass(frozen=True)
class Check:
    name: str
    tolerance: float
    evaluate: Callable
    requires: str = ""


def faulty_rk4_step(apply, psi, dt):
    """A Runge-Kutta step with the last stage dropped, only first order
    accurate. Used as a negative control for the suite.
    """
    dt2 = dt / 2.0

    k1 = -1j * apply(psi)
    k2 = -1j * apply(psi + k1 * dt2)
    k3 = -1j * apply(psi + k2 * dt2)

    return psi + (k1 + 2 * k2 + 2 * k3) / 6.0 * dt


class VerifyContext:
    """Shared, lazily computed data of the checks for one register size.

    Args:
        p (SearchParams): the problem instance
        steps (int): grid points on [0, 2 t_m]. Defaults to 1000.
        log_base (str): "2" or "e". Defaults to "2".
        step (callable): single step integrator of the oracle. Defaults to
            rk4_step.
    """

    def __init__(self, p: SearchParams, steps: int = 1000, log_base="2", step=rk4_step):
        self.p = p
        self.log_base = log_base
        self.step = step
        self.times = time_grid(default_t_max(p), steps)

    @cached_property
    def numeric(self):
        return propagate(self.p, self.times, step=self.step)

    @cached_property
    def closed(self):
        return [evolve_closed_form(self.p, t) for t in self.times]

    @cached_property
    def embedded(self):
        return [embed_full(state, self.p) for state in self.closed]

    @cached_property
    def subsample(self):
        count = min(SUBSAMPLE_POINTS, self.times.size)
        return np.unique(np.linspace(0, self.times.size - 1, count).round().astype(int))

    @cached_property
    def probability(self):
        return success_probability(self.p, self.times)


def _applies(requires: str, p: SearchParams) -> Optional[str]:
    """Returns the reason a check is skipped, or None."""
    if requires in ("uniform", "entanglement", "register") and not p.is_uniform:
        return "needs the uniform start state"
    if requires == "entanglement" and p.n_qubits < 2:
        return "needs at least two qubits"
    if requires == "register" and p.n_qubits < 3:
        return "needs at least three qubits"
    return None


CHECKS: List[Check] = []


def check(name: str, tolerance: float, requires: str = ""):
    def decorator(evaluate):
        CHECKS.append(Check(name, tolerance, evaluate, requires))
        return evaluate

    return decorator


@check("closed_form_vs_oracle", 1e-6, "uniform")
def _closed_form_vs_oracle(ctx: VerifyContext):
    return max(
        pure_state_distance(state, amplitudes)
        for state, amplitudes in zip(ctx.embedded, ctx.numeric)
    )


@check("norm_conservation", 1e-9, "uniform")
def _norm_conservation(ctx: VerifyContext):
    return float(np.max(np.abs(np.linalg.norm(ctx.numeric, axis=1) - 1.0)))


@check("energy_conservation", 1e-9, "uniform")
def _energy_conservation(ctx: VerifyContext):
    energies = np.array(
        [np.real(np.vdot(psi, apply_hamiltonian(ctx.p, psi))) for psi in ctx.numeric]
    )
    return float(np.max(np.abs(energies - energies[0])))


@check("success_peak", 1e-10)
def _success_peak(ctx: VerifyContext):
    p = ctx.p
    at_peak = success_probability(p, peak_time(p))
    at_start = success_probability(p, 0.0)
    return max(abs(1.0 - at_peak), abs(at_start - p.x**2))


@check("coherence_l1_identity", 1e-10)
def _coherence_l1_identity(ctx: VerifyContext):
    l1, _ = coherence_closed_form(ctx.p, ctx.times, ctx.log_base)
    return float(np.max(np.abs(l1 - l1_from_probability(ctx.probability))))


@check("coherence_rel_ent_identity", 1e-10)
def _coherence_rel_ent_identity(ctx: VerifyContext):
    _, rel_ent = coherence_closed_form(ctx.p, ctx.times, ctx.log_base)
    expected = rel_ent_from_probability(ctx.probability, ctx.log_base)
    return float(np.max(np.abs(rel_ent - expected)))


@check("coherence_two_level_measurement", 1e-10)
def _coherence_two_level_measurement(ctx: VerifyContext):
    deviation = 0.0
    for i in ctx.subsample:
        t = ctx.times[i]
        measured = coherence_two_level(ctx.p, t, ctx.log_base)
        closed = coherence_closed_form(ctx.p, t, ctx.log_base)
        deviation = max(deviation, *(abs(a - b) for a, b in zip(measured, closed)))
    return deviation


@check("coherence_minimum_at_peak", 1)
def _coherence_minimum_at_peak(ctx: VerifyContext):
    l1, rel_ent = coherence_closed_form(ctx.p, ctx.times, ctx.log_base)
    peak = int(np.argmax(ctx.probability))
    return max(abs(int(np.argmin(l1)) - peak), abs(int(np.argmin(rel_ent)) - peak))


@check("full_basis_coherence", 1e-9, "uniform")
def _full_basis_coherence(ctx: VerifyContext):
    p = ctx.p
    closed = l1_coherence_full_basis_closed(p, ctx.times)
    measured = np.array([l1_coherence_of_state(state) for state in ctx.embedded])
    return max(
        abs(l1_coherence_full_basis_closed(p, 0.0) - (p.dim - 1)),
        l1_coherence_full_basis_closed(p, peak_time(p)),
        float(np.max(np.abs(closed - measured))),
    )


@check("rdm_closed_form", 1e-10, "entanglement")
def _rdm_closed_form(ctx: VerifyContext):
    p = ctx.p
    deviation = 0.0
    for i in ctx.subsample:
        for qubit in range(p.n_qubits):
            closed = single_qubit_rdm_closed(p, ctx.times[i], qubit)
            numeric = reduced_density_matrix(ctx.embedded[i], Bipartition(p.n_qubits, [qubit]))
            deviation = max(deviation, float(np.max(np.abs(closed.entries - numeric.entries))))
    return deviation


@check("rdm_eigenvalues", 1e-10, "entanglement")
def _rdm_eigenvalues(ctx: VerifyContext):
    part = Bipartition(ctx.p.n_qubits, [0])
    plus, minus = rdm_eigvals_closed(ctx.p, ctx.times)
    closed = np.column_stack([plus, minus])
    numeric = np.array(
        [hermitian_eigvals(reduced_density_matrix(state, part)) for state in ctx.embedded]
    )
    return float(np.max(np.abs(closed - numeric)))


@check("tangle_determinant", 1e-10, "entanglement")
def _tangle_determinant(ctx: VerifyContext):
    part = Bipartition(ctx.p.n_qubits, [0])
    plus, minus = rdm_eigvals_closed(ctx.p, ctx.times)
    numeric = np.array([tangle(state, part) for state in ctx.embedded])
    return float(np.max(np.abs(numeric - 4.0 * plus * minus)))


@check("one_vs_rest_concurrence", 1e-10, "entanglement")
def _one_vs_rest_concurrence(ctx: VerifyContext):
    part = Bipartition(ctx.p.n_qubits, [0])
    numeric = np.sqrt([tangle(state, part) for state in ctx.embedded])
    closed = concurrence_one_vs_rest_closed(ctx.p, ctx.times)
    return float(np.max(np.abs(numeric - closed)))


@check("pair_concurrence", 1e-9, "entanglement")
def _pair_concurrence(ctx: VerifyContext):
    n = ctx.p.n_qubits
    deviation = 0.0
    for i in ctx.subsample:
        closed = pair_concurrence_closed(ctx.p, ctx.times[i])
        for a in range(n):
            for b in range(a + 1, n):
                numeric = pair_concurrence(ctx.embedded[i], a, b)
                deviation = max(deviation, abs(numeric - closed))
    return deviation


@check("concurrence_rate", 1e-6, "entanglement")
def _concurrence_rate(ctx: VerifyContext):
    p = ctx.p
    phase = 2.0 * p.energy * ctx.times / math.sqrt(p.dim)
    spacing = ctx.times[1] - ctx.times[0]
    # distance to the nearest zero of the sine, in grid steps
    kink_distance = np.abs(phase - np.pi * np.round(phase / np.pi)) * math.sqrt(p.dim)
    kink_distance /= 2.0 * p.energy * spacing
    t = ctx.times[kink_distance > KINK_MARGIN]
    if t.size == 0:
        return 0.0
    h = FINITE_DIFFERENCE_STEP
    differences = (
        concurrence_one_vs_rest_closed(p, t + h) - concurrence_one_vs_rest_closed(p, t - h)
    ) / (2.0 * h)
    signed_rate = np.sign(np.sin(2.0 * p.energy * t / math.sqrt(p.dim))) * concurrence_rate_closed(
        p, t
    )
    return float(np.max(np.abs(differences - signed_rate)))


def _ckw_reports(ctx: VerifyContext):
    return [ckw_check(ctx.embedded[i], ctx.p.n_qubits, t=ctx.times[i]) for i in ctx.subsample]


@check("monogamy_nonnegative", 1e-9, "entanglement")
def _monogamy_nonnegative(ctx: VerifyContext):
    closed = monogamy_score_closed(ctx.p, ctx.times)
    numeric = [report.delta_c for report in _ckw_reports(ctx)]
    return max(0.0, -float(np.min(closed)), -min(numeric))


@check("monogamy_closed_vs_numeric", 1e-8, "entanglement")
def _monogamy_closed_vs_numeric(ctx: VerifyContext):
    return max(
        abs(report.delta_c - monogamy_score_closed(ctx.p, report.t))
        for report in _ckw_reports(ctx)
    )


@check("eof_monogamy_nonnegative", 1e-9, "entanglement")
def _eof_monogamy_nonnegative(ctx: VerifyContext):
    closed = monogamy_score_eof_sq_closed(ctx.p, ctx.times)
    numeric = [report.delta_eof_sq for report in _ckw_reports(ctx)]
    return max(0.0, -float(np.min(closed)), -min(numeric))


@check("eof_monogamy_closed_vs_numeric", 1e-9, "entanglement")
def _eof_monogamy_closed_vs_numeric(ctx: VerifyContext):
    return max(
        abs(report.delta_eof_sq - monogamy_score_eof_sq_closed(ctx.p, report.t))
        for report in _ckw_reports(ctx)
    )


@check("grover_amplitudes", 1e-10, "uniform")
def _grover_amplitudes(ctx: VerifyContext):
    p = ctx.p
    psi = uniform_state(p)
    others = np.arange(p.dim) != p.marked
    deviation = 0.0
    for k in range(default_iteration_count(p) + 1):
        if k:
            psi = grover_step(psi, p.marked)
        amplitudes = psi.amplitudes
        deviation = max(
            deviation,
            abs(amplitudes[p.marked] - amplitude_closed(p, k)),
            # the iterate stays in span{|w>, |r>}
            float(np.ptp(amplitudes[others].real)) if others.any() else 0.0,
            float(np.max(np.abs(amplitudes.imag))),
        )
    return deviation


@check("grover_ratio", 1e-10, "entanglement")
def _grover_ratio(ctx: VerifyContext):
    p = ctx.p
    ratio = math.sqrt((p.dim - 2) / 2.0)
    trace = grover_trace(p, default_iteration_count(p))
    return max(
        abs(item.concurrence_one_vs_rest - ratio * item.concurrence_pair) for item in trace
    )


@check("grover_rate_sign", 0, "register")
def _grover_rate_sign(ctx: VerifyContext):
    trace = grover_trace(ctx.p, default_iteration_count(ctx.p))
    differences = trace.concurrence_differences()
    probabilities = trace.success_probabilities
    # first peak of the success probability
    peak = next(
        (k for k in range(probabilities.size - 1) if probabilities[k + 1] < probabilities[k]),
        probabilities.size - 1,
    )
    turns = [k for k in range(1, differences.size) if differences[k - 1] < 0 < differences[k]]
    if not turns:
        return math.inf
    return abs(turns[0] - peak)


def run_checks(
    p: SearchParams,
    steps: int = 1000,
    log_base="2",
    step=rk4_step,
    checks: Optional[Sequence[Check]] = None,
) -> List[CheckResult]:
    """Runs the per register checks for one problem instance."""
    ctx = VerifyContext(p, steps=steps, log_base=log_base, step=step)
    results = []
    for item in CHECKS if checks is None else checks:
        reason = _applies(item.requires, p)
        if reason is not None:
            results.append(CheckResult(item.name, p.n_qubits, SKIP, detail=reason))
            continue
        try:
            deviation = float(item.evaluate(ctx))
        except ValueError as e:
            results.append(
                CheckResult(item.name, p.n_qubits, FAIL, tolerance=item.tolerance, detail=str(e))
            )
            continue
        status = PASS if deviation <= item.tolerance else FAIL
        results.append(CheckResult(item.name, p.n_qubits, status, deviation, item.tolerance))
        logger.debug("%s n=%d: %s (%.3e)", item.name, p.n_qubits, status, deviation)
    return results


def _bell_state():
    return StateVector(np.array([1, 0, 0, 1]) / math.sqrt(2))


def _ghz_state(n):
    amplitudes = np.zeros(2**n)
    amplitudes[0] = amplitudes[-1] = 1 / math.sqrt(2)
    return StateVector(amplitudes)


def _w_state(n):
    amplitudes = np.zeros(2**n)
    amplitudes[[2**q for q in range(n)]] = 1 / math.sqrt(n)
    return StateVector(amplitudes)


def _wootters_sanity(rng):
    bell = wootters_concurrence(outer(_bell_state()))
    mixed = wootters_concurrence(DensityMatrix(np.eye(4) / 4))
    ghz_pairs = max(pair_concurrence(_ghz_state(3), i, j) for i, j in [(0, 1), (0, 2), (1, 2)])
    w_report = ckw_check(_w_state(3), 3)
    return max(abs(bell - 1.0), mixed, ghz_pairs, abs(w_report.delta_c))


def _schmidt_symmetry(rng):
    deviation = 0.0
    for _ in range(RANDOM_STATE_SAMPLES):
        n = int(rng.integers(2, 7))
        psi = random_state(n, rng)
        for part, complement in bipartitions(n):
            a = von_neumann_entropy(reduced_density_matrix(psi, part))
            b = von_neumann_entropy(reduced_density_matrix(psi, complement))
            deviation = max(deviation, abs(a - b))
    return deviation


def _spin_flip_involution(rng):
    deviation = 0.0
    for _ in range(RANDOM_STATE_SAMPLES):
        psi = random_state(3, rng)
        rho = reduced_density_matrix(psi, Bipartition(3, [0, 1]))
        deviation = max(deviation, float(np.max(np.abs(spin_flip(spin_flip(rho)) - rho.entries))))
        # concurrence is blind to local unitaries
        local = kron(random_unitary(2, rng), random_unitary(2, rng), np.eye(2))
        rotated = StateVector(local @ psi.amplitudes)
        deviation = max(
            deviation, abs(pair_concurrence(psi, 0, 1) - pair_concurrence(rotated, 0, 1))
        )
    return deviation


def _rate_limit(energy):
    """N |rate(0) - E sqrt(2/N)| for n = 4, 6, 8, 10, which must shrink."""
    scaled = []
    for n in (4, 6, 8, 10):
        p = SearchParams(n_qubits=n, energy=energy)
        gap = abs(concurrence_rate_closed(p, 0.0) - energy * math.sqrt(2.0 / p.dim))
        scaled.append(p.dim * gap / energy)
    if any(b >= a for a, b in zip(scaled, scaled[1:])):
        return math.inf
    return max(scaled)


def run_global_checks(energy: float = 1.0, seed: int = 0) -> List[CheckResult]:
    """Checks that do not depend on the register size of the run."""
    rng = np.random.default_rng(seed)
    items = [
        ("wootters_sanity", 1e-9, lambda: _wootters_sanity(rng)),
        ("schmidt_symmetry", 1e-9, lambda: _schmidt_symmetry(rng)),
        ("spin_flip_involution", 1e-9, lambda: _spin_flip_involution(rng)),
        ("concurrence_rate_limit", 1.0, lambda: _rate_limit(energy)),
    ]
    results = []
    for name, tolerance, evaluate in items:
        deviation = float(evaluate())
        status = PASS if deviation <= tolerance else FAIL
        results.append(CheckResult(name, None, status, deviation, tolerance))
    return results


def run_suite(
    n_values: Sequence[int],
    energy: float = 1.0,
    overlap: Optional[float] = None,
    marked: int = 0,
    steps: int = 1000,
    log_base="2",
    seed: int = 0,
    step=rk4_step,
) -> List[CheckResult]:
    """Runs the global checks once and the per register checks for every n."""
    results = run_global_checks(energy, seed)
    for n in n_values:
        p = SearchParams(n_qubits=n, energy=energy, overlap=overlap, marked=marked)
        logger.info("verifying n=%d", n)
        results.extend(run_checks(p, steps=steps, log_base=log_base, step=step))
    return results


def format_results(results: Sequence[CheckResult]) -> str:
    """Plain text table, one line per check."""
    lines = [f"{'check':<34}{'n':>3}  {'status':<6}{'deviation':>12}{'tolerance':>12}"]
    for r in results:
        n = "-" if r.n_qubits is None else str(r.n_qubits)
        deviation = "" if r.deviation is None else f"{r.deviation:.3e}"
        tolerance = "" if r.tolerance is None else f"{r.tolerance:.0e}"
        line = f"{r.name:<34}{n:>3}  {r.status:<6}{deviation:>12}{tolerance:>12}"
        if r.detail:
            line += f"  {r.detail}"
        lines.append(line)
    return "\n".join(lines)
