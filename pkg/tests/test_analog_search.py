from analog_grover.analog_search import (
    SearchParams,
    TwoLevelState,
    apply_hamiltonian,
    basis_state,
    embed_full,
    energy_expectation,
    evolve_closed_form,
    evolve_numeric,
    hamiltonian_2d,
    hamiltonian_full,
    peak_time,
    propagate,
    rk4_step,
    success_probability,
    success_probability_rate,
    two_level_basis,
    uniform_state,
)
from analog_grover.qmath import pure_state_distance, random_state
import numpy as np

import pytest
from hypothesis import given, settings, strategies as st


@pytest.fixture
def params():
    """Returns a two qubit search with E = 1"""
    return SearchParams(n_qubits=2, energy=1.0)


@st.composite
def search_params_strategy(draw, max_qubits=8):
    """Defines a hypothesis strategy for uniform SearchParams"""
    n_qubits = draw(st.integers(min_value=1, max_value=max_qubits))
    energy = draw(st.floats(min_value=0.1, max_value=10.0, allow_nan=False))
    marked = draw(st.integers(min_value=0, max_value=2**n_qubits - 1))
    return SearchParams(n_qubits=n_qubits, energy=energy, marked=marked)


@pytest.mark.parametrize("n_qubits", [1, 2, 5, 12, np.int64(3)])
def test_n_qubits(n_qubits):
    p = SearchParams(n_qubits=n_qubits)
    assert p.dim == 2**n_qubits


@pytest.mark.parametrize("n_qubits", [0, -1, 1.5, True, "2"])
def test_bad_n_qubits(n_qubits):
    with pytest.raises(ValueError):
        SearchParams(n_qubits=n_qubits)


@pytest.mark.parametrize("energy", [1, 0.5, 1e-3, 250.0])
def test_energy(energy):
    assert SearchParams(energy=energy).energy == energy


@pytest.mark.parametrize("energy", [0, -1.0, float("inf"), float("nan"), "1", True])
def test_bad_energy(energy):
    with pytest.raises(ValueError):
        SearchParams(energy=energy)


@pytest.mark.parametrize("overlap", [None, 0.707, 1, 1e-6])
def test_overlap(overlap):
    assert SearchParams(overlap=overlap).overlap == overlap


@pytest.mark.parametrize("overlap", [0, -0.1, 1.1, "half", True])
def test_bad_overlap(overlap):
    with pytest.raises(ValueError):
        SearchParams(overlap=overlap)


@pytest.mark.parametrize("n_qubits,marked", [(2, 0), (2, 3), (4, 9)])
def test_marked(n_qubits, marked):
    assert SearchParams(n_qubits=n_qubits, marked=marked).marked == marked


@pytest.mark.parametrize("n_qubits,marked", [(2, -1), (2, 4), (1, 2), (2, 1.0)])
def test_bad_marked(n_qubits, marked):
    with pytest.raises(ValueError):
        SearchParams(n_qubits=n_qubits, marked=marked)


def test_shrinking_register_keeps_marked_valid():
    p = SearchParams(n_qubits=3, marked=7)
    with pytest.raises(ValueError):
        p.n_qubits = 2


@pytest.mark.parametrize("dim,n_qubits", [(2, 1), (8, 3), (1024, 10)])
def test_from_dim(dim, n_qubits):
    assert SearchParams.from_dim(dim).n_qubits == n_qubits


@pytest.mark.parametrize("dim", [1, 6, 0, 2.0, True])
def test_bad_from_dim(dim):
    with pytest.raises(ValueError):
        SearchParams.from_dim(dim)


def test_uniform_overlap(params):
    assert params.x == pytest.approx(0.5)
    assert params.is_uniform
    assert not SearchParams(n_qubits=2, overlap=0.707).is_uniform
    # the uniform value given explicitly still counts as uniform
    assert SearchParams(n_qubits=2, overlap=0.5).is_uniform


def test_full_register_needs_uniform_overlap():
    p = SearchParams(n_qubits=2, overlap=0.707)
    with pytest.raises(ValueError):
        hamiltonian_full(p)
    with pytest.raises(ValueError):
        propagate(p, [0.0, 1.0])


def test_hamiltonian_full_of_one_qubit():
    h = hamiltonian_full(SearchParams(n_qubits=1))
    assert np.allclose(h, [[1.5, 0.5], [0.5, 0.5]])


@pytest.mark.parametrize("n_qubits,energy,marked", [(1, 1.0, 0), (3, 2.0, 5), (5, 0.7, 17)])
def test_hamiltonian_full_spectrum(n_qubits, energy, marked):
    """Tr H = 2E, eigenvalues E(1 + x), E(1 - x) and N - 2 zeros"""
    p = SearchParams(n_qubits=n_qubits, energy=energy, marked=marked)
    h = hamiltonian_full(p)
    assert np.allclose(h, h.conj().T)
    assert np.trace(h).real == pytest.approx(2 * energy)
    expected = np.zeros(p.dim)
    expected[-2:] = [energy * (1 - p.x), energy * (1 + p.x)]
    assert np.allclose(np.linalg.eigvalsh(h), np.sort(expected), atol=1e-12)


@pytest.mark.parametrize("n_qubits,marked", [(2, 1), (3, 5), (5, 17)])
def test_hamiltonian_full_annihilates_the_complement(n_qubits, marked):
    p = SearchParams(n_qubits=n_qubits, marked=marked)
    basis = two_level_basis(p)
    v = random_state(n_qubits, np.random.default_rng(7)).amplitudes
    v = v - basis @ (basis.conj().T @ v)
    assert np.linalg.norm(v) > 0.1
    assert np.allclose(hamiltonian_full(p) @ v, 0.0, atol=1e-12)


def test_hamiltonian_2d_of_full_overlap():
    h = hamiltonian_2d(SearchParams(n_qubits=1, energy=3.0, overlap=1.0))
    assert np.allclose(h, [[6.0, 0.0], [0.0, 0.0]])


@given(p=search_params_strategy(), seed=st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=50)
def test_apply_hamiltonian_matches_dense(p, seed):
    psi = random_state(p.n_qubits, np.random.default_rng(seed)).amplitudes
    assert np.allclose(apply_hamiltonian(p, psi), hamiltonian_full(p) @ psi, atol=1e-12)


@pytest.mark.parametrize("marked", [0, 5])
def test_hamiltonian_2d_is_the_restriction(marked):
    p = SearchParams(n_qubits=3, energy=2.0, marked=marked)
    basis = two_level_basis(p)
    assert np.allclose(basis.conj().T @ basis, np.eye(2))
    assert np.allclose(basis.conj().T @ hamiltonian_full(p) @ basis, hamiltonian_2d(p))


def test_uniform_state(params):
    assert np.allclose(uniform_state(params).amplitudes, 0.5)


def test_bad_basis_state(params):
    with pytest.raises(ValueError):
        basis_state(params, 4)


def test_closed_form_at_zero(params):
    state = evolve_closed_form(params, 0.0)
    assert state.alpha == pytest.approx(0.5)
    assert state.beta == pytest.approx(np.sqrt(0.75))


def test_closed_form_population():
    """|alpha|^2 at t = 1 for N = 4"""
    state = evolve_closed_form(SearchParams(n_qubits=2), 1.0)
    assert abs(state.alpha) ** 2 == pytest.approx(0.42239, abs=1e-5)


def test_bad_two_level_state():
    with pytest.raises(ValueError):
        TwoLevelState(alpha=1.0, beta=1.0)


def test_two_level_density_matrix():
    rho = TwoLevelState(alpha=0.6, beta=0.8j).density_matrix()
    assert np.allclose(rho.entries, [[0.36, -0.48j], [0.48j, 0.64]])


def test_success_probability(params):
    assert success_probability(params, np.pi / 3) == pytest.approx(0.4375)
    assert success_probability(params, 0.0) == pytest.approx(0.25)
    assert success_probability(params, np.pi) == pytest.approx(1.0)


def test_success_probability_is_vectorised(params):
    values = success_probability(params, np.array([0.0, np.pi]))
    assert isinstance(values, np.ndarray)
    assert np.allclose(values, [0.25, 1.0])


def test_bad_success_probability(params):
    with pytest.raises(ValueError):
        success_probability(params, -1.0)


@pytest.mark.parametrize(
    "n_qubits,energy,overlap,expected",
    [(2, 1.0, None, np.pi), (1, 1.0, 0.707, 2.221777), (4, 2.0, None, np.pi), (6, 1.0, None, 4 * np.pi)],
)
def test_peak_time(n_qubits, energy, overlap, expected):
    p = SearchParams(n_qubits=n_qubits, energy=energy, overlap=overlap)
    assert peak_time(p) == pytest.approx(expected, rel=1e-5)


@given(p=search_params_strategy())
@settings(max_examples=50)
def test_success_peak(p):
    assert success_probability(p, peak_time(p)) >= 1 - 1e-10
    assert success_probability(p, 0.0) == pytest.approx(1.0 / p.dim)


def test_success_probability_rate(params):
    t, h = 1.3, 1e-6
    difference = (success_probability(params, t + h) - success_probability(params, t - h)) / (2 * h)
    assert success_probability_rate(params, t) == pytest.approx(difference, abs=1e-8)


def test_embed_full():
    p = SearchParams(n_qubits=2, marked=2)
    psi = embed_full(evolve_closed_form(p, 0.0), p)
    assert np.allclose(psi.amplitudes, 0.5)


def test_energy_expectation(params):
    """<s|H|s> = E (1 + x^2)"""
    assert energy_expectation(params, uniform_state(params)) == pytest.approx(1.25)


def test_rk4_step_of_a_phase():
    """One step on a single eigenvector is accurate to fifth order"""
    omega, dt = 2.0, 0.01
    psi = rk4_step(lambda v: omega * v, np.array([1.0 + 0j]), dt)
    assert psi[0] == pytest.approx(np.exp(-1j * omega * dt), abs=1e-10)


@pytest.mark.parametrize("n_qubits,marked", [(1, 0), (3, 0), (3, 6), (5, 17)])
def test_numeric_matches_closed_form(n_qubits, marked):
    p = SearchParams(n_qubits=n_qubits, marked=marked)
    times = np.linspace(0.0, 2 * peak_time(p), 11)
    states = propagate(p, times)
    for t, amplitudes in zip(times, states):
        closed = embed_full(evolve_closed_form(p, t), p)
        assert pure_state_distance(closed, amplitudes) < 1e-6
        assert abs(np.linalg.norm(amplitudes) - 1.0) < 1e-9


def test_propagate_starts_from_uniform_state(params):
    states = propagate(params, [0.0, 0.0, 0.5])
    assert np.allclose(states[0], 0.5)
    assert np.allclose(states[1], 0.5)


def test_evolve_numeric(params):
    psi = evolve_numeric(params, np.pi)
    assert abs(psi.amplitudes[0]) ** 2 == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("times", [[1.0, 0.5], [-1.0], [[0.0, 1.0]]])
def test_bad_propagate_grid(params, times):
    with pytest.raises(ValueError):
        propagate(params, times)


@pytest.mark.parametrize("dt", [0.0, -1e-3, 0.1])
def test_bad_propagate_step(params, dt):
    with pytest.raises(ValueError):
        propagate(params, [1.0], dt=dt)


def test_evolve_numeric_for_a_short_time(params):
    """Without dt the step shrinks to fit times below the default step"""
    psi = evolve_numeric(params, 1e-4)
    closed = embed_full(evolve_closed_form(params, 1e-4), params)
    assert pure_state_distance(closed, psi) < 1e-12


def test_bad_evolve_numeric_step(params):
    with pytest.raises(ValueError):
        evolve_numeric(params, 1e-4, dt=1e-3)
