from analog_grover.qmath import (
    Bipartition,
    DensityMatrix,
    StateVector,
    amplitude_matrix,
    binary_entropy,
    bipartitions,
    hermitian_eigvals,
    kron,
    log_base_value,
    outer,
    partial_trace,
    pure_state_distance,
    purity,
    random_state,
    random_unitary,
    reduced_density_matrix,
    schmidt_coefficients,
    shannon_entropy,
    spin_flip,
    trace_distance,
    von_neumann_entropy,
)
import numpy as np

import pytest
from hypothesis import given, settings, strategies as st


@pytest.fixture
def bell_state():
    """Returns (|00> + |11>) / sqrt(2)"""
    return StateVector(np.array([1, 0, 0, 1]) / np.sqrt(2))


@pytest.fixture
def plus_state():
    return StateVector(np.array([1, 1]) / np.sqrt(2))


@st.composite
def random_state_strategy(draw, min_qubits=2, max_qubits=5):
    """Draws a pure state of a random register size from a seeded generator"""
    n_qubits = draw(st.integers(min_value=min_qubits, max_value=max_qubits))
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    return random_state(n_qubits, np.random.default_rng(seed))


def test_state_vector_is_read_only(bell_state):
    with pytest.raises(ValueError):
        bell_state.amplitudes[0] = 1.0


@pytest.mark.parametrize("amplitudes", [[1, 0], [0, 1j], [0.6, 0.8], [0.5, 0.5, 0.5, 0.5]])
def test_state_vector(amplitudes):
    """Checks that StateVector accepts normalized amplitudes"""
    psi = StateVector(amplitudes)
    assert psi.norm() == pytest.approx(1.0)
    assert psi.dim == len(amplitudes)


@pytest.mark.parametrize("amplitudes", [[1, 1], [0, 0], [], [[1, 0], [0, 0]], [0.5, 0.5]])
def test_bad_state_vector(amplitudes):
    """Checks that StateVector rejects unnormalized or malformed amplitudes"""
    with pytest.raises(ValueError):
        StateVector(amplitudes)


def test_normalized():
    psi = StateVector.normalized([3, 4j])
    assert np.allclose(psi.amplitudes, [0.6, 0.8j])


def test_bad_normalized():
    with pytest.raises(ValueError):
        StateVector.normalized([0, 0])


def test_n_qubits_of_odd_dimension():
    psi = StateVector(np.ones(3) / np.sqrt(3))
    with pytest.raises(ValueError):
        psi.n_qubits


@pytest.mark.parametrize(
    "entries",
    [
        np.eye(2) / 2,
        [[1, 0], [0, 0]],
        [[0.5, 0.5j], [-0.5j, 0.5]],
        np.eye(4) / 4,
    ],
)
def test_density_matrix(entries):
    rho = DensityMatrix(entries)
    assert np.trace(rho.entries) == pytest.approx(1.0)


@pytest.mark.parametrize(
    "entries",
    [
        [[0.5, 0.5], [0.0, 0.5]],  # not Hermitian
        [[1.0, 0.0], [0.0, 1.0]],  # trace 2
        [[1.5, 0.0], [0.0, -0.5]],  # negative eigenvalue
        [[1.0, 0.0, 0.0]],  # not square
        [],
    ],
)
def test_bad_density_matrix(entries):
    with pytest.raises(ValueError):
        DensityMatrix(entries)


def test_density_matrix_diagonal():
    rho = DensityMatrix([[0.25, 0.1], [0.1, 0.75]])
    assert np.allclose(rho.diagonal(), [0.25, 0.75])


@pytest.mark.parametrize("n_qubits,kept", [(2, [0]), (2, [1]), (3, [0, 2]), (5, [4, 1, 3])])
def test_bipartition(n_qubits, kept):
    part = Bipartition(n_qubits, kept)
    assert part.kept == tuple(sorted(kept))
    assert set(part.kept) | set(part.traced) == set(range(n_qubits))
    assert part.complement().kept == part.traced


@pytest.mark.parametrize(
    "n_qubits,kept",
    [(1, [0]), (2, []), (2, [0, 1]), (2, [2]), (3, [0, 0]), (3, [-1])],
)
def test_bad_bipartition(n_qubits, kept):
    with pytest.raises(ValueError):
        Bipartition(n_qubits, kept)


@pytest.mark.parametrize("n_qubits", [2.0, "two", True])
def test_bad_bipartition_type(n_qubits):
    with pytest.raises(TypeError):
        Bipartition(n_qubits, [0])


def test_kron_of_three():
    product = kron([1, 0], [0, 1], [1, 0])
    assert np.allclose(product, [0, 0, 1, 0, 0, 0, 0, 0])


def test_outer_is_a_projector(bell_state):
    rho = outer(bell_state)
    assert np.allclose(rho.entries @ rho.entries, rho.entries)
    assert purity(rho) == pytest.approx(1.0)


def test_partial_trace_of_product(plus_state):
    """Tracing out one factor of a product state leaves the other"""
    zero = StateVector([1, 0])
    product = StateVector(kron(plus_state.amplitudes, zero.amplitudes))
    rho = outer(product)
    assert np.allclose(partial_trace(rho, Bipartition(2, [0])).entries, outer(plus_state).entries)
    assert np.allclose(partial_trace(rho, Bipartition(2, [1])).entries, outer(zero).entries)


def test_partial_trace_of_bell_state(bell_state):
    reduced = partial_trace(outer(bell_state), Bipartition(2, [1]))
    assert np.allclose(reduced.entries, np.eye(2) / 2)


def test_bad_partial_trace(bell_state):
    with pytest.raises(ValueError):
        partial_trace(outer(bell_state), Bipartition(3, [0]))


@given(psi=random_state_strategy())
@settings(max_examples=50)
def test_reduced_density_matrix_matches_partial_trace(psi):
    """The amplitude based reduction agrees with the full partial trace"""
    for part, complement in bipartitions(psi.n_qubits):
        for side in (part, complement):
            direct = reduced_density_matrix(psi, side)
            full = partial_trace(outer(psi), side)
            assert np.max(np.abs(direct.entries - full.entries)) < 1e-12


def test_amplitude_matrix_order():
    """Rows follow the qubits in the requested order"""
    psi = StateVector([0, 1, 0, 0])  # |01>
    assert np.allclose(amplitude_matrix(psi, [0, 1]).ravel(), [0, 1, 0, 0])
    assert np.allclose(amplitude_matrix(psi, [1, 0]).ravel(), [0, 0, 1, 0])


def test_bad_amplitude_matrix(bell_state):
    with pytest.raises(ValueError):
        amplitude_matrix(bell_state, [0, 0])


@given(psi=random_state_strategy())
@settings(max_examples=50)
def test_schmidt_coefficients(psi):
    part = Bipartition(psi.n_qubits, [0])
    weights = schmidt_coefficients(psi, part) ** 2
    assert np.sum(weights) == pytest.approx(1.0)
    assert np.allclose(weights, hermitian_eigvals(reduced_density_matrix(psi, part))[:2])


def test_hermitian_eigvals_descending():
    values = hermitian_eigvals([[0.2, 0.0], [0.0, 0.8]])
    assert np.allclose(values, [0.8, 0.2])


def test_bad_hermitian_eigvals():
    with pytest.raises(ValueError):
        hermitian_eigvals([[0.0, 1.0], [0.0, 0.0]])


@pytest.mark.parametrize("log_base,expected", [(2, 2.0), ("2", 2.0), ("e", np.e), (np.e, np.e)])
def test_log_base_value(log_base, expected):
    assert log_base_value(log_base) == pytest.approx(expected)


@pytest.mark.parametrize("log_base", ["10", 10, "ln", 0])
def test_bad_log_base_value(log_base):
    with pytest.raises(ValueError):
        log_base_value(log_base)


def test_shannon_entropy():
    assert shannon_entropy([0.5, 0.5]) == pytest.approx(1.0)
    assert shannon_entropy([1.0, 0.0]) == 0.0
    assert shannon_entropy([0.25] * 4) == pytest.approx(2.0)
    assert shannon_entropy([0.5, 0.5], log_base="e") == pytest.approx(np.log(2))


def test_binary_entropy():
    assert binary_entropy(0.25) == pytest.approx(0.8112781244591328)
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert np.allclose(binary_entropy(np.array([0.5, 0.25])), [1.0, 0.8112781244591328])


def test_von_neumann_entropy(bell_state):
    assert von_neumann_entropy(outer(bell_state)) == pytest.approx(0.0, abs=1e-12)
    assert von_neumann_entropy(DensityMatrix(np.eye(4) / 4)) == pytest.approx(2.0)


def test_spin_flip_of_bell_state(bell_state):
    """|Phi+> is invariant under the spin flip"""
    rho = outer(bell_state)
    assert np.allclose(spin_flip(rho), rho.entries)


def test_spin_flip_of_basis_state():
    """|00><00| flips to |11><11|"""
    flipped = spin_flip(DensityMatrix(np.diag([1.0, 0.0, 0.0, 0.0])))
    assert np.allclose(flipped, np.diag([0.0, 0.0, 0.0, 1.0]))


def test_spin_flip_of_maximally_mixed_state():
    assert np.allclose(spin_flip(DensityMatrix(np.eye(4) / 4)), np.eye(4) / 4)


def test_bad_spin_flip():
    with pytest.raises(ValueError):
        spin_flip(DensityMatrix(np.eye(2) / 2))


@given(psi=random_state_strategy(min_qubits=3, max_qubits=3))
@settings(max_examples=50)
def test_spin_flip_involution(psi):
    rho = reduced_density_matrix(psi, Bipartition(3, [0, 2]))
    assert np.allclose(spin_flip(spin_flip(rho)), rho.entries, atol=1e-12)


@given(
    seed=st.integers(min_value=0, max_value=2**32 - 1),
    n_qubits=st.integers(min_value=1, max_value=4),
)
@settings(max_examples=50)
def test_pure_state_distance_matches_trace_distance(seed, n_qubits):
    rng = np.random.default_rng(seed)
    psi = random_state(n_qubits, rng)
    phi = random_state(n_qubits, rng)
    assert pure_state_distance(psi, phi) == pytest.approx(
        trace_distance(outer(psi), outer(phi)), abs=1e-9
    )


def test_pure_state_distance_ignores_global_phase(bell_state):
    assert pure_state_distance(bell_state, 1j * bell_state.amplitudes) == pytest.approx(
        0.0, abs=1e-12
    )


def test_bad_pure_state_distance(bell_state, plus_state):
    with pytest.raises(ValueError):
        pure_state_distance(bell_state, plus_state)


@pytest.mark.parametrize("dim", [2, 4, 8])
def test_random_unitary(dim):
    u = random_unitary(dim, np.random.default_rng(1))
    assert np.allclose(u.conj().T @ u, np.eye(dim))


def test_bipartitions_count():
    """Qubit 0 stays on the kept side, every other split appears once"""
    splits = list(bipartitions(4))
    assert len(splits) == 7
    assert all(0 in part.kept and 0 not in other.kept for part, other in splits)
