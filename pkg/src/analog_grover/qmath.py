"""qmath.py

Dense complex linear algebra for n-qubit registers: state vectors, density
matrices, tensor products, partial traces, Hermitian spectra and entropies.

Qubit 0 is the most significant bit of a computational-basis index.
"""

import logging
from functools import reduce
from typing import Iterable, Tuple

import numpy as np

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-8
HERMITIAN_TOLERANCE = 1e-10
TRACE_TOLERANCE = 1e-10
PSD_TOLERANCE = 1e-10

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_YY = np.kron(PAULI_Y, PAULI_Y)

LOG_BASES = {"2": 2.0, "e": np.e}


def _qubit_count(dim):
    n = int(dim).bit_length() - 1
    if dim < 2 or 2**n != dim:
        raise ValueError(f"Dimension {dim} is not a power of two (>= 2)")
    return n


def _frozen(array):
    array = np.array(array, dtype=complex)
    array.flags.writeable = False
    return array


class StateVector:
    """Normalized complex amplitude vector of an n-qubit register.

    Args:
        amplitudes (array-like of complex): the amplitudes, length 2**n.
            The norm must be 1 within NORM_TOLERANCE.
    """

    def __init__(self, amplitudes):
        amplitudes = np.asarray(amplitudes, dtype=complex)
        if amplitudes.ndim != 1 or amplitudes.size == 0:
            raise ValueError("amplitudes must be a non-empty one dimensional array")
        norm = np.linalg.norm(amplitudes)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise ValueError(f"State vector must be normalized, got norm {norm!r}")
        self._amplitudes = _frozen(amplitudes)

    @classmethod
    def normalized(cls, amplitudes):
        """Builds a StateVector after dividing by the norm."""
        amplitudes = np.asarray(amplitudes, dtype=complex)
        norm = np.linalg.norm(amplitudes)
        if norm == 0:
            raise ValueError("Cannot normalize the zero vector")
        return cls(amplitudes / norm)

    @property
    def amplitudes(self):
        return self._amplitudes

    @property
    def dim(self):
        return self._amplitudes.size

    @property
    def n_qubits(self):
        return _qubit_count(self.dim)

    def norm(self):
        return float(np.linalg.norm(self._amplitudes))

    def __repr__(self):
        return f"StateVector(dim={self.dim})"


class DensityMatrix:
    """Hermitian, positive semidefinite, unit trace complex matrix.

    Args:
        entries (array-like): square complex matrix.
    """

    def __init__(self, entries):
        entries = np.asarray(entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.size == 0:
            raise ValueError("Density matrix entries must form a non-empty square matrix")
        _check_hermitian(entries)
        trace = np.trace(entries)
        if abs(trace - 1.0) > TRACE_TOLERANCE:
            raise ValueError(f"Density matrix must have unit trace, got {trace!r}")
        smallest = np.linalg.eigvalsh(entries)[0]
        if smallest < -PSD_TOLERANCE:
            raise ValueError(
                f"Density matrix must be positive semidefinite, "
                f"found eigenvalue {smallest!r}"
            )
        self._entries = _frozen(entries)

    @property
    def entries(self):
        return self._entries

    @property
    def dim(self):
        return self._entries.shape[0]

    @property
    def n_qubits(self):
        return _qubit_count(self.dim)

    def diagonal(self):
        """Returns the populations in the reference basis as real numbers."""
        return np.real(np.diag(self._entries)).copy()

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim})"


class Bipartition:
    """Split of an n-qubit register into a kept part and a traced out part.

    Args:
        n_qubits (int): number of qubits in the register.
        kept (iterable of int): qubits kept by the partial trace. Must be a
            non-empty proper subset of range(n_qubits).
    """

    def __init__(self, n_qubits: int, kept: Iterable[int]):
        if isinstance(n_qubits, bool) or not isinstance(n_qubits, (int, np.integer)):
            raise TypeError("n_qubits must be an integer")
        if n_qubits < 2:
            raise ValueError("A bipartition needs at least two qubits")
        kept = tuple(sorted(int(q) for q in kept))
        if not kept:
            raise ValueError("kept must not be empty")
        if len(set(kept)) != len(kept):
            raise ValueError("kept must not contain repeated qubits")
        if kept[0] < 0 or kept[-1] >= n_qubits:
            raise ValueError(f"kept qubits must lie in [0, {n_qubits})")
        if len(kept) == n_qubits:
            raise ValueError("kept must be a proper subset of the register")
        self._n_qubits = int(n_qubits)
        self._kept = kept

    @property
    def n_qubits(self):
        return self._n_qubits

    @property
    def kept(self):
        return self._kept

    @property
    def traced(self):
        return tuple(q for q in range(self._n_qubits) if q not in self._kept)

    def complement(self):
        """The bipartition keeping the other side."""
        return Bipartition(self._n_qubits, self.traced)

    def __repr__(self):
        return f"Bipartition(n_qubits={self._n_qubits}, kept={list(self._kept)})"


def _amplitudes_of(psi):
    if isinstance(psi, StateVector):
        return psi.amplitudes
    return np.asarray(psi, dtype=complex)


def _entries_of(rho):
    if isinstance(rho, DensityMatrix):
        return rho.entries
    return np.asarray(rho, dtype=complex)


def _check_hermitian(m, tolerance=HERMITIAN_TOLERANCE):
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("Matrix must be square")
    deviation = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if deviation > tolerance:
        raise ValueError(f"Matrix is not Hermitian (max deviation {deviation:.3e})")


def kron(a, b, *rest):
    """Kronecker product of two or more matrices (or vectors)."""
    operands = [np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)]
    operands += [np.asarray(m, dtype=complex) for m in rest]
    return reduce(np.kron, operands)


def outer(psi: StateVector) -> DensityMatrix:
    """Returns the projector |psi><psi|.

    Raises:
        ValueError: if psi deviates from unit norm by more than NORM_TOLERANCE
    """
    amplitudes = _amplitudes_of(psi)
    norm = np.linalg.norm(amplitudes)
    if abs(norm - 1.0) > NORM_TOLERANCE:
        raise ValueError(f"outer expects a normalized state, got norm {norm!r}")
    return DensityMatrix(np.outer(amplitudes, amplitudes.conj()))


def _split_axes(n_qubits, kept):
    traced = [q for q in range(n_qubits) if q not in kept]
    return list(kept), traced


def partial_trace(rho: DensityMatrix, part: Bipartition) -> DensityMatrix:
    """Traces out the qubits that are not in part.kept.

    Args:
        rho (DensityMatrix): state of part.n_qubits qubits
        part (Bipartition): which qubits survive

    Returns:
        DensityMatrix: reduced state of dimension 2**len(part.kept)
    """
    entries = _entries_of(rho)
    n = part.n_qubits
    if entries.shape != (2**n, 2**n):
        raise ValueError(
            f"Density matrix of shape {entries.shape} does not match {n} qubits"
        )
    kept, traced = _split_axes(n, part.kept)
    d_kept, d_traced = 2 ** len(kept), 2 ** len(traced)
    tensor = entries.reshape([2] * (2 * n))
    order = kept + traced + [n + q for q in kept] + [n + q for q in traced]
    tensor = tensor.transpose(order).reshape(d_kept, d_traced, d_kept, d_traced)
    return DensityMatrix(np.trace(tensor, axis1=1, axis2=3))


def amplitude_matrix(psi, kept) -> np.ndarray:
    """Reshapes the amplitudes into a matrix M with rows indexed by the kept
    qubits (in the given order) and columns by the rest, so that the reduced
    state of the kept qubits is M M^dagger.
    """
    amplitudes = _amplitudes_of(psi)
    n = _qubit_count(amplitudes.size)
    kept = [int(q) for q in kept]
    if len(set(kept)) != len(kept) or any(not 0 <= q < n for q in kept):
        raise ValueError(f"kept must hold distinct qubits in [0, {n})")
    traced = [q for q in range(n) if q not in kept]
    return (
        amplitudes.reshape([2] * n)
        .transpose(kept + traced)
        .reshape(2 ** len(kept), 2 ** len(traced))
    )


def reduced_density_matrix(psi: StateVector, part: Bipartition) -> DensityMatrix:
    """Partial trace of |psi><psi| computed straight from the amplitudes.

    The 2**n x 2**n projector is never formed, which keeps twelve qubit
    registers cheap.
    """
    amplitudes = _amplitudes_of(psi)
    n = part.n_qubits
    if amplitudes.shape != (2**n,):
        raise ValueError(
            f"State of dimension {amplitudes.size} does not match {n} qubits"
        )
    matrix = amplitude_matrix(amplitudes, part.kept)
    return DensityMatrix(matrix @ matrix.conj().T)


def schmidt_coefficients(psi: StateVector, part: Bipartition) -> np.ndarray:
    """Descending Schmidt coefficients of a pure state across part.

    Their squares are the eigenvalues of either reduced state, obtained
    from a singular value decomposition so that coefficients near zero keep
    their absolute accuracy.
    """
    amplitudes = _amplitudes_of(psi)
    if amplitudes.shape != (2**part.n_qubits,):
        raise ValueError(
            f"State of dimension {amplitudes.size} does not match {part.n_qubits} qubits"
        )
    return np.linalg.svd(amplitude_matrix(amplitudes, part.kept), compute_uv=False)


def hermitian_eigvals(m) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix in descending order.

    Raises:
        ValueError: if m is not Hermitian within HERMITIAN_TOLERANCE
    """
    entries = _entries_of(m)
    _check_hermitian(entries)
    return np.linalg.eigvalsh(entries)[::-1]


def purity(rho) -> float:
    """Tr(rho^2)."""
    entries = _entries_of(rho)
    return float(np.real(np.vdot(entries, entries)))


def log_base_value(log_base) -> float:
    """Maps a log base given as 2, "2", "e" or e to a float."""
    if isinstance(log_base, str):
        try:
            return LOG_BASES[log_base]
        except KeyError as e:
            raise ValueError(
                f"Unknown log base {log_base!r}, options are {list(LOG_BASES)}"
            ) from e
    if np.isclose(log_base, 2.0) or np.isclose(log_base, np.e):
        return float(log_base)
    raise ValueError(f"Unknown log base {log_base!r}, options are 2 or e")


def shannon_entropy(probabilities, log_base=2) -> float:
    """Entropy of a probability vector with 0 log 0 := 0.

    Entries in [-PSD_TOLERANCE, 0) are treated as 0.
    """
    probabilities = np.clip(np.real(np.asarray(probabilities, dtype=float)), 0.0, 1.0)
    nonzero = probabilities[probabilities > 0.0]
    entropy = -np.sum(nonzero * np.log(nonzero)) / np.log(log_base_value(log_base))
    return max(0.0, float(entropy))


def binary_entropy(p, log_base=2):
    """H(p) = -p log p - (1-p) log(1-p), elementwise, with 0 log 0 := 0.

    Args:
        p (float, ndarray): probabilities in [0, 1]

    Returns:
        float, ndarray: the binary entropy
    """
    p = np.clip(np.asarray(p, dtype=float), 0.0, 1.0)
    q = 1.0 - p
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0, p * np.log(np.where(p > 0, p, 1.0)), 0.0)
        terms = terms + np.where(q > 0, q * np.log(np.where(q > 0, q, 1.0)), 0.0)
    entropy = np.maximum(-terms / np.log(log_base_value(log_base)), 0.0)
    return entropy if entropy.ndim else float(entropy)


def von_neumann_entropy(rho: DensityMatrix, log_base=2) -> float:
    """S(rho) = -Tr(rho log rho), from the clamped eigenvalues of rho."""
    return shannon_entropy(hermitian_eigvals(rho), log_base=log_base)


def spin_flip(rho: DensityMatrix) -> np.ndarray:
    """Two-qubit spin flip (sigma_y x sigma_y) rho* (sigma_y x sigma_y).

    Raises:
        ValueError: if rho is not a 4 x 4 matrix
    """
    entries = _entries_of(rho)
    if entries.shape != (4, 4):
        raise ValueError(f"spin_flip expects a two-qubit (4x4) matrix, got {entries.shape}")
    return SIGMA_YY @ entries.conj() @ SIGMA_YY


def trace_distance(rho, sigma) -> float:
    """Half the trace norm of rho - sigma."""
    difference = _entries_of(rho) - _entries_of(sigma)
    return 0.5 * float(np.sum(np.abs(hermitian_eigvals(difference))))


def pure_state_distance(psi, phi) -> float:
    """Trace distance between two pure states, sqrt(1 - |<psi|phi>|^2).

    Evaluated as the norm of the component of phi orthogonal to psi, which
    stays accurate when the states nearly coincide.
    """
    a = _amplitudes_of(psi)
    b = _amplitudes_of(phi)
    if a.shape != b.shape:
        raise ValueError("States must have the same dimension")
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    residual = b - np.vdot(a, b) * a
    return float(np.linalg.norm(residual))


def random_state(n_qubits: int, rng: np.random.Generator) -> StateVector:
    """Draws a random pure state from complex Gaussian amplitudes."""
    dim = 2**n_qubits
    amplitudes = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return StateVector.normalized(amplitudes)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar distributed unitary from the QR decomposition of a Ginibre matrix."""
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def bipartitions(n_qubits: int) -> Iterable[Tuple[Bipartition, Bipartition]]:
    """Yields every (A, B) split with qubit 0 on side A."""
    others = list(range(1, n_qubits))
    for mask in range(2 ** len(others) - 1):
        kept = [0] + [q for i, q in enumerate(others) if mask >> i & 1]
        part = Bipartition(n_qubits, kept)
        yield part, part.complement()
