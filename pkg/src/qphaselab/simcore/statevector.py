"""Dense statevector backend: states, partitions, RDMs, group unitaries."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import (
    DimensionError,
    InvalidGroupError,
    InvalidUnitaryError,
    NonHermitianObservableError,
    NumericalFailureError,
)
from .pauli import PauliString, PauliSum

__all__ = [
    "StateVector",
    "DensityMatrix",
    "Partition",
    "expectation",
    "reduced_density_matrix",
    "apply_group_unitary",
    "apply_unitary_anywhere",
    "grouped_label_distribution",
    "basis_state",
    "product_state",
]

NORM_TOL = 1e-10


@dataclass(frozen=True)
class StateVector:
    """Pure state as 2^L complex amplitudes, site 0 = most significant bit."""

    amplitudes: np.ndarray
    num_qubits: int

    def __post_init__(self):
        if self.amplitudes.shape != (1 << self.num_qubits,):
            raise DimensionError("amplitude count does not match qubit count")
        norm = np.linalg.norm(self.amplitudes)
        if abs(norm - 1.0) > NORM_TOL:
            raise NumericalFailureError(f"state norm {norm} deviates from 1")

    @staticmethod
    def from_amplitudes(amplitudes: np.ndarray, normalize: bool = False) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=complex)
        L = int(amps.size).bit_length() - 1
        if 1 << L != amps.size:
            raise DimensionError("amplitude count is not a power of two")
        if normalize:
            amps = amps / np.linalg.norm(amps)
        return StateVector(amps, L)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True)
class DensityMatrix:
    """Dense density matrix on a k-qubit group.

    Hermiticity and unit trace are enforced; positivity is not, because
    shadow estimates are legitimately non-positive.
    """

    matrix: np.ndarray
    num_qubits: int

    def __post_init__(self):
        dim = 1 << self.num_qubits
        if self.matrix.shape != (dim, dim):
            raise DimensionError("matrix shape does not match qubit count")
        if np.max(np.abs(self.matrix - self.matrix.conj().T)) > 1e-10:
            raise NumericalFailureError("density matrix is not Hermitian")
        tr = np.trace(self.matrix)
        if abs(tr - 1.0) > 1e-10:
            raise NumericalFailureError(f"density matrix trace {tr} deviates from 1")

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.matrix)[0])


@dataclass(frozen=True)
class Partition:
    """Ordered disjoint groups of contiguous ascending qubit indices."""

    groups: tuple[tuple[int, ...], ...]
    group_size: int

    def __post_init__(self):
        seen = set()
        for g in self.groups:
            if len(g) != self.group_size:
                raise InvalidGroupError("all groups must have the declared size")
            if list(g) != list(range(g[0], g[0] + len(g))):
                raise InvalidGroupError(f"group {g} is not contiguous ascending")
            if seen & set(g):
                raise InvalidGroupError("groups overlap")
            seen |= set(g)

    @staticmethod
    def contiguous(num_qubits: int, k: int) -> "Partition":
        """`floor(L/k)` groups of k neighboring qubits from the chain start.

        Trailing ``L mod k`` qubits are left out of every group.
        """
        m = num_qubits // k
        groups = tuple(tuple(range(j * k, (j + 1) * k)) for j in range(m))
        return Partition(groups, k)

    @property
    def num_groups(self) -> int:
        return len(self.groups)

    def covered_qubits(self) -> tuple[int, ...]:
        return tuple(q for g in self.groups for q in g)


def basis_state(L: int, index: int) -> StateVector:
    amps = np.zeros(1 << L, dtype=complex)
    amps[index] = 1.0
    return StateVector(amps, L)


def product_state(single_site: np.ndarray, L: int) -> StateVector:
    """``|v>^{tensor L}`` for a normalized single-qubit vector ``v``."""
    amps = np.array([1.0 + 0j])
    for _ in range(L):
        amps = np.kron(amps, np.asarray(single_site, dtype=complex))
    return StateVector.from_amplitudes(amps, normalize=True)


def expectation(state: StateVector, obs: PauliSum | PauliString) -> float:
    """``<psi|obs|psi>`` for a Hermitian observable."""
    if isinstance(obs, PauliString):
        obs = PauliSum([obs])
    if obs.num_qubits != state.num_qubits:
        raise DimensionError("observable and state sizes differ")
    if not obs.is_hermitian:
        raise NonHermitianObservableError("observable has complex coefficients")
    value = complex(np.vdot(state.amplitudes, obs.apply(state.amplitudes)))
    if abs(value.imag) > 1e-8:
        raise NonHermitianObservableError(
            f"expectation has imaginary part {value.imag}"
        )
    return value.real


def reduced_density_matrix(state: StateVector, group) -> DensityMatrix:
    """Partial trace onto ``group`` (distinct indices, any order)."""
    group = list(group)
    L = state.num_qubits
    if len(set(group)) != len(group):
        raise InvalidGroupError("duplicate qubit indices")
    if any(q < 0 or q >= L for q in group):
        raise InvalidGroupError("qubit index out of range")
    rest = [q for q in range(L) if q not in group]
    psi = state.amplitudes.reshape((2,) * L)
    psi = np.transpose(psi, group + rest).reshape(1 << len(group), -1)
    rho = psi @ psi.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(rho, len(group))


def _check_unitary(U: np.ndarray, dim: int):
    if U.shape != (dim, dim):
        raise DimensionError(f"expected a {dim}x{dim} matrix")
    if np.max(np.abs(U.conj().T @ U - np.eye(dim))) > 1e-10:
        raise InvalidUnitaryError("matrix is not unitary within 1e-10")


def apply_unitary_anywhere(
    amplitudes: np.ndarray, U: np.ndarray, qubits, L: int
) -> np.ndarray:
    """Apply a 2^k x 2^k unitary to arbitrary distinct qubits of a dense state."""
    k = len(qubits)
    psi = amplitudes.reshape((2,) * L)
    rest = [q for q in range(L) if q not in qubits]
    perm = list(qubits) + rest
    psi = np.transpose(psi, perm).reshape(1 << k, -1)
    psi = U @ psi
    inv = np.argsort(perm)
    psi = psi.reshape((2,) * L).transpose(inv)
    return np.ascontiguousarray(psi).reshape(-1)


def apply_group_unitary(state: StateVector, U: np.ndarray, group) -> StateVector:
    """Apply a unitary to a contiguous ascending group of qubits."""
    group = list(group)
    if list(group) != list(range(group[0], group[0] + len(group))):
        raise InvalidGroupError(f"group {group} is not contiguous ascending")
    _check_unitary(np.asarray(U), 1 << len(group))
    amps = apply_unitary_anywhere(state.amplitudes, np.asarray(U, dtype=complex), group, state.num_qubits)
    return StateVector(amps, state.num_qubits)


def group_values(L: int, partition: Partition) -> list[np.ndarray]:
    """Per group, the group's basis value for every global basis index."""
    idx = np.arange(1 << L, dtype=np.uint64)
    out = []
    for g in partition.groups:
        shift = np.uint64(L - (g[-1] + 1))
        mask = np.uint64((1 << len(g)) - 1)
        out.append(((idx >> shift) & mask).astype(np.int64))
    return out


def grouped_label_distribution(
    state: StateVector, partition: Partition, labelers
) -> np.ndarray:
    """Exact distribution of the number of label-1 groups.

    The state must already be rotated into each group's measurement basis;
    ``labelers[j]`` maps each of the 2^k group basis indices to a 0/1 label.
    Enumerates all 2^L basis outcomes, so cross-group correlations are exact.
    """
    L = state.num_qubits
    M = partition.num_groups
    if partition.covered_qubits() and max(partition.covered_qubits()) >= L:
        raise DimensionError("partition does not fit the state")
    if len(labelers) != M:
        raise DimensionError("need one labeler per group")
    counts = np.zeros(1 << L, dtype=np.int64)
    for values, lab in zip(group_values(L, partition), labelers):
        lab = np.asarray(lab, dtype=np.int64)
        if lab.shape != (1 << partition.group_size,):
            raise DimensionError("labeler must cover all group basis indices")
        counts += lab[values]
    dist = np.bincount(counts, weights=state.probabilities(), minlength=M + 1)
    total = dist.sum()
    if abs(total - 1.0) > 1e-12:
        dist = dist / total
    return dist
