"""Uniform handle over the two state backends.

Shadow collection, classifier evaluation, and the baselines only need a small
set of operations; this module gives both the dense statevector and the MPS
representation that common surface.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .simcore import (
    DensityMatrix,
    Partition,
    StateVector,
    apply_group_unitary,
    expectation,
    grouped_label_distribution,
    reduced_density_matrix,
)
from .simcore.pauli import PauliString, PauliSum

__all__ = ["StatevectorHandle", "MpsHandle", "as_handle"]


@dataclass(frozen=True)
class StatevectorHandle:
    state: StateVector

    @property
    def num_qubits(self) -> int:
        return self.state.num_qubits

    def rotate_groups(self, partition: Partition, unitaries) -> "StatevectorHandle":
        out = self.state
        for group, U in zip(partition.groups, unitaries):
            out = apply_group_unitary(out, U, list(group))
        return StatevectorHandle(out)

    def sample_bits(self, rng: np.random.Generator) -> int:
        """One computational-basis measurement of the full register."""
        p = self.state.probabilities()
        return int(rng.choice(p.size, p=p / p.sum()))

    def rdm(self, group) -> DensityMatrix:
        return reduced_density_matrix(self.state, list(group))

    def grouped_label_distribution(self, partition: Partition, labelers) -> np.ndarray:
        return grouped_label_distribution(self.state, partition, labelers)

    def expectation(self, obs: PauliSum | PauliString) -> float:
        return expectation(self.state, obs)


@dataclass(frozen=True)
class MpsHandle:
    state: object  # tensornet.Mps

    @property
    def num_qubits(self) -> int:
        return self.state.num_sites

    def rotate_groups(self, partition: Partition, unitaries) -> "MpsHandle":
        from .tensornet import mps_apply_group_unitary

        out = self.state
        for group, U in zip(partition.groups, unitaries):
            out = mps_apply_group_unitary(out, U, list(group)).state
        return MpsHandle(out)

    def sample_bits(self, rng: np.random.Generator) -> int:
        from .tensornet import mps_sample

        bits = mps_sample(self.state, 1, rng)[0]
        out = 0
        for b in bits:
            out = (out << 1) | int(b)
        return out

    def rdm(self, group) -> DensityMatrix:
        from .tensornet import mps_rdm

        return mps_rdm(self.state, list(group))

    def grouped_label_distribution(self, partition: Partition, labelers) -> np.ndarray:
        from .tensornet import mps_grouped_label_distribution

        return mps_grouped_label_distribution(self.state, partition, labelers)

    def expectation(self, obs: PauliSum | PauliString) -> float:
        from .tensornet import mps_expectation

        return mps_expectation(self.state, obs)


def as_handle(state) -> StatevectorHandle | MpsHandle:
    from .tensornet import Mps

    if isinstance(state, StateVector):
        return StatevectorHandle(state)
    if isinstance(state, Mps):
        return MpsHandle(state)
    if isinstance(state, (StatevectorHandle, MpsHandle)):
        return state
    raise DimensionError(f"not a backend state: {type(state)!r}")
