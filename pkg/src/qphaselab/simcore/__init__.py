"""Exact statevector backend: Hamiltonians, ground states, RDMs, group ops."""

from .eigensolve import GroundState, ground_state, lanczos_lowest
from .pauli import (
    PauliString,
    PauliSum,
    build_cluster_ising,
    cluster_stabilizer,
    fm_order_parameter,
    spt_order_parameter,
)
from .statevector import (
    DensityMatrix,
    Partition,
    StateVector,
    apply_group_unitary,
    apply_unitary_anywhere,
    basis_state,
    expectation,
    grouped_label_distribution,
    product_state,
    reduced_density_matrix,
)

__all__ = [
    "GroundState",
    "ground_state",
    "lanczos_lowest",
    "PauliString",
    "PauliSum",
    "build_cluster_ising",
    "cluster_stabilizer",
    "fm_order_parameter",
    "spt_order_parameter",
    "DensityMatrix",
    "Partition",
    "StateVector",
    "apply_group_unitary",
    "apply_unitary_anywhere",
    "basis_state",
    "expectation",
    "grouped_label_distribution",
    "product_state",
    "reduced_density_matrix",
]
