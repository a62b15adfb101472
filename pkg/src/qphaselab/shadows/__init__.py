"""Partitioned classical shadows: random group Cliffords and RDM estimation."""

from .clifford import (
    CliffordElement,
    clifford_from_id,
    identity_clifford,
    sample_clifford_id,
    clifford_group_order,
    enumerate_cliffords,
    num_symplectics,
    sample_uniform_clifford,
    symplectic_from_index,
    symplectic_index_of,
)
from .tomography import (
    ShadowSnapshot,
    collect_snapshots,
    depolarize,
    exact_rdm_oracle,
    read_snapshot_log,
    reconstruct_rdm,
    snapshot_operator,
    write_snapshot_log,
)

__all__ = [
    "CliffordElement",
    "clifford_from_id",
    "identity_clifford",
    "sample_clifford_id",
    "clifford_group_order",
    "enumerate_cliffords",
    "num_symplectics",
    "sample_uniform_clifford",
    "symplectic_from_index",
    "symplectic_index_of",
    "ShadowSnapshot",
    "collect_snapshots",
    "depolarize",
    "exact_rdm_oracle",
    "read_snapshot_log",
    "reconstruct_rdm",
    "snapshot_operator",
    "write_snapshot_log",
]
