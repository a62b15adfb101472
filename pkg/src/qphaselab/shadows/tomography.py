"""Partitioned classical-shadow tomography.

One multi-group shot applies a fresh random Clifford to every group, measures
the whole register once in the computational basis, and yields one snapshot
per group.  Snapshot operators are ``(2^k + 1) U^dag |b><b| U - I``; their
sample mean is the RDM estimate, with no positivity projection applied.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from ..errors import EmptyEstimateError, InvalidProbabilityError
from ..simcore import DensityMatrix, Partition
from .clifford import CliffordElement, sample_uniform_clifford, symplectic_from_index

__all__ = [
    "ShadowSnapshot",
    "collect_snapshots",
    "reconstruct_rdm",
    "exact_rdm_oracle",
    "depolarize",
    "write_snapshot_log",
    "read_snapshot_log",
]


@dataclass(frozen=True)
class ShadowSnapshot:
    group: int
    clifford: CliffordElement
    outcome: int  # k bits, first group qubit is the most significant

    def __post_init__(self):
        if not 0 <= self.outcome < (1 << self.clifford.num_qubits):
            raise ValueError("outcome does not fit the group size")


def collect_snapshots(
    handle,
    partition: Partition,
    t_state: int,
    rng: np.random.Generator,
    noise_p: float = 0.0,
    sampler=sample_uniform_clifford,
) -> list[list[ShadowSnapshot]]:
    """``t_state`` shots on one state; returns per-group snapshot lists.

    Global depolarizing noise of strength ``noise_p`` on the rotated state is
    exactly a probability-``noise_p`` replacement of the measured bitstring
    with a uniform one, which is how it is simulated here.
    """
    if t_state < 1:
        raise ValueError("need at least one shot")
    if not 0.0 <= noise_p <= 1.0:
        raise InvalidProbabilityError(f"noise probability {noise_p} outside [0, 1]")
    L = handle.num_qubits
    k = partition.group_size
    per_group: list[list[ShadowSnapshot]] = [[] for _ in partition.groups]
    for _ in range(t_state):
        cliffords = [sampler(k, rng) for _ in partition.groups]
        rotated = handle.rotate_groups(partition, [c.unitary for c in cliffords])
        bits = rotated.sample_bits(rng)
        if noise_p > 0.0 and rng.random() < noise_p:
            bits = int(rng.integers(0, 1 << L))
        for j, group in enumerate(partition.groups):
            shift = L - (group[-1] + 1)
            outcome = (bits >> shift) & ((1 << k) - 1)
            per_group[j].append(ShadowSnapshot(j, cliffords[j], outcome))
    return per_group


def snapshot_operator(snap: ShadowSnapshot) -> np.ndarray:
    k = snap.clifford.num_qubits
    U = snap.clifford.unitary
    v = U.conj().T[:, snap.outcome]
    return (2**k + 1) * np.outer(v, v.conj()) - np.eye(1 << k)


def reconstruct_rdm(snapshots) -> DensityMatrix:
    """Sample mean of the snapshot operators for one group."""
    snapshots = list(snapshots)
    if not snapshots:
        raise EmptyEstimateError("no snapshots to average")
    k = snapshots[0].clifford.num_qubits
    dim = 1 << k
    vs = np.stack([s.clifford.unitary.conj().T[:, s.outcome] for s in snapshots])
    mean = (dim + 1) * np.einsum("ti,tj->ij", vs, vs.conj()) / len(snapshots) - np.eye(dim)
    mean = 0.5 * (mean + mean.conj().T)
    return DensityMatrix(mean, k)


def depolarize(rho: DensityMatrix, p: float) -> DensityMatrix:
    if not 0.0 <= p <= 1.0:
        raise InvalidProbabilityError(f"depolarizing probability {p} outside [0, 1]")
    dim = 1 << rho.num_qubits
    return DensityMatrix((1 - p) * rho.matrix + p * np.eye(dim) / dim, rho.num_qubits)


def exact_rdm_oracle(handle, partition: Partition, noise_p: float = 0.0) -> list[DensityMatrix]:
    """Exact per-group partial traces; the infinite-shot limit of the shadows.

    Global depolarizing noise commutes with the partial trace, so it acts
    group-locally with the same strength.
    """
    rdms = [handle.rdm(group) for group in partition.groups]
    if noise_p > 0.0:
        rdms = [depolarize(r, noise_p) for r in rdms]
    return rdms


def write_snapshot_log(path, per_state_snapshots):
    """JSON-lines log: one record per (state, shot, group)."""
    with open(path, "w") as fh:
        for state_id, per_group in enumerate(per_state_snapshots):
            n_shots = len(per_group[0]) if per_group else 0
            for shot in range(n_shots):
                for group_idx, snaps in enumerate(per_group):
                    s = snaps[shot]
                    rec = {
                        "state_id": state_id,
                        "shot": shot,
                        "group": group_idx,
                        "k": s.clifford.num_qubits,
                        "symplectic_index": str(s.clifford.element_id[0]),
                        "phases": int(s.clifford.element_id[1]),
                        "outcome": s.outcome,
                    }
                    fh.write(json.dumps(rec) + "\n")


def read_snapshot_log(path) -> dict[int, list[list[ShadowSnapshot]]]:
    """Rebuild per-state, per-group snapshot lists from a log file."""
    out: dict[int, dict[int, list[ShadowSnapshot]]] = {}
    with open(path) as fh:
        for line in fh:
            rec = json.loads(line)
            k = rec["k"]
            sym = symplectic_from_index(int(rec["symplectic_index"]), k)
            phases = np.array([(rec["phases"] >> j) & 1 for j in range(2 * k)], dtype=np.int64)
            snap = ShadowSnapshot(rec["group"], CliffordElement(k, sym, phases), rec["outcome"])
            out.setdefault(rec["state_id"], {}).setdefault(rec["group"], []).append(snap)
    return {
        sid: [groups[g] for g in sorted(groups)] for sid, groups in sorted(out.items())
    }
