"""Pauli strings and sums on a 1D chain of qubits.

Site 0 is the leftmost site and the most significant bit of a basis index,
so ``|b>`` with ``b = 0b10...0`` has qubit 0 in state ``|1>``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import DimensionError, InvalidOperatorError, InvalidSystemSizeError

__all__ = [
    "PauliString",
    "PauliSum",
    "build_cluster_ising",
    "fm_order_parameter",
    "spt_order_parameter",
    "cluster_stabilizer",
]

_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class PauliString:
    """A signed tensor product of single-qubit Paulis.

    Parameters
    ----------
    coeff:
        Scalar coefficient.  Real coefficients make the operator Hermitian.
    ops:
        One character per site out of ``I``, ``X``, ``Y``, ``Z``.
    """

    coeff: complex
    ops: str

    def __post_init__(self):
        if not math.isfinite(abs(self.coeff)):
            raise InvalidOperatorError("coefficient must be finite")
        if any(c not in "IXYZ" for c in self.ops):
            raise InvalidOperatorError(f"unknown Pauli symbols in {self.ops!r}")

    @property
    def num_qubits(self) -> int:
        return len(self.ops)

    @property
    def is_hermitian(self) -> bool:
        return abs(complex(self.coeff).imag) == 0.0

    def weight(self) -> int:
        """Number of non-identity sites."""
        return sum(c != "I" for c in self.ops)

    def matrix(self) -> np.ndarray:
        """Dense matrix, for small systems and oracle checks."""
        out = np.array([[self.coeff]], dtype=complex)
        for c in self.ops:
            out = np.kron(out, _SINGLE[c])
        return out

    def masks(self) -> tuple[int, int, int]:
        """Return (flip_mask, phase_mask, y_count) for fast basis action.

        ``P|b> = coeff * i^y_count * (-1)^popcount(b & phase_mask) |b ^ flip_mask>``
        with site 0 as the most significant bit.
        """
        L = self.num_qubits
        flip = 0
        phase = 0
        ny = 0
        for i, c in enumerate(self.ops):
            bit = 1 << (L - 1 - i)
            if c in "XY":
                flip |= bit
            if c in "ZY":
                phase |= bit
            if c == "Y":
                ny += 1
        return flip, phase, ny

    def apply(self, amplitudes: np.ndarray) -> np.ndarray:
        """Apply to a dense statevector of matching size."""
        L = self.num_qubits
        if amplitudes.shape != (1 << L,):
            raise DimensionError("statevector size does not match Pauli string")
        flip, phase, ny = self.masks()
        idx = np.arange(1 << L, dtype=np.uint64)
        signs = 1.0 - 2.0 * (np.bitwise_count(idx & np.uint64(phase)) & np.uint64(1)).astype(np.float64)
        out = np.empty_like(amplitudes)
        out[idx ^ np.uint64(flip)] = (self.coeff * (1j) ** ny) * signs * amplitudes
        return out


class PauliSum:
    """Sum of Pauli strings with like terms merged on construction."""

    def __init__(self, terms):
        merged: dict[str, complex] = {}
        L = None
        for t in terms:
            if L is None:
                L = t.num_qubits
            elif t.num_qubits != L:
                raise DimensionError("all terms must act on the same number of sites")
            merged[t.ops] = merged.get(t.ops, 0.0) + t.coeff
        if L is None:
            raise InvalidOperatorError("empty PauliSum")
        self.num_qubits = L
        self.terms = tuple(
            PauliString(c, ops) for ops, c in merged.items() if c != 0.0
        )

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    @property
    def is_hermitian(self) -> bool:
        return all(t.is_hermitian for t in self.terms)

    def matrix(self) -> np.ndarray:
        dim = 1 << self.num_qubits
        out = np.zeros((dim, dim), dtype=complex)
        for t in self.terms:
            out += t.matrix()
        return out

    def apply(self, amplitudes: np.ndarray) -> np.ndarray:
        out = np.zeros_like(amplitudes)
        for t in self.terms:
            out += t.apply(amplitudes)
        return out

    def matvec_builder(self):
        """Precompute masks once and return a fast matvec closure."""
        L = self.num_qubits
        idx = np.arange(1 << L, dtype=np.uint64)
        plan = []
        for t in self.terms:
            flip, phase, ny = t.masks()
            signs = 1.0 - 2.0 * (
                np.bitwise_count(idx & np.uint64(phase)) & np.uint64(1)
            ).astype(np.float64)
            plan.append((idx ^ np.uint64(flip), (t.coeff * (1j) ** ny) * signs))

        def matvec(v: np.ndarray) -> np.ndarray:
            out = np.zeros_like(v, dtype=complex)
            for target, weights in plan:
                out[target] += weights * v
            return out

        return matvec


def _embed(L: int, placed: dict[int, str], coeff: float) -> PauliString:
    ops = ["I"] * L
    for site, c in placed.items():
        ops[site] = c
    return PauliString(coeff, "".join(ops))


def build_cluster_ising(L: int, j1: float, j2: float, boundary: str = "open") -> PauliSum:
    """Transverse field + Ising ZZ (j1) + three-site ZXZ cluster coupling (j2).

    ``sum_i (X_i - j1 Z_i Z_{i+1} - j2 Z_{i-1} X_i Z_{i+1})`` on ``L`` sites.
    Open boundaries drop any term whose support leaves the chain; periodic
    boundaries wrap indices mod ``L``.
    """
    if L < 3:
        raise InvalidSystemSizeError(f"need at least 3 sites, got {L}")
    if boundary not in ("open", "periodic"):
        raise ValueError(f"unknown boundary {boundary!r}")
    terms = []
    for i in range(L):
        terms.append(_embed(L, {i: "X"}, 1.0))
    for i in range(L):
        j = i + 1
        if j >= L:
            if boundary == "open":
                continue
            j %= L
        if j1 != 0.0:
            terms.append(_embed(L, {i: "Z", j: "Z"}, -j1))
    for i in range(L):
        left, right = i - 1, i + 1
        if left < 0 or right >= L:
            if boundary == "open":
                continue
            left %= L
            right %= L
        if j2 != 0.0:
            terms.append(_embed(L, {left: "Z", i: "X", right: "Z"}, -j2))
    return PauliSum(terms)


def fm_order_parameter(L: int) -> PauliSum:
    """Mean magnetization ``(1/L) sum_i Z_i``."""
    return PauliSum([_embed(L, {i: "Z"}, 1.0 / L) for i in range(L)])


def spt_order_parameter(L: int) -> PauliString:
    """String order parameter: Z ends, X on even interior sites.

    In 1-based site labels this is ``Z_1 X_2 X_4 ... Z_L``; the X pattern
    covers the even interior sites whether or not it lands on ``L - 1``.
    """
    if L < 3:
        raise InvalidSystemSizeError(f"need at least 3 sites, got {L}")
    ops = ["I"] * L
    ops[0] = "Z"
    ops[L - 1] = "Z"
    for site1 in range(2, L, 2):  # 1-based even sites
        if site1 < L:
            ops[site1 - 1] = "X"
    return PauliString(1.0, "".join(ops))


def cluster_stabilizer(L: int, i: int) -> PauliString:
    """``Z_{i-1} X_i Z_{i+1}`` with 0-based center ``i``; ends truncate the Zs."""
    placed = {i: "X"}
    if i - 1 >= 0:
        placed[i - 1] = "Z"
    if i + 1 < L:
        placed[i + 1] = "Z"
    return _embed(L, placed, 1.0)
