"""Finite matrix product states with explicit orthogonality center."""

from __future__ import annotations

import numpy as np

from ..errors import DimensionError, InvalidSystemSizeError, NumericalFailureError
from ..simcore.pauli import PauliString, PauliSum

__all__ = ["Mps", "svd_split", "mps_expectation", "mps_sample", "mps_overlap"]

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

SVD_REL_DISCARD = 1e-12


def svd_split(theta: np.ndarray, chi_max: int | None):
    """SVD of a matrix with bond cap and relative discard of tiny weight.

    Returns ``(U, s, Vh, trunc_weight)`` where ``trunc_weight`` is the
    discarded fraction of the squared spectrum, ``1 - sum(kept s^2)/sum(s^2)``.
    """
    U, s, Vh = np.linalg.svd(theta, full_matrices=False)
    total = float(np.sum(s**2))
    if total == 0.0:
        raise NumericalFailureError("SVD of a zero tensor")
    keep = s > SVD_REL_DISCARD * s[0]
    chi = int(np.sum(keep))
    if chi_max is not None:
        chi = min(chi, chi_max)
    chi = max(chi, 1)
    kept = float(np.sum(s[:chi] ** 2))
    return U[:, :chi], s[:chi], Vh[:chi], 1.0 - kept / total


class Mps:
    """Open-boundary MPS; tensors are (left bond, physical 2, right bond).

    Sites left of ``center`` are left-orthogonal, sites right of it are
    right-orthogonal.  Instances are treated as immutable: every operation
    returns a new ``Mps``.
    """

    def __init__(self, tensors, center: int, validate: bool = True):
        self.tensors = [np.asarray(t, dtype=complex) for t in tensors]
        self.center = center
        self.num_sites = len(self.tensors)
        if validate:
            self._validate()

    def _validate(self):
        if not 0 <= self.center < self.num_sites:
            raise DimensionError("orthogonality center out of range")
        if self.tensors[0].shape[0] != 1 or self.tensors[-1].shape[2] != 1:
            raise DimensionError("boundary bonds must have dimension 1")
        for i in range(self.num_sites - 1):
            if self.tensors[i].shape[2] != self.tensors[i + 1].shape[0]:
                raise DimensionError(f"bond mismatch between sites {i} and {i + 1}")
        if abs(self.norm() - 1.0) > 1e-8:
            raise NumericalFailureError(f"MPS norm {self.norm()} deviates from 1")

    def bond_dimensions(self) -> list[int]:
        return [t.shape[2] for t in self.tensors[:-1]]

    def max_bond(self) -> int:
        return max([1] + self.bond_dimensions())

    def norm(self) -> float:
        c = self.tensors[self.center]
        return float(np.linalg.norm(c))

    def copy_tensors(self) -> list[np.ndarray]:
        return [t.copy() for t in self.tensors]

    # ---- canonical form ----

    def with_center(self, site: int) -> "Mps":
        """Move the orthogonality center by QR sweeps."""
        tensors = self.copy_tensors()
        c = self.center
        while c < site:
            tl, d, tr = tensors[c].shape
            q, r = np.linalg.qr(tensors[c].reshape(tl * d, tr))
            tensors[c] = q.reshape(tl, d, q.shape[1])
            tensors[c + 1] = np.einsum("ab,bsc->asc", r, tensors[c + 1])
            c += 1
        while c > site:
            tl, d, tr = tensors[c].shape
            q, r = np.linalg.qr(tensors[c].reshape(tl, d * tr).conj().T)
            tensors[c] = q.conj().T.reshape(q.shape[1], d, tr)
            tensors[c - 1] = np.einsum("asb,bc->asc", tensors[c - 1], r.conj().T)
            c -= 1
        return Mps(tensors, site, validate=False)

    def left_orthogonality_defect(self) -> float:
        """Max deviation of left-orthogonal tensors from isometry."""
        worst = 0.0
        for i in range(self.center):
            t = self.tensors[i]
            tl, d, tr = t.shape
            m = t.reshape(tl * d, tr)
            worst = max(worst, float(np.max(np.abs(m.conj().T @ m - np.eye(tr)))))
        return worst

    def right_orthogonality_defect(self) -> float:
        worst = 0.0
        for i in range(self.center + 1, self.num_sites):
            t = self.tensors[i]
            tl, d, tr = t.shape
            m = t.reshape(tl, d * tr)
            worst = max(worst, float(np.max(np.abs(m @ m.conj().T - np.eye(tl)))))
        return worst

    # ---- constructors ----

    @staticmethod
    def product(bits) -> "Mps":
        """Computational basis product state |b_0 b_1 ...>."""
        tensors = []
        for b in bits:
            t = np.zeros((1, 2, 1), dtype=complex)
            t[0, int(b), 0] = 1.0
            tensors.append(t)
        return Mps(tensors, 0)

    @staticmethod
    def from_site_vectors(vectors) -> "Mps":
        tensors = []
        for v in vectors:
            v = np.asarray(v, dtype=complex)
            t = (v / np.linalg.norm(v)).reshape(1, 2, 1)
            tensors.append(t)
        return Mps(tensors, 0)

    @staticmethod
    def random(num_sites: int, chi: int, rng: np.random.Generator) -> "Mps":
        tensors = []
        left = 1
        for i in range(num_sites):
            right = min(chi, 2 ** (i + 1), 2 ** (num_sites - i - 1))
            t = rng.normal(size=(left, 2, right)) + 1j * rng.normal(size=(left, 2, right))
            tensors.append(t)
            left = right
        mps = Mps(tensors, 0, validate=False)
        mps = mps.with_center(num_sites - 1)
        c = mps.tensors[-1]
        mps.tensors[-1] = c / np.linalg.norm(c)
        return mps.with_center(0)

    @staticmethod
    def from_statevector(amplitudes: np.ndarray, chi_max: int | None = None) -> "Mps":
        amps = np.asarray(amplitudes, dtype=complex)
        L = int(amps.size).bit_length() - 1
        if 1 << L != amps.size:
            raise DimensionError("amplitude count is not a power of two")
        tensors = []
        rest = amps.reshape(1, -1)
        for _ in range(L - 1):
            chi_l = rest.shape[0]
            theta = rest.reshape(chi_l * 2, -1)
            U, s, Vh, _ = svd_split(theta, chi_max)
            tensors.append(U.reshape(chi_l, 2, -1))
            rest = (s[:, None] * Vh)
        tensors.append(rest.reshape(-1, 2, 1))
        mps = Mps(tensors, L - 1, validate=False)
        c = mps.tensors[-1]
        mps.tensors[-1] = c / np.linalg.norm(c)
        return mps

    def to_statevector(self) -> np.ndarray:
        if self.num_sites > 24:
            raise InvalidSystemSizeError("statevector conversion capped at 24 sites")
        out = self.tensors[0]
        for t in self.tensors[1:]:
            out = np.einsum("...a,asb->...sb", out, t)
        return out.reshape(-1)


def mps_overlap(a: Mps, b: Mps) -> complex:
    """``<a|b>``."""
    env = np.ones((1, 1), dtype=complex)
    for ta, tb in zip(a.tensors, b.tensors):
        env = np.einsum("ab,asc,bsd->cd", env, ta.conj(), tb, optimize=True)
    return complex(env[0, 0])


def mps_expectation(mps: Mps, obs: PauliSum | PauliString) -> float:
    """Expectation of a Pauli term or sum by direct transfer contraction.

    Cost is one O(L chi^3) sweep per term; fine for observables, use the MPO
    path for Hamiltonians with many terms.
    """
    terms = obs.terms if isinstance(obs, PauliSum) else (obs,)
    if (obs.num_qubits if hasattr(obs, "num_qubits") else len(terms[0].ops)) != mps.num_sites:
        raise DimensionError("observable and MPS sizes differ")
    total = 0.0 + 0.0j
    for term in terms:
        env = np.ones((1, 1), dtype=complex)
        for t, c in zip(mps.tensors, term.ops):
            env = np.einsum("ab,asc,st,btd->cd", env, t.conj(), _PAULI[c], t, optimize=True)
        total += term.coeff * env[0, 0]
    if abs(total.imag) > 1e-8:
        raise NumericalFailureError(f"expectation has imaginary part {total.imag}")
    return float(total.real)


def mps_sample(mps: Mps, shots: int, rng: np.random.Generator) -> np.ndarray:
    """Perfect Born-rule samples, left to right; returns (shots, L) bits."""
    if abs(mps.norm() - 1.0) > 1e-8:
        raise NumericalFailureError("cannot sample a non-normalized MPS")
    state = mps.with_center(0)
    L = state.num_sites
    bits = np.zeros((shots, L), dtype=np.int8)
    env = np.ones((shots, 1), dtype=complex)
    for i, t in enumerate(state.tensors):
        # amplitudes conditioned on the prefix, per shot
        amp = np.einsum("na,asb->nsb", env, t, optimize=True)
        weight = np.sum(np.abs(amp) ** 2, axis=2)
        p1 = weight[:, 1] / np.maximum(weight.sum(axis=1), 1e-300)
        draw = (rng.random(shots) < p1).astype(np.int8)
        bits[:, i] = draw
        env = amp[np.arange(shots), draw, :]
        env = env / np.maximum(np.linalg.norm(env, axis=1, keepdims=True), 1e-300)
    return bits
