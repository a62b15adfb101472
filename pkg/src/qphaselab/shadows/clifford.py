"""Uniform sampling from the k-qubit Clifford group.

Elements are represented by a symplectic matrix over GF(2) plus one phase bit
per generator image, which enumerates the Clifford group modulo global phase
exactly.  Symplectic matrices are indexed by the canonical transvection
decomposition, so sampling an index uniformly samples the group uniformly.

Bit vectors use the interleaved convention: entries (2i, 2i+1) are the X and Z
components on qubit i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..errors import UnsupportedGroupSizeError
from ..rng import uniform_int
from ..simcore.pauli import PauliString

__all__ = [
    "CliffordElement",
    "sample_uniform_clifford",
    "sample_clifford_id",
    "clifford_from_id",
    "identity_clifford",
    "enumerate_cliffords",
    "clifford_group_order",
    "num_symplectics",
    "symplectic_from_index",
    "symplectic_index_of",
    "is_symplectic",
]

MAX_GROUP_SIZE = 6


def num_cosets(n: int) -> int:
    return (4**n - 1) << (2 * n - 1)


def num_symplectics(n: int) -> int:
    out = 1
    for j in range(1, n + 1):
        out *= num_cosets(j)
    return out


def clifford_group_order(k: int) -> int:
    """Order of the k-qubit Clifford group modulo global phase."""
    return num_symplectics(k) * 4**k


def _inner(v: np.ndarray, w: np.ndarray) -> int:
    x_v, z_v = v[0::2], v[1::2]
    x_w, z_w = w[0::2], w[1::2]
    return int(np.sum(x_v * z_w + x_w * z_v) % 2)


def _transvect(h: np.ndarray, v: np.ndarray) -> np.ndarray:
    return (v + _inner(h, v) * h) % 2


def _bits(i: int, n: int) -> np.ndarray:
    return np.array([(i >> j) & 1 for j in range(n)], dtype=np.int64)


def _bits_to_int(b: np.ndarray) -> int:
    return int(sum(int(x) << j for j, x in enumerate(b)))


def _find_transvection(x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Two transvections mapping x to y (either may be the zero vector)."""
    nn = x.size
    zero = np.zeros(nn, dtype=np.int64)
    if np.array_equal(x, y):
        return zero, zero
    if _inner(x, y) == 1:
        return (x + y) % 2, zero
    z = np.zeros(nn, dtype=np.int64)
    for i in range(nn // 2):
        ii = 2 * i
        if (x[ii] + x[ii + 1]) != 0 and (y[ii] + y[ii + 1]) != 0:
            z[ii] = (x[ii] + y[ii]) % 2
            z[ii + 1] = (x[ii + 1] + y[ii + 1]) % 2
            if z[ii] + z[ii + 1] == 0:
                z[ii + 1] = 1
                if x[ii] != x[ii + 1]:
                    z[ii] = 1
            return (x + z) % 2, (y + z) % 2
    for i in range(nn // 2):
        ii = 2 * i
        if (x[ii] + x[ii + 1]) != 0 and (y[ii] + y[ii + 1]) == 0:
            if x[ii] == x[ii + 1]:
                z[ii + 1] = 1
            else:
                z[ii + 1] = x[ii]
                z[ii] = x[ii + 1]
            break
    for i in range(nn // 2):
        ii = 2 * i
        if (x[ii] + x[ii + 1]) == 0 and (y[ii] + y[ii + 1]) != 0:
            if y[ii] == y[ii + 1]:
                z[ii + 1] = 1
            else:
                z[ii + 1] = y[ii]
                z[ii] = y[ii + 1]
            break
    return (x + z) % 2, (y + z) % 2


def symplectic_from_index(index: int, n: int) -> np.ndarray:
    """Canonical symplectic matrix for ``index`` in [0, num_symplectics(n))."""
    nn = 2 * n
    s = (1 << nn) - 1
    k = (index % s) + 1
    index //= s
    f1 = _bits(k, nn)
    e1 = np.zeros(nn, dtype=np.int64)
    e1[0] = 1
    t0, t1 = _find_transvection(e1, f1)
    bits = _bits(index % (1 << (nn - 1)), nn - 1)
    eprime = e1.copy()
    eprime[2:nn] = bits[1:nn - 1]
    h0 = _transvect(t1, _transvect(t0, eprime))
    if bits[0] == 1:
        f1 = f1 * 0
    if n > 1:
        g = np.zeros((nn, nn), dtype=np.int64)
        g[:2, :2] = np.eye(2, dtype=np.int64)
        g[2:, 2:] = symplectic_from_index(index >> (nn - 1), n - 1)
    else:
        g = np.eye(2, dtype=np.int64)
    for j in range(nn):
        row = _transvect(t0, g[j])
        row = _transvect(t1, row)
        row = _transvect(h0, row)
        row = _transvect(f1, row)
        g[j] = row
    return g


def symplectic_index_of(g: np.ndarray) -> int:
    """Inverse of :func:`symplectic_from_index`."""
    nn = g.shape[0]
    n = nn // 2
    v = g[0].copy()
    w = g[1].copy()
    e1 = np.zeros(nn, dtype=np.int64)
    e1[0] = 1
    t0, t1 = _find_transvection(v, e1)
    tw = _transvect(t1, _transvect(t0, w))
    b = int(tw[0])
    h0 = np.zeros(nn, dtype=np.int64)
    h0[0] = 1
    h0[2:nn] = tw[2:nn]
    bb = np.zeros(nn - 1, dtype=np.int64)
    bb[0] = b
    bb[1:nn - 1] = tw[2:nn]
    zv = _bits_to_int(v) - 1
    zw = _bits_to_int(bb)
    cvw = zw * ((1 << nn) - 1) + zv
    if n == 1:
        return cvw
    gprime = g.copy()
    for j in range(nn):
        row = _transvect(t1, _transvect(t0, g[j]))
        row = _transvect(h0, row)
        if b == 0:
            row = _transvect(e1, row)
        gprime[j] = row
    return symplectic_index_of(gprime[2:, 2:]) * num_cosets(n) + cvw


def is_symplectic(g: np.ndarray) -> bool:
    nn = g.shape[0]
    j = np.zeros((nn, nn), dtype=np.int64)
    for i in range(nn // 2):
        j[2 * i, 2 * i + 1] = 1
        j[2 * i + 1, 2 * i] = 1
    return np.array_equal((g @ j @ g.T) % 2, j)


def _pauli_from_bits(row: np.ndarray, sign_bit: int) -> PauliString:
    """Signed Hermitian Pauli for an interleaved (x, z) bit row."""
    ops = []
    for i in range(row.size // 2):
        x, z = int(row[2 * i]), int(row[2 * i + 1])
        ops.append("IZXY"[2 * x + z])
    return PauliString(-1.0 if sign_bit else 1.0, "".join(ops))


_UNITARY_CACHE: dict[tuple[int, int, int], np.ndarray] = {}
_UNITARY_CACHE_MAX_K = 2


@dataclass(frozen=True)
class CliffordElement:
    """One Clifford group element on k qubits.

    ``symplectic`` rows 2j and 2j+1 are the images of X_j and Z_j under
    conjugation, with signs ``(-1)^{phases[...]}``; ``element_id`` is the
    canonical (symplectic index, phase integer) pair.
    """

    num_qubits: int
    symplectic: np.ndarray
    phases: np.ndarray
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def element_id(self) -> tuple[int, int]:
        if "id" not in self._cache:
            self._cache["id"] = (
                symplectic_index_of(self.symplectic),
                _bits_to_int(self.phases),
            )
        return self._cache["id"]

    def image_of_x(self, j: int) -> PauliString:
        return _pauli_from_bits(self.symplectic[2 * j], int(self.phases[2 * j]))

    def image_of_z(self, j: int) -> PauliString:
        return _pauli_from_bits(self.symplectic[2 * j + 1], int(self.phases[2 * j + 1]))

    @property
    def unitary(self) -> np.ndarray:
        """Cached 2^k x 2^k matrix with tableau-consistent conjugation action."""
        if "u" not in self._cache:
            if self.num_qubits <= _UNITARY_CACHE_MAX_K:
                key = (self.num_qubits, *self.element_id)
                if key not in _UNITARY_CACHE:
                    _UNITARY_CACHE[key] = self._build_unitary()
                self._cache["u"] = _UNITARY_CACHE[key]
            else:
                self._cache["u"] = self._build_unitary()
        return self._cache["u"]

    def _build_unitary(self) -> np.ndarray:
        k = self.num_qubits
        dim = 1 << k
        # |psi0> = U|0...0>: the state stabilized by the signed Z images
        proj = np.eye(dim, dtype=complex)
        for j in range(k):
            g = self.image_of_z(j).matrix()
            proj = 0.5 * (proj + g @ proj)
        col = int(np.argmax(np.linalg.norm(proj, axis=0)))
        psi0 = proj[:, col]
        psi0 = psi0 / np.linalg.norm(psi0)
        pivot = int(np.argmax(np.abs(psi0)))
        psi0 = psi0 * np.exp(-1j * np.angle(psi0[pivot]))
        # column b is prod_j (U X_j U^dag)^{b_j} |psi0>
        U = np.empty((dim, dim), dtype=complex)
        x_images = [self.image_of_x(j) for j in range(k)]
        for b in range(dim):
            v = psi0
            for j in range(k):
                if (b >> (k - 1 - j)) & 1:
                    v = x_images[j].apply(v)
            U[:, b] = v
        return U


def sample_clifford_id(k: int, rng: np.random.Generator) -> tuple[int, int]:
    """Canonical (symplectic index, phase integer) of a uniform draw."""
    if not 1 <= k <= MAX_GROUP_SIZE:
        raise UnsupportedGroupSizeError(f"group size {k} outside [1, {MAX_GROUP_SIZE}]")
    idx = uniform_int(rng, num_symplectics(k))
    phase_int = int(rng.integers(0, 4**k))
    return idx, phase_int


def clifford_from_id(k: int, sym_index: int, phase_int: int) -> CliffordElement:
    element = CliffordElement(
        k, symplectic_from_index(sym_index, k), _bits(phase_int, 2 * k)
    )
    element._cache["id"] = (sym_index, phase_int)
    return element


def identity_clifford(k: int) -> CliffordElement:
    return CliffordElement(k, np.eye(2 * k, dtype=np.int64), np.zeros(2 * k, dtype=np.int64))


def sample_uniform_clifford(k: int, rng: np.random.Generator) -> CliffordElement:
    """Exactly uniform draw from the k-qubit Clifford group (mod phase)."""
    return clifford_from_id(k, *sample_clifford_id(k, rng))


@lru_cache(maxsize=4)
def enumerate_cliffords(k: int) -> tuple[CliffordElement, ...]:
    """All Clifford elements for tiny k (24 for k=1); used by oracle tests."""
    if k > 2:
        raise UnsupportedGroupSizeError("enumeration is only sane for k <= 2")
    out = []
    for idx in range(num_symplectics(k)):
        for ph in range(4**k):
            out.append(clifford_from_id(k, idx, ph))
    return tuple(out)
