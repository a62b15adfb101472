"""Ground states by Lanczos iteration with a dense fallback for tiny systems."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import (
    ConvergenceFailureError,
    InvalidOperatorError,
    InvalidSystemSizeError,
)
from ..rng import stream
from .pauli import PauliSum
from .statevector import StateVector

__all__ = ["GroundState", "ground_state", "lanczos_lowest"]

DENSE_CUTOFF = 10
DEFAULT_STATEVECTOR_CAP = 20


@dataclass(frozen=True)
class GroundState:
    energy: float
    state: StateVector
    residual: float


def lanczos_lowest(
    matvec,
    dim: int,
    v0: np.ndarray,
    tol: float = 1e-10,
    max_krylov: int = 200,
    max_restarts: int = 8,
):
    """Lowest eigenpair of a Hermitian operator given by ``matvec``.

    Full reorthogonalization against the stored Krylov basis; restarts from
    the current Ritz vector if a single Krylov pass is not enough.
    Returns ``(eigenvalue, eigenvector, residual_norm)``.
    """
    v = np.asarray(v0, dtype=complex)
    v = v / np.linalg.norm(v)
    best_val, best_vec, best_res = np.inf, v, np.inf
    for _ in range(max_restarts):
        basis = [v]
        alphas: list[float] = []
        betas: list[float] = []
        w = matvec(v)
        for _ in range(max_krylov):
            alpha = float(np.real(np.vdot(basis[-1], w)))
            alphas.append(alpha)
            w = w - alpha * basis[-1]
            if len(basis) > 1:
                w = w - betas[-1] * basis[-2]
            # full reorthogonalization keeps the basis clean near degeneracies
            for b in basis:
                w = w - np.vdot(b, w) * b
            beta = float(np.linalg.norm(w))
            T = np.diag(alphas) + np.diag(betas, 1) + np.diag(betas, -1)
            theta, S = np.linalg.eigh(T)
            # residual of the lowest Ritz pair is beta * |last component|
            ritz_res = beta * abs(S[-1, 0])
            if ritz_res <= tol or beta <= 1e-14 or len(basis) >= max_krylov:
                break
            betas.append(beta)
            basis.append(w / beta)
            w = matvec(basis[-1])
        V = np.stack(basis, axis=1)
        vec = V @ S[:, 0]
        vec = vec / np.linalg.norm(vec)
        val = float(theta[0])
        resid = float(np.linalg.norm(matvec(vec) - val * vec))
        if val < best_val or resid < best_res:
            best_val, best_vec, best_res = val, vec, resid
        if resid <= tol:
            return val, vec, resid
        v = vec
    return best_val, best_vec, best_res


def ground_state(
    H: PauliSum,
    seed: int = 7,
    residual_tol: float = 1e-8,
    statevector_cap: int = DEFAULT_STATEVECTOR_CAP,
) -> GroundState:
    """Unit-norm eigenvector of minimal eigenvalue of a Hermitian PauliSum.

    Dense diagonalization for L <= 10; seeded Lanczos with full
    reorthogonalization above that.  The start vector is deterministic in
    ``seed``, which pins the representative returned in degenerate sectors.
    """
    if not H.is_hermitian:
        raise InvalidOperatorError("Hamiltonian must be Hermitian")
    L = H.num_qubits
    if L > statevector_cap:
        raise InvalidSystemSizeError(
            f"L={L} exceeds the statevector cap {statevector_cap}; use the MPS backend"
        )
    dim = 1 << L
    if L <= DENSE_CUTOFF:
        vals, vecs = np.linalg.eigh(H.matrix())
        vec = vecs[:, 0]
        energy = float(vals[0])
        matvec = H.matvec_builder()
        resid = float(np.linalg.norm(matvec(vec) - energy * vec))
    else:
        matvec = H.matvec_builder()
        rng = stream(seed, "ground-state", L)
        v0 = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        energy, vec, resid = lanczos_lowest(matvec, dim, v0, tol=residual_tol / 10)
        if resid > residual_tol:
            raise ConvergenceFailureError(
                f"Lanczos residual {resid:.3e} above {residual_tol:.1e}", residual=resid
            )
    # fix the global phase: largest amplitude made real positive
    pivot = int(np.argmax(np.abs(vec)))
    vec = vec * np.exp(-1j * np.angle(vec[pivot]))
    return GroundState(energy, StateVector(vec, L), resid)
