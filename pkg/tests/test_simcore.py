"""Statevector backend: Hamiltonian assembly, ground states, RDMs, group ops."""

import numpy as np
import pytest
import scipy.sparse as sp
import scipy.sparse.linalg as spla
from hypothesis import given, settings
from hypothesis import strategies as st

from qphaselab import simcore as sc
from qphaselab.errors import (
    InvalidGroupError,
    InvalidOperatorError,
    InvalidSystemSizeError,
    InvalidUnitaryError,
    NonHermitianObservableError,
)
from qphaselab.rng import stream

I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
PLUS = np.array([1, 1]) / np.sqrt(2)
MINUS = np.array([1, -1]) / np.sqrt(2)


def kron_chain(ops):
    out = np.array([[1.0 + 0j]])
    for op in ops:
        out = np.kron(out, op)
    return out


def dense_cluster_ising(L, j1, j2, boundary="open"):
    """Independent kron-product assembly of the cluster-Ising Hamiltonian."""
    mats = {"I": I2, "X": X, "Z": Z}

    def embed(placed):
        return kron_chain([mats[placed.get(i, "I")] for i in range(L)])

    H = np.zeros((2**L, 2**L), dtype=complex)
    for i in range(L):
        H += embed({i: "X"})
    for i in range(L):
        j = i + 1
        if j >= L:
            if boundary == "open":
                continue
            j %= L
        H += -j1 * embed({i: "Z", j: "Z"})
    for i in range(L):
        a, b = i - 1, i + 1
        if a < 0 or b >= L:
            if boundary == "open":
                continue
            a %= L
            b %= L
        H += -j2 * embed({a: "Z", i: "X", b: "Z"})
    return H


def random_state(L, seed):
    rng = stream(seed, "random-state", L)
    v = rng.normal(size=1 << L) + 1j * rng.normal(size=1 << L)
    return sc.StateVector.from_amplitudes(v, normalize=True)


class TestBuildClusterIsing:
    def test_field_only_term_count(self):
        h = sc.build_cluster_ising(4, 0.0, 0.0, "open")
        assert len(h) == 4
        assert all(t.ops.count("X") == 1 and t.coeff == 1.0 for t in h)

    def test_ising_term_count(self):
        h = sc.build_cluster_ising(4, 1.0, 0.0, "open")
        assert len(h) == 7
        zz = [t for t in h if "Z" in t.ops]
        assert len(zz) == 3
        assert all(t.coeff == -1.0 for t in zz)

    @pytest.mark.parametrize("boundary", ["open", "periodic"])
    def test_matches_dense_assembly(self, boundary):
        for L, j1, j2 in [(4, 0.7, 0.0), (6, 0.5, 1.5), (8, 0.5, 1.5)]:
            h = sc.build_cluster_ising(L, j1, j2, boundary)
            np.testing.assert_allclose(
                h.matrix(), dense_cluster_ising(L, j1, j2, boundary), atol=1e-12
            )

    def test_ground_energy_vs_dense_oracle(self):
        h = sc.build_cluster_ising(8, 0.5, 1.5, "open")
        oracle = np.linalg.eigvalsh(dense_cluster_ising(8, 0.5, 1.5))[0]
        assert abs(sc.ground_state(h).energy - oracle) < 1e-8

    def test_too_small(self):
        with pytest.raises(InvalidSystemSizeError):
            sc.build_cluster_ising(2, 1.0, 1.0)


def sparse_from_pauli_sum(h):
    """Independent sparse assembly for the Lanczos oracle."""
    mats = {
        "I": sp.identity(2, format="csr", dtype=complex),
        "X": sp.csr_matrix(X),
        "Y": sp.csr_matrix(Y),
        "Z": sp.csr_matrix(Z),
    }
    out = None
    for t in h:
        term = sp.identity(1, format="csr", dtype=complex) * t.coeff
        for c in t.ops:
            term = sp.kron(term, mats[c], format="csr")
        out = term if out is None else out + term
    return out


class TestGroundState:
    def test_product_ground_state(self):
        h = sc.build_cluster_ising(4, 0.0, 0.0)
        gs = sc.ground_state(h)
        assert abs(gs.energy + 4.0) < 1e-10
        target = sc.product_state(MINUS, 4)
        assert abs(abs(np.vdot(gs.state.amplitudes, target.amplitudes)) - 1) < 1e-9

    @pytest.mark.parametrize("j1,j2", [(2.0, 0.0), (0.6, 1.1)])
    def test_lanczos_matches_eigsh_oracle(self, j1, j2):
        h = sc.build_cluster_ising(12, j1, j2)
        gs = sc.ground_state(h)  # L=12 takes the Lanczos path
        oracle = spla.eigsh(sparse_from_pauli_sum(h), k=1, which="SA")[0][0]
        assert abs(gs.energy - oracle) < 1e-8
        assert gs.residual <= 1e-8

    def test_periodic_stabilizer_expectation_vs_dense(self):
        h = sc.build_cluster_ising(8, 0.0, 2.0, "periodic")
        gs = sc.ground_state(h)
        obs = sc.cluster_stabilizer(8, 3)
        dense = dense_cluster_ising(8, 0.0, 2.0, "periodic")
        vals, vecs = np.linalg.eigh(dense)
        oracle_vec = vecs[:, 0]
        oracle = np.real(np.vdot(oracle_vec, obs.matrix() @ oracle_vec))
        assert abs(sc.expectation(gs.state, obs) - oracle) < 1e-6

    def test_residual_invariant(self):
        for j1, j2 in [(0.3, 0.3), (1.0, 1.0)]:
            h = sc.build_cluster_ising(11, j1, j2)
            gs = sc.ground_state(h)
            matvec = h.matvec_builder()
            r = np.linalg.norm(matvec(gs.state.amplitudes) - gs.energy * gs.state.amplitudes)
            assert r <= 1e-8

    def test_rejects_non_hermitian(self):
        bad = sc.PauliSum([sc.PauliString(1j, "XI"), sc.PauliString(1.0, "IZ")])
        with pytest.raises(InvalidOperatorError):
            sc.ground_state(bad)


class TestExpectation:
    def test_all_zeros_fm(self):
        state = sc.basis_state(4, 0)
        assert sc.expectation(state, sc.fm_order_parameter(4)) == pytest.approx(1.0)

    def test_minus_product_fm(self):
        state = sc.product_state(MINUS, 4)
        assert abs(sc.expectation(state, sc.fm_order_parameter(4))) < 1e-12

    def test_cluster_state_string_order(self):
        # ground space of -(K_2 + K_3 + K_4) on 5 sites; the CZ-entangled
        # |+...+> state is one representative and the string is a stabilizer
        L = 5
        terms = [sc.PauliString(-1.0, k.ops) for k in
                 (sc.cluster_stabilizer(L, i) for i in range(1, L - 1))]
        h = sc.PauliSum(terms)
        gs = sc.ground_state(h)
        o_spt = sc.spt_order_parameter(L)
        assert o_spt.ops == "ZXIXZ"
        assert sc.expectation(gs.state, o_spt) == pytest.approx(1.0, abs=1e-9)
        # independent stabilizer-formalism oracle: W|+>^5 via explicit CZs
        psi = sc.product_state(PLUS, L).amplitudes
        for i in range(L - 1):
            cz = np.diag([1, 1, 1, -1]).astype(complex)
            psi = sc.apply_unitary_anywhere(psi, cz, [i, i + 1], L)
        w_state = sc.StateVector(psi, L)
        assert sc.expectation(w_state, h) == pytest.approx(-3.0, abs=1e-10)
        assert sc.expectation(w_state, o_spt) == pytest.approx(1.0, abs=1e-12)

    def test_size_mismatch(self):
        with pytest.raises(Exception):
            sc.expectation(sc.basis_state(3, 0), sc.fm_order_parameter(4))


class TestReducedDensityMatrix:
    def test_ghz_single_site(self):
        amps = np.zeros(8, dtype=complex)
        amps[0] = amps[7] = 1 / np.sqrt(2)
        ghz = sc.StateVector(amps, 3)
        rdm = sc.reduced_density_matrix(ghz, [1])
        np.testing.assert_allclose(rdm.matrix, np.eye(2) / 2, atol=1e-12)

    def test_product_state_site(self):
        state = sc.basis_state(2, 0b01)  # |01>
        rdm = sc.reduced_density_matrix(state, [1])
        np.testing.assert_allclose(rdm.matrix, np.diag([0.0, 1.0]), atol=1e-12)

    def test_vs_dense_partial_trace_oracle(self):
        h = sc.build_cluster_ising(8, 0.5, 1.5)
        psi = sc.ground_state(h).state
        rdm = sc.reduced_density_matrix(psi, [2, 3])
        full = np.outer(psi.amplitudes, psi.amplitudes.conj()).reshape((2,) * 16)
        oracle = np.einsum("abcdefghabijefgh->cdij", full).reshape(4, 4)
        np.testing.assert_allclose(rdm.matrix, oracle, atol=1e-12)

    def test_psd_invariant(self):
        for seed in range(3):
            psi = random_state(8, seed)
            for group in ([0, 1], [3, 4, 5], [6, 7]):
                assert sc.reduced_density_matrix(psi, group).min_eigenvalue() >= -1e-10

    def test_duplicate_indices(self):
        with pytest.raises(InvalidGroupError):
            sc.reduced_density_matrix(sc.basis_state(3, 0), [1, 1])


class TestApplyGroupUnitary:
    def test_identity(self):
        psi = random_state(5, 0)
        out = sc.apply_group_unitary(psi, np.eye(4), [2, 3])
        np.testing.assert_allclose(out.amplitudes, psi.amplitudes, atol=1e-14)

    def test_x_on_first_site(self):
        out = sc.apply_group_unitary(sc.basis_state(3, 0), X, [0])
        np.testing.assert_allclose(out.amplitudes, sc.basis_state(3, 0b100).amplitudes)

    def test_random_unitary_vs_dense_conjugation(self):
        rng = stream(3, "haar")
        A = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        U, _ = np.linalg.qr(A)
        psi = random_state(6, 1)
        out = sc.apply_group_unitary(psi, U, [1, 2])
        obs = sc.build_cluster_ising(6, 0.8, 0.3)
        U_full = np.kron(np.kron(I2, U), np.eye(8))
        oracle_vec = U_full @ psi.amplitudes
        oracle = np.real(np.vdot(oracle_vec, obs.matrix() @ oracle_vec))
        assert abs(sc.expectation(out, obs) - oracle) < 1e-10
        assert abs(np.linalg.norm(out.amplitudes) - 1) < 1e-12

    def test_rejects_non_unitary(self):
        with pytest.raises(InvalidUnitaryError):
            sc.apply_group_unitary(sc.basis_state(2, 0), np.ones((2, 2)), [0])

    def test_rejects_non_contiguous(self):
        with pytest.raises(InvalidGroupError):
            sc.apply_group_unitary(sc.basis_state(3, 0), np.eye(4), [0, 2])


class TestGroupedLabelDistribution:
    def test_point_mass_product_state(self):
        # |01 10> with labelers mapping the observed pattern to fixed labels
        state = sc.basis_state(4, 0b0110)
        part = sc.Partition.contiguous(4, 2)
        lab0 = np.array([0, 1, 0, 0])  # group value 01 -> label 1
        lab1 = np.array([0, 0, 1, 0])  # group value 10 -> label 1
        dist = sc.grouped_label_distribution(state, part, [lab0, lab1])
        np.testing.assert_allclose(dist, [0, 0, 1], atol=1e-14)

    def test_constant_zero_labelers(self):
        psi = random_state(6, 2)
        part = sc.Partition.contiguous(6, 2)
        dist = sc.grouped_label_distribution(psi, part, [np.zeros(4, int)] * 3)
        np.testing.assert_allclose(dist, [1, 0, 0, 0], atol=1e-12)

    def test_vs_monte_carlo_oracle(self):
        psi = random_state(8, 5)
        part = sc.Partition.contiguous(8, 2)
        rng = stream(11, "mc-labels")
        labelers = [rng.integers(0, 2, size=4) for _ in range(4)]
        dist = sc.grouped_label_distribution(psi, part, labelers)
        shots = 1_000_000
        draws = rng.choice(256, size=shots, p=psi.probabilities())
        counts = np.zeros(shots, dtype=np.int64)
        for j, lab in enumerate(labelers):
            vals = (draws >> (8 - (2 * j + 2))) & 3
            counts += np.asarray(lab)[vals]
        empirical = np.bincount(counts, minlength=5) / shots
        sigma = np.sqrt(np.maximum(dist * (1 - dist), 1e-12) / shots)
        assert np.all(np.abs(empirical - dist) <= 3 * sigma + 1e-9)

    def test_single_group_marginal_matches_rdm(self):
        psi = random_state(8, 7)
        rng = stream(13, "marginal-labels")
        for j, group in enumerate(sc.Partition.contiguous(8, 2).groups):
            lab = rng.integers(0, 2, size=4)
            single = sc.Partition((group,), 2)
            dist = sc.grouped_label_distribution(psi, single, [lab])
            rdm = sc.reduced_density_matrix(psi, list(group))
            marginal = float(np.real(np.diag(rdm.matrix)) @ lab)
            assert abs(dist[1] - marginal) < 1e-10

    def test_product_state_factorizes(self):
        # J1=J2=0 ground state is a product, so the joint over groups is the
        # convolution of single-group marginals
        h = sc.build_cluster_ising(8, 0.0, 0.0)
        psi = sc.ground_state(h).state
        part = sc.Partition.contiguous(8, 2)
        rng = stream(17, "factor-labels")
        labelers = [rng.integers(0, 2, size=4) for _ in range(4)]
        joint = sc.grouped_label_distribution(psi, part, labelers)
        conv = np.array([1.0])
        for g, lab in zip(part.groups, labelers):
            marg = sc.grouped_label_distribution(psi, sc.Partition((g,), 2), [lab])
            conv = np.convolve(conv, marg)
        np.testing.assert_allclose(joint, conv, atol=1e-10)


@settings(max_examples=30, deadline=None)
@given(
    ops=st.text(alphabet="IXYZ", min_size=1, max_size=5),
    coeff=st.floats(-2, 2, allow_nan=False),
)
def test_pauli_apply_matches_matrix(ops, coeff):
    term = sc.PauliString(coeff, ops)
    rng = np.random.default_rng(hash(ops) % 2**32)
    v = rng.normal(size=1 << len(ops)) + 1j * rng.normal(size=1 << len(ops))
    np.testing.assert_allclose(term.apply(v), term.matrix() @ v, atol=1e-12)


def test_pauli_sum_merges_duplicates():
    s = sc.PauliSum([sc.PauliString(1.0, "XZ"), sc.PauliString(2.0, "XZ")])
    assert len(s) == 1
    assert s.terms[0].coeff == pytest.approx(3.0)


def test_pauli_sum_drops_cancelled_terms():
    s = sc.PauliSum(
        [sc.PauliString(1.0, "XZ"), sc.PauliString(-1.0, "XZ"), sc.PauliString(1.0, "II")]
    )
    assert len(s) == 1


def test_expectation_rejects_complex_coefficients():
    state = sc.basis_state(2, 0)
    bad = sc.PauliSum([sc.PauliString(1j, "XI")])
    with pytest.raises(NonHermitianObservableError):
        sc.expectation(state, bad)
