import numpy as np
import pytest
import scipy.linalg

from adaptlab._kernels import _py
from adaptlab.chem import hartree_fock_reference, sub_hamiltonian
from adaptlab.oracle import fci_energy_determinant, hamiltonian_matrix, slater_condon_hf
from adaptlab.ops import PauliSum, PauliTerm
from adaptlab.pool import uccsd_pool
from adaptlab.sim import (
    Ansatz,
    ExpectationNotReal,
    apply_ansatz,
    apply_excitation,
    energy,
    energy_and_gradient,
    expectation,
    gradient,
    pool_gradients,
    prepare_reference,
)


class TestPrepareReference:
    def test_basis_state(self):
        s = prepare_reference(0b0011, 4)
        assert s.amps[3] == 1.0
        assert s.norm() == pytest.approx(1.0)

    def test_vacuum(self):
        s = prepare_reference(0, 2)
        assert s.amps[0] == 1.0

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            prepare_reference(4, 2)


class TestApplyExcitation:
    def test_zero_angle_is_identity(self, h2):
        m, _ = h2
        pool = uccsd_pool(m)
        s = prepare_reference(0b0011, 4)
        out = apply_excitation(s, pool[2], 0.0)
        np.testing.assert_allclose(out.amps, s.amps)

    def test_single_excitation_swap(self, h2):
        m, _ = h2
        pool = uccsd_pool(m)
        op = pool[0]  # 0 -> 2
        s = prepare_reference(0b0001, 4)
        out = apply_excitation(s, op, np.pi / 2)
        # fully rotated into the target configuration, up to JW sign
        assert abs(out.amps[0b0100]) == pytest.approx(1.0, abs=1e-12)

    def test_matches_dense_expm(self, h4):
        m, _ = h4
        pool = uccsd_pool(m)
        rng = np.random.default_rng(2)
        s = prepare_reference(hartree_fock_reference(m), 8)
        for k in rng.choice(len(pool), 4, replace=False):
            op = pool[int(k)]
            t = hamiltonian_matrix(op.qubit_generator).toarray()
            for theta in rng.uniform(-2, 2, 3):
                want = scipy.linalg.expm(theta * t) @ s.amps
                got = apply_excitation(s, op, theta).amps
                np.testing.assert_allclose(got, want, atol=1e-10)

    def test_unitary(self, h4):
        m, _ = h4
        pool = uccsd_pool(m)
        rng = np.random.default_rng(3)
        amps = rng.normal(size=256) + 1j * rng.normal(size=256)
        amps /= np.linalg.norm(amps)
        from adaptlab.sim import StateVector

        s = StateVector(amps, 8)
        out = apply_excitation(s, pool[7], 0.83)
        assert out.norm() == pytest.approx(1.0, abs=1e-12)

    def test_inverse(self, h4):
        m, _ = h4
        pool = uccsd_pool(m)
        rng = np.random.default_rng(4)
        amps = rng.normal(size=256) + 1j * rng.normal(size=256)
        amps /= np.linalg.norm(amps)
        from adaptlab.sim import StateVector

        s = StateVector(amps.copy(), 8)
        out = apply_excitation(apply_excitation(s, pool[5], 0.61), pool[5], -0.61)
        np.testing.assert_allclose(out.amps, amps, atol=1e-12)


class TestApplyAnsatz:
    def test_empty_is_reference(self, h2):
        m, _ = h2
        ref = hartree_fock_reference(m)
        s = apply_ansatz(Ansatz(4, ref, []))
        assert s.amps[ref] == 1.0

    def test_zero_thetas_are_reference(self, h2):
        m, _ = h2
        pool = uccsd_pool(m)
        ref = hartree_fock_reference(m)
        s = apply_ansatz(Ansatz(4, ref, [(op, 0.0) for op in pool]))
        assert s.amps[ref] == 1.0

    def test_optimal_double_reaches_fci(self, h2):
        m, h = h2
        pool = uccsd_pool(m)
        ref = hartree_fock_reference(m)
        grid = np.linspace(-1, 1, 4001)
        best = min(
            grid,
            key=lambda t: energy(Ansatz(4, ref, [(pool[2], float(t))]), h),
        )
        e = energy(Ansatz(4, ref, [(pool[2], float(best))]), h)
        assert e == pytest.approx(fci_energy_determinant(m), abs=1e-6)


class TestExpectation:
    def test_z_on_zero(self):
        s = prepare_reference(0, 1)
        assert expectation(s, PauliSum(1, [PauliTerm(1.0, ((0, "Z"),))])) == pytest.approx(1.0)

    def test_x_on_plus(self):
        from adaptlab.sim import StateVector

        plus = StateVector(np.array([1, 1], dtype=np.complex128) / np.sqrt(2), 1)
        assert expectation(plus, PauliSum(1, [PauliTerm(1.0, ((0, "X"),))])) == pytest.approx(1.0)

    def test_hf_energy(self, h2):
        m, h = h2
        s = prepare_reference(hartree_fock_reference(m), 4)
        assert expectation(s, h.qubit_form) + h.constant == pytest.approx(
            slater_condon_hf(m), abs=1e-10
        )

    def test_non_hermitian_rejected(self):
        s = prepare_reference(0, 1)
        bad = PauliSum(1, [PauliTerm(1j, ((0, "Z"),))])
        with pytest.raises(ExpectationNotReal):
            expectation(s, bad)

    def test_backend_agreement(self, h4):
        """Compiled and pure-python kernels agree bit-for-bit in double precision."""
        m, h = h4
        rng = np.random.default_rng(9)
        amps = rng.normal(size=256) + 1j * rng.normal(size=256)
        amps /= np.linalg.norm(amps)
        xm, zm, cs = h.qubit_form.packed()
        from adaptlab import _kernels

        got = _kernels.expectation_pauli_sum(amps, xm, zm, cs)
        want = _py.expectation_pauli_sum(amps, xm, zm, cs)
        assert got == pytest.approx(want, abs=1e-12)
        out_a = np.empty_like(amps)
        out_b = np.empty_like(amps)
        _kernels.apply_pauli_sum(amps, xm, zm, cs, out_a)
        _py.apply_pauli_sum(amps, xm, zm, cs, out_b)
        np.testing.assert_allclose(out_a, out_b, atol=1e-12)


class TestExpectationAlgebra:
    def test_linear_and_simplify_invariant(self, h4):
        from adaptlab.ops import PauliSum as PS
        from adaptlab.ops import simplify
        from adaptlab.sim import StateVector

        m, h = h4
        rng = np.random.default_rng(17)
        amps = rng.normal(size=256) + 1j * rng.normal(size=256)
        amps /= np.linalg.norm(amps)
        s = StateVector(amps, 8)
        a = PS(8, h.qubit_form.terms[:40])
        b = PS(8, h.qubit_form.terms[40:])
        total = expectation(s, h.qubit_form)
        assert expectation(s, a) + expectation(s, b) == pytest.approx(total, abs=1e-10)
        assert expectation(s, simplify(h.qubit_form)) == pytest.approx(total, abs=1e-10)
        doubled = PS(8, h.qubit_form.terms + h.qubit_form.terms)
        assert expectation(s, doubled) == pytest.approx(2 * total, abs=1e-9)


class TestGradient:
    def test_zero_theta_commutator(self, h2):
        m, h = h2
        pool = uccsd_pool(m)
        ref = hartree_fock_reference(m)
        a = Ansatz(4, ref, [(op, 0.0) for op in pool])
        g = gradient(a, h)
        s = prepare_reference(ref, 4)
        for k, op in enumerate(pool):
            hpsi = np.zeros_like(s.amps)
            tpsi = np.zeros_like(s.amps)
            xm, zm, cs = h.qubit_form.packed()
            _py.apply_pauli_sum(s.amps, xm, zm, cs, hpsi)
            xm, zm, cs = op.qubit_generator.packed()
            _py.apply_pauli_sum(s.amps, xm, zm, cs, tpsi)
            assert g[k] == pytest.approx(2 * np.vdot(hpsi, tpsi).real, abs=1e-12)

    def test_matches_finite_differences(self, h4):
        m, h = h4
        pool = uccsd_pool(m)
        rng = np.random.default_rng(21)
        ref = hartree_fock_reference(m)
        for _ in range(3):
            ops = rng.choice(len(pool), size=3, replace=False)
            thetas = rng.uniform(-0.5, 0.5, size=3)
            a = Ansatz(8, ref, [(pool[int(o)], float(t)) for o, t in zip(ops, thetas)])
            g = gradient(a, h)
            step = 1e-5
            for k in range(3):
                tp, tm = a.thetas(), a.thetas()
                tp[k] += step
                tm[k] -= step
                fd = (energy(a.with_thetas(tp), h) - energy(a.with_thetas(tm), h)) / (2 * step)
                assert g[k] == pytest.approx(fd, abs=1e-6)

    def test_energy_and_gradient_consistent(self, h4):
        m, h = h4
        pool = uccsd_pool(m)
        a = Ansatz(8, hartree_fock_reference(m), [(pool[4], 0.2), (pool[9], -0.1)])
        e, g = energy_and_gradient(a, h)
        assert e == pytest.approx(energy(a, h), abs=1e-12)
        np.testing.assert_allclose(g, gradient(a, h), atol=1e-12)


class TestPoolGradients:
    def test_stationary_at_ground_state(self, h2):
        m, h = h2
        pool = uccsd_pool(m)
        mat = hamiltonian_matrix(h.qubit_form).toarray()
        w, v = np.linalg.eigh(mat)
        from adaptlab.sim import StateVector

        gs = StateVector(v[:, 0].astype(np.complex128), 4)
        g = pool_gradients(gs, pool, h)
        assert np.max(np.abs(g)) <= 1e-8

    def test_brillouin(self, h2):
        m, h = h2
        pool = uccsd_pool(m)
        s = prepare_reference(hartree_fock_reference(m), 4)
        g = pool_gradients(s, pool, h)
        assert abs(g[0]) <= 1e-10  # singles vanish for canonical HF
        assert abs(g[1]) <= 1e-10
        assert abs(g[2]) > 1e-3

    def test_matches_fd_and_sub_hamiltonian(self, h4):
        m, h = h4
        pool = uccsd_pool(m)
        ref = hartree_fock_reference(m)
        subs = [sub_hamiltonian(h, op) for op in pool]
        s = apply_ansatz(Ansatz(8, ref, [(pool[3], 0.2)]))
        g_full = pool_gradients(s, pool, h)
        g_sub = pool_gradients(s, pool, h, subs)
        np.testing.assert_allclose(g_full, g_sub, atol=1e-10)
        step = 1e-5
        base = Ansatz(8, ref, [(pool[3], 0.2)])
        for k in (0, 5, 11):
            ep = energy(base.appended(pool[k], step), h)
            em = energy(base.appended(pool[k], -step), h)
            assert g_full[k] == pytest.approx((ep - em) / (2 * step), abs=1e-7)


class TestConservation:
    def test_particle_number(self, h4):
        m, h = h4
        pool = uccsd_pool(m)
        a = Ansatz(8, hartree_fock_reference(m), [(pool[1], 0.4), (pool[8], -0.7)])
        s = apply_ansatz(a)
        occs = np.array([bin(i).count("1") for i in range(256)])
        n_expected = float(np.sum((np.abs(s.amps) ** 2) * occs))
        assert n_expected == pytest.approx(m.n_electrons, abs=1e-10)
