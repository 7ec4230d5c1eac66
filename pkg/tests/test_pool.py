import numpy as np
import pytest

from adaptlab.chem import MoleculeData, assemble_hamiltonian, hartree_fock_reference
from adaptlab.oracle import hamiltonian_matrix
from adaptlab.pool import DOUBLE, SINGLE, hi_uccsd_filter, uccsd_pool
from adaptlab.sim import apply_excitation, prepare_reference


def dense_molecule(n_spatial, n_electrons):
    """All-ones integrals; only used for pool enumeration."""
    h1 = np.ones((n_spatial, n_spatial))
    h2 = np.ones((n_spatial,) * 4)
    return MoleculeData(n_spatial, n_electrons, 0, 0.0, h1, h2)


class TestUccsdPool:
    def test_h2_pool(self, h2):
        m, _ = h2
        pool = uccsd_pool(m)
        kinds = [(op.kind, op.indices) for op in pool]
        assert kinds == [
            (SINGLE, (0, 2)),
            (SINGLE, (1, 3)),
            (DOUBLE, (1, 0, 3, 2)),
        ]
        assert [op.pool_index for op in pool] == [0, 1, 2]

    def test_minimal_one_electron(self):
        # one alpha electron, one same-spin virtual: a single and nothing else
        m = MoleculeData(2, 1, 1, 0.0, np.ones((2, 2)), np.ones((2,) * 4))
        pool = uccsd_pool(m)
        assert [op.kind for op in pool] == [SINGLE]
        assert pool[0].indices == (0, 2)

    def test_quartic_growth(self):
        sizes = []
        for n_spatial in (2, 4, 6):
            m = dense_molecule(n_spatial, n_spatial)  # half filling
            sizes.append(len(uccsd_pool(m)))
        assert sizes == sorted(sizes)
        for n_spatial, size in zip((2, 4, 6), sizes):
            n = 2 * n_spatial
            assert size <= n**4

    def test_generators_antihermitian(self, h4):
        m, _ = h4
        for op in uccsd_pool(m):
            assert op.qubit_generator.max_real() <= 1e-12

    def test_nilpotent_rotation_structure(self, h4):
        m, _ = h4
        for op in uccsd_pool(m):
            t = hamiltonian_matrix(op.qubit_generator).toarray()
            assert np.max(np.abs(t @ t @ t + t)) <= 1e-12

    def test_particle_number_conserved(self, h4):
        m, _ = h4
        rng = np.random.default_rng(5)
        pool = uccsd_pool(m)
        n = m.n_spin_orbitals
        for op in rng.choice(len(pool), 5, replace=False):
            op = pool[int(op)]
            mask = hartree_fock_reference(m)
            state = apply_excitation(
                prepare_reference(mask, n), op, float(rng.uniform(-1, 1))
            )
            occs = np.array([bin(i).count("1") for i in range(1 << n)])
            weights = np.abs(state.amps) ** 2
            assert weights[occs != m.n_electrons].sum() <= 1e-12


class TestHiUccsdFilter:
    def test_infinite_eta_empty(self, h2):
        m, h = h2
        assert hi_uccsd_filter(uccsd_pool(m), h, eta=np.inf) == []

    def test_zero_eta_dense_hamiltonian_keeps_all(self):
        m = dense_molecule(2, 2)
        h = assemble_hamiltonian(m)
        pool = uccsd_pool(m)
        assert len(hi_uccsd_filter(pool, h, eta=0.0)) == len(pool)

    def test_h2o_filter_strictly_smaller(self):
        from conftest import fixture_path

        from adaptlab.chem import load_fcidump

        m = load_fcidump(fixture_path("h2o_2.06.fcidump"))
        h = assemble_hamiltonian(m)
        pool = uccsd_pool(m)
        filtered = hi_uccsd_filter(pool, h, eta=1e-10)
        assert 0 < len(filtered) < len(pool)

    def test_monotone_in_eta(self, lih):
        m, h = lih
        pool = uccsd_pool(m)
        base = {op.indices for op in hi_uccsd_filter(pool, h, 0.0)}
        for eta in (1e-10, 1e-3, 1e-1):
            sub = {op.indices for op in hi_uccsd_filter(pool, h, eta)}
            assert sub <= base
            base_eta = sub

    def test_reindexed(self, lih):
        m, h = lih
        filtered = hi_uccsd_filter(uccsd_pool(m), h)
        assert [op.pool_index for op in filtered] == list(range(len(filtered)))
