import os

import numpy as np
import pytest

from adaptlab.chem import assemble_hamiltonian, load_fcidump

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURE_DIR, name)


def toy_molecule():
    """Single spatial orbital, two electrons: <HF|H|HF> = 2*(-1) + 0.5."""
    import numpy as _np

    from adaptlab.chem import MoleculeData

    h1 = _np.array([[-1.0]])
    h2_ = _np.zeros((1, 1, 1, 1))
    h2_[0, 0, 0, 0] = 0.5
    return MoleculeData(n_spatial=1, n_electrons=2, ms2=0, core_energy=0.0, h1=h1, h2=h2_)


@pytest.fixture(scope="session")
def h2():
    m = load_fcidump(fixture_path("h2_0.74.fcidump"))
    return m, assemble_hamiltonian(m)


@pytest.fixture(scope="session")
def h4():
    m = load_fcidump(fixture_path("h4_1.50.fcidump"))
    return m, assemble_hamiltonian(m)


@pytest.fixture(scope="session")
def lih():
    m = load_fcidump(fixture_path("lih_3.24.fcidump"))
    return m, assemble_hamiltonian(m)


def dense_ladder_matrix(body, n_modes: int) -> np.ndarray:
    """Brute-force matrix of a FermionSum by applying ladder operators to
    occupation-basis states (rightmost operator first, parity from bits
    below the target mode). Independent of the qubit mapping."""
    from adaptlab.ops import CREATE

    dim = 1 << n_modes
    mat = np.zeros((dim, dim), dtype=complex)
    for t in body.terms:
        for col in range(dim):
            amp = t.coefficient
            state = col
            dead = False
            for orb, act in reversed(t.ladder):
                bit = state >> orb & 1
                parity = bin(state & ((1 << orb) - 1)).count("1")
                if act == CREATE:
                    if bit:
                        dead = True
                        break
                    amp *= (-1) ** parity
                    state |= 1 << orb
                else:
                    if not bit:
                        dead = True
                        break
                    amp *= (-1) ** parity
                    state &= ~(1 << orb)
            if not dead:
                mat[state, col] += amp
    return mat
