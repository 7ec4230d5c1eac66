"""Adaptive-VQE laboratory on an exact statevector simulator.

Grows unitary-coupled-cluster ansatze operator by operator, selecting
either by initial pool gradients or by locally optimized parameter
magnitudes, with sub-Hamiltonian scans, hot-started global optimization,
and a deterministic measurement-cost ledger.
"""

from ._kernels import BACKEND as kernel_backend
from .adapt import AdaptConfig, AdaptTrace, CostLedger, IterationRecord, run_adapt
from .chem import (
    MoleculeData,
    SpinOrbitalHamiltonian,
    assemble_hamiltonian,
    hartree_fock_reference,
    load_fcidump,
    parse_fcidump,
    sub_hamiltonian,
)
from .ops import FermionSum, FermionTerm, PauliSum, PauliTerm, jordan_wigner
from .opt import OptimizerConfig, OptimResult, bfgs_minimize, local_optimize
from .oracle import (
    fci_energy_determinant,
    fci_energy_qubit,
    hamiltonian_matrix,
    slater_condon_hf,
)
from .pool import ExcitationOp, hi_uccsd_filter, uccsd_pool
from .sim import Ansatz, StateVector, apply_ansatz, apply_excitation, energy, expectation

__version__ = "0.1.0"
