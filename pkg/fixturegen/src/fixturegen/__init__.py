"""Offline FCIDUMP fixture generation for the adaptive-VQE laboratory.

Self-contained STO-3G electronic-structure pipeline: McMurchie-Davidson
molecular integrals, restricted Hartree-Fock with DIIS, and a Molpro-style
FCIDUMP writer. Fixtures are committed into the main repository so the
primary package never needs this one at test time.
"""

from .gen import gen_fixture
from .scf import RhfResult, ScfError, run_rhf

__version__ = "0.1.0"
