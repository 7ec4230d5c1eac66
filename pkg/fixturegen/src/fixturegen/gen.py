"""Fixture generation: converged RHF integrals dumped as FCIDUMP files."""

from __future__ import annotations

import os

from .fcidump_io import write_fcidump
from .molecules import BUILDERS, DEFAULT_GEOMETRIES
from .scf import ScfError, run_rhf


def gen_fixture(molecule: str, bond_length: float, out_dir: str = ".",
                basis: str = "STO-3G") -> str:
    """Generate `<mol>_<R>.fcidump` for one molecule at one bond length.

    Aborts without writing anything if the SCF does not converge.
    """
    if basis.upper() != "STO-3G":
        raise ValueError(f"only STO-3G is tabulated, got {basis!r}")
    name = molecule.lower()
    if name not in BUILDERS:
        raise ValueError(f"unknown molecule {molecule!r}; choices: {sorted(BUILDERS)}")
    symbols, coords = BUILDERS[name](bond_length)
    result = run_rhf(symbols, coords)  # raises ScfError before any file I/O
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"{name}_{bond_length:.2f}.fcidump")
    write_fcidump(path, result.h1_mo, result.eri_mo, result.e_nuc, result.n_electrons)
    return path


def gen_all(out_dir: str = ".") -> list[str]:
    """Regenerate the full bundled fixture set."""
    paths = []
    for name, lengths in DEFAULT_GEOMETRIES.items():
        for r in lengths:
            paths.append(gen_fixture(name, r, out_dir))
    return paths
