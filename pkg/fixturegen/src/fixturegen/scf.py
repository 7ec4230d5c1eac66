"""Restricted Hartree-Fock with DIIS, and the AO-to-MO transformation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import ATOMIC_NUMBER, build_basis
from .integrals import ao_integrals, nuclear_repulsion

BOHR_PER_ANGSTROM = 1.0 / 0.529177210903


class ScfError(RuntimeError):
    """SCF failed to converge."""


@dataclass
class RhfResult:
    e_total: float
    e_nuc: float
    mo_coeff: np.ndarray      # (nao, nmo)
    h1_mo: np.ndarray         # (n, n) MO one-electron integrals
    eri_mo: np.ndarray        # (n, n, n, n) MO ERIs, chemist (pq|rs)
    n_electrons: int
    n_orbitals: int


def run_rhf(symbols, coords_angstrom, conv_tol=1e-12, max_cycles=200) -> RhfResult:
    """Converge closed-shell RHF in STO-3G and return MO-basis integrals."""
    coords = np.asarray(coords_angstrom, dtype=float) * BOHR_PER_ANGSTROM
    charges = [ATOMIC_NUMBER[s] for s in symbols]
    n_elec = sum(charges)
    if n_elec % 2:
        raise ScfError("restricted SCF requires an even electron count")
    nocc = n_elec // 2

    aos = build_basis(symbols, coords)
    s, t, v, eri = ao_integrals(aos, symbols, coords, charges)
    hcore = t + v
    e_nuc = nuclear_repulsion(symbols, coords, charges)

    # symmetric orthogonalization
    sval, svec = np.linalg.eigh(s)
    if sval.min() < 1e-8:
        raise ScfError("near-singular overlap matrix")
    x = svec @ np.diag(sval**-0.5) @ svec.T

    def density(fock):
        fp = x.T @ fock @ x
        _, cp = np.linalg.eigh(fp)
        c = x @ cp
        cocc = c[:, :nocc]
        return 2.0 * cocc @ cocc.T, c

    dm, c = density(hcore)
    e_old = 0.0
    diis_err, diis_f = [], []
    converged = False
    for _ in range(max_cycles):
        j = np.einsum("pqrs,rs->pq", eri, dm)
        k = np.einsum("prqs,rs->pq", eri, dm)
        fock = hcore + j - 0.5 * k
        e_elec = 0.5 * np.sum(dm * (hcore + fock))

        err = fock @ dm @ s - s @ dm @ fock
        diis_err.append(err)
        diis_f.append(fock)
        if len(diis_f) > 8:
            diis_err.pop(0)
            diis_f.pop(0)
        if len(diis_f) > 1:
            m = len(diis_f)
            b = -np.ones((m + 1, m + 1))
            b[m, m] = 0.0
            for i in range(m):
                for jj in range(m):
                    b[i, jj] = np.sum(diis_err[i] * diis_err[jj])
            rhs = np.zeros(m + 1)
            rhs[m] = -1.0
            try:
                w = np.linalg.solve(b, rhs)[:m]
                fock = sum(wi * fi for wi, fi in zip(w, diis_f))
            except np.linalg.LinAlgError:
                pass

        dm, c = density(fock)
        if abs(e_elec - e_old) < conv_tol and np.max(np.abs(err)) < 1e-8:
            converged = True
            break
        e_old = e_elec

    if not converged:
        raise ScfError(f"RHF did not converge within {max_cycles} cycles")

    # final canonical orbitals from the converged Fock matrix
    j = np.einsum("pqrs,rs->pq", eri, dm)
    k = np.einsum("prqs,rs->pq", eri, dm)
    fock = hcore + j - 0.5 * k
    _, c = density(fock)
    e_elec = 0.5 * np.sum(dm * (hcore + fock))

    h1_mo = c.T @ hcore @ c
    eri_mo = np.einsum("pqrs,pi,qj,rk,sl->ijkl", eri, c, c, c, c, optimize=True)

    return RhfResult(
        e_total=e_elec + e_nuc,
        e_nuc=e_nuc,
        mo_coeff=c,
        h1_mo=h1_mo,
        eri_mo=eri_mo,
        n_electrons=n_elec,
        n_orbitals=len(aos),
    )
