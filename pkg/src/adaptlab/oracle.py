"""Independent ground-truth: exact diagonalization by two routes.

The qubit route diagonalizes the Jordan-Wigner image restricted to the
particle-number / S_z sector. The determinant route builds the CI matrix
with Slater-Condon rules directly on the integrals and never touches the
qubit mapping, so agreement between the two validates Hamiltonian
assembly, the mapping, and sector bookkeeping at once.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse
import scipy.sparse.linalg

from . import _kernels
from .chem import InvalidInput, MoleculeData, SpinOrbitalHamiltonian, hartree_fock_reference
from .ops import PauliSum

_MAX_QUBITS = 16


class OracleFailure(RuntimeError):
    """Eigensolver did not converge."""


def hamiltonian_matrix(h: PauliSum) -> scipy.sparse.csr_matrix:
    """Exact sparse matrix of a Pauli sum (little-endian basis)."""
    n = h.n_qubits
    if n > _MAX_QUBITS:
        raise InvalidInput(f"{n} qubits exceeds the {_MAX_QUBITS}-qubit oracle limit")
    dim = 1 << n
    idx = np.arange(dim, dtype=np.uint64)
    mats = []
    xm, zm, cs = h.packed()
    for x, z, c in zip(xm, zm, cs):
        rows = idx ^ x
        signs = 1.0 - 2.0 * _parity64(idx & z)
        mats.append(
            scipy.sparse.coo_matrix((c * signs, (rows, idx)), shape=(dim, dim))
        )
    if not mats:
        return scipy.sparse.csr_matrix((dim, dim), dtype=np.complex128)
    return sum(mats).tocsr()


def _parity64(v: np.ndarray) -> np.ndarray:
    v = v.copy()
    for shift in (32, 16, 8, 4, 2, 1):
        v ^= v >> np.uint64(shift)
    return (v & np.uint64(1)).astype(np.float64)


def _sector_indices(n_qubits: int, n_electrons: int, ms2: int) -> np.ndarray:
    """Basis indices with the right electron count and S_z (alpha even bits)."""
    n_alpha = (n_electrons + ms2) // 2
    idx = np.arange(1 << n_qubits, dtype=np.uint64)
    alpha_mask = np.uint64(sum(1 << q for q in range(0, n_qubits, 2)))
    occ = _popcount64(idx)
    occ_alpha = _popcount64(idx & alpha_mask)
    keep = (occ == n_electrons) & (occ_alpha == n_alpha)
    return np.nonzero(keep)[0]


def _popcount64(v: np.ndarray) -> np.ndarray:
    out = np.zeros_like(v, dtype=np.int64)
    v = v.copy()
    while np.any(v):
        out += (v & np.uint64(1)).astype(np.int64)
        v >>= np.uint64(1)
    return out


def fci_energy_qubit(h: SpinOrbitalHamiltonian, m: MoleculeData) -> float:
    """Lowest eigenvalue of the qubit Hamiltonian in the molecule's sector."""
    n = h.n_qubits
    if n > _MAX_QUBITS:
        raise InvalidInput(f"{n} qubits exceeds the {_MAX_QUBITS}-qubit oracle limit")
    if (m.n_electrons + m.ms2) % 2 != 0:
        raise InvalidInput("MS2 parity inconsistent with NELEC")
    sector = _sector_indices(n, m.n_electrons, m.ms2)
    if sector.size == 0:
        raise InvalidInput("empty particle-number sector")
    dim = 1 << n
    xm, zm, cs = h.qubit_form.packed()
    scratch_in = np.zeros(dim, dtype=np.complex128)
    scratch_out = np.zeros(dim, dtype=np.complex128)

    def matvec(v):
        scratch_in[:] = 0.0
        scratch_in[sector] = np.asarray(v, dtype=np.complex128).ravel()
        _kernels.apply_pauli_sum(scratch_in, xm, zm, cs, scratch_out)
        return scratch_out[sector].copy()

    if sector.size <= 400:
        mat = np.zeros((sector.size, sector.size), dtype=np.complex128)
        unit = np.zeros(sector.size, dtype=np.complex128)
        for k in range(sector.size):
            unit[:] = 0.0
            unit[k] = 1.0
            mat[:, k] = matvec(unit)
        if np.max(np.abs(mat - mat.conj().T)) > 1e-10:
            raise OracleFailure("sector Hamiltonian not Hermitian")
        e0 = float(np.linalg.eigvalsh(mat)[0])
        return e0 + h.constant

    op = scipy.sparse.linalg.LinearOperator(
        (sector.size, sector.size), matvec=matvec, dtype=np.complex128
    )
    # deterministic start: the HF determinant of this sector
    hf_index = hartree_fock_reference(m)
    v0 = np.zeros(sector.size, dtype=np.complex128)
    pos = np.searchsorted(sector, hf_index)
    if pos >= sector.size or sector[pos] != hf_index:
        raise OracleFailure("HF determinant missing from sector")
    v0[pos] = 1.0
    try:
        vals = scipy.sparse.linalg.eigsh(
            op, k=1, which="SA", v0=v0, tol=0, maxiter=10000,
            return_eigenvectors=False,
        )
    except scipy.sparse.linalg.ArpackNoConvergence as exc:
        raise OracleFailure("Lanczos did not converge") from exc
    return float(vals[0]) + h.constant


def _spin_orbital_h1(m: MoleculeData, p: int, q: int) -> float:
    if (p ^ q) & 1:
        return 0.0
    return float(m.h1[p // 2, q // 2])


def _coulomb_exchange(m: MoleculeData, i: int, j: int) -> float:
    """<IJ||IJ> for spin orbitals, from chemist spatial integrals."""
    ci = float(m.h2[i // 2, i // 2, j // 2, j // 2])
    if (i ^ j) & 1:
        return ci
    return ci - float(m.h2[i // 2, j // 2, j // 2, i // 2])


def _physicist(m: MoleculeData, p: int, q: int, r: int, s: int) -> float:
    """<PQ|RS> over spin orbitals = (pr|qs) * spin deltas."""
    if (p ^ r) & 1 or (q ^ s) & 1:
        return 0.0
    return float(m.h2[p // 2, r // 2, q // 2, s // 2])


def _excitation_sign(det: int, annihilate: list[int], create: list[int]) -> float:
    sign = 1
    occ = det
    for i in annihilate:
        sign *= -1 if _bits_below(occ, i) & 1 else 1
        occ &= ~(1 << i)
    for a in create:
        sign *= -1 if _bits_below(occ, a) & 1 else 1
        occ |= 1 << a
    return float(sign)


def _bits_below(mask: int, pos: int) -> int:
    return bin(mask & ((1 << pos) - 1)).count("1")


def _determinants(m: MoleculeData) -> list[int]:
    from itertools import combinations

    if (m.n_electrons + m.ms2) % 2 != 0:
        raise InvalidInput("MS2 parity inconsistent with NELEC")
    n_alpha = (m.n_electrons + m.ms2) // 2
    n_beta = (m.n_electrons - m.ms2) // 2
    alphas = [sum(1 << (2 * p) for p in c) for c in combinations(range(m.n_spatial), n_alpha)]
    betas = [sum(1 << (2 * p + 1) for p in c) for c in combinations(range(m.n_spatial), n_beta)]
    return sorted(a | b for a in alphas for b in betas)


def _diagonal_element(m: MoleculeData, det: int) -> float:
    occ = [p for p in range(m.n_spin_orbitals) if det >> p & 1]
    e = sum(_spin_orbital_h1(m, i, i) for i in occ)
    for a in range(len(occ)):
        for b in range(a + 1, len(occ)):
            e += _coulomb_exchange(m, occ[a], occ[b])
    return e


def _single_element(m: MoleculeData, det: int, i: int, a: int) -> float:
    common = [p for p in range(m.n_spin_orbitals) if det >> p & 1 and p != i]
    val = _spin_orbital_h1(m, i, a)
    for j in common:
        val += _physicist(m, i, j, a, j) - _physicist(m, i, j, j, a)
    return _excitation_sign(det, [i], [a]) * val


def _double_element(m: MoleculeData, det: int, i: int, j: int, a: int, b: int) -> float:
    # pairing i->a, j->b; the sequential phase below realizes a+_a a+_b a_j a_i
    val = _physicist(m, i, j, a, b) - _physicist(m, i, j, b, a)
    return _excitation_sign(det, [i, j], [b, a]) * val


def fci_energy_determinant(m: MoleculeData) -> float:
    """FCI by Slater-Condon rules in the determinant basis of the sector."""
    dets = _determinants(m)
    index = {d: k for k, d in enumerate(dets)}
    dim = len(dets)
    rows, cols, vals = [], [], []

    for d in dets:
        k = index[d]
        rows.append(k)
        cols.append(k)
        vals.append(_diagonal_element(m, d))
        occ = [p for p in range(m.n_spin_orbitals) if d >> p & 1]
        virt = [p for p in range(m.n_spin_orbitals) if not d >> p & 1]
        # singles (spin-conserving; others vanish but are skipped for speed)
        for i in occ:
            for a in virt:
                if (i ^ a) & 1:
                    continue
                d2 = d ^ (1 << i) | (1 << a)
                k2 = index.get(d2)
                if k2 is None or k2 <= k:
                    continue
                v = _single_element(m, d, i, a)
                if v != 0.0:
                    rows.extend((k, k2))
                    cols.extend((k2, k))
                    vals.extend((v, v))
        # doubles
        for ii in range(len(occ)):
            for jj in range(ii + 1, len(occ)):
                i, j = occ[ii], occ[jj]
                for aa in range(len(virt)):
                    for bb in range(aa + 1, len(virt)):
                        a, b = virt[aa], virt[bb]
                        if (i % 2 + j % 2) != (a % 2 + b % 2):
                            continue
                        d2 = d ^ (1 << i) ^ (1 << j) | (1 << a) | (1 << b)
                        k2 = index.get(d2)
                        if k2 is None or k2 <= k:
                            continue
                        v = _double_element(m, d, i, j, a, b)
                        if v != 0.0:
                            rows.extend((k, k2))
                            cols.extend((k2, k))
                            vals.extend((v, v))

    mat = scipy.sparse.coo_matrix((vals, (rows, cols)), shape=(dim, dim)).tocsr()
    if dim <= 1500:
        e0 = float(np.linalg.eigvalsh(mat.toarray())[0])
    else:
        v0 = np.zeros(dim)
        v0[index[hartree_fock_reference(m)]] = 1.0
        try:
            e0 = float(
                scipy.sparse.linalg.eigsh(
                    mat, k=1, which="SA", v0=v0, tol=0, maxiter=10000,
                    return_eigenvectors=False,
                )[0]
            )
        except scipy.sparse.linalg.ArpackNoConvergence as exc:
            raise OracleFailure("Lanczos did not converge") from exc
    return e0 + m.core_energy


def slater_condon_hf(m: MoleculeData) -> float:
    """Hartree-Fock energy of the aufbau determinant, from the integrals."""
    det = hartree_fock_reference(m)
    return _diagonal_element(m, det) + m.core_energy
