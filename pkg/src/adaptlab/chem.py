"""Electron-integral ingestion and molecular Hamiltonian assembly.

Spin-orbital convention: spatial orbital p expands to alpha = 2p (even)
and beta = 2p + 1 (odd). FCIDUMP integrals are chemist-notation (pq|rs);
the two-body operator is assembled as

    1/2 sum_{pqrs} (pq|rs) sum_{sigma,tau} a^+_{p sigma} a^+_{r tau} a_{s tau} a_{q sigma}

which reproduces the physicist-ordered coefficient layout after normal
ordering.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .ops import (
    ANNIHILATE,
    CREATE,
    FermionSum,
    FermionTerm,
    jordan_wigner,
    normal_order,
    simplify,
)


class ParseError(ValueError):
    """Malformed FCIDUMP content."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class InvalidInput(ValueError):
    """Inconsistent molecular data."""


_DUP_TOL = 1e-10


@dataclass
class MoleculeData:
    """Parsed electron integrals plus electron bookkeeping.

    h1 is the (n, n) one-body array; h2 the (n, n, n, n) chemist-notation
    (pq|rs) array, both over spatial orbitals, in Hartree.
    """

    n_spatial: int
    n_electrons: int
    ms2: int
    core_energy: float
    h1: np.ndarray
    h2: np.ndarray

    def __post_init__(self):
        if not 0 < self.n_electrons <= 2 * self.n_spatial:
            raise InvalidInput(
                f"electron count {self.n_electrons} invalid for {self.n_spatial} orbitals"
            )
        if np.max(np.abs(self.h1 - self.h1.T)) > _DUP_TOL:
            raise InvalidInput("one-body integrals not symmetric")

    @property
    def n_spin_orbitals(self) -> int:
        return 2 * self.n_spatial


@dataclass
class SpinOrbitalHamiltonian:
    """Normal-ordered fermionic Hamiltonian with its cached qubit image."""

    body: FermionSum
    qubit_form: "PauliSum"
    fermionic_term_count: int
    constant: float

    @property
    def n_qubits(self) -> int:
        return self.body.n_spin_orbitals


def parse_fcidump(text: str | bytes) -> MoleculeData:
    """Parse FCIDUMP content (namelist header, then `value i j k l` lines).

    Indices are 1-based; `value i j 0 0` is a one-body integral, the
    `value 0 0 0 0` line is the core energy, four nonzero indices are
    chemist-notation (ij|kl). All permutational symmetries are expanded.
    Lines `value i 0 0 0` (orbital energies) are ignored.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = text.splitlines()

    header_end = None
    header_parts: list[str] = []
    for ln, raw in enumerate(lines):
        header_parts.append(raw)
        if "&END" in raw.upper() or raw.strip() == "/" or raw.strip().endswith("/"):
            header_end = ln
            break
    if header_end is None:
        raise ParseError("missing namelist terminator (&END or /)")
    header = " ".join(header_parts)
    if not header.lstrip().upper().startswith("&FCI"):
        raise ParseError("header does not start with &FCI", line=1)

    def header_int(key: str, required: bool, default: int = 0) -> int:
        m = re.search(rf"{key}\s*=\s*(-?\d+)", header, flags=re.IGNORECASE)
        if m is None:
            if required:
                raise ParseError(f"header missing {key}", line=1)
            return default
        return int(m.group(1))

    norb = header_int("NORB", required=True)
    nelec = header_int("NELEC", required=True)
    ms2 = header_int("MS2", required=False, default=0)
    if norb <= 0:
        raise ParseError("NORB must be positive", line=1)

    h1 = np.zeros((norb, norb))
    h2 = np.zeros((norb, norb, norb, norb))
    core = 0.0
    seen: dict[tuple, float] = {}

    for ln in range(header_end + 1, len(lines)):
        raw = lines[ln].strip()
        if not raw:
            continue
        fields = raw.replace("D", "E").replace("d", "e").split()
        if len(fields) != 5:
            raise ParseError(f"expected 5 fields, got {len(fields)}", line=ln + 1)
        try:
            value = float(fields[0])
            i, j, k, l = (int(f) for f in fields[1:])
        except ValueError as exc:
            raise ParseError(str(exc), line=ln + 1) from exc
        for idx in (i, j, k, l):
            if not 0 <= idx <= norb:
                raise ParseError(f"index {idx} out of range [0, {norb}]", line=ln + 1)

        if i == j == k == l == 0:
            _check_dup(seen, ("core",), value, ln + 1)
            core = value
        elif k == 0 and l == 0:
            if i == 0:
                raise ParseError("mixed zero/nonzero indices", line=ln + 1)
            if j == 0:
                continue  # orbital energy line; not used
            key = ("h1",) + tuple(sorted((i - 1, j - 1)))
            _check_dup(seen, key, value, ln + 1)
            h1[i - 1, j - 1] = value
            h1[j - 1, i - 1] = value
        elif l == 0 or k != 0 and (j == 0 or i == 0):
            raise ParseError("mixed zero/nonzero indices", line=ln + 1)
        else:
            p, q, r, s = i - 1, j - 1, k - 1, l - 1
            key = ("h2",) + _chemist_canonical(p, q, r, s)
            _check_dup(seen, key, value, ln + 1)
            for pp, qq, rr, ss in {
                (p, q, r, s), (q, p, r, s), (p, q, s, r), (q, p, s, r),
                (r, s, p, q), (s, r, p, q), (r, s, q, p), (s, r, q, p),
            }:
                h2[pp, qq, rr, ss] = value

    return MoleculeData(
        n_spatial=norb, n_electrons=nelec, ms2=ms2, core_energy=core, h1=h1, h2=h2
    )


def _chemist_canonical(p, q, r, s):
    ij = (max(p, q), min(p, q))
    kl = (max(r, s), min(r, s))
    return max(ij, kl) + min(ij, kl)


def _check_dup(seen, key, value, line):
    if key in seen and abs(seen[key] - value) > _DUP_TOL:
        raise ParseError(
            f"conflicting duplicate entry ({seen[key]!r} vs {value!r})", line=line
        )
    seen[key] = value


def load_fcidump(path) -> MoleculeData:
    with open(path, "rb") as fh:
        return parse_fcidump(fh.read())


def assemble_hamiltonian(m: MoleculeData) -> SpinOrbitalHamiltonian:
    """Build the spin-orbital Hamiltonian from the parsed integrals."""
    n = m.n_spin_orbitals
    terms: list[FermionTerm] = []
    for p in range(m.n_spatial):
        for q in range(m.n_spatial):
            v = m.h1[p, q]
            if abs(v) == 0.0:
                continue
            for sigma in (0, 1):
                terms.append(
                    FermionTerm(v, ((2 * p + sigma, CREATE), (2 * q + sigma, ANNIHILATE)))
                )
    nz = np.argwhere(np.abs(m.h2) > 0.0)
    for pqrs in nz:
        p, q, r, s = (int(x) for x in pqrs)
        v = 0.5 * m.h2[p, q, r, s]
        for sigma in (0, 1):
            for tau in (0, 1):
                terms.append(
                    FermionTerm(
                        v,
                        (
                            (2 * p + sigma, CREATE),
                            (2 * r + tau, CREATE),
                            (2 * s + tau, ANNIHILATE),
                            (2 * q + sigma, ANNIHILATE),
                        ),
                    )
                )
    body = normal_order(FermionSum(n, terms))
    qubit_form = simplify(jordan_wigner(body))
    if qubit_form.max_imag() > 1e-12:
        raise InvalidInput("assembled Hamiltonian is not Hermitian")
    return SpinOrbitalHamiltonian(
        body=body,
        qubit_form=qubit_form,
        fermionic_term_count=len(body.terms),
        constant=m.core_energy,
    )


def hartree_fock_reference(m: MoleculeData) -> int:
    """Aufbau occupation bitmask: lowest spatial orbitals, alpha then beta."""
    if (m.n_electrons + m.ms2) % 2 != 0:
        raise InvalidInput(f"MS2={m.ms2} inconsistent with NELEC={m.n_electrons}")
    n_alpha = (m.n_electrons + m.ms2) // 2
    n_beta = (m.n_electrons - m.ms2) // 2
    if n_alpha < 0 or n_beta < 0 or n_alpha > m.n_spatial or n_beta > m.n_spatial:
        raise InvalidInput("electron counts exceed orbital capacity")
    mask = 0
    for p in range(n_alpha):
        mask |= 1 << (2 * p)
    for p in range(n_beta):
        mask |= 1 << (2 * p + 1)
    return mask


def sub_hamiltonian(h: SpinOrbitalHamiltonian, op) -> SpinOrbitalHamiltonian:
    """Restriction of h to fermionic terms sharing an index with op.

    The core constant is always excluded: it has no indices and no gradient.
    """
    wanted = frozenset(op.indices)
    kept = [
        t for t in h.body.terms
        if wanted & {orb for orb, _ in t.ladder}
    ]
    body = FermionSum(h.body.n_spin_orbitals, kept)
    qubit_form = simplify(jordan_wigner(body))
    return SpinOrbitalHamiltonian(
        body=body,
        qubit_form=qubit_form,
        fermionic_term_count=len(kept),
        constant=0.0,
    )
