"""Second-quantized and Pauli operator algebra, and the Jordan-Wigner mapping.

Conventions (global for the whole package):

* Spin orbital p is stored on qubit p; basis index bit p (little-endian)
  holds its occupation.
* Jordan-Wigner parity strings act on qubits BELOW the target:
  a_p   -> (X_p + iY_p)/2 * Z_{p-1} ... Z_0
  a_p^+ -> (X_p - iY_p)/2 * Z_{p-1} ... Z_0
* Normal order: all creation operators precede annihilation operators,
  each group in strictly decreasing orbital index.
* Term ordering is deterministic (lexicographic) everywhere so downstream
  traces are bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

CREATE = 1
ANNIHILATE = 0

_PAULI_PRODUCT = {
    ("X", "X"): (1.0, None), ("Y", "Y"): (1.0, None), ("Z", "Z"): (1.0, None),
    ("X", "Y"): (1j, "Z"), ("Y", "X"): (-1j, "Z"),
    ("Y", "Z"): (1j, "X"), ("Z", "Y"): (-1j, "X"),
    ("Z", "X"): (1j, "Y"), ("X", "Z"): (-1j, "Y"),
}


@dataclass(frozen=True)
class FermionTerm:
    """A scalar times an ordered product of ladder operators.

    ``ladder`` is a tuple of (orbital, action) pairs, action in
    {CREATE, ANNIHILATE}; the empty tuple is the identity.
    """

    coefficient: complex
    ladder: tuple[tuple[int, int], ...] = ()

    def conjugated(self) -> "FermionTerm":
        rev = tuple((orb, 1 - act) for orb, act in reversed(self.ladder))
        return FermionTerm(np.conjugate(self.coefficient), rev)


@dataclass
class FermionSum:
    """Sum of FermionTerms over a fixed register of spin orbitals."""

    n_spin_orbitals: int
    terms: list[FermionTerm] = field(default_factory=list)

    def __post_init__(self):
        for t in self.terms:
            for orb, _ in t.ladder:
                if not 0 <= orb < self.n_spin_orbitals:
                    raise ValueError(f"orbital index {orb} out of range")

    def __add__(self, other: "FermionSum") -> "FermionSum":
        if other.n_spin_orbitals != self.n_spin_orbitals:
            raise ValueError("mismatched spin-orbital counts")
        return FermionSum(self.n_spin_orbitals, self.terms + other.terms)

    def __sub__(self, other: "FermionSum") -> "FermionSum":
        return self + (-1.0) * other

    def __rmul__(self, scalar: complex) -> "FermionSum":
        return FermionSum(
            self.n_spin_orbitals,
            [FermionTerm(scalar * t.coefficient, t.ladder) for t in self.terms],
        )

    def index_set(self) -> frozenset[int]:
        return frozenset(orb for t in self.terms for orb, _ in t.ladder)


def ladder_term(n: int, coefficient: complex, ladder) -> FermionSum:
    """Convenience constructor for a one-term FermionSum."""
    return FermionSum(n, [FermionTerm(coefficient, tuple((int(o), int(a)) for o, a in ladder))])


def hermitian_conjugate(s: FermionSum) -> FermionSum:
    """Conjugate coefficients, reverse ladders, swap CREATE with ANNIHILATE."""
    return FermionSum(s.n_spin_orbitals, [t.conjugated() for t in s.terms])


def normal_order(s: FermionSum, drop_tol: float = 1e-12) -> FermionSum:
    """Rewrite into canonical normal order and merge duplicate ladders.

    Creation operators first, then annihilation, each group strictly
    decreasing in orbital index; anticommutation signs and {a_p, a_p^+} = 1
    contractions applied; doubled creations or annihilations vanish.
    """
    out: dict[tuple, complex] = {}
    stack = [(t.coefficient, list(t.ladder)) for t in s.terms]
    while stack:
        coeff, ops = stack.pop()
        pos = _first_disorder(ops)
        if pos is None:
            key = tuple(ops)
            out[key] = out.get(key, 0.0) + coeff
            continue
        (p, ap), (q, aq) = ops[pos], ops[pos + 1]
        if ap == ANNIHILATE and aq == CREATE:
            if p == q:
                # a_p a_p^+ = 1 - a_p^+ a_p
                stack.append((coeff, ops[:pos] + ops[pos + 2:]))
                stack.append((-coeff, ops[:pos] + [(q, aq), (p, ap)] + ops[pos + 2:]))
            else:
                stack.append((-coeff, ops[:pos] + [(q, aq), (p, ap)] + ops[pos + 2:]))
        else:
            # same action, ascending or equal index
            if p == q:
                continue  # Pauli exclusion: term vanishes
            stack.append((-coeff, ops[:pos] + [(q, aq), (p, ap)] + ops[pos + 2:]))

    terms = [
        FermionTerm(c, k)
        for k, c in sorted(out.items(), key=lambda kv: _ladder_sort_key(kv[0]))
        if abs(c) > drop_tol
    ]
    return FermionSum(s.n_spin_orbitals, terms)


def _first_disorder(ops) -> int | None:
    """Index of the first adjacent pair violating normal order, else None."""
    for t in range(len(ops) - 1):
        (p, ap), (q, aq) = ops[t], ops[t + 1]
        if ap == ANNIHILATE and aq == CREATE:
            return t
        if ap == aq and p <= q:
            return t
    return None


def _ladder_sort_key(ladder):
    return (len(ladder), ladder)


@dataclass(frozen=True)
class PauliTerm:
    """A complex coefficient times a Pauli string.

    ``letters`` maps qubit -> X/Y/Z, stored as a qubit-sorted tuple of
    pairs; the empty tuple is the identity.
    """

    coefficient: complex
    letters: tuple[tuple[int, str], ...] = ()

    @staticmethod
    def from_map(coefficient: complex, letters: dict[int, str]) -> "PauliTerm":
        return PauliTerm(coefficient, tuple(sorted(letters.items())))

    def masks(self) -> tuple[int, int, int]:
        """(x_mask, z_mask, y_count) of the string."""
        xm = zm = yc = 0
        for q, letter in self.letters:
            if letter in ("X", "Y"):
                xm |= 1 << q
            if letter in ("Z", "Y"):
                zm |= 1 << q
            if letter == "Y":
                yc += 1
        return xm, zm, yc


def pauli_product(a: PauliTerm, b: PauliTerm) -> PauliTerm:
    """Product of two Pauli terms with exact phase tracking."""
    letters = dict(a.letters)
    coeff = a.coefficient * b.coefficient
    for q, letter in b.letters:
        if q not in letters:
            letters[q] = letter
            continue
        phase, combined = _PAULI_PRODUCT[(letters[q], letter)]
        coeff *= phase
        if combined is None:
            del letters[q]
        else:
            letters[q] = combined
    return PauliTerm.from_map(coeff, letters)


@dataclass
class PauliSum:
    """Sum of Pauli strings on a fixed qubit register.

    Treat instances as immutable after construction; ``packed()`` caches the
    mask representation used by the statevector kernels.
    """

    n_qubits: int
    terms: list[PauliTerm] = field(default_factory=list)

    def __post_init__(self):
        self._packed = None
        for t in self.terms:
            for q, letter in t.letters:
                if not 0 <= q < self.n_qubits:
                    raise ValueError(f"qubit index {q} out of range")
                if letter not in ("X", "Y", "Z"):
                    raise ValueError(f"bad Pauli letter {letter!r}")

    def __add__(self, other: "PauliSum") -> "PauliSum":
        if other.n_qubits != self.n_qubits:
            raise ValueError("mismatched qubit counts")
        return PauliSum(self.n_qubits, self.terms + other.terms)

    def __rmul__(self, scalar: complex) -> "PauliSum":
        return PauliSum(
            self.n_qubits,
            [PauliTerm(scalar * t.coefficient, t.letters) for t in self.terms],
        )

    def __matmul__(self, other: "PauliSum") -> "PauliSum":
        prod = [pauli_product(a, b) for a in self.terms for b in other.terms]
        return simplify(PauliSum(max(self.n_qubits, other.n_qubits), prod))

    def hconj(self) -> "PauliSum":
        return PauliSum(
            self.n_qubits,
            [PauliTerm(np.conjugate(t.coefficient), t.letters) for t in self.terms],
        )

    def max_imag(self) -> float:
        if not self.terms:
            return 0.0
        return max(abs(t.coefficient.imag) for t in self.terms)

    def max_real(self) -> float:
        if not self.terms:
            return 0.0
        return max(abs(t.coefficient.real) for t in self.terms)

    def packed(self):
        """(x_masks, z_masks, coeffs) arrays with the i^(#Y) phase folded in."""
        if self._packed is None:
            nt = len(self.terms)
            xm = np.zeros(nt, dtype=np.uint64)
            zm = np.zeros(nt, dtype=np.uint64)
            cs = np.zeros(nt, dtype=np.complex128)
            for k, t in enumerate(self.terms):
                x, z, y = t.masks()
                xm[k] = x
                zm[k] = z
                cs[k] = t.coefficient * (1j) ** (y % 4)
            self._packed = (xm, zm, cs)
        return self._packed


def simplify(s: PauliSum, drop_tol: float = 1e-12) -> PauliSum:
    """Merge like Pauli strings, drop tiny coefficients, sort deterministically."""
    if drop_tol < 0:
        raise ValueError("drop_tol must be non-negative")
    merged: dict[tuple, complex] = {}
    for t in s.terms:
        merged[t.letters] = merged.get(t.letters, 0.0) + t.coefficient
    terms = [
        PauliTerm(c, k)
        for k, c in sorted(merged.items())
        if abs(c) > drop_tol
    ]
    return PauliSum(s.n_qubits, terms)


def _jw_ladder(orbital: int, action: int, n_qubits: int) -> PauliSum:
    """JW image of a single ladder operator."""
    zs = tuple((q, "Z") for q in range(orbital))
    sign = -0.5j if action == CREATE else 0.5j
    return PauliSum(
        n_qubits,
        [
            PauliTerm(0.5, zs + ((orbital, "X"),)),
            PauliTerm(sign, zs + ((orbital, "Y"),)),
        ],
    )


def jordan_wigner(s: FermionSum) -> PauliSum:
    """Map a FermionSum to its qubit image; the result is simplified."""
    n = s.n_spin_orbitals
    collected: list[PauliTerm] = []
    for t in s.terms:
        prod = PauliSum(n, [PauliTerm(t.coefficient, ())])
        for orb, act in t.ladder:
            prod = prod @ _jw_ladder(orb, act, n)
        collected.extend(prod.terms)
    return simplify(PauliSum(n, collected))
