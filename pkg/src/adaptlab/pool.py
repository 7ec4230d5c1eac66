"""Excitation-operator pools: spin-resolved UCCSD singles and doubles,
plus the integral-magnitude (Hamiltonian-informed) reduction.

Pool convention: each spin-resolved excitation is its own element (no
spin-complement merging); occupied/virtual partitioning is relative to the
aufbau reference. Singles are indexed (i, a), doubles (i, j, a, b) with
i > j and a > b.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chem import MoleculeData, SpinOrbitalHamiltonian, hartree_fock_reference
from .ops import (
    ANNIHILATE,
    CREATE,
    FermionSum,
    FermionTerm,
    PauliSum,
    jordan_wigner,
    normal_order,
)

SINGLE = "single"
DOUBLE = "double"


@dataclass
class ExcitationOp:
    """An anti-Hermitian excitation generator with its cached qubit image."""

    kind: str
    indices: tuple[int, ...]
    generator: FermionSum
    qubit_generator: PauliSum
    pool_index: int

    def label(self) -> str:
        if self.kind == SINGLE:
            i, a = self.indices
            return f"{i}->{a}"
        i, j, a, b = self.indices
        return f"{j},{i}->{b},{a}"


def _make_single(n: int, i: int, a: int) -> tuple[FermionSum, PauliSum]:
    gen = FermionSum(
        n,
        [
            FermionTerm(1.0, ((a, CREATE), (i, ANNIHILATE))),
            FermionTerm(-1.0, ((i, CREATE), (a, ANNIHILATE))),
        ],
    )
    gen = normal_order(gen)
    return gen, jordan_wigner(gen)


def _make_double(n: int, i: int, j: int, a: int, b: int) -> tuple[FermionSum, PauliSum]:
    gen = FermionSum(
        n,
        [
            FermionTerm(1.0, ((a, CREATE), (b, CREATE), (i, ANNIHILATE), (j, ANNIHILATE))),
            FermionTerm(-1.0, ((i, CREATE), (j, CREATE), (a, ANNIHILATE), (b, ANNIHILATE))),
        ],
    )
    gen = normal_order(gen)
    return gen, jordan_wigner(gen)


def uccsd_pool(m: MoleculeData) -> list[ExcitationOp]:
    """All spin- and particle-conserving singles and doubles, canonical order."""
    n = m.n_spin_orbitals
    ref = hartree_fock_reference(m)
    occ = [p for p in range(n) if ref >> p & 1]
    virt = [p for p in range(n) if not ref >> p & 1]

    ops: list[ExcitationOp] = []
    singles = sorted(
        (i, a) for i in occ for a in virt if (i ^ a) & 1 == 0
    )
    for i, a in singles:
        gen, qgen = _make_single(n, i, a)
        ops.append(ExcitationOp(SINGLE, (i, a), gen, qgen, len(ops)))

    doubles = sorted(
        (i, j, a, b)
        for ji, j in enumerate(occ)
        for i in occ[ji + 1:]
        for bi, b in enumerate(virt)
        for a in virt[bi + 1:]
        if (i % 2 + j % 2) == (a % 2 + b % 2)
    )
    for i, j, a, b in doubles:
        gen, qgen = _make_double(n, i, j, a, b)
        ops.append(ExcitationOp(DOUBLE, (i, j, a, b), gen, qgen, len(ops)))

    for op in ops:
        if op.qubit_generator.max_real() > 1e-12:
            raise AssertionError("generator is not anti-Hermitian")
    return ops


def hi_uccsd_filter(
    pool: list[ExcitationOp], h: SpinOrbitalHamiltonian, eta: float = 1e-10
) -> list[ExcitationOp]:
    """Keep excitations whose index multiset appears in the Hamiltonian.

    A single (double) survives iff some one-body (two-body) term of h has
    the same spin-orbital index multiset with coefficient magnitude > eta.
    """
    if eta < 0:
        raise ValueError("eta must be non-negative")
    one_body: dict[tuple, float] = {}
    two_body: dict[tuple, float] = {}
    for t in h.body.terms:
        key = tuple(sorted(orb for orb, _ in t.ladder))
        table = one_body if len(key) == 2 else two_body if len(key) == 4 else None
        if table is not None:
            table[key] = max(table.get(key, 0.0), abs(t.coefficient))

    kept = []
    for op in pool:
        table = one_body if op.kind == SINGLE else two_body
        if table.get(tuple(sorted(op.indices)), 0.0) > eta:
            kept.append(op)

    return [
        ExcitationOp(op.kind, op.indices, op.generator, op.qubit_generator, k)
        for k, op in enumerate(kept)
    ]
