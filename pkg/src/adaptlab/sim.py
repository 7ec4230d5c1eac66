"""Exact statevector simulation: reference preparation, excitation
exponentials, expectation values, and analytic parameter gradients.

Excitation exponentials use the closed form

    e^{theta * tau} = I + sin(theta) tau + (1 - cos(theta)) tau^2

valid because UCCSD generators satisfy tau^3 = -tau. Gradients are exact
reverse-sweep (adjoint) derivatives; no sampling anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .chem import SpinOrbitalHamiltonian
from .ops import PauliSum
from .pool import ExcitationOp


class ExpectationNotReal(ValueError):
    """Expectation of a supposedly Hermitian operator had imaginary residue."""


@dataclass
class StateVector:
    amps: np.ndarray
    n_qubits: int

    def copy(self) -> "StateVector":
        return StateVector(self.amps.copy(), self.n_qubits)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


@dataclass
class Ansatz:
    """Ordered product of excitation exponentials applied to a reference.

    Elements apply left-to-right: the newest (appended) operator acts last
    on the state.
    """

    n_qubits: int
    reference: int
    elements: list[tuple[ExcitationOp, float]] = field(default_factory=list)

    def thetas(self) -> np.ndarray:
        return np.array([theta for _, theta in self.elements], dtype=float)

    def with_thetas(self, thetas) -> "Ansatz":
        if len(thetas) != len(self.elements):
            raise ValueError("parameter count mismatch")
        return Ansatz(
            self.n_qubits,
            self.reference,
            [(op, float(t)) for (op, _), t in zip(self.elements, thetas)],
        )

    def appended(self, op: ExcitationOp, theta: float) -> "Ansatz":
        return Ansatz(self.n_qubits, self.reference, self.elements + [(op, theta)])


def prepare_reference(mask: int, n_qubits: int) -> StateVector:
    if not 0 <= mask < (1 << n_qubits):
        raise ValueError("reference mask out of range")
    amps = np.zeros(1 << n_qubits, dtype=np.complex128)
    amps[mask] = 1.0
    return StateVector(amps, n_qubits)


def _apply_sum_into(ps: PauliSum, amps: np.ndarray, out: np.ndarray) -> None:
    xm, zm, cs = ps.packed()
    _kernels.apply_pauli_sum(amps, xm, zm, cs, out)


def _apply_excitation_inplace(
    amps: np.ndarray, op: ExcitationOp, theta: float,
    scratch1: np.ndarray, scratch2: np.ndarray,
) -> None:
    if theta == 0.0:
        return
    _apply_sum_into(op.qubit_generator, amps, scratch1)          # tau |psi>
    _apply_sum_into(op.qubit_generator, scratch1, scratch2)     # tau^2 |psi>
    amps += math.sin(theta) * scratch1 + (1.0 - math.cos(theta)) * scratch2


def apply_excitation(s: StateVector, op: ExcitationOp, theta: float) -> StateVector:
    """e^{theta tau} |s> via the nilpotent-rotation closed form."""
    out = s.amps.copy()
    scratch1 = np.empty_like(out)
    scratch2 = np.empty_like(out)
    _apply_excitation_inplace(out, op, theta, scratch1, scratch2)
    return StateVector(out, s.n_qubits)


def apply_ansatz(a: Ansatz) -> StateVector:
    state = prepare_reference(a.reference, a.n_qubits)
    scratch1 = np.empty_like(state.amps)
    scratch2 = np.empty_like(state.amps)
    for op, theta in a.elements:
        _apply_excitation_inplace(state.amps, op, theta, scratch1, scratch2)
    return state


def expectation(s: StateVector, h: PauliSum) -> float:
    """<s|h|s> for Hermitian h; raises if the imaginary residue is large."""
    xm, zm, cs = h.packed()
    val = _kernels.expectation_pauli_sum(s.amps, xm, zm, cs)
    if abs(val.imag) > 1e-10:
        raise ExpectationNotReal(f"imaginary residue {val.imag:.3e}")
    return float(val.real)


def energy(a: Ansatz, h: SpinOrbitalHamiltonian) -> float:
    return expectation(apply_ansatz(a), h.qubit_form) + h.constant


def gradient(a: Ansatz, h: SpinOrbitalHamiltonian) -> np.ndarray:
    """Exact dE/dtheta_k for all k by one forward and one backward sweep."""
    mels = a.elements
    grads = np.zeros(len(mels))
    if not mels:
        return grads
    psi = apply_ansatz(a)
    lam = np.empty_like(psi.amps)
    _apply_sum_into(h.qubit_form, psi.amps, lam)   # H |psi>
    scratch1 = np.empty_like(psi.amps)
    scratch2 = np.empty_like(psi.amps)
    tau_psi = np.empty_like(psi.amps)
    for k in range(len(mels) - 1, -1, -1):
        op, theta = mels[k]
        _apply_sum_into(op.qubit_generator, psi.amps, tau_psi)
        grads[k] = 2.0 * np.vdot(lam, tau_psi).real
        if k > 0:
            _apply_excitation_inplace(psi.amps, op, -theta, scratch1, scratch2)
            _apply_excitation_inplace(lam, op, -theta, scratch1, scratch2)
    return grads


def energy_and_gradient(a: Ansatz, h: SpinOrbitalHamiltonian) -> tuple[float, np.ndarray]:
    """Energy and its full gradient sharing one forward sweep."""
    mels = a.elements
    psi = apply_ansatz(a)
    lam = np.empty_like(psi.amps)
    _apply_sum_into(h.qubit_form, psi.amps, lam)
    e = np.vdot(psi.amps, lam)
    if abs(e.imag) > 1e-10:
        raise ExpectationNotReal(f"imaginary residue {e.imag:.3e}")
    grads = np.zeros(len(mels))
    scratch1 = np.empty_like(psi.amps)
    scratch2 = np.empty_like(psi.amps)
    tau_psi = np.empty_like(psi.amps)
    for k in range(len(mels) - 1, -1, -1):
        op, theta = mels[k]
        _apply_sum_into(op.qubit_generator, psi.amps, tau_psi)
        grads[k] = 2.0 * np.vdot(lam, tau_psi).real
        if k > 0:
            _apply_excitation_inplace(psi.amps, op, -theta, scratch1, scratch2)
            _apply_excitation_inplace(lam, op, -theta, scratch1, scratch2)
    return float(e.real) + h.constant, grads


def pool_gradients(
    s: StateVector,
    pool: list[ExcitationOp],
    h: SpinOrbitalHamiltonian,
    sub_hamiltonians: list[SpinOrbitalHamiltonian] | None = None,
) -> np.ndarray:
    """Initial-gradient <[H, tau_i]> for every pool element.

    Uses each operator's sub-Hamiltonian when provided (identical result to
    the full H by index locality, cheaper to evaluate).
    """
    grads = np.zeros(len(pool))
    tau_psi = np.empty_like(s.amps)
    h_psi = np.empty_like(s.amps)
    if sub_hamiltonians is None:
        _apply_sum_into(h.qubit_form, s.amps, h_psi)
        for k, op in enumerate(pool):
            _apply_sum_into(op.qubit_generator, s.amps, tau_psi)
            grads[k] = 2.0 * np.vdot(h_psi, tau_psi).real
    else:
        for k, (op, sub) in enumerate(zip(pool, sub_hamiltonians)):
            _apply_sum_into(sub.qubit_form, s.amps, h_psi)
            _apply_sum_into(op.qubit_generator, s.amps, tau_psi)
            grads[k] = 2.0 * np.vdot(h_psi, tau_psi).real
    return grads
