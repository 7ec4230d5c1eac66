"""Pure-numpy statevector kernels (fallback when the compiled core is absent).

Pauli strings are packed as (x_mask, z_mask, coeff) with the i^(#Y) phase
folded into the coefficient, so that

    P |j> = coeff * (-1)^popcount(j & z_mask) |j XOR x_mask>.
"""

from __future__ import annotations

import numpy as np


def _parity(v: np.ndarray) -> np.ndarray:
    """Bitwise parity of each entry of a uint64 array, as 0/1 uint64."""
    v = v.copy()
    for shift in (32, 16, 8, 4, 2, 1):
        v ^= v >> np.uint64(shift)
    return v & np.uint64(1)


def apply_pauli_sum(amps: np.ndarray, x_masks, z_masks, coeffs, out: np.ndarray) -> None:
    """out <- sum_k coeff_k P_k |amps> (out is overwritten)."""
    n = amps.shape[0]
    idx = np.arange(n, dtype=np.uint64)
    out[:] = 0.0
    for xm, zm, c in zip(x_masks, z_masks, coeffs):
        src = idx ^ xm
        signs = 1.0 - 2.0 * _parity(src & zm).astype(np.float64)
        out += (c * signs) * amps[src]


def expectation_pauli_sum(amps: np.ndarray, x_masks, z_masks, coeffs) -> complex:
    """<amps| sum_k coeff_k P_k |amps> as a complex number."""
    n = amps.shape[0]
    idx = np.arange(n, dtype=np.uint64)
    conj = np.conjugate(amps)
    total = 0.0 + 0.0j
    for xm, zm, c in zip(x_masks, z_masks, coeffs):
        src = idx ^ xm
        signs = 1.0 - 2.0 * _parity(src & zm).astype(np.float64)
        total += c * np.sum(conj * signs * amps[src])
    return complex(total)
