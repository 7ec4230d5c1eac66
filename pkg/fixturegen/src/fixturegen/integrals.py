"""Molecular integrals over contracted Cartesian Gaussians.

McMurchie-Davidson scheme: Hermite expansion coefficients for overlap-type
integrals, Hermite Coulomb recursion plus the Boys function for nuclear
attraction and electron repulsion. Adequate for s and p shells at STO-3G
scale; no screening, everything dense.
"""

from __future__ import annotations

import numpy as np
from scipy.special import hyp1f1

from .basis import ContractedGaussian


def boys(m: int, t: float) -> float:
    """Boys function F_m(t) via the confluent hypergeometric representation."""
    return hyp1f1(m + 0.5, m + 1.5, -t) / (2.0 * m + 1.0)


def _hermite_e(i: int, j: int, t: int, qx: float, a: float, b: float) -> float:
    """Hermite expansion coefficient E_t^{ij} for a Gaussian product."""
    p = a + b
    q = a * b / p
    if t < 0 or t > i + j:
        return 0.0
    if i == j == t == 0:
        return np.exp(-q * qx * qx)
    if j == 0:
        # decrement i
        return (
            _hermite_e(i - 1, j, t - 1, qx, a, b) / (2.0 * p)
            - q * qx / a * _hermite_e(i - 1, j, t, qx, a, b)
            + (t + 1) * _hermite_e(i - 1, j, t + 1, qx, a, b)
        )
    # decrement j
    return (
        _hermite_e(i, j - 1, t - 1, qx, a, b) / (2.0 * p)
        + q * qx / b * _hermite_e(i, j - 1, t, qx, a, b)
        + (t + 1) * _hermite_e(i, j - 1, t + 1, qx, a, b)
    )


def _overlap_prim(a, lmn1, ra, b, lmn2, rb) -> float:
    s = 1.0
    for k in range(3):
        s *= _hermite_e(lmn1[k], lmn2[k], 0, ra[k] - rb[k], a, b)
    return s * (np.pi / (a + b)) ** 1.5


def _kinetic_prim(a, lmn1, ra, b, lmn2, rb) -> float:
    i, j, k = lmn2

    def ov(l2):
        return _overlap_prim(a, lmn1, ra, b, l2, rb)

    term0 = b * (2 * (i + j + k) + 3) * ov((i, j, k))
    term1 = -2.0 * b * b * (ov((i + 2, j, k)) + ov((i, j + 2, k)) + ov((i, j, k + 2)))
    term2 = -0.5 * (
        i * (i - 1) * ov((i - 2, j, k))
        + j * (j - 1) * ov((i, j - 2, k))
        + k * (k - 1) * ov((i, j, k - 2))
    )
    return term0 + term1 + term2


def _hermite_coulomb(t: int, u: int, v: int, n: int, p: float, pc: np.ndarray) -> float:
    """Hermite Coulomb integral R^n_{tuv} by downward recursion."""
    if t < 0 or u < 0 or v < 0:
        return 0.0
    if t == u == v == 0:
        t2 = p * float(pc @ pc)
        return (-2.0 * p) ** n * boys(n, t2)
    if t > 0:
        return (t - 1) * _hermite_coulomb(t - 2, u, v, n + 1, p, pc) + pc[0] * _hermite_coulomb(
            t - 1, u, v, n + 1, p, pc
        )
    if u > 0:
        return (u - 1) * _hermite_coulomb(t, u - 2, v, n + 1, p, pc) + pc[1] * _hermite_coulomb(
            t, u - 1, v, n + 1, p, pc
        )
    return (v - 1) * _hermite_coulomb(t, u, v - 2, n + 1, p, pc) + pc[2] * _hermite_coulomb(
        t, u, v - 1, n + 1, p, pc
    )


def _nuclear_prim(a, lmn1, ra, b, lmn2, rb, rc) -> float:
    p = a + b
    rp = (a * ra + b * rb) / p
    pc = rp - rc
    total = 0.0
    for t in range(lmn1[0] + lmn2[0] + 1):
        ex = _hermite_e(lmn1[0], lmn2[0], t, ra[0] - rb[0], a, b)
        for u in range(lmn1[1] + lmn2[1] + 1):
            ey = _hermite_e(lmn1[1], lmn2[1], u, ra[1] - rb[1], a, b)
            for v in range(lmn1[2] + lmn2[2] + 1):
                ez = _hermite_e(lmn1[2], lmn2[2], v, ra[2] - rb[2], a, b)
                total += ex * ey * ez * _hermite_coulomb(t, u, v, 0, p, pc)
    return 2.0 * np.pi / p * total


def _eri_prim(a, lmn1, ra, b, lmn2, rb, c, lmn3, rc, d, lmn4, rd) -> float:
    p = a + b
    q = c + d
    alpha = p * q / (p + q)
    rp = (a * ra + b * rb) / p
    rq = (c * rc + d * rd) / q
    pq = rp - rq

    total = 0.0
    for t in range(lmn1[0] + lmn2[0] + 1):
        e1x = _hermite_e(lmn1[0], lmn2[0], t, ra[0] - rb[0], a, b)
        for u in range(lmn1[1] + lmn2[1] + 1):
            e1y = _hermite_e(lmn1[1], lmn2[1], u, ra[1] - rb[1], a, b)
            for v in range(lmn1[2] + lmn2[2] + 1):
                e1z = _hermite_e(lmn1[2], lmn2[2], v, ra[2] - rb[2], a, b)
                e1 = e1x * e1y * e1z
                if e1 == 0.0:
                    continue
                for tau in range(lmn3[0] + lmn4[0] + 1):
                    e2x = _hermite_e(lmn3[0], lmn4[0], tau, rc[0] - rd[0], c, d)
                    for nu in range(lmn3[1] + lmn4[1] + 1):
                        e2y = _hermite_e(lmn3[1], lmn4[1], nu, rc[1] - rd[1], c, d)
                        for phi in range(lmn3[2] + lmn4[2] + 1):
                            e2z = _hermite_e(lmn3[2], lmn4[2], phi, rc[2] - rd[2], c, d)
                            e2 = e2x * e2y * e2z
                            if e2 == 0.0:
                                continue
                            sign = -1.0 if (tau + nu + phi) % 2 else 1.0
                            total += e1 * e2 * sign * _hermite_coulomb(
                                t + tau, u + nu, v + phi, 0, alpha, pq
                            )
    return total * 2.0 * np.pi**2.5 / (p * q * np.sqrt(p + q))


def _contract2(fn, g1: ContractedGaussian, g2: ContractedGaussian) -> float:
    out = 0.0
    for a, ca in zip(g1.exps, g1.coefs):
        for b, cb in zip(g2.exps, g2.coefs):
            out += ca * cb * fn(a, g1.lmn, g1.center, b, g2.lmn, g2.center)
    return out


def overlap_contracted(g1: ContractedGaussian, g2: ContractedGaussian) -> float:
    return _contract2(_overlap_prim, g1, g2)


def kinetic_contracted(g1: ContractedGaussian, g2: ContractedGaussian) -> float:
    return _contract2(_kinetic_prim, g1, g2)


def nuclear_contracted(g1, g2, rc: np.ndarray) -> float:
    return _contract2(lambda a, l1, r1, b, l2, r2: _nuclear_prim(a, l1, r1, b, l2, r2, rc), g1, g2)


def eri_contracted(g1, g2, g3, g4) -> float:
    out = 0.0
    for a, ca in zip(g1.exps, g1.coefs):
        for b, cb in zip(g2.exps, g2.coefs):
            for c, cc in zip(g3.exps, g3.coefs):
                for d, cd in zip(g4.exps, g4.coefs):
                    out += ca * cb * cc * cd * _eri_prim(
                        a, g1.lmn, g1.center,
                        b, g2.lmn, g2.center,
                        c, g3.lmn, g3.center,
                        d, g4.lmn, g4.center,
                    )
    return out


def ao_integrals(aos, symbols, coords_bohr, charges):
    """All AO-basis integrals: overlap, kinetic, nuclear attraction, ERIs (chemist)."""
    n = len(aos)
    s = np.zeros((n, n))
    t = np.zeros((n, n))
    v = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            s[i, j] = s[j, i] = overlap_contracted(aos[i], aos[j])
            t[i, j] = t[j, i] = kinetic_contracted(aos[i], aos[j])
            vij = 0.0
            for z, rc in zip(charges, coords_bohr):
                vij -= z * nuclear_contracted(aos[i], aos[j], np.asarray(rc, dtype=float))
            v[i, j] = v[j, i] = vij

    eri = np.zeros((n, n, n, n))
    # unique chemist quartets: i>=j, k>=l, (ij)>=(kl)
    pairs = [(i, j) for i in range(n) for j in range(i + 1)]
    for ij, (i, j) in enumerate(pairs):
        for k, l in pairs[: ij + 1]:
            val = eri_contracted(aos[i], aos[j], aos[k], aos[l])
            for (p, q, r, w) in {
                (i, j, k, l), (j, i, k, l), (i, j, l, k), (j, i, l, k),
                (k, l, i, j), (l, k, i, j), (k, l, j, i), (l, k, j, i),
            }:
                eri[p, q, r, w] = val
    return s, t, v, eri


def nuclear_repulsion(symbols, coords_bohr, charges) -> float:
    e = 0.0
    n = len(symbols)
    for i in range(n):
        for j in range(i + 1, n):
            r = np.linalg.norm(np.asarray(coords_bohr[i]) - np.asarray(coords_bohr[j]))
            e += charges[i] * charges[j] / r
    return e
