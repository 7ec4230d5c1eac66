"""STO-3G basis set tables and contracted-shell construction.

Exponents and contraction coefficients are the standard published STO-3G
values (Hehre, Stewart, Pople fits; as distributed by the Basis Set
Exchange). Only the elements needed for the bundled molecules are tabulated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Per element: list of (shell_type, exponents, coefficients).
# "sp" shells share exponents between the 2s and 2p contractions.
STO3G = {
    "H": [
        ("s", [3.425250914, 0.6239137298, 0.1688554040],
              [0.1543289673, 0.5353281423, 0.4446345422]),
    ],
    "Li": [
        ("s", [16.11957475, 2.936200663, 0.7946504870],
              [0.1543289673, 0.5353281423, 0.4446345422]),
        ("sp", [0.6362897469, 0.1478600533, 0.0480886784],
               ([-0.09996722919, 0.3995128261, 0.7001154689],
                [0.1559162750, 0.6076837186, 0.3919573931])),
    ],
    "Be": [
        ("s", [30.16787069, 5.495115306, 1.487192653],
              [0.1543289673, 0.5353281423, 0.4446345422]),
        ("sp", [1.314833110, 0.3055389383, 0.0993707456],
               ([-0.09996722919, 0.3995128261, 0.7001154689],
                [0.1559162750, 0.6076837186, 0.3919573931])),
    ],
    "N": [
        ("s", [99.10616896, 18.05231239, 4.885660238],
              [0.1543289673, 0.5353281423, 0.4446345422]),
        ("sp", [3.780455879, 0.8784966449, 0.2857143744],
               ([-0.09996722919, 0.3995128261, 0.7001154689],
                [0.1559162750, 0.6076837186, 0.3919573931])),
    ],
    "O": [
        ("s", [130.7093214, 23.80886605, 6.443608313],
              [0.1543289673, 0.5353281423, 0.4446345422]),
        ("sp", [5.033151319, 1.169596125, 0.3803889600],
               ([-0.09996722919, 0.3995128261, 0.7001154689],
                [0.1559162750, 0.6076837186, 0.3919573931])),
    ],
    "F": [
        ("s", [166.6791340, 30.36081233, 8.216820672],
              [0.1543289673, 0.5353281423, 0.4446345422]),
        ("sp", [6.464803249, 1.502281245, 0.4885884864],
               ([-0.09996722919, 0.3995128261, 0.7001154689],
                [0.1559162750, 0.6076837186, 0.3919573931])),
    ],
}

ATOMIC_NUMBER = {"H": 1, "Li": 3, "Be": 4, "N": 7, "O": 8, "F": 9}


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def primitive_norm(alpha: float, lmn: tuple[int, int, int]) -> float:
    """Normalization constant of a Cartesian Gaussian primitive."""
    i, j, k = lmn
    l = i + j + k
    num = (2.0 * alpha / np.pi) ** 0.75 * (4.0 * alpha) ** (l / 2.0)
    den = np.sqrt(
        _double_factorial(2 * i - 1)
        * _double_factorial(2 * j - 1)
        * _double_factorial(2 * k - 1)
    )
    return num / den


@dataclass
class ContractedGaussian:
    """One contracted Cartesian Gaussian AO."""

    center: np.ndarray          # (3,) in bohr
    lmn: tuple[int, int, int]   # Cartesian angular momentum
    exps: np.ndarray
    coefs: np.ndarray           # includes primitive norms; contraction renormalized

    @property
    def nprim(self) -> int:
        return len(self.exps)


def build_basis(symbols: list[str], coords_bohr: np.ndarray) -> list[ContractedGaussian]:
    """Expand STO-3G shells into a list of contracted Cartesian AOs.

    AO order follows the shell order of the table, with p shells expanded
    as (x, y, z). Contractions are renormalized to unit self-overlap.
    """
    from .integrals import overlap_contracted

    aos = []
    for sym, xyz in zip(symbols, coords_bohr):
        if sym not in STO3G:
            raise ValueError(f"no STO-3G data for element {sym!r}")
        for shell in STO3G[sym]:
            kind, exps = shell[0], np.asarray(shell[1], dtype=float)
            if kind == "s":
                comps = [((0, 0, 0), np.asarray(shell[2], dtype=float))]
            elif kind == "sp":
                s_coef, p_coef = shell[2]
                comps = [((0, 0, 0), np.asarray(s_coef, dtype=float))]
                for lmn in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
                    comps.append((lmn, np.asarray(p_coef, dtype=float)))
            else:
                raise ValueError(f"unsupported shell type {kind!r}")
            for lmn, coefs in comps:
                norms = np.array([primitive_norm(a, lmn) for a in exps])
                ao = ContractedGaussian(
                    center=np.asarray(xyz, dtype=float),
                    lmn=lmn,
                    exps=exps,
                    coefs=coefs * norms,
                )
                s = overlap_contracted(ao, ao)
                ao.coefs = ao.coefs / np.sqrt(s)
                aos.append(ao)
    return aos
