"""FCIDUMP writer (Molpro conventions: 1-based, chemist notation)."""

from __future__ import annotations

import numpy as np


def write_fcidump(path, h1_mo: np.ndarray, eri_mo: np.ndarray, core_energy: float,
                  n_electrons: int, ms2: int = 0, drop_tol: float = 1e-12) -> None:
    n = h1_mo.shape[0]
    lines = [f"&FCI NORB={n},NELEC={n_electrons},MS2={ms2},"]
    lines.append(" ORBSYM=" + "1," * n)
    lines.append(" ISYM=1,")
    lines.append("&END")

    def fmt(v, i, j, k, l):
        return f"{v: .16E} {i:4d} {j:4d} {k:4d} {l:4d}"

    pairs = [(i, j) for i in range(n) for j in range(i + 1)]
    for ij, (i, j) in enumerate(pairs):
        for k, l in pairs[: ij + 1]:
            v = eri_mo[i, j, k, l]
            if abs(v) > drop_tol:
                lines.append(fmt(v, i + 1, j + 1, k + 1, l + 1))
    for i in range(n):
        for j in range(i + 1):
            v = h1_mo[i, j]
            if abs(v) > drop_tol:
                lines.append(fmt(v, i + 1, j + 1, 0, 0))
    lines.append(fmt(core_energy, 0, 0, 0, 0))

    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
