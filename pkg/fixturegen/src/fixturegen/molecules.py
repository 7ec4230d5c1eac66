"""Geometry builders for the bundled molecules (bond lengths in angstrom)."""

from __future__ import annotations

import numpy as np

H2O_ANGLE_DEG = 104.52
NH3_ANGLE_DEG = 106.67


def h2(r: float):
    return ["H", "H"], [[0.0, 0.0, 0.0], [0.0, 0.0, r]]


def h4(r: float):
    """Linear chain with uniform spacing."""
    return ["H"] * 4, [[0.0, 0.0, i * r] for i in range(4)]


def lih(r: float):
    return ["Li", "H"], [[0.0, 0.0, 0.0], [0.0, 0.0, r]]


def hf(r: float):
    return ["F", "H"], [[0.0, 0.0, 0.0], [0.0, 0.0, r]]


def beh2(r: float):
    """Linear, symmetrically stretched."""
    return ["Be", "H", "H"], [[0.0, 0.0, 0.0], [0.0, 0.0, r], [0.0, 0.0, -r]]


def h2o(r: float):
    half = np.deg2rad(H2O_ANGLE_DEG) / 2.0
    return ["O", "H", "H"], [
        [0.0, 0.0, 0.0],
        [0.0, r * np.sin(half), r * np.cos(half)],
        [0.0, -r * np.sin(half), r * np.cos(half)],
    ]


def nh3(r: float):
    """C3v pyramid with fixed H-N-H angle."""
    hnh = np.deg2rad(NH3_ANGLE_DEG)
    # place the three H on a cone around z; half-angle from the HNH angle
    sin_half = np.sin(hnh / 2.0) / np.sin(np.deg2rad(60.0))
    if sin_half >= 1.0:
        raise ValueError("inconsistent NH3 angle")
    theta = np.arcsin(sin_half)
    coords = [[0.0, 0.0, 0.0]]
    for k in range(3):
        phi = 2.0 * np.pi * k / 3.0
        coords.append([
            r * np.sin(theta) * np.cos(phi),
            r * np.sin(theta) * np.sin(phi),
            r * np.cos(theta),
        ])
    return ["N", "H", "H", "H"], coords


BUILDERS = {
    "h2": h2,
    "h4": h4,
    "lih": lih,
    "hf": hf,
    "beh2": beh2,
    "h2o": h2o,
    "nh3": nh3,
}

# bond lengths of the bundled fixtures
DEFAULT_GEOMETRIES = {
    "h2": [0.74],
    "h4": [1.50],
    "lih": [1.60, 2.40, 3.24],
    "hf": [1.80],
    "beh2": [2.60],
    "h2o": [2.06],
    "nh3": [1.60],
}
