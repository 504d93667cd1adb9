"""Rotation-symmetric five-qubit tensors for pentagonal tiles."""
from __future__ import annotations

import numpy as np

from ..symmetry import expand, orbits, pentagon_rotation, restrict
from .records import SolutionRecord

__all__ = [
    "PENTAGON_COMPONENTS",
    "pentagon_table",
    "pentagon_from_components",
    "pentagon_components",
    "pentagonal_ame",
    "pentagonal_isolated",
    "isolated_pair_matrix",
]

# one representative per rotation orbit, in the conventional order
PENTAGON_COMPONENTS = ("00000", "00001", "00011", "00101", "00111", "01011", "01111", "11111")


def _bits(s):
    return tuple(int(c) for c in s)


def pentagon_table():
    return orbits(pentagon_rotation(), 2)


def pentagon_from_components(values):
    """Expand eight values given in :data:`PENTAGON_COMPONENTS` order."""
    values = np.asarray(values, dtype=float)
    return expand({_bits(s): v for s, v in zip(PENTAGON_COMPONENTS, values)}, pentagon_table())


def pentagon_components(T) -> np.ndarray:
    table = pentagon_table()
    vals = restrict(T, table)
    return np.array([vals[table.position(_bits(s))] for s in PENTAGON_COMPONENTS])


def _record(family, params, values):
    values = np.asarray(values, dtype=float)
    return SolutionRecord(family, params, values, pentagon_from_components(values))


def pentagonal_ame(theta: float) -> SolutionRecord:
    """One-parameter family of five-qubit AME tensors."""
    s, c = np.sin(theta), np.cos(theta)
    v = {
        "00000": s, "00101": s, "00011": -s, "01111": -s,
        "11111": c, "01011": c, "00111": -c, "00001": -c,
    }
    return _record("PentaAME", {"theta": float(theta)}, [v[k] for k in PENTAGON_COMPONENTS])


def pentagonal_isolated() -> SolutionRecord:
    """Isolated planar solution: neighbor pairs maximally mixed, diagonal pairs not."""
    B = np.sqrt(5) - 2
    t0 = (np.sqrt(10 * np.sqrt(5) - 22) + 3) / 4
    t3 = (-B + 2 * np.sqrt(B)) / 4
    t5 = (1 - np.sqrt(2 * (np.sqrt(5) - 1))) / 4
    v = {
        "00000": t0,
        "11111": t0 - 1.5,
        "00001": -B / 4,
        "01111": B / 4,
        "00011": t3,
        "00111": t3 + B / 2,
        "00101": t5,
        "01011": t5 - 0.5,
    }
    return _record("PentaIsolated", {}, [v[k] for k in PENTAGON_COMPONENTS])


def isolated_pair_matrix() -> np.ndarray:
    """Closed form of the isolated tensor's reduction onto legs 1 and 3 (trace 4)."""
    r5 = np.sqrt(5)
    al, be, ga, de = (r5 + 3) / 4, (r5 - 1) / 4, (5 - r5) / 4, (1 - r5) / 4
    return np.array(
        [[al, 0, 0, be], [0, ga, de, 0], [0, de, ga, 0], [be, 0, 0, al]]
    )
