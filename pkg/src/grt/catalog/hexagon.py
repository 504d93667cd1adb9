"""Seven-qubit hexagonal tile tensors (bulk leg 0, bond legs 1..6)."""
from __future__ import annotations

import numpy as np

from ..entanglement import entropy_profile
from ..errors import ParameterError
from ..symmetry import expand, hexagon_full, orbits, restrict
from .records import SolutionRecord

__all__ = [
    "HEXAGON_COMPONENTS",
    "SQRT2",
    "A_MAX_TYPE1",
    "A_RANGE_TYPE3",
    "hexagon_table",
    "hexagon_from_components",
    "hexagon_components",
    "hexagonal_record",
    "hexagonal_type1",
    "hexagonal_type3",
    "hexagonal_p2",
    "type1_ds013",
    "type1_node13_lambda2",
    "branch_differences",
]

SQRT2 = np.sqrt(2.0)
A_MAX_TYPE1 = SQRT2 / 16
A_RANGE_TYPE3 = (-3 * SQRT2 / 16, SQRT2 / 16)

# a_k -> (bulk value, bond string); every other entry follows by symmetry
HEXAGON_COMPONENTS = (
    (0, "000000"), (1, "000000"), (0, "000001"), (1, "000001"),
    (0, "000011"), (1, "000011"), (0, "000101"), (1, "000101"),
    (0, "001001"), (1, "001001"), (0, "000111"), (0, "001011"),
    (0, "010101"),
)


def _tuple(k):
    s0, bonds = HEXAGON_COMPONENTS[k]
    return (s0,) + tuple(int(c) for c in bonds)


_TABLE = None


def hexagon_table():
    global _TABLE
    if _TABLE is None:
        _TABLE = orbits(hexagon_full(), 2)
    return _TABLE


def hexagon_from_components(values):
    """Expand ``a1..a13`` into the full symmetric 7-leg tensor."""
    values = np.asarray(values, dtype=float).ravel()
    if values.size != 13:
        raise ParameterError(f"expected 13 components, got {values.size}")
    return expand({_tuple(k): v for k, v in enumerate(values)}, hexagon_table())


def hexagon_components(T) -> np.ndarray:
    """Read ``a1..a13`` off a symmetric hexagonal tensor."""
    table = hexagon_table()
    vals = restrict(T, table)
    return np.array([vals[table.position(_tuple(k))] for k in range(13)])


def hexagonal_record(family, params, values, **kw) -> SolutionRecord:
    values = np.asarray(values, dtype=float)
    T = hexagon_from_components(values)
    return SolutionRecord(family, params, values, T, entropy_profile(T), **kw)


def _fill_even(odd: dict, j: int, k: int) -> list:
    """Complete a1..a13 from the independent ones via the branch relations."""
    a = dict(odd)
    sj, sk = (-1) ** j / (8 * SQRT2), (-1) ** k / (4 * SQRT2)
    a[2] = a[1] + sj
    a[6] = a[5] - sj
    a[8] = a[7] - sj
    a[4] = a[3] + sk
    return [a[i] for i in range(1, 14)]


def branch_differences(values) -> tuple:
    """``(a2-a1, a5-a6, a7-a8, a4-a3)``."""
    a = np.asarray(values, dtype=float)
    return (a[1] - a[0], a[4] - a[5], a[6] - a[7], a[3] - a[2])


def _type1_base(a: float, branch: str) -> dict:
    if branch not in ("minus", "plus"):
        raise ParameterError(f"branch must be 'minus' or 'plus', not {branch!r}")
    m = -1.0 if branch == "minus" else 1.0
    D = np.sqrt(a * (SQRT2 - 16 * a))
    return {
        1: (-SQRT2 + 24 * a + m * 4 * D) / 8,
        3: (-SQRT2 + m * 4 * D) / 16,
        5: (SQRT2 - 16 * a + m * 8 * D) / 16,
        7: a,
        9: (-SQRT2 - 16 * a - m * 8 * D) / 16,
        10: (SQRT2 - 8 * a - m * 4 * D) / 8,
        11: (SQRT2 - 32 * a - m * 4 * D) / 16,
        12: (-SQRT2 + 32 * a - m * 4 * D) / 16,
        13: (-SQRT2 + 32 * a + m * 12 * D) / 16,
    }


def _gauge(values, j: int, k: int) -> np.ndarray:
    """Move the ``j = k = 0`` solution to another sign branch.

    Flipping the bulk qubit swaps even and odd bulk components and reverses
    both branch signs; a Pauli Z on every bond leg negates the components
    with an odd number of bond ones and reverses only the second sign.
    Both are local unitaries, so the constraint and all deltas survive.
    """
    a = np.array(values, dtype=float)
    if j:
        for lo, hi in ((0, 1), (2, 3), (4, 5), (6, 7), (8, 9)):
            a[lo], a[hi] = a[hi], a[lo]
    if (k + j) % 2:
        odd_weight = [2, 3, 10, 11, 12]
        a[odd_weight] = -a[odd_weight]
    return a


def hexagonal_type1(a: float, j: int = 0, k: int = 0, branch: str = "minus") -> SolutionRecord:
    """Type I one-parameter family, ``0 < a < sqrt(2)/16``.

    ``branch`` selects the upper (``"minus"``) or lower (``"plus"``) sign
    choice; ``j`` and ``k`` select the sign branch of the even components.
    """
    a = float(a)
    if not 0 < a < A_MAX_TYPE1:
        raise ParameterError(f"a = {a} outside (0, sqrt(2)/16)")
    if j not in (0, 1) or k not in (0, 1):
        raise ParameterError("j and k must be 0 or 1")
    base = np.array(_fill_even(_type1_base(a, branch), 0, 0))
    vals = _gauge(base, j, k)
    return hexagonal_record("HexTypeI", {"a": a, "j": j, "k": k, "branch": branch}, vals)


def hexagonal_type3(a: float) -> SolutionRecord:
    """Type III family: also maximally mixed on legs ``{0, 1, 3}``."""
    a = float(a)
    lo, hi = A_RANGE_TYPE3
    if not lo < a < hi:
        raise ParameterError(f"a = {a} outside (-3 sqrt(2)/16, sqrt(2)/16)")
    a3 = np.sqrt(3 - 16 * SQRT2 * a - 128 * a * a) / (16 * SQRT2)
    h = SQRT2 / 16
    vals = {
        1: a, 10: a, 2: a + SQRT2 / 8, 9: a + SQRT2 / 8,
        3: a3, 4: a3, 11: a3, 12: -a3, 13: a3,
        5: -h, 6: h, 7: -h, 8: h,
    }
    return hexagonal_record("HexTypeIII", {"a": a}, [vals[i] for i in range(1, 14)])


def _p2_a() -> dict:
    return {
        1: (np.sqrt(445 * SQRT2 + 650) + 10) / (160 * SQRT2),
        3: -(np.sqrt(50 - 5 * SQRT2) + 20) / (160 * SQRT2),
        5: (np.sqrt(5 * (50 - 31 * SQRT2)) - 10) / (160 * SQRT2),
        7: (np.sqrt((10 + SQRT2) / 10) - SQRT2) / 32,
        9: -(np.sqrt(5 * (SQRT2 + 2)) - 6) / (32 * SQRT2),
        10: -(np.sqrt(5 * (SQRT2 + 2)) + 6) / (32 * SQRT2),
        11: np.sqrt(5 + 31 / (5 * SQRT2)) / 32,
        12: -np.sqrt(5 - 5 / SQRT2) / 32,
        13: -np.sqrt(13 + 79 / (5 * SQRT2)) / 32,
    }


def _p2_b() -> dict:
    return {
        1: -(np.sqrt(890 - 205 * SQRT2) - 10) / (160 * SQRT2),
        3: -(np.sqrt(85 * SQRT2 + 130) + 20) / (160 * SQRT2),
        5: (np.sqrt(10 - 5 * SQRT2) - 10) / (160 * SQRT2),
        7: (np.sqrt((10 - SQRT2) / 10) - SQRT2) / 32,
        9: -(np.sqrt(115 * SQRT2 + 650) - 30) / (160 * SQRT2),
        10: -(np.sqrt(115 * SQRT2 + 650) + 30) / (160 * SQRT2),
        11: -np.sqrt((82 - 31 * SQRT2) / 10) / 32,
        12: 3 / 32 * np.sqrt((SQRT2 + 2) / 10),
        13: np.sqrt(13 - 79 / (5 * SQRT2)) / 32,
    }


def hexagonal_p2(variant: str) -> SolutionRecord:
    """Isolated exact solutions ``"A"`` and ``"B"``.

    Both are completed with the sign branch ``j = 1, k = 0``; only that
    branch satisfies the constraint for both component sets.
    """
    variant = variant.upper()
    if variant not in ("A", "B"):
        raise ParameterError(f"variant must be 'A' or 'B', not {variant!r}")
    odd = _p2_a() if variant == "A" else _p2_b()
    vals = _fill_even(odd, 1, 0)
    return hexagonal_record(f"HexP2{variant}", {"variant": variant, "j": 1, "k": 0}, vals)


def type1_ds013(a):
    """Closed-form ``{0,1,3}`` delta along the Type I family."""
    a = np.asarray(a, dtype=float)
    return 1 / 64 + a * (SQRT2 - 16 * a * (5 + 64 * a * (8 * a - SQRT2)))


def type1_node13_lambda2(a):
    """Closed-form subleading eigenvalue of the ``(1,3)`` node along Type I."""
    a = np.asarray(a, dtype=float)
    return (SQRT2 - 32 * a) * np.sqrt((SQRT2 - 16 * a) * a)
