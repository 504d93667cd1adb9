"""GHZ states and CZ graph states."""
from __future__ import annotations

import numpy as np

from ..errors import ParameterError
from ..tensor import DenseTensor

__all__ = ["ghz", "graph_state", "ame_6_2", "wheel_graph_state", "wheel_edges"]


def ghz(n: int, d: int = 2) -> DenseTensor:
    """Unnormalized ``sum_i |i...i>`` on ``n`` legs of dimension ``d``."""
    if n < 1 or d < 1:
        raise ParameterError("ghz needs n >= 1 and d >= 1")
    data = np.zeros((d,) * n)
    for i in range(d):
        data[(i,) * n] = 1.0
    return DenseTensor(data)


def graph_state(n: int, edges, labels=None) -> DenseTensor:
    """CZ gates on ``|+>^n``, stored with coefficients ``±1``.

    ``edges`` refer to storage positions ``0..n-1``.
    """
    idx = np.indices((2,) * n)
    sign = np.ones((2,) * n)
    for a, b in edges:
        if a == b or not (0 <= a < n and 0 <= b < n):
            raise ParameterError(f"bad edge ({a}, {b}) for {n} qubits")
        sign = sign * np.where((idx[a] == 1) & (idx[b] == 1), -1.0, 1.0)
    return DenseTensor(sign, labels)


def wheel_edges(rim: int) -> list:
    """Hub ``0`` with spokes to ``1..rim`` and the rim cycle."""
    return [(0, i) for i in range(1, rim + 1)] + [(i, i % rim + 1) for i in range(1, rim + 1)]


def wheel_graph_state(n: int) -> DenseTensor:
    """Graph state of the wheel with ``n`` rim qubits; hub is leg ``0``."""
    if n < 4:
        raise ParameterError("the wheel needs at least 4 rim qubits")
    return graph_state(n + 1, wheel_edges(n), labels=tuple(range(n + 1)))


def ame_6_2() -> DenseTensor:
    """Six-qubit absolutely maximally entangled state.

    The graph state of the five-spoke wheel; leg 1 is the hub and legs
    ``2..6`` run around the rim.
    """
    return graph_state(6, wheel_edges(5))
