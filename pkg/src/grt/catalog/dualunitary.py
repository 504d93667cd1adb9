"""Dual-unitary gates, the frame tensor and the glued wheel-plus-frame tensor.

Two-qubit gates are 4x4 matrices; reshaped to ``(2, 2, 2, 2)`` their axes
are ``(out1, out2, in1, in2)``.
"""
from __future__ import annotations

import numpy as np
from scipy.linalg import expm

from ..errors import DimensionError, ParameterError
from ..tensor import DenseTensor
from .states import wheel_graph_state

__all__ = [
    "dual_unitary",
    "unitarity_defect",
    "dual_defect",
    "reshuffle_defect",
    "frame_gate_count",
    "frame_schedule",
    "frame_tensor",
    "wheel_frame_tensor",
]

_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]])
_Z = np.diag([1.0, -1.0]).astype(complex)


def unitarity_defect(U) -> float:
    U = np.asarray(U)
    return float(np.max(np.abs(U @ U.conj().T - np.eye(U.shape[0]))))


def dual_defect(U) -> float:
    """Deviation from unitarity of the space-like reshuffle ``(in1,out1) -> (in2,out2)``."""
    u = np.asarray(U).reshape(2, 2, 2, 2)
    return unitarity_defect(np.transpose(u, (2, 0, 3, 1)).reshape(4, 4))


def reshuffle_defect(U) -> float:
    """Deviation from unitarity of the remaining pairing ``(out1,in2) -> (in1,out2)``.

    Zero only for gates that are unitary under every balanced pairing.
    """
    u = np.asarray(U).reshape(2, 2, 2, 2)
    return unitarity_defect(np.transpose(u, (0, 3, 2, 1)).reshape(4, 4))


def dual_unitary(J: float, locals_=None) -> np.ndarray:
    """``(u1⊗u2) exp(-i[π/4 XX + π/4 YY + J ZZ]) (u3⊗u4)``.

    ``locals_`` is a sequence of four 2x2 unitaries (identity if omitted).
    """
    if locals_ is None:
        locals_ = [np.eye(2)] * 4
    if len(locals_) != 4:
        raise ParameterError("need four single-qubit unitaries")
    us = [np.asarray(u, dtype=complex) for u in locals_]
    for u in us:
        if u.shape != (2, 2) or unitarity_defect(u) > 1e-10:
            raise ParameterError("local gates must be 2x2 unitaries")
    H = np.pi / 4 * (np.kron(_X, _X) + np.kron(_Y, _Y)) + J * np.kron(_Z, _Z)
    return np.kron(us[0], us[1]) @ expm(-1j * H) @ np.kron(us[2], us[3])


def frame_gate_count(n: int) -> int:
    return (n - 2) // 2


def frame_schedule(n: int) -> list:
    """Gate placements of the frame on ``n`` ququart legs.

    Connection ``c_j`` is a qubit wire from leg ``j`` to leg ``j+1``; it
    has ``n-2`` segments ``0..n-3``.  Connections ``j`` and ``k`` with
    cyclic offset ``o = k - j`` in ``[2, n/2]`` meet in one gate of type
    ``o - 2``.  Offsets are visited outermost-first along each wire, so
    the gate for offset ``o`` sits at depth ``p = n-1-o`` on wire ``j`` and
    at depth ``o-1`` on wire ``k``.  Each entry is
    ``(type, (j, p), (k, p'))``.  The gate's output legs are segments
    ``p-1`` and ``p`` of wire ``j`` and its input legs are segments ``p'``
    and ``p'-1`` of wire ``k``; dual unitarity makes either reading of the
    crossing an isometry.
    """
    out = []
    for j in range(n):
        for o in range(2, n // 2 + 1):
            k = (j + o) % n
            if 2 * o == n and j > k:
                continue
            out.append((o - 2, (j, n - 1 - o), (k, o - 1)))
    return out


def frame_tensor(n: int, gates) -> DenseTensor:
    """Frame tensor on ``n`` ququart legs labelled ``1..n``.

    ``gates`` lists ``frame_gate_count(n)`` dual-unitary 4x4 matrices.  The
    ququart at leg ``j+1`` joins the end of connection ``c_{j-1}`` (first
    qubit) and the start of ``c_j`` (second qubit).
    """
    if n < 4:
        raise ParameterError("the frame needs n >= 4")
    gates = [np.asarray(g, dtype=complex) for g in gates]
    if len(gates) != frame_gate_count(n):
        raise ParameterError(f"n = {n} needs {frame_gate_count(n)} gates, got {len(gates)}")
    for g in gates:
        if g.shape != (4, 4):
            raise DimensionError("gates must be 4x4")
        if unitarity_defect(g) > 1e-10 or dual_defect(g) > 1e-10:
            raise ParameterError("frame gates must be dual unitary")
    labels = {}

    def seg(j, p):
        return labels.setdefault((j, p), len(labels))

    args = []
    for typ, (j, p), (k, pk) in frame_schedule(n):
        args += [gates[typ].reshape(2, 2, 2, 2), [seg(j, p - 1), seg(j, p), seg(k, pk), seg(k, pk - 1)]]
    out = []
    for j in range(n):
        out += [seg((j - 1) % n, n - 3), seg(j, 0)]
    data = np.einsum(*args, out, optimize=True).reshape((4,) * n)
    return DenseTensor(data)


def wheel_frame_tensor(n: int, gates, leg_unitaries) -> DenseTensor:
    """Wheel graph state glued to the frame, one 8x8 unitary per boundary leg.

    Boundary leg ``j`` combines wheel qubit ``j`` (most significant) with
    frame ququart ``j``; leg ``0`` is the bulk qubit.
    """
    leg_unitaries = [np.asarray(u, dtype=complex) for u in leg_unitaries]
    if len(leg_unitaries) != n:
        raise ParameterError(f"need {n} leg unitaries")
    for u in leg_unitaries:
        if u.shape != (8, 8) or unitarity_defect(u) > 1e-10:
            raise ParameterError("leg unitaries must be 8x8 unitary")
    G = wheel_graph_state(n).data
    F = frame_tensor(n, gates).data
    # bulk, then (g_j, f_j) pairs
    gl = [0] + [2 * j + 1 for j in range(n)]
    fl = [2 * j + 2 for j in range(n)]
    data = np.einsum(G, gl, F, fl, list(range(2 * n + 1)), optimize=True)
    data = data.reshape((2,) + (8,) * n)
    T = DenseTensor(data, tuple(range(n + 1)))
    for j, u in enumerate(leg_unitaries, start=1):
        T = T.apply(j, u)
    return T
