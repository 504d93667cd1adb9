"""Transfer nodes, their spectra and scaling dimensions."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DimensionError
from ..symmetry import apply_local_rotation
from ..tensor import DenseTensor
from .tiling import TilingSpec

__all__ = [
    "TransferNode",
    "doubled_tile",
    "node_matrix",
    "sort_spectrum",
    "scaling_dimension",
    "rotation_spectrum_scan",
    "ROTATION_COLUMNS",
]


def sort_spectrum(w) -> np.ndarray:
    """Descending modulus; ties (to 1e-12) by real part, then imaginary part."""
    w = np.asarray(w, dtype=complex)
    keys = sorted(range(len(w)), key=lambda i: (-round(abs(w[i]), 12), -w[i].real, -w[i].imag))
    return w[keys]


@dataclass(frozen=True, eq=False)
class TransferNode:
    """Doubled-leg matrix from leg ``i`` to leg ``j`` of a tile tensor.

    ``matrix[(t, t'), (s, s')]`` sums ``T[.., s, .., t, ..] conj(T[.., s', .., t', ..])``
    over every other leg; it is divided by its leading eigenvalue modulus.
    """

    legs: tuple
    matrix: np.ndarray
    spectrum: np.ndarray
    leading_vector: np.ndarray
    scale: float
    source: str = ""

    @property
    def lambda2(self) -> complex:
        return complex(self.spectrum[1]) if len(self.spectrum) > 1 else 0j


def doubled_tile(T: DenseTensor, open_legs, bulk=None, bulk_label=0) -> np.ndarray:
    """Contract ``T`` with its conjugate on all legs except ``open_legs``.

    Each open leg becomes one doubled axis of size ``d**2`` indexed by
    ``(ket, bra)``.  If ``bulk`` is given, the bulk leg is closed with it:
    ``sum T[x, ..] bulk[x, x'] conj(T[x', ..])``.
    """
    open_legs = [int(l) for l in open_legs]
    closed = [l for l in T.labels if l not in open_legs]
    m = len(open_legs)
    if bulk is None:
        A = T.permute(open_legs + closed).data
        dims = A.shape[:m]
        A = A.reshape(dims + (-1,))
        M = np.tensordot(A, A.conj(), axes=([m], [m]))
    else:
        if bulk_label not in closed:
            raise DimensionError(f"bulk leg {bulk_label} is not a closed leg")
        rest = [l for l in closed if l != bulk_label]
        B = T.permute(open_legs + [bulk_label] + rest).data
        dims = B.shape[:m]
        db = T.dim(bulk_label)
        B = B.reshape(dims + (db, -1))
        O = np.asarray(bulk, dtype=complex)
        if O.shape != (db, db):
            raise DimensionError(f"bulk operator must be {db}x{db}")
        # sum_x B[.., x, r] O[x, x'] -> axes (.., r, x')
        BO = np.moveaxis(np.tensordot(B, O, axes=([m], [0])), -1, m)
        M = np.tensordot(BO, B.conj(), axes=([m, m + 1], [m, m + 1]))
    # interleave ket and bra axes, then merge each pair
    order = [x for k in range(m) for x in (k, m + k)]
    M = np.transpose(M, order)
    return M.reshape(tuple(d * d for d in dims))


def node_matrix(T: DenseTensor, i: int, j: int, bulk=None, normalize=True, source="") -> TransferNode:
    """Transfer node from doubled leg ``i`` to doubled leg ``j``."""
    if i == j:
        raise DimensionError("node legs must differ")
    for lab in (i, j):
        T.axis(lab)
    M = doubled_tile(T, [j, i], bulk)
    w, v = np.linalg.eig(M)
    order = [list(w).index(x) for x in sort_spectrum(w)]
    w, v = w[order], v[:, order]
    scale = float(abs(w[0])) if normalize else 1.0
    if scale == 0:
        raise DimensionError("node has a vanishing spectrum")
    lead = v[:, 0]
    lead = lead / lead[np.argmax(np.abs(lead))]
    return TransferNode((i, j), M / scale, w / scale, lead, scale, source)


def scaling_dimension(lambda2, tiling: TilingSpec) -> float:
    """``-ln|lambda2| / ln(mu)``; infinite for a vanishing eigenvalue."""
    lam = abs(complex(lambda2))
    if lam == 0:
        return math.inf
    return -math.log(lam) / math.log(tiling.mu)


ROTATION_COLUMNS = ["phi"] + [f"node{a}{b}_abs{k}" for a, b in ((1, 3), (1, 4)) for k in range(1, 5)]


def rotation_spectrum_scan(T: DenseTensor, phis, legs=(1,)) -> list:
    """Leading four |eigenvalues| of the (1,3) and (1,4) nodes per rotation angle.

    The rotation acts on ``legs`` only; rotating every leg by the same angle
    is a similarity transform of each node and leaves spectra unchanged.
    """
    rows = []
    for phi in phis:
        R = apply_local_rotation(T, float(phi), legs)
        row = [float(phi)]
        for a, b in ((1, 3), (1, 4)):
            row += [float(abs(x)) for x in node_matrix(R, a, b).spectrum[:4]]
        rows.append(row)
    return rows
