"""Rényi-2 purity deltas of three-site marginals."""
from __future__ import annotations

from dataclasses import dataclass, asdict

import numpy as np

from .errors import DimensionError
from .tensor import DenseTensor, reduce

__all__ = ["EntropyProfile", "purity_delta", "entropy_profile", "PROFILE_KEYS"]

# kept sets whose deltas fix all others for a rotation-symmetric hexagonal tensor
PROFILE_KEYS = {
    "ds013": (0, 1, 3),
    "ds014": (0, 1, 4),
    "ds123": (1, 2, 3),
    "ds124": (1, 2, 4),
    "ds135": (1, 3, 5),
}


@dataclass(frozen=True)
class EntropyProfile:
    ds013: float
    ds014: float
    ds123: float
    ds124: float
    ds135: float
    norm: float

    def as_tuple(self) -> tuple:
        return (self.ds013, self.ds014, self.ds123, self.ds124, self.ds135)

    def to_dict(self) -> dict:
        return asdict(self)


def purity_delta(T: DenseTensor, kept) -> float:
    """``Tr(rho^2) - 1/D`` for the trace-normalized reduction onto ``kept``.

    For three qubits the baseline is ``1/8``; the value is zero exactly when
    the marginal is maximally mixed.
    """
    r = reduce(T, kept).normalized()
    return float(np.einsum("ij,ji->", r, r).real - 1.0 / r.shape[0])


def _rotate(kept, shift):
    return tuple(k if k == 0 else (k - 1 + shift) % 6 + 1 for k in kept)


def entropy_profile(T: DenseTensor, check_rotation: bool = True, tol=1e-12) -> EntropyProfile:
    """The five deltas that characterize a rotation-symmetric hexagonal tensor.

    With ``check_rotation`` the ``{0,1,3}`` delta is recomputed on the kept
    set rotated by two steps; a mismatch above ``tol`` means the tensor is
    not rotation symmetric and raises.
    """
    if T.order != 7 or set(T.labels) != set(range(7)) or any(d != 2 for d in T.local_dims):
        raise DimensionError("entropy profiles need a 7-qubit tensor with legs 0..6")
    vals = {key: purity_delta(T, kept) for key, kept in PROFILE_KEYS.items()}
    if check_rotation:
        other = purity_delta(T, _rotate(PROFILE_KEYS["ds013"], 2))
        if abs(other - vals["ds013"]) > tol:
            raise DimensionError(
                f"tensor is not rotation symmetric: deltas differ by {abs(other - vals['ds013']):.3g}"
            )
    return EntropyProfile(norm=T.norm2(), **vals)
