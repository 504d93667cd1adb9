"""Pentagon tensor joined to a six-qubit perfect tensor, and Haar sampling of its node spectrum."""
from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import numpy as np

from ..catalog.dualunitary import unitarity_defect
from ..catalog.pentagon import pentagonal_isolated
from ..catalog.states import ame_6_2
from ..errors import ParameterError
from ..haar import haar_unitary, make_rng
from ..tensor import DenseTensor
from .nodes import node_matrix, scaling_dimension
from .tiling import tiling_spec

__all__ = ["combined_pentagon_perfect", "violin_sample", "write_violin_csv", "VIOLIN_COLUMNS"]

VIOLIN_COLUMNS = ["sample", "delta2", "delta3"]


def combined_pentagon_perfect(leg_unitaries=None, pentagon: DenseTensor | None = None) -> DenseTensor:
    """Join a pentagon tensor to the six-qubit perfect tensor leg by leg.

    Boundary leg ``j`` (1..5) pairs rim qubit ``j`` of the perfect tensor
    (index ``2*q + p``, rim qubit ``q`` most significant) with pentagon leg
    ``j``, then applies the 4x4 unitary for that leg.  Leg ``0`` is the
    perfect tensor's hub qubit and serves as the bulk leg.

    Parameters
    ----------
    leg_unitaries : None, one 4x4 unitary, or a sequence of five
        A single matrix is shared by every leg; None means identities.
    pentagon : DenseTensor, optional
        Defaults to the isolated pentagon tensor.
    """
    if leg_unitaries is None:
        us = [np.eye(4)] * 5
    else:
        arr = np.asarray(leg_unitaries, dtype=complex)
        us = [arr] * 5 if arr.shape == (4, 4) else list(arr)
    if len(us) != 5:
        raise ParameterError("need five leg unitaries or one shared unitary")
    for u in us:
        if np.shape(u) != (4, 4) or unitarity_defect(u) > 1e-10:
            raise ParameterError("leg unitaries must be 4x4 unitary")
    P = (pentagon or pentagonal_isolated().tensor).data
    if P.shape != (2,) * 5:
        raise ParameterError("the pentagon tensor must have five qubit legs")
    A = ame_6_2().data  # axis 0 hub, axes 1..5 rim
    data = np.einsum(A, [0, 1, 3, 5, 7, 9], P, [2, 4, 6, 8, 10], list(range(11)))
    T = DenseTensor(data.reshape((2,) + (4,) * 5), tuple(range(6)))
    for j, u in enumerate(us, start=1):
        T = T.apply(j, u)
    return T


def _sample(seed: int, index: int, shared: bool):
    rng = make_rng(seed, index)
    us = haar_unitary(4, rng) if shared else [haar_unitary(4, rng) for _ in range(5)]
    node = node_matrix(combined_pentagon_perfect(us), 1, 3)
    mu = tiling_spec(5, 4)
    return (
        index,
        scaling_dimension(node.spectrum[1], mu),
        scaling_dimension(node.spectrum[2], mu),
    )


def _chunk(indices, seed, shared):
    return [_sample(seed, i, shared) for i in indices]


def violin_sample(count: int, seed: int, shared: bool = False, workers: int = 1) -> list:
    """Scaling dimensions from the second and third node eigenvalues per Haar sample.

    Sample ``i`` draws its unitaries from its own PCG64 substream
    ``(seed, i)``, so rows do not depend on ``workers``.  Returns rows
    ``(sample, delta2, delta3)`` in sample order.
    """
    if not 0 <= count <= 10**5:
        raise ParameterError("count must lie in [0, 1e5]")
    if workers < 1:
        raise ParameterError("workers must be positive")
    if workers == 1 or count < 2:
        return _chunk(range(count), seed, shared)
    chunks = [range(w, count, workers) for w in range(workers)]
    with ProcessPoolExecutor(workers) as pool:
        parts = pool.map(partial(_chunk, seed=seed, shared=shared), chunks)
        rows = [r for part in parts for r in part]
    return sorted(rows)


def write_violin_csv(rows, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(VIOLIN_COLUMNS)
        for i, d2, d3 in rows:
            w.writerow([i, f"{d2:.17g}", f"{d3:.17g}"])
