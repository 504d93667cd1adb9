"""Dense tensors with operator and reduction views.

A tensor of order ``n`` stores its coefficients as a complex array of shape
``(d_1, ..., d_n)`` in row-major order, so the leftmost subscript is the
slowest one.  Every leg carries an integer label; generic tensors use
``1..n`` while hexagonal tile tensors use ``0..6`` with the bulk leg ``0``
stored first.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, DegenerateTensorError

__all__ = [
    "DenseTensor",
    "Bipartition",
    "DensityMatrix",
    "reduce",
    "as_operator",
    "contract",
    "proportional_to_identity",
    "tensor_to_json",
    "tensor_from_json",
    "save_tensor",
    "load_tensor",
]


@dataclass(frozen=True, eq=False)
class DenseTensor:
    """Immutable complex coefficient array with labelled legs.

    Parameters
    ----------
    data : array_like
        Coefficients, one axis per leg.
    labels : sequence of int, optional
        Leg labels in storage order.  Defaults to ``1..n``.
    """

    data: np.ndarray
    labels: tuple = field(default=None)

    def __post_init__(self):
        arr = np.array(self.data, dtype=complex)
        if arr.ndim == 0:
            raise DimensionError("a tensor needs at least one leg")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)
        labels = self.labels
        if labels is None:
            labels = tuple(range(1, arr.ndim + 1))
        labels = tuple(int(x) for x in labels)
        if len(labels) != arr.ndim:
            raise DimensionError(
                f"{len(labels)} labels given for a tensor of order {arr.ndim}"
            )
        if len(set(labels)) != len(labels):
            raise DimensionError(f"duplicate leg labels {labels}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_flat(cls, coeffs, dims, labels=None):
        dims = tuple(int(d) for d in dims)
        coeffs = np.asarray(coeffs, dtype=complex).ravel()
        if coeffs.size != int(np.prod(dims)):
            raise DimensionError(
                f"{coeffs.size} coefficients do not fill dims {list(dims)}"
            )
        return cls(coeffs.reshape(dims), labels)

    @property
    def order(self) -> int:
        return self.data.ndim

    @property
    def local_dims(self) -> tuple:
        return self.data.shape

    @property
    def coeffs(self) -> np.ndarray:
        return self.data.ravel()

    def norm2(self) -> float:
        return float(np.vdot(self.data, self.data).real)

    def axis(self, label: int) -> int:
        """Storage position of the leg with the given label."""
        try:
            return self.labels.index(int(label))
        except ValueError:
            raise DimensionError(
                f"leg {label} not present; tensor legs are {list(self.labels)}"
            ) from None

    def dim(self, label: int) -> int:
        return self.data.shape[self.axis(label)]

    def scaled(self, factor) -> "DenseTensor":
        return DenseTensor(self.data * factor, self.labels)

    def normalized(self) -> "DenseTensor":
        n2 = self.norm2()
        if n2 == 0:
            raise DegenerateTensorError("cannot normalize the zero tensor")
        return self.scaled(1 / np.sqrt(n2))

    def relabel(self, labels: Sequence[int]) -> "DenseTensor":
        return DenseTensor(self.data, tuple(labels))

    def permute(self, labels: Sequence[int]) -> "DenseTensor":
        """Reorder storage so the legs appear in the given label order."""
        axes = [self.axis(x) for x in labels]
        if sorted(axes) != list(range(self.order)):
            raise DimensionError(f"{list(labels)} is not a permutation of the legs")
        return DenseTensor(np.transpose(self.data, axes), tuple(labels))

    def apply(self, label: int, matrix) -> "DenseTensor":
        """Act with ``matrix`` on one leg: T[..s..] -> sum_t M[s, t] T[..t..]."""
        ax = self.axis(label)
        m = np.asarray(matrix, dtype=complex)
        if m.shape != (self.data.shape[ax],) * 2:
            raise DimensionError(
                f"matrix of shape {m.shape} does not fit leg {label} "
                f"of dimension {self.data.shape[ax]}"
            )
        out = np.tensordot(m, self.data, axes=([1], [ax]))
        return DenseTensor(np.moveaxis(out, 0, ax), self.labels)

    def allclose(self, other: "DenseTensor", atol=1e-12) -> bool:
        return (
            self.labels == other.labels
            and self.data.shape == other.data.shape
            and bool(np.max(np.abs(self.data - other.data), initial=0) <= atol)
        )


@dataclass(frozen=True)
class Bipartition:
    """Split of the leg labels into a kept side and a traced side."""

    kept: tuple
    traced: tuple

    @classmethod
    def of(cls, T: DenseTensor, kept: Iterable[int]) -> "Bipartition":
        kept = tuple(sorted(int(k) for k in kept))
        for k in kept:
            T.axis(k)
        if len(set(kept)) != len(kept):
            raise DimensionError(f"repeated label in kept set {kept}")
        traced = tuple(x for x in sorted(T.labels) if x not in kept)
        return cls(kept, traced)

    @property
    def n(self) -> int:
        return len(self.kept) + len(self.traced)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Reduced operator of a tensor on its kept legs."""

    entries: np.ndarray
    kept: tuple

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def normalized(self) -> np.ndarray:
        tr = self.trace
        if tr == 0:
            raise DegenerateTensorError("reduction has zero trace")
        return self.entries / tr


def _as_bipartition(T: DenseTensor, b) -> Bipartition:
    if isinstance(b, Bipartition):
        if set(b.kept) | set(b.traced) != set(T.labels) or b.n != T.order:
            raise DimensionError(
                f"bipartition covers {b.n} legs, tensor has legs {list(T.labels)}"
            )
        return b
    return Bipartition.of(T, b)


def as_operator(T: DenseTensor, b) -> np.ndarray:
    """Matrix of the tensor viewed as a map from traced legs to kept legs."""
    b = _as_bipartition(T, b)
    axes = [T.axis(k) for k in b.kept] + [T.axis(k) for k in b.traced]
    rows = int(np.prod([T.dim(k) for k in b.kept]))
    return np.transpose(T.data, axes).reshape(rows, -1)


def reduce(T: DenseTensor, b) -> DensityMatrix:
    """Reduction onto the kept legs: contract T with conj(T) over the rest.

    Rows are indexed by the kept legs of ``T`` and columns by the kept legs
    of its conjugate, both in ascending label order.
    """
    b = _as_bipartition(T, b)
    V = as_operator(T, b)
    return DensityMatrix(V @ V.conj().T, b.kept)


def proportional_to_identity(M, tol: float = 1e-10):
    """Test ``M ≈ c I`` with ``c = tr(M)/D``.

    Returns
    -------
    flag : bool
        True iff ``max|M - c I| <= tol * c``.
    constant : float
    deviation : float
        ``max|M - c I| / c``.
    """
    entries = M.entries if isinstance(M, DensityMatrix) else np.asarray(M)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise DimensionError(f"matrix of shape {entries.shape} is not square")
    D = entries.shape[0]
    c = np.trace(entries).real / D
    if c <= 0:
        raise DegenerateTensorError("reduction has non-positive trace")
    dev = np.max(np.abs(entries - c * np.eye(D))) / c
    return bool(dev <= tol), float(c), float(dev)


def contract(T1: DenseTensor, T2: DenseTensor, pairs) -> DenseTensor:
    """Contract legs of ``T1`` with legs of ``T2``.

    ``pairs`` lists ``(label_in_T1, label_in_T2)``.  Remaining legs of ``T1``
    come first, then those of ``T2``, each in original order; the result is
    labelled ``1..m``.
    """
    pairs = [(int(a), int(b)) for a, b in pairs]
    left = [a for a, _ in pairs]
    right = [b for _, b in pairs]
    if len(set(left)) != len(left) or len(set(right)) != len(right):
        raise DimensionError(f"a leg is paired twice in {pairs}")
    for a, b in pairs:
        if T1.dim(a) != T2.dim(b):
            raise DimensionError(
                f"leg {a} (dim {T1.dim(a)}) cannot pair with leg {b} (dim {T2.dim(b)})"
            )
    ax1 = [T1.axis(a) for a in left]
    ax2 = [T2.axis(b) for b in right]
    out = np.tensordot(T1.data, T2.data, axes=(ax1, ax2))
    if out.ndim == 0:
        out = out.reshape(1)
    return DenseTensor(out)


def tensor_to_json(T: DenseTensor) -> dict:
    """JSON-ready dict.  ``repr`` of a float round-trips exactly."""
    doc = {
        "order": T.order,
        "dims": list(T.local_dims),
        "coeffs": [[float(z.real), float(z.imag)] for z in T.coeffs],
    }
    if T.labels != tuple(range(1, T.order + 1)):
        doc["labels"] = list(T.labels)
    return doc


def tensor_from_json(doc: dict) -> DenseTensor:
    try:
        dims = [int(d) for d in doc["dims"]]
        coeffs = np.array([complex(re, im) for re, im in doc["coeffs"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise DimensionError(f"malformed tensor document: {exc}") from None
    if int(doc.get("order", len(dims))) != len(dims):
        raise DimensionError("'order' disagrees with the length of 'dims'")
    return DenseTensor.from_flat(coeffs, dims, doc.get("labels"))


def save_tensor(T: DenseTensor, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(tensor_to_json(T), fh)
        fh.write("\n")


def load_tensor(path) -> DenseTensor:
    with open(path, encoding="utf-8") as fh:
        return tensor_from_json(json.load(fh))
