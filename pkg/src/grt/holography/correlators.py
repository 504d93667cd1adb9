"""Boundary correlators: transfer products along paths and a brute-force oracle.

Correlators are normalized by the identity-probe value,

    <v_1 ... v_m; O> = Tr[N O N^† (v_1 ⊗ ... ⊗ v_m ⊗ 1)] / Tr[N N^†],

where ``N`` is the network map from bulk legs to boundary legs.  A probe
``v`` on a boundary leg weights the doubled index ``(ket s, bra s')`` with
``v[s', s]``; a bulk operator ``O`` closes the bulk leg as
``sum T[x, ..] O[x, x'] conj(T[x', ..])``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import BudgetError, DimensionError, ParameterError
from ..tensor import DenseTensor
from .nodes import doubled_tile
from .tiling import NetworkSpec

__all__ = [
    "PathSpec",
    "CorrelatorResult",
    "tile_leg_labels",
    "path_from_steps",
    "two_point_path",
    "three_point_path",
    "brute_force_correlator",
    "contract_network",
]

_TRACE_TOL = 1e-12


@dataclass(frozen=True)
class PathSpec:
    """Ordered tiles with ``(entry_leg, exit_leg)`` labels per tile.

    ``bulk_at`` is the position of the tile carrying the bulk operator, or
    None when the operator sits off the path.
    """

    turns: tuple
    bulk_at: int | None = None

    def __post_init__(self):
        turns = tuple((int(a), int(b)) for a, b in self.turns)
        if not turns:
            raise ParameterError("a path needs at least one tile")
        for a, b in turns:
            if a == b:
                raise ParameterError("entry and exit legs must differ")
        if self.bulk_at is not None and not 0 <= self.bulk_at < len(turns):
            raise ParameterError("bulk_at is not a path position")
        object.__setattr__(self, "turns", turns)

    @classmethod
    def uniform(cls, length: int, entry: int, exit: int, bulk_at=None) -> "PathSpec":
        return cls(((entry, exit),) * length, bulk_at)

    def __len__(self) -> int:
        return len(self.turns)


@dataclass(frozen=True)
class CorrelatorResult:
    value: complex
    method: str
    inputs: dict = field(default_factory=dict)
    delta: float | None = None


def tile_leg_labels(T: DenseTensor, n_gon: int):
    """Map tile edges to tensor leg labels: edge ``e`` -> ``e``-th bond label.

    Returns ``(edge_labels, bulk_label)``; tensors with ``n_gon + 1`` legs
    have their smallest label as the bulk leg.
    """
    labels = sorted(T.labels)
    if len(labels) == n_gon:
        return labels, None
    if len(labels) == n_gon + 1:
        return labels[1:], labels[0]
    raise DimensionError(f"tensor with {T.order} legs does not fit a {n_gon}-gon tile")


def _check_probe(v, d, require_traceless):
    v = np.asarray(v, dtype=complex)
    if v.shape != (d, d):
        raise DimensionError(f"probe must be {d}x{d}")
    if require_traceless and abs(np.trace(v)) > _TRACE_TOL * max(1.0, np.abs(v).max()):
        raise ParameterError("probes must be traceless")
    return v


def _probe_vector(v) -> np.ndarray:
    # doubled index (s, s') weighted by v[s', s]
    return np.asarray(v).T.reshape(-1)


def _bulk_for(T, bulk_label, O, here):
    if bulk_label is None:
        if O is not None:
            raise DimensionError("tensor has no bulk leg for the operator")
        return None
    return O if (here and O is not None) else np.eye(T.dim(bulk_label))


def _off_path_factor(T, bulk_label, O, on_path):
    if O is None or on_path:
        return 1.0
    return np.trace(O) / T.dim(bulk_label)


def _bulk_label(T):
    labels = sorted(T.labels)
    return labels[0] if 0 in labels else None


def _chain(T, path: PathSpec, start, O):
    """Apply node matrices along ``path`` to the doubled vector ``start``."""
    bl = _bulk_label(T)
    vec = start
    for pos, (i, j) in enumerate(path.turns):
        M = doubled_tile(T, [j, i], _bulk_for(T, bl, O, pos == path.bulk_at))
        vec = M @ vec
    return vec


def _path_value(T, path, O, v1, v2):
    vec = _chain(T, path, _probe_vector(v1), O)
    return _probe_vector(v2) @ vec


def two_point_path(T: DenseTensor, path: PathSpec, v1, v2, O=None, require_traceless=True):
    """Two-point function from transfer products along ``path``.

    Every tensor off the path is assumed to reduce to the identity; an
    off-path bulk operator contributes ``Tr(O)/d``.
    """
    i0, jL = path.turns[0][0], path.turns[-1][1]
    v1 = _check_probe(v1, T.dim(i0), require_traceless)
    v2 = _check_probe(v2, T.dim(jL), require_traceless)
    bl = _bulk_label(T)
    if O is not None:
        O = np.asarray(O, dtype=complex)
    num = _path_value(T, path, O, v1, v2) * _off_path_factor(T, bl, O, path.bulk_at is not None)
    den = _path_value(T, path, None, np.eye(len(v1)), np.eye(len(v2)))
    return CorrelatorResult(
        complex(num / den), "path", {"length": len(path), "turns": path.turns}
    )


def _junction(T, entry, exit_, branch, O):
    """Order-3 doubled tensor ``J[(exit), (entry), (branch)]``."""
    return doubled_tile(T, [exit_, entry, branch], O)


def three_point_path(
    T: DenseTensor,
    trunk: PathSpec,
    branch: PathSpec,
    attach: int,
    branch_leg: int,
    v1,
    v2,
    v3,
    O=None,
    O_on="off",
    require_traceless=True,
):
    """Three-point function on a trunk path with one side branch.

    The trunk runs from ``v1`` to ``v2``.  The branch starts at ``v3`` and
    its last exit leg is bonded to ``branch_leg`` of trunk tile ``attach``.
    ``O_on`` is ``"trunk"`` or ``"branch"`` (use that path's ``bulk_at``),
    ``"junction"``, or ``"off"``.
    """
    if not 0 <= attach < len(trunk):
        raise ParameterError("attach is not a trunk position")
    entry, exit_ = trunk.turns[attach]
    if branch_leg in (entry, exit_):
        raise ParameterError("branch leg coincides with a trunk leg")
    bl = _bulk_label(T)
    O = None if O is None else np.asarray(O, dtype=complex)
    if O_on not in ("trunk", "branch", "junction", "off"):
        raise ParameterError(f"unknown operator position {O_on!r}")
    v1 = _check_probe(v1, T.dim(trunk.turns[0][0]), require_traceless)
    v2 = _check_probe(v2, T.dim(trunk.turns[-1][1]), require_traceless)
    v3 = _check_probe(v3, T.dim(branch.turns[0][0]), require_traceless)

    def evaluate(w1, w2, w3, op):
        t_op = op if O_on == "trunk" else None
        b_op = op if O_on == "branch" else None
        j_op = op if O_on == "junction" else None
        before = PathSpec(trunk.turns[:attach], trunk.bulk_at) if attach else None
        vec = _probe_vector(w1)
        if before is not None:
            vec = _chain(T, before, vec, t_op)
        bvec = _chain(T, branch, _probe_vector(w3), b_op)
        J = _junction(T, entry, exit_, branch_leg, _bulk_for(T, bl, j_op, True))
        vec = np.einsum("abc,b,c->a", J, vec, bvec)
        rest = trunk.turns[attach + 1:]
        if rest:
            at = None
            if trunk.bulk_at is not None and trunk.bulk_at > attach:
                at = trunk.bulk_at - attach - 1
            vec = _chain(T, PathSpec(rest, at), vec, t_op)
        return _probe_vector(w2) @ vec

    on_path = O_on != "off"
    if O_on == "trunk" and (trunk.bulk_at is None or trunk.bulk_at == attach):
        raise ParameterError("trunk operator needs a non-junction bulk_at")
    if O_on == "branch" and branch.bulk_at is None:
        raise ParameterError("branch operator needs bulk_at")
    num = evaluate(v1, v2, v3, O) * _off_path_factor(T, bl, O, on_path)
    eye = [np.eye(len(v)) for v in (v1, v2, v3)]
    den = evaluate(*eye, None)
    return CorrelatorResult(
        complex(num / den),
        "path",
        {"trunk": trunk.turns, "branch": branch.turns, "attach": attach},
    )


def path_from_steps(net: NetworkSpec, T: DenseTensor, steps, bulk_tile=None) -> PathSpec:
    """Convert enumerated path steps to leg labels of ``T``."""
    edges, _ = tile_leg_labels(T, net.n_gon)
    turns = tuple((edges[s.entry], edges[s.exit]) for s in steps)
    at = None
    if bulk_tile is not None:
        tiles = [s.tile for s in steps]
        at = tiles.index(bulk_tile) if bulk_tile in tiles else None
    return PathSpec(turns, at)


def contract_network(tensors) -> complex:
    """Contract ``(array, bond_ids)`` pairs completely.

    Greedy order: repeatedly merge the pair sharing a bond whose result is
    smallest.  Disconnected pieces are multiplied at the end.
    """
    items = [(np.asarray(a), list(ids)) for a, ids in tensors]
    while True:
        best = None
        for x in range(len(items)):
            for y in range(x + 1, len(items)):
                shared = set(items[x][1]) & set(items[y][1])
                if not shared:
                    continue
                size = 1
                for a, ids in (items[x], items[y]):
                    for ax, b in enumerate(ids):
                        if b not in shared:
                            size *= a.shape[ax]
                if best is None or size < best[0]:
                    best = (size, x, y, shared)
        if best is None:
            break
        _, x, y, shared = best
        (A, ia), (B, ib) = items[x], items[y]
        ax_a = [ia.index(b) for b in shared]
        ax_b = [ib.index(b) for b in shared]
        C = np.tensordot(A, B, axes=(ax_a, ax_b))
        ids = [b for b in ia if b not in shared] + [b for b in ib if b not in shared]
        items = [it for k, it in enumerate(items) if k not in (x, y)] + [(C, ids)]
    value = 1.0 + 0j
    for a, ids in items:
        if ids:
            raise DimensionError(f"dangling bonds {ids}")
        value *= complex(a)
    return value


def _network_value(net, T, O_tile, O, probes):
    edges, bl = tile_leg_labels(T, net.n_gon)
    tensors = []
    for t in range(net.n_tiles):
        op = None
        if bl is not None:
            op = O if (O is not None and t == O_tile) else np.eye(T.dim(bl))
        M = doubled_tile(T, edges, op)
        ids = []
        for e in range(net.n_gon):
            nb = net.neighbor(t, e)
            if nb is None:
                v = probes.get((t, e))
                v = np.eye(T.dim(edges[e])) if v is None else v
                # close the boundary leg immediately
                M = np.tensordot(M, _probe_vector(v), axes=([len(ids)], [0]))
            else:
                ids.append(("b",) + tuple(sorted([(t, e), nb])))
        tensors.append((M, ids))
    return contract_network(tensors)


def brute_force_correlator(net: NetworkSpec, T: DenseTensor, probes: dict, O=None, O_tile=None):
    """Contract the full doubled network; no isometry identities are used.

    ``probes`` maps boundary legs ``(tile, edge)`` to operators; other
    boundary legs are traced.  ``O`` acts on the bulk leg of tile ``O_tile``.
    """
    if net.n_tiles > 16:
        raise BudgetError(f"{net.n_tiles} tiles exceed the brute-force budget of 16")
    for leg in probes:
        if net.neighbor(*leg) is not None or not 0 <= leg[0] < net.n_tiles:
            raise ParameterError(f"{leg} is not a boundary leg")
    if O is not None and O_tile is None:
        raise ParameterError("a bulk operator needs a tile")
    O = None if O is None else np.asarray(O, dtype=complex)
    num = _network_value(net, T, O_tile, O, {k: np.asarray(v, dtype=complex) for k, v in probes.items()})
    den = _network_value(net, T, None, None, {})
    return CorrelatorResult(complex(num / den), "brute", {"probes": sorted(probes), "O_tile": O_tile})
