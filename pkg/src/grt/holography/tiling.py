"""Regular hyperbolic tilings and the tensor networks built on them.

Tiles are regular ``p``-gons in the Poincaré disk, ``q`` meeting at every
vertex.  The network grows by vertex inflation: layer ``k+1`` holds every
tile sharing at least a vertex with layers ``0..k``.  Tile vertices are
stored counter-clockwise and edge ``e`` joins vertices ``e`` and ``e+1``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import BudgetError, ParameterError

__all__ = [
    "TilingSpec",
    "NetworkSpec",
    "PathStep",
    "build_network",
    "tiling_spec",
    "enumerate_paths",
    "paths_between",
    "path_count_table",
    "connected_triples",
    "edge_distance",
    "paths_into",
]

_MU = {(6, 4): 3 + 2 * math.sqrt(2), (5, 4): 2 + math.sqrt(3)}


@dataclass(frozen=True)
class TilingSpec:
    n_gon: int
    k: int
    mu: float

    def __post_init__(self):
        if self.n_gon < 4 or self.k < 3:
            raise ParameterError("need n_gon >= 4 and k >= 3")
        if (self.n_gon - 2) * (self.k - 2) <= 4:
            raise ParameterError(f"{{{self.n_gon},{self.k}}} is not hyperbolic")
        if not self.mu > 1:
            raise ParameterError("the scaling factor must exceed 1")


def tiling_spec(n_gon: int, k: int) -> TilingSpec:
    """Spec with the tabulated scaling factor (available for {6,4} and {5,4})."""
    try:
        return TilingSpec(n_gon, k, _MU[(n_gon, k)])
    except KeyError:
        raise ParameterError(
            f"no tabulated scaling factor for {{{n_gon},{k}}}; pass mu explicitly"
        ) from None


def _mobius_to_origin(a):
    return lambda w: (w - a) / (1 - np.conj(a) * w)


def _mobius_from_origin(a):
    return lambda w: (w + a) / (1 + np.conj(a) * w)


def _reflect(z, a, b):
    """Reflect ``z`` across the geodesic through ``a`` and ``b``."""
    to0, back = _mobius_to_origin(a), _mobius_from_origin(a)
    u = to0(b)
    e = u / abs(u)
    return back(e * e * np.conj(to0(z)))


def _key(z):
    return (round(z.real, 9), round(z.imag, 9))


@dataclass(frozen=True)
class NetworkSpec:
    """Tiles of a finite tiling patch with their bonds and boundary legs.

    Attributes
    ----------
    vertices : tuple of tuple of complex
        Counter-clockwise vertex positions per tile.
    layers : tuple of int
        Inflation layer of each tile (0 for the central tile).
    bonds : tuple of ((tile, edge), (tile, edge))
    boundary : tuple of (tile, edge)
        Unpaired edges in a fixed order; probes address them by position.
    """

    n_gon: int
    k: int
    depth: int
    vertices: tuple
    layers: tuple
    bonds: tuple
    boundary: tuple
    partner: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        partner = {}
        for x, y in self.bonds:
            partner[x] = y
            partner[y] = x
        object.__setattr__(self, "partner", partner)

    @property
    def n_tiles(self) -> int:
        return len(self.vertices)

    def neighbor(self, tile: int, edge: int):
        """Bonded ``(tile, edge)`` across the given edge, or None on the boundary."""
        return self.partner.get((tile, edge))

    def boundary_index(self, tile: int, edge: int) -> int:
        return self.boundary.index((tile, edge))


def build_network(n_gon: int, k: int, depth: int) -> NetworkSpec:
    """Vertex-inflation patch of the ``{n_gon, k}`` tiling."""
    TilingSpec(n_gon, k, 2.0)  # validates hyperbolicity only
    if not 0 <= depth <= 2:
        raise BudgetError("networks are supported up to depth 2")
    R = math.acosh(1 / (math.tan(math.pi / n_gon) * math.tan(math.pi / k)))
    r = math.tanh(R / 2)
    center = tuple(r * complex(math.cos(2 * math.pi * j / n_gon), math.sin(2 * math.pi * j / n_gon)) for j in range(n_gon))
    tiles = [center]
    layers = [0]
    seen = {_key(np.mean(center))}
    for layer in range(1, depth + 1):
        old_vertices = {_key(z) for t in tiles for z in t}
        pool = list(tiles)
        grew = True
        while grew:
            grew = False
            for t in list(pool):
                for e in range(n_gon):
                    a, b = t[e], t[(e + 1) % n_gon]
                    # reflection reverses orientation; reversing restores it
                    nt = tuple(_reflect(z, a, b) for z in t)[::-1]
                    c = _key(np.mean(nt))
                    if c in seen or not any(_key(z) in old_vertices for z in nt):
                        continue
                    seen.add(c)
                    tiles.append(nt)
                    layers.append(layer)
                    pool.append(nt)
                    grew = True
    edge_owner = {}
    bonds = []
    for ti, t in enumerate(tiles):
        for e in range(n_gon):
            ek = frozenset((_key(t[e]), _key(t[(e + 1) % n_gon])))
            if ek in edge_owner:
                bonds.append((edge_owner.pop(ek), (ti, e)))
            else:
                edge_owner[ek] = (ti, e)
    boundary = tuple(sorted(edge_owner.values()))
    return NetworkSpec(n_gon, k, depth, tuple(tiles), tuple(layers), tuple(sorted(bonds)), boundary)


def edge_distance(e: int, f: int, n_gon: int) -> int:
    d = abs(e - f) % n_gon
    return min(d, n_gon - d)


@dataclass(frozen=True)
class PathStep:
    tile: int
    entry: int
    exit: int


def enumerate_paths(net: NetworkSpec, start):
    """All paths from boundary leg ``start`` to other boundary legs.

    A path enters each tile through one edge and leaves through a
    non-adjacent one; consecutive tiles share the crossed edge and no tile
    repeats.  Yields ``(end_leg, steps)``.
    """
    tile, edge = start
    if net.neighbor(tile, edge) is not None:
        raise ParameterError(f"{start} is not a boundary leg")

    def walk(tile, entry, visited, steps):
        for f in range(net.n_gon):
            if edge_distance(entry, f, net.n_gon) < 2:
                continue
            here = steps + [PathStep(tile, entry, f)]
            nb = net.neighbor(tile, f)
            if nb is None:
                yield (tile, f), here
            elif nb[0] not in visited:
                yield from walk(nb[0], nb[1], visited | {nb[0]}, here)

    yield from walk(tile, edge, frozenset([tile]), [])


def paths_between(net: NetworkSpec, a, b) -> list:
    return [steps for end, steps in enumerate_paths(net, a) if end == tuple(b)]


def path_count_table(net: NetworkSpec) -> dict:
    """Number of paths for every ordered pair of boundary legs with at least one."""
    out = {}
    for a in net.boundary:
        for end, _ in enumerate_paths(net, a):
            out[(a, end)] = out.get((a, end), 0) + 1
    return out


def connected_triples(net: NetworkSpec, counts=None) -> list:
    """Triples of boundary legs that are pairwise joined by paths."""
    counts = path_count_table(net) if counts is None else counts
    adj = {}
    for a, b in counts:
        adj.setdefault(a, set()).add(b)
    out = []
    for a in net.boundary:
        for b, c in itertools.combinations(sorted(adj.get(a, ())), 2):
            if a < b and c in adj.get(b, ()):
                out.append((a, b, c))
    return out


def paths_into(net: NetworkSpec, tile: int, edge: int) -> list:
    """Paths from boundary legs that end by crossing into ``(tile, edge)``.

    Each path is a list of steps ordered from the boundary inward; the last
    step exits through the edge bonded to ``(tile, edge)``.
    """
    nb = net.neighbor(tile, edge)
    if nb is None:
        return []
    out = []

    def walk(t, entry, visited, steps):
        for f in range(net.n_gon):
            if edge_distance(entry, f, net.n_gon) < 2:
                continue
            here = steps + [PathStep(t, f, entry)]
            nxt = net.neighbor(t, f)
            if nxt is None:
                out.append(here[::-1])
            elif nxt[0] not in visited:
                walk(nxt[0], nxt[1], visited | {nxt[0]}, here)

    walk(nb[0], nb[1], frozenset([tile, nb[0]]), [])
    return out
