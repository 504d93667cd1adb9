"""Constraint graphs and hypergraphs, and checks of tensors against them.

A tensor is constrained by a graph when its reduction onto every clique of
at most half its legs is proportional to the identity.  Hypergraphs list
the constrained leg subsets directly.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable

import networkx as nx

from .errors import BudgetError, ConstraintError
from .tensor import DenseTensor, proportional_to_identity, reduce

__all__ = [
    "ConstraintGraph",
    "ConstraintHypergraph",
    "SubsetCheck",
    "ConstraintReport",
    "maximal_cliques",
    "all_cliques",
    "check_subsets",
    "check_graph_constrained",
    "check_hypergraph_constrained",
    "faithful_hypergraph",
    "compose_contraction",
    "inherited_cliques",
    "compose_hypergraph_contraction",
    "graph_from_json",
    "graph_to_json",
]


def _canon(subsets) -> list:
    """Sort subsets by size, then lexicographically."""
    return sorted((tuple(sorted(s)) for s in subsets), key=lambda s: (len(s), s))


@dataclass(frozen=True)
class ConstraintGraph:
    """Undirected simple graph on integer vertex labels."""

    vertices: tuple
    edges: frozenset

    def __post_init__(self):
        verts = tuple(sorted(int(v) for v in self.vertices))
        if len(set(verts)) != len(verts):
            raise ConstraintError("duplicate vertex labels")
        edges = set()
        for e in self.edges:
            e = tuple(int(v) for v in e)
            if len(e) != 2 or e[0] == e[1]:
                raise ConstraintError(f"edge {e} is not a pair of distinct vertices")
            for v in e:
                if v not in verts:
                    raise ConstraintError(f"edge {e} uses unknown vertex {v}")
            edges.add(frozenset(e))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", frozenset(edges))

    @classmethod
    def build(cls, n: int, edges: Iterable = (), base: int = 1):
        return cls(tuple(range(base, base + n)), frozenset(map(frozenset, edges)))

    @classmethod
    def complete(cls, n: int, base: int = 1):
        return cls.build(n, itertools.combinations(range(base, base + n), 2), base)

    @classmethod
    def empty(cls, n: int, base: int = 1):
        return cls.build(n, (), base)

    @classmethod
    def cycle(cls, n: int, base: int = 1):
        return cls.build(n, [(base + i, base + (i + 1) % n) for i in range(n)], base)

    @classmethod
    def wheel(cls, rim: int):
        """Hub ``0`` joined to every vertex of the rim cycle ``1..rim``."""
        edges = [(i, i % rim + 1) for i in range(1, rim + 1)]
        edges += [(0, i) for i in range(1, rim + 1)]
        return cls.build(rim + 1, edges, base=0)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(tuple(e) for e in self.edges)
        return g

    def is_clique(self, subset) -> bool:
        subset = list(subset)
        if any(v not in self.vertices for v in subset):
            return False
        return all(frozenset(p) in self.edges for p in itertools.combinations(subset, 2))

    def clique_hypergraph(self, max_size=None) -> "ConstraintHypergraph":
        cliques = all_cliques(self, max_size)
        return ConstraintHypergraph(self.vertices, frozenset(map(frozenset, cliques)))


@dataclass(frozen=True)
class ConstraintHypergraph:
    """Vertex labels plus an explicit set of constrained subsets."""

    vertices: tuple
    hyperedges: frozenset

    def __post_init__(self):
        verts = tuple(sorted(int(v) for v in self.vertices))
        hedges = set()
        for e in self.hyperedges:
            e = frozenset(int(v) for v in e)
            if not e:
                raise ConstraintError("hyperedges must be nonempty")
            if not e <= set(verts):
                raise ConstraintError(f"hyperedge {sorted(e)} uses unknown vertices")
            hedges.add(e)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "hyperedges", frozenset(hedges))

    @classmethod
    def build(cls, n: int, hyperedges: Iterable = (), base: int = 1):
        return cls(tuple(range(base, base + n)), frozenset(map(frozenset, hyperedges)))

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def with_edges(self, extra) -> "ConstraintHypergraph":
        return ConstraintHypergraph(
            self.vertices, self.hyperedges | frozenset(map(frozenset, extra))
        )

    def sorted_edges(self) -> list:
        return _canon(self.hyperedges)

    def covers(self, subset) -> bool:
        """True if ``subset`` lies inside some hyperedge."""
        s = frozenset(subset)
        return any(s <= e for e in self.hyperedges)


@dataclass(frozen=True)
class SubsetCheck:
    subset: tuple
    passed: bool
    constant: float
    deviation: float


@dataclass
class ConstraintReport:
    checks: list = field(default_factory=list)
    faithful: bool | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c.subset for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        doc = {
            "pass": self.passed,
            "checks": [
                {
                    "subset": list(c.subset),
                    "pass": c.passed,
                    "constant": c.constant,
                    "deviation": c.deviation,
                }
                for c in self.checks
            ],
        }
        if self.faithful is not None:
            doc["faithful"] = self.faithful
        return doc


def maximal_cliques(G: ConstraintGraph) -> list:
    """All maximal cliques, sorted by size then lexicographically."""
    return _canon(nx.find_cliques(G.to_networkx()))


def all_cliques(G: ConstraintGraph, max_size=None) -> list:
    """Every nonempty clique, optionally capped in size."""
    out = []
    for c in nx.enumerate_all_cliques(G.to_networkx()):
        if max_size is not None and len(c) > max_size:
            break
        out.append(c)
    return _canon(out)


def _require_match(T: DenseTensor, vertices) -> None:
    if set(T.labels) != set(vertices):
        raise ConstraintError(
            f"tensor legs {sorted(T.labels)} do not match vertices {list(vertices)}"
        )


def check_subsets(T: DenseTensor, subsets, tol: float) -> ConstraintReport:
    """Check reductions onto ``subsets``, largest first.

    A subset contained in an already passing subset is skipped, since every
    reduction of an identity-proportional marginal is again proportional to
    the identity.  The report lists checks in canonical subset order.
    """
    passed_sets = []
    checks = []
    for s in sorted(_canon(subsets), key=lambda s: (-len(s), s)):
        fs = frozenset(s)
        if any(fs <= p for p in passed_sets):
            continue
        flag, c, dev = proportional_to_identity(reduce(T, s), tol)
        checks.append(SubsetCheck(s, flag, c, dev))
        if flag:
            passed_sets.append(fs)
    checks.sort(key=lambda c: (len(c.subset), c.subset))
    return ConstraintReport(checks)


def check_graph_constrained(T: DenseTensor, G: ConstraintGraph, tol=1e-10):
    """Check every clique with at most ``floor(n/2)`` vertices."""
    _require_match(T, G.vertices)
    return check_subsets(T, all_cliques(G, T.order // 2), tol)


def check_hypergraph_constrained(T: DenseTensor, H: ConstraintHypergraph, tol=1e-10):
    """Check every hyperedge with at most ``floor(n/2)`` vertices."""
    _require_match(T, H.vertices)
    edges = [e for e in H.hyperedges if len(e) <= T.order // 2]
    return check_subsets(T, edges, tol)


def faithful_hypergraph(T: DenseTensor, tol=1e-10) -> ConstraintHypergraph:
    """Every subset of at most half the legs whose reduction is ∝ identity."""
    if T.order > 12:
        raise BudgetError(f"order {T.order} exceeds the exhaustive limit of 12")
    found = []
    for m in range(1, T.order // 2 + 1):
        for s in itertools.combinations(sorted(T.labels), m):
            if proportional_to_identity(reduce(T, s), tol)[0]:
                found.append(s)
    return ConstraintHypergraph(tuple(T.labels), frozenset(map(frozenset, found)))


def is_faithful(T: DenseTensor, H: ConstraintHypergraph, tol=1e-10) -> bool:
    """True if the identity-proportional reductions are exactly those covered by ``H``."""
    F = faithful_hypergraph(T, tol)
    for e in F.hyperedges:
        if not H.covers(e):
            return False
    return check_hypergraph_constrained(T, H, tol).passed


def _relabel_map(vertices1, removed1, vertices2, removed2):
    """Vertex renaming for a contraction: survivors of 1 then 2, labelled 1..m."""
    keep1 = [v for v in vertices1 if v not in removed1]
    keep2 = [v for v in vertices2 if v not in removed2]
    m1 = {v: i + 1 for i, v in enumerate(keep1)}
    m2 = {v: len(keep1) + i + 1 for i, v in enumerate(keep2)}
    return m1, m2, len(keep1) + len(keep2)


def _check_pairing(clique1, clique2, pairing):
    pairing = [(int(a), int(b)) for a, b in pairing]
    if sorted(a for a, _ in pairing) != sorted(clique1) or sorted(
        b for _, b in pairing
    ) != sorted(clique2):
        raise ConstraintError("pairing must biject clique1 onto clique2")
    return pairing


def compose_contraction(G1, G2, clique1, clique2, pairing=None) -> ConstraintGraph:
    """Graph of the tensor obtained by contracting along two cliques.

    The result is the disjoint union of both graphs with the contracted
    vertices removed.  Vertices are renumbered ``1..m`` in the same order
    :func:`grt.tensor.contract` uses for the surviving legs.
    """
    clique1, clique2 = tuple(clique1), tuple(clique2)
    if not G1.is_clique(clique1):
        raise ConstraintError(f"{clique1} is not a clique of the first graph")
    if not G2.is_clique(clique2):
        raise ConstraintError(f"{clique2} is not a clique of the second graph")
    if pairing is None:
        pairing = list(zip(clique1, clique2))
    _check_pairing(clique1, clique2, pairing)
    m1, m2, m = _relabel_map(G1.vertices, clique1, G2.vertices, clique2)
    edges = []
    for e in G1.edges:
        if all(v in m1 for v in e):
            edges.append([m1[v] for v in e])
    for e in G2.edges:
        if all(v in m2 for v in e):
            edges.append([m2[v] for v in e])
    return ConstraintGraph.build(m, edges)


def inherited_cliques(G1, G2, clique1, clique2) -> list:
    """Cliques certified by the contraction argument, relabelled as in :func:`compose_contraction`.

    A surviving clique of either graph is certified only up to half the
    order of the tensor it came from; larger cliques of the composed graph
    carry no guarantee.
    """
    clique1, clique2 = tuple(clique1), tuple(clique2)
    m1, m2, _ = _relabel_map(G1.vertices, clique1, G2.vertices, clique2)
    out = []
    for G, mp in ((G1, m1), (G2, m2)):
        for c in all_cliques(G, G.n_vertices // 2):
            if all(v in mp for v in c):
                out.append(tuple(mp[v] for v in c))
    return _canon(out)


def compose_hypergraph_contraction(
    H1, H2, edge1, edge2, pairing=None
) -> ConstraintHypergraph:
    """Hypergraph of a contraction along two hyperedges.

    Surviving parts of all hyperedges are kept, and for every pair of
    hyperedges containing the contracted ones, the union of their surviving
    vertices is added as a new hyperedge.
    """
    e1, e2 = frozenset(edge1), frozenset(edge2)
    if not H1.covers(e1):
        raise ConstraintError(f"{sorted(e1)} is not inside a hyperedge of the first hypergraph")
    if not H2.covers(e2):
        raise ConstraintError(f"{sorted(e2)} is not inside a hyperedge of the second hypergraph")
    if pairing is None:
        pairing = list(zip(sorted(e1), sorted(e2)))
    _check_pairing(sorted(e1), sorted(e2), pairing)
    m1, m2, m = _relabel_map(H1.vertices, e1, H2.vertices, e2)
    out = set()
    for e in H1.hyperedges:
        s = frozenset(m1[v] for v in e if v in m1)
        if s:
            out.add(s)
    for e in H2.hyperedges:
        s = frozenset(m2[v] for v in e if v in m2)
        if s:
            out.add(s)
    sup1 = [e for e in H1.hyperedges if e1 <= e]
    sup2 = [e for e in H2.hyperedges if e2 <= e]
    for a, b in itertools.product(sup1, sup2):
        s = frozenset(m1[v] for v in a - e1) | frozenset(m2[v] for v in b - e2)
        if s:
            out.add(s)
    return ConstraintHypergraph.build(m, out)


def graph_to_json(G) -> dict:
    base = min(G.vertices) if G.vertices else 1
    if tuple(G.vertices) != tuple(range(base, base + G.n_vertices)):
        raise ConstraintError("only contiguous vertex labels can be serialized")
    if isinstance(G, ConstraintHypergraph):
        doc = {"n": G.n_vertices, "hyperedges": [list(e) for e in G.sorted_edges()]}
    else:
        doc = {"n": G.n_vertices, "edges": [list(e) for e in _canon(G.edges)]}
    if base != 1:
        doc["base"] = base
    return doc


def graph_from_json(doc: dict):
    """Parse a graph (``edges``) or hypergraph (``hyperedges``) document.

    Vertices are ``base..base+n-1`` with ``base`` defaulting to 1.
    """
    try:
        n = int(doc["n"])
        base = int(doc.get("base", 1))
        if "hyperedges" in doc:
            return ConstraintHypergraph.build(n, doc["hyperedges"], base)
        return ConstraintGraph.build(n, doc.get("edges", []), base)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConstraintError(f"malformed graph document: {exc}") from None


def load_graph(path):
    with open(path, encoding="utf-8") as fh:
        return graph_from_json(json.load(fh))
