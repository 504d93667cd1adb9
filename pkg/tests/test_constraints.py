import itertools

import numpy as np
import pytest

from grt.catalog import (
    ame_6_2,
    ghz,
    hexagonal_type1,
    hexagonal_type3,
    pentagonal_ame,
    pentagonal_isolated,
    wheel_graph_state,
)
from grt.constraints import (
    ConstraintGraph,
    ConstraintHypergraph,
    all_cliques,
    check_graph_constrained,
    check_hypergraph_constrained,
    check_subsets,
    compose_contraction,
    compose_hypergraph_contraction,
    faithful_hypergraph,
    graph_from_json,
    graph_to_json,
    inherited_cliques,
    is_faithful,
    maximal_cliques,
)
from grt.errors import BudgetError, ConstraintError
from grt.tensor import DenseTensor, contract

TRIANGLES = [(0, i, i % 6 + 1) for i in range(1, 7)]


def test_maximal_cliques_pentagon():
    assert maximal_cliques(ConstraintGraph.cycle(5)) == [(1, 2), (1, 5), (2, 3), (3, 4), (4, 5)]


def test_maximal_cliques_wheel():
    assert maximal_cliques(ConstraintGraph.wheel(6)) == sorted(tuple(sorted(t)) for t in TRIANGLES)


def test_maximal_cliques_empty():
    assert maximal_cliques(ConstraintGraph.empty(4)) == [(1,), (2,), (3,), (4,)]


def test_graph_rejects_self_loops_and_unknown_vertices():
    with pytest.raises(ConstraintError):
        ConstraintGraph.build(3, [(1, 1)])
    with pytest.raises(ConstraintError):
        ConstraintGraph.build(3, [(1, 4)])


def test_ame_passes_complete_graph():
    assert check_graph_constrained(pentagonal_ame(0.3).tensor, ConstraintGraph.complete(5), 1e-12).passed


def test_ghz_fails_square_on_first_pair():
    report = check_graph_constrained(ghz(4), ConstraintGraph.cycle(4), 1e-10)
    assert not report.passed
    assert (1, 2) in report.failures()


def test_product_state_fails_empty_graph():
    data = np.zeros((2,) * 4)
    data[0, 0, 0, 0] = 1
    assert not check_graph_constrained(DenseTensor(data), ConstraintGraph.empty(4)).passed


def test_vertex_mismatch_raises():
    with pytest.raises(ConstraintError):
        check_graph_constrained(ghz(4), ConstraintGraph.empty(5))


def test_subsets_of_passing_cliques_are_skipped():
    report = check_graph_constrained(pentagonal_ame(0.3).tensor, ConstraintGraph.complete(5), 1e-12)
    assert all(len(c.subset) == 2 for c in report.checks)
    assert len(report.checks) == 10


def test_hypergraph_type1():
    T = hexagonal_type1(0.05).tensor
    H = ConstraintHypergraph.build(7, TRIANGLES, base=0)
    assert check_hypergraph_constrained(T, H, 1e-12).passed
    assert not check_hypergraph_constrained(T, H.with_edges([(0, 1, 3)]), 1e-12).passed


def test_hypergraph_type3_extra_edge():
    H = ConstraintHypergraph.build(7, TRIANGLES + [(0, 1, 3)], base=0)
    assert check_hypergraph_constrained(hexagonal_type3(0.0).tensor, H, 1e-12).passed


def test_faithful_ame():
    H = faithful_hypergraph(pentagonal_ame(0.3).tensor, 1e-12)
    expected = {frozenset(s) for m in (1, 2) for s in itertools.combinations(range(1, 6), m)}
    assert set(H.hyperedges) == expected


def test_faithful_isolated_pentagon():
    H = faithful_hypergraph(pentagonal_isolated().tensor, 1e-12)
    singles = {frozenset([v]) for v in range(1, 6)}
    pairs = {frozenset((i, i % 5 + 1)) for i in range(1, 6)}
    assert set(H.hyperedges) == singles | pairs
    assert is_faithful(pentagonal_isolated().tensor, ConstraintGraph.cycle(5).clique_hypergraph(2), 1e-12)


def test_faithful_product_state_empty():
    data = np.zeros((2,) * 4)
    data[(0,) * 4] = 1
    assert faithful_hypergraph(DenseTensor(data)).hyperedges == frozenset()


def test_faithful_refuses_large_order():
    with pytest.raises(BudgetError):
        faithful_hypergraph(ghz(13))


@pytest.mark.parametrize(
    "T, G",
    [
        (pentagonal_ame(0.3).tensor, ConstraintGraph.complete(5)),
        (pentagonal_isolated().tensor, ConstraintGraph.cycle(5)),
        (ame_6_2(), ConstraintGraph.complete(6)),
        (ghz(4), ConstraintGraph.empty(4)),
        (wheel_graph_state(6), ConstraintGraph.wheel(6)),
    ],
)
def test_faithful_contains_passing_cliques(T, G):
    assert check_graph_constrained(T, G, 1e-10).passed
    F = faithful_hypergraph(T, 1e-10)
    for c in all_cliques(G, T.order // 2):
        assert frozenset(c) in F.hyperedges


def test_graph_and_clique_hypergraph_agree():
    rng = np.random.default_rng(11)
    pool = [
        pentagonal_ame(0.7).tensor,
        pentagonal_isolated().tensor,
        ame_6_2(),
        ghz(4),
        ghz(6),
    ]
    outcomes = set()
    for _ in range(20):
        T = pool[rng.integers(len(pool))]
        n = T.order
        pairs = list(itertools.combinations(range(1, n + 1), 2))
        edges = [p for p in pairs if rng.random() < 0.4]
        G = ConstraintGraph.build(n, edges)
        a = check_graph_constrained(T, G, 1e-10).passed
        b = check_hypergraph_constrained(T, G.clique_hypergraph(), 1e-10).passed
        assert a == b
        outcomes.add(a)
    assert outcomes == {True, False}


def test_compose_two_pentagons():
    C5 = ConstraintGraph.cycle(5)
    G = compose_contraction(C5, C5, (1, 2), (1, 2))
    assert G == ConstraintGraph.build(6, [(1, 2), (2, 3), (4, 5), (5, 6)])
    T1 = pentagonal_isolated().tensor
    T = contract(T1, T1, [(1, 1), (2, 2)])
    assert check_graph_constrained(T, G, 1e-10).passed


def test_compose_rejects_non_clique():
    C5 = ConstraintGraph.cycle(5)
    with pytest.raises(ConstraintError):
        compose_contraction(C5, C5, (1, 3), (1, 2))


def test_compose_rejects_bad_pairing():
    C5 = ConstraintGraph.cycle(5)
    with pytest.raises(ConstraintError):
        compose_contraction(C5, C5, (1, 2), (1, 2), [(1, 1), (1, 2)])


def test_contraction_soundness_random():
    catalog = [
        (pentagonal_ame(0.3).tensor, ConstraintGraph.complete(5)),
        (pentagonal_isolated().tensor, ConstraintGraph.cycle(5)),
        (ame_6_2(), ConstraintGraph.complete(6)),
        (ghz(4), ConstraintGraph.empty(4)),
        (ghz(5), ConstraintGraph.empty(5)),
    ]
    rng = np.random.default_rng(3)
    done = 0
    while done < 10:
        (T1, G1), (T2, G2) = (catalog[i] for i in rng.integers(len(catalog), size=2))
        m = int(rng.integers(1, 3))
        c1 = [c for c in all_cliques(G1, m) if len(c) == m]
        c2 = [c for c in all_cliques(G2, m) if len(c) == m]
        if not c1 or not c2:
            continue
        a = c1[rng.integers(len(c1))]
        b = tuple(int(v) for v in rng.permutation(c2[rng.integers(len(c2))]))
        pairing = list(zip(a, b))
        T = contract(T1, T2, pairing)
        compose_contraction(G1, G2, a, b, pairing)
        assert check_subsets(T, inherited_cliques(G1, G2, a, b), 1e-9).passed
        done += 1


def test_composed_graph_can_exceed_certified_range():
    # three surviving legs of an AME(5,2) factor form a clique of the union
    # but only cliques up to two legs are certified by the contraction
    K5, E4 = ConstraintGraph.complete(5), ConstraintGraph.empty(4)
    T = contract(pentagonal_ame(0.3).tensor, ghz(4), [(1, 1)])
    G = compose_contraction(K5, E4, (1,), (1,))
    assert not check_graph_constrained(T, G, 1e-9).passed
    assert check_subsets(T, inherited_cliques(K5, E4, (1,), (1,)), 1e-9).passed


def test_hypergraph_composition_adds_super_edges():
    H1 = ConstraintHypergraph.build(4, [(1, 2, 3), (4,)])
    H2 = ConstraintHypergraph.build(3, [(1, 2)])
    H = compose_hypergraph_contraction(H1, H2, (1,), (1,))
    # survivors 2,3,4 of the first become 1,2,3; survivor 2 of the second becomes 4
    assert set(H.hyperedges) == {frozenset(e) for e in [(1, 2), (3,), (4,), (1, 2, 4)]}


def test_cube_face_cliques_create_tetrahedron():
    corners = list(itertools.product((0, 1), repeat=3))
    label = {c: i + 1 for i, c in enumerate(corners)}
    edges = set()
    for axis in range(3):
        for side in (0, 1):
            face = [c for c in corners if c[axis] == side]
            edges |= {tuple(sorted((label[a], label[b]))) for a, b in itertools.combinations(face, 2)}
    G = ConstraintGraph.build(8, edges)
    faces = [
        frozenset(label[c] for c in corners if c[axis] == side) for axis in range(3) for side in (0, 1)
    ]
    tetra = tuple(sorted(label[c] for c in corners if sum(c) % 2 == 0))
    cliques = maximal_cliques(G)
    assert tetra in cliques
    assert not any(set(tetra) <= f for f in faces)


def test_graph_json_round_trip():
    G = ConstraintGraph.wheel(6)
    assert graph_from_json(graph_to_json(G)) == G
    H = ConstraintHypergraph.build(7, TRIANGLES, base=0)
    assert graph_from_json(graph_to_json(H)) == H
    assert graph_from_json({"n": 5, "edges": [[1, 2]]}) == ConstraintGraph.build(5, [(1, 2)])
    with pytest.raises(ConstraintError):
        graph_from_json({"edges": []})
