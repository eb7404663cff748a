import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rigidpack.graph import MultiGraph, build_graph, mask_of, INFINITY
from rigidpack import generators, oracle


def c4():
    return MultiGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def test_build_triangle():
    g = build_graph(3, [(0, 1), (1, 2), (2, 0)])
    assert g.m == 3 and g.n == 3


def test_build_doubled_edge():
    g = build_graph(2, [(0, 1), (0, 1)])
    assert g.m == 2
    assert g.mult[0][1] == 2


def test_build_rejects_loop():
    with pytest.raises(ValueError, match="loop"):
        build_graph(3, [(0, 0)])


def test_build_rejects_out_of_range():
    with pytest.raises(ValueError, match="out of range"):
        build_graph(2, [(0, 5)])


def test_counting_queries():
    k4 = generators.complete(4)
    assert k4.induced(mask_of([0, 1, 2])) == 3
    assert k4.boundary_minus(mask_of([0, 1]), mask_of([3])) == 2
    assert c4().partition_cross((mask_of([0, 1]), mask_of([2, 3]))) == 2


def test_boundary_minus_rejects_overlap():
    with pytest.raises(ValueError, match="disjoint"):
        c4().boundary_minus(0b0011, 0b0010)


def test_collection_cross():
    g = c4()
    # only {0,1} is protected: edges 12, 23, 30 have no covering set
    assert g.collection_cross((mask_of([0, 1]),)) == 3


def test_partition_validation():
    g = c4()
    with pytest.raises(ValueError, match="overlap"):
        g.partition_cross((0b0011, 0b0110))
    with pytest.raises(ValueError, match="cover"):
        g.partition_cross((0b0011,))


def test_edge_connectivity():
    assert generators.complete(4).edge_connectivity() == 3
    assert MultiGraph(3, [(0, 1), (1, 2)]).edge_connectivity() == 1
    assert MultiGraph(3, []).edge_connectivity() == 0
    assert MultiGraph(1, []).edge_connectivity() == INFINITY


def test_essential_edge_connectivity():
    assert c4().essential_edge_connectivity() == 2
    star = MultiGraph(4, [(0, 1), (0, 2), (0, 3)])
    assert star.essential_edge_connectivity() == INFINITY
    assert generators.complete(4).essential_edge_connectivity() == 4


def test_local_edge_connectivity():
    g = c4()
    assert g.local_edge_connectivity(0, 2) == 2
    with pytest.raises(ValueError):
        g.local_edge_connectivity(1, 1)


def test_contract_examples():
    tri = build_graph(3, [(0, 1), (1, 2), (2, 0)])
    small, mapping = tri.contract(mask_of([0, 1]))
    assert small.n == 2 and small.m == 2
    assert small.mult[0][1] == 2

    total, _ = c4().contract(0b1111)
    assert total.n == 1 and total.m == 0

    k4c, _ = generators.complete(4).contract(mask_of([0, 1]))
    assert k4c.n == 3 and k4c.m == 5


def test_contract_preserves_outside_edges():
    g = generators.complete(5)
    a = mask_of([1, 3])
    contracted, _ = g.contract(a)
    assert contracted.m == g.m - g.induced(a)


def test_vertex_connectivity():
    assert generators.complete(5).vertex_connectivity() == 4
    assert generators.complete_bipartite(3, 3).vertex_connectivity() == 3
    assert MultiGraph(3, [(0, 1), (1, 2)]).vertex_connectivity() == 1


def test_bipartition():
    g = generators.complete_bipartite(2, 3)
    sides = g.bipartition()
    assert sides is not None
    a, b = sides
    for u, v in g.edges:
        assert ((a >> u) & 1) != ((a >> v) & 1)
    assert build_graph(3, [(0, 1), (1, 2), (2, 0)]).bipartition() is None


def test_cut_identity_exhaustive():
    # e(A) + e(V \ A) + d(A) = m for every subset, small random graphs
    rng = random.Random(3)
    for _ in range(25):
        g = oracle.random_multigraph(5, rng.randrange(0, 9), rng)
        etab = g.induced_table
        for a in range(1 << 5):
            comp = g.full_mask ^ a
            assert etab[a] + etab[comp] + g.boundary(a) == g.m


def test_boundary_minus_against_enumeration():
    rng = random.Random(4)
    for _ in range(20):
        g = oracle.random_multigraph(5, 7, rng)
        for a in range(1 << 5):
            for b in range(1 << 5):
                if a & b:
                    continue
                direct = sum(
                    1 for u, v in g.edges
                    if (((a >> u) & 1) and not (((a | b) >> v) & 1))
                    or (((a >> v) & 1) and not (((a | b) >> u) & 1)))
                assert g.boundary_minus(a, b) == direct
                break  # one b per a keeps this quick
        assert g.boundary_minus(0, 0) == 0


def test_edge_connectivity_equals_min_cut_oracle():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randrange(2, 8)
        g = oracle.random_multigraph(n, rng.randrange(n - 1, 2 * n + 3), rng)
        if not g.is_connected():
            assert g.edge_connectivity() == 0
            continue
        best = min(g.boundary(a) for a in range(1, g.full_mask))
        assert g.edge_connectivity() == best


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)),
                max_size=12).map(lambda es: [(u, v) for u, v in es if u != v]))
def test_weight_table_matches_direct_sum(edges):
    g = MultiGraph(6, edges)
    tab = g.weight_table(g.degrees)
    for mask in range(0, 1 << 6, 7):
        assert tab[mask] == sum(g.degrees[v] for v in range(6) if (mask >> v) & 1)
