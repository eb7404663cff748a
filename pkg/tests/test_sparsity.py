import random

import pytest

from rigidpack import generators, oracle
from rigidpack.graph import MultiGraph, mask_of, vertices_of
from rigidpack.setfuncs import lmn, force_zero_on_ground, table_func
from rigidpack.sparsity import (
    pebble_basis, is_sparse, rank_and_rigid, rigid_components,
    minimal_rigid_vertices, exchange,
)

PARAMS = [(1, 1), (2, 2), (2, 3), (3, 5)]


def triangle():
    return MultiGraph(3, [(0, 1), (1, 2), (2, 0)])


def test_pebble_basis_examples():
    basis, state = pebble_basis(triangle(), 2, 3)
    assert basis == (0, 1, 2)
    state.check_invariant()

    basis, _ = pebble_basis(generators.complete(4), 2, 3)
    assert len(basis) == 5

    c4 = MultiGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    basis, _ = pebble_basis(c4, 1, 1)
    assert len(basis) == 3


def test_pebble_rejects_nonmatroidal_range():
    with pytest.raises(ValueError, match="pebble range"):
        pebble_basis(triangle(), 2, 4)


def test_basis_size_is_order_independent():
    rng = random.Random(41)
    for _ in range(40):
        n = rng.randrange(3, 8)
        g = oracle.random_multigraph(n, rng.randrange(2, 13), rng)
        k, l = PARAMS[rng.randrange(4)]
        reference = len(pebble_basis(g, k, l)[0])
        perm = list(range(g.m))
        rng.shuffle(perm)
        shuffled = MultiGraph(g.n, [g.edges[i] for i in perm])
        assert len(pebble_basis(shuffled, k, l)[0]) == reference


def test_is_sparse_examples():
    assert is_sparse(triangle(), lmn(3, 2, 3)).ok

    doubled = MultiGraph(2, [(0, 1), (0, 1)])
    res = is_sparse(doubled, lmn(2, 2, 3))
    assert not res.ok and res.violation == 0b11

    res = is_sparse(generators.complete(4), lmn(4, 2, 3))
    assert not res.ok
    # the witness re-fails its inequality
    g = generators.complete(4)
    f = lmn(4, 2, 3)
    assert g.induced(res.violation) > f.cap(res.violation)


def test_sparse_agreement_with_oracle_small():
    budget = oracle.OracleBudget(subset_n=16)
    for n in range(1, 6):
        for g in oracle.census(n):
            for k, l in PARAMS:
                f = lmn(n, k, l)
                assert is_sparse(g, f).ok == oracle.bf_sparse(g, f, budget)[0]


def test_rank_and_rigid_examples():
    rr = rank_and_rigid(generators.complete(4), lmn(4, 2, 3))
    assert rr.rank == 5 and rr.rigid
    sub = generators.complete(4).subgraph(rr.basis)
    assert is_sparse(sub, lmn(4, 2, 3)).ok

    c4 = MultiGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    rr = rank_and_rigid(c4, lmn(4, 2, 3))
    assert rr.rank == 4 and not rr.rigid

    rr = rank_and_rigid(generators.complete(4), lmn(4, 1, 1))
    assert rr.rank == 3 and rr.rigid


def test_rank_matches_bruteforce():
    rng = random.Random(7)
    for _ in range(30):
        n = rng.randrange(2, 6)
        g = oracle.random_multigraph(n, rng.randrange(0, 9), rng)
        k, l = PARAMS[rng.randrange(4)]
        f = lmn(n, k, l)
        assert rank_and_rigid(g, f).rank == oracle.bf_rank(g, f)[0]


def test_rigid_components_examples():
    two_tri = MultiGraph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
    comps = rigid_components(two_tri, lmn(5, 2, 3))
    assert sorted(vertices_of(c) for c in comps) == [[0, 1, 2], [2, 3, 4]]

    k4e = MultiGraph(4, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    assert rigid_components(k4e, lmn(4, 2, 3)) == [0b1111]

    single = MultiGraph(3, [(0, 1)])
    comps = rigid_components(single, lmn(3, 2, 3))
    assert sorted(vertices_of(c) for c in comps) == [[0, 1], [2]]


def test_rigid_components_against_oracle():
    rng = random.Random(9)
    checked = 0
    while checked < 25:
        n = rng.randrange(3, 7)
        g = oracle.random_multigraph(n, rng.randrange(1, 2 * n), rng)
        k, l = PARAMS[rng.randrange(4)]
        f = lmn(n, k, l)
        if not is_sparse(g, f).ok:
            continue
        comps = [c for c in rigid_components(g, f) if bin(c).count("1") >= 2]
        etab = g.induced_table
        rigid_masks = [m for m in range(1, g.full_mask + 1)
                       if bin(m).count("1") >= 2 and etab[m] == f.cap(m)]
        maximal = sorted(m for m in rigid_masks
                         if not any(m != o and m & ~o == 0 for o in rigid_masks))
        assert sorted(comps) == maximal
        for i, a in enumerate(comps):
            for b in comps[i + 1:]:
                assert bin(a & b).count("1") <= 1
        checked += 1


def test_minimal_rigid_and_exchange_examples():
    k4e = MultiGraph(4, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    f = lmn(4, 2, 3)
    q = minimal_rigid_vertices(k4e, f, 0, 1)
    assert q == 0b1111
    for eid in range(5):
        swapped = exchange(k4e, f, 0, 1, eid)
        assert is_sparse(swapped, f).ok

    tree = MultiGraph(4, [(0, 1), (1, 2), (2, 3)])
    q = minimal_rigid_vertices(tree, lmn(4, 1, 1), 0, 2)
    assert q == mask_of([0, 1, 2])

    two_edges = MultiGraph(4, [(0, 1), (2, 3)])
    assert minimal_rigid_vertices(two_edges, lmn(4, 2, 3), 0, 2) is None
    with pytest.raises(ValueError, match="free pair"):
        exchange(two_edges, lmn(4, 2, 3), 0, 2, 0)


def test_exchange_requires_edge_inside_rigid_set():
    two_tri = MultiGraph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
    f = lmn(5, 2, 3)
    # a parallel copy of (0,1) exchanges only against the first triangle
    with pytest.raises(ValueError, match="inside"):
        exchange(two_tri, f, 0, 1, 4)


def test_modified_full_set_sparsity():
    mod = force_zero_on_ground(lmn(4, 1, 1))
    c4 = MultiGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert is_sparse(c4, mod).ok
    tri_pendant = MultiGraph(4, [(0, 1), (1, 2), (2, 0), (2, 3)])
    res = is_sparse(tri_pendant, mod)
    assert not res.ok
    assert tri_pendant.induced(res.violation) > mod.cap(res.violation)


def test_table_function_sparsity_path():
    tab = table_func(3, {0b001: 1, 0b010: 1, 0b100: 1,
                         0b011: 1, 0b101: 1, 0b110: 1, 0b111: 0})
    assert is_sparse(triangle(), tab).ok
    assert rank_and_rigid(triangle(), tab).rigid


def test_pebble_accounting_invariant():
    rng = random.Random(13)
    for _ in range(20):
        g = oracle.random_multigraph(6, rng.randrange(0, 14), rng)
        k, l = PARAMS[rng.randrange(4)]
        _, state = pebble_basis(g, k, l)
        state.check_invariant()
