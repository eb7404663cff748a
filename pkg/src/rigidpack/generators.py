"""Deterministic graph family generators for experiments and tests."""

from __future__ import annotations

import random

from .graph import MultiGraph


def complete(n: int) -> MultiGraph:
    return MultiGraph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite(a: int, b: int) -> MultiGraph:
    return MultiGraph(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def circulant(n: int, offsets) -> MultiGraph:
    """Vertices 0..n-1, edges v -> v+off (mod n) for each offset."""
    edges = []
    for off in sorted(set(offsets)):
        if not 0 < off <= n // 2:
            raise ValueError(f"offset {off} out of range for n={n}")
        for v in range(n):
            w = (v + off) % n
            if off * 2 == n and v >= w:
                continue  # the antipodal offset pairs each edge twice
            edges.append((min(v, w), max(v, w)))
    return MultiGraph(n, sorted(edges))


def random_simple(n: int, m: int, seed: int) -> MultiGraph:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if m > len(pairs):
        raise ValueError(f"a simple graph on {n} vertices has at most {len(pairs)} edges")
    rng = random.Random(seed)
    return MultiGraph(n, sorted(rng.sample(pairs, m)))


def random_regular(n: int, r: int, seed: int, *, simple: bool = True) -> MultiGraph:
    """r-regular graph by the pairing model, retried until loopless (and simple)."""
    if (n * r) % 2 != 0:
        raise ValueError(f"no {r}-regular graph exists on {n} vertices (odd total degree)")
    if simple and r >= n:
        raise ValueError(f"a simple {r}-regular graph needs more than {n} vertices")
    rng = random.Random(seed)
    for _ in range(10000):
        stubs = [v for v in range(n) for _ in range(r)]
        rng.shuffle(stubs)
        edges = []
        ok = True
        seen = set()
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v:
                ok = False
                break
            key = (min(u, v), max(u, v))
            if simple and key in seen:
                ok = False
                break
            seen.add(key)
            edges.append(key)
        if ok:
            return MultiGraph(n, sorted(edges))
    raise RuntimeError(f"pairing model failed to produce a graph for n={n}, r={r}")


def doubled(base: MultiGraph, multiplicity: int) -> MultiGraph:
    """Each edge of the base repeated `multiplicity` times."""
    if multiplicity < 1:
        raise ValueError("multiplicity must be at least 1")
    edges = []
    for e in base.edges:
        edges.extend([e] * multiplicity)
    return MultiGraph(base.n, edges)
