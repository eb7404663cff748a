"""Orientation constructions and verifiers.

Prescribed in-degree orientations (with violating-set certificates on
infeasibility), Eulerian and smooth orientations, the equivalence between
minimal rigidity and in-degree-exact arc-connected orientations, packed
orientations with rooted arc-connectivity, odd-degree spanning forests,
near-regular rigid factors, and the vertex-robust arc-strong pipeline.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .graph import MultiGraph, INFINITY, vertices_of
from .setfuncs import SetFunc, lmn, vertex_weights
from .sparsity import is_sparse, rank_and_rigid
from . import packing as packmod

ARC_SWEEP_BUDGET = 20


@dataclass(frozen=True)
class Orientation:
    """Per-edge direction over a host multigraph: heads[i] is the head of edge i."""

    host: MultiGraph
    heads: tuple[int, ...]

    def __post_init__(self):
        if len(self.heads) != self.host.m:
            raise ValueError("need exactly one head per edge")
        for eid, h in enumerate(self.heads):
            if h not in self.host.edges[eid]:
                raise ValueError(f"head of edge {eid} is not one of its endpoints")

    def tail(self, eid: int) -> int:
        u, v = self.host.edges[eid]
        return u if self.heads[eid] == v else v

    @cached_property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        return tuple((self.tail(e), self.heads[e]) for e in range(self.host.m))

    @cached_property
    def indegrees(self) -> tuple[int, ...]:
        d = [0] * self.host.n
        for h in self.heads:
            d[h] += 1
        return tuple(d)

    @cached_property
    def outdegrees(self) -> tuple[int, ...]:
        d = [0] * self.host.n
        for e in range(self.host.m):
            d[self.tail(e)] += 1
        return tuple(d)

    def indeg_set(self, mask: int) -> int:
        """Arcs entering the vertex set."""
        c = 0
        for t, h in self.arcs:
            if (mask >> h) & 1 and not (mask >> t) & 1:
                c += 1
        return c

    def outdeg_set(self, mask: int) -> int:
        """Arcs leaving the vertex set."""
        c = 0
        for t, h in self.arcs:
            if (mask >> t) & 1 and not (mask >> h) & 1:
                c += 1
        return c

    def is_smooth(self) -> bool:
        return all(abs(i - o) <= 1
                   for i, o in zip(self.indegrees, self.outdegrees))

    def is_balanced(self) -> bool:
        return self.indegrees == self.outdegrees

    def indeg_table(self) -> list[int]:
        """d^-(S) for every mask S; n capped by the sweep budget."""
        n = self.host.n
        if n > ARC_SWEEP_BUDGET:
            raise ValueError(f"in-degree table capped at {ARC_SWEEP_BUDGET} vertices")
        amat = [[0] * n for _ in range(n)]
        for t, h in self.arcs:
            amat[t][h] += 1
        indeg = self.indegrees
        tab = [0] * (1 << n)
        for s in range(1, 1 << n):
            v = (s & -s).bit_length() - 1
            t_mask = s ^ (1 << v)
            into_v = indeg[v]
            out_v_into_t = 0
            row = amat[v]
            tm = t_mask
            while tm:
                b = tm & -tm
                w = b.bit_length() - 1
                into_v -= amat[w][v]
                out_v_into_t += row[w]
                tm ^= b
            tab[s] = tab[t_mask] - out_v_into_t + into_v
        return tab

    def restricted(self, edge_ids) -> "Orientation":
        """Orientation of the spanning subgraph on the given edge ids."""
        ids = sorted(set(edge_ids))
        sub = self.host.subgraph(ids)
        return Orientation(sub, tuple(self.heads[e] for e in ids))


@dataclass(frozen=True)
class ArcResult:
    ok: bool
    violation: int | None = None  # mask with too few entering arcs


def verify_arc(orient: Orientation, func: SetFunc, roots=None) -> ArcResult:
    """d^-(A) >= f(A) - sum of roots over A, for every nonempty vertex set."""
    host = orient.host
    if host.n > ARC_SWEEP_BUDGET:
        raise ValueError(f"arc verification sweep capped at {ARC_SWEEP_BUDGET} vertices")
    r = list(roots) if roots is not None else [0] * host.n
    rtab = host.weight_table(r)
    din = orient.indeg_table()
    for mask in range(1, host.full_mask + 1):
        if din[mask] < func.value(mask) - rtab[mask]:
            return ArcResult(False, mask)
    return ArcResult(True)


def arc_strong_value(orient: Orientation) -> int | float:
    """min d^-(A) over proper nonempty A (INFINITY on a single vertex)."""
    host = orient.host
    if host.n <= 1:
        return INFINITY
    if host.n <= ARC_SWEEP_BUDGET:
        din = orient.indeg_table()
        return min(din[mask] for mask in range(1, host.full_mask))
    return _arc_strong_by_flows(orient)


def _arc_strong_by_flows(orient: Orientation) -> int:
    host = orient.host
    n = host.n
    cap = [[0] * n for _ in range(n)]
    for t, h in orient.arcs:
        cap[t][h] += 1
    from .graph import _maxflow
    best = None
    for v in range(1, n):
        a = _maxflow([row[:] for row in cap], 0, v)
        b = _maxflow([row[:] for row in cap], v, 0)
        m = min(a, b)
        best = m if best is None else min(best, m)
    return best


# ----------------------------------------------------------------------
# prescribed in-degree orientations


@dataclass(frozen=True)
class HakimiResult:
    ok: bool
    orientation: Orientation | None = None
    violation: int | None = None  # mask with e(A) > sum of targets over A


def hakimi_orient(graph: MultiGraph, targets) -> HakimiResult:
    """Orientation with d^-(v) = targets[v], or a violating-set certificate.

    Feasible exactly when every vertex set induces at most its target sum.
    Built by reorienting augmenting paths from over-target to under-target
    vertices, lowest-index first.
    """
    t = list(targets)
    if len(t) != graph.n or any(x < 0 for x in t):
        raise ValueError("need one nonnegative target per vertex")
    if sum(t) != graph.m:
        raise ValueError(f"targets sum to {sum(t)}, graph has {graph.m} edges")
    heads = []
    indeg = [0] * graph.n
    for u, v in graph.edges:
        du = t[u] - indeg[u]
        dv = t[v] - indeg[v]
        head = u if (du, -u) > (dv, -v) else v
        heads.append(head)
        indeg[head] += 1
    # repair: reverse a path from a deficient vertex into each excess vertex
    in_edges = [[] for _ in range(graph.n)]  # recomputed lazily below

    def rebuild_in():
        for lst in in_edges:
            lst.clear()
        for eid, h in enumerate(heads):
            in_edges[h].append(eid)

    rebuild_in()
    while True:
        over = next((v for v in range(graph.n) if indeg[v] > t[v]), None)
        if over is None:
            break
        # BFS backwards from `over` along arcs (head -> tail)
        parent_edge = {over: -1}
        queue = deque([over])
        found = None
        while queue and found is None:
            x = queue.popleft()
            for eid in in_edges[x]:
                u, v = graph.edges[eid]
                tail = u if heads[eid] == v else v
                if tail in parent_edge:
                    continue
                parent_edge[tail] = eid
                if indeg[tail] < t[tail]:
                    found = tail
                    break
                queue.append(tail)
        if found is None:
            mask = 0
            for v in parent_edge:
                mask |= 1 << v
            return HakimiResult(False, violation=mask)
        # flip the path found -> ... -> over
        x = found
        while x != over:
            eid = parent_edge[x]
            u, v = graph.edges[eid]
            old_head = heads[eid]
            new_head = u if old_head == v else v
            heads[eid] = new_head
            x = old_head
        indeg[over] -= 1
        indeg[found] += 1
        rebuild_in()
    return HakimiResult(True, orientation=Orientation(graph, tuple(heads)))


# ----------------------------------------------------------------------
# Eulerian and smooth orientations


def euler_orient(graph: MultiGraph, rng: random.Random | None = None) -> Orientation:
    """Orientation along Euler tours of each component; needs all degrees even.

    With an RNG, tour start points and branch order are shuffled; otherwise
    the traversal is by ascending edge id.
    """
    for v in range(graph.n):
        if graph.degree(v) % 2 != 0:
            raise ValueError(f"vertex {v} has odd degree {graph.degree(v)}")
    inc = [[] for _ in range(graph.n)]
    for eid, (u, v) in enumerate(graph.edges):
        inc[u].append(eid)
        inc[v].append(eid)
    if rng is not None:
        for lst in inc:
            rng.shuffle(lst)
    ptr = [0] * graph.n
    used = [False] * graph.m
    heads: list[int | None] = [None] * graph.m
    order = list(range(graph.n))
    if rng is not None:
        rng.shuffle(order)
    for start in order:
        if ptr[start] >= len(inc[start]):
            continue
        stack = [start]
        while stack:
            x = stack[-1]
            advanced = False
            while ptr[x] < len(inc[x]):
                eid = inc[x][ptr[x]]
                ptr[x] += 1
                if used[eid]:
                    continue
                used[eid] = True
                u, v = graph.edges[eid]
                y = v if x == u else u
                heads[eid] = y
                stack.append(y)
                advanced = True
                break
            if not advanced:
                stack.pop()
    orient = Orientation(graph, tuple(heads))
    if not orient.is_balanced():
        raise RuntimeError("tour orientation is not balanced; engine bug")
    return orient


def smooth_orient(graph: MultiGraph, rng: random.Random | None = None) -> Orientation:
    """Orientation with |d^+ - d^-| <= 1 at every vertex.

    Odd-degree vertices are paired through auxiliary edges, the augmented
    graph is tour-oriented, and the auxiliaries are stripped.
    """
    odd = [v for v in range(graph.n) if graph.degree(v) % 2 == 1]
    aux = [(odd[i], odd[i + 1]) for i in range(0, len(odd), 2)]
    big = MultiGraph(graph.n, list(graph.edges) + aux)
    oriented = euler_orient(big, rng)
    orient = Orientation(graph, oriented.heads[:graph.m])
    if not orient.is_smooth():
        raise RuntimeError("smooth orientation failed its per-vertex check")
    for v in range(graph.n):
        if graph.degree(v) % 2 == 0 and orient.indegrees[v] != orient.outdegrees[v]:
            raise RuntimeError("even-degree vertex left unbalanced")
    return orient


# ----------------------------------------------------------------------
# minimal rigidity <-> exact in-degree arc-connected orientations


@dataclass(frozen=True)
class RigidOrientResult:
    ok: bool
    orientation: Orientation | None = None
    reason: str = ""
    witness: int | None = None


def rigid_to_orientation(graph: MultiGraph, ell: SetFunc) -> RigidOrientResult:
    """Certify minimal rigidity and produce the in-degree-exact orientation.

    Needs ell zero on the full vertex set and nonnegative. The orientation
    has d^-(v) = ell(v) everywhere and is verified arc-connected for ell.
    """
    full = graph.full_mask
    if ell.value(full) != 0:
        raise ValueError("the function must vanish on the full vertex set")
    if any(x < 0 for x in ell.singletons):
        raise ValueError("singleton values must be nonnegative")
    if graph.m != sum(ell.singletons):
        return RigidOrientResult(False, reason="edge-count",
                                 witness=graph.m - sum(ell.singletons))
    sp = is_sparse(graph, ell)
    if not sp.ok:
        return RigidOrientResult(False, reason="not-sparse", witness=sp.violation)
    hk = hakimi_orient(graph, ell.singletons)
    if not hk.ok:
        return RigidOrientResult(False, reason="orientation-infeasible",
                                 witness=hk.violation)
    arc = verify_arc(hk.orientation, ell)
    if not arc.ok:
        raise RuntimeError("arc verification failed on a minimally rigid input")
    return RigidOrientResult(True, orientation=hk.orientation)


def orientation_to_rigid(orient: Orientation, ell: SetFunc) -> RigidOrientResult:
    """Certify minimal rigidity from an in-degree-exact arc-connected orientation."""
    graph = orient.host
    full = graph.full_mask
    if ell.value(full) != 0:
        raise ValueError("the function must vanish on the full vertex set")
    for v in range(graph.n):
        if orient.indegrees[v] != ell.singletons[v]:
            return RigidOrientResult(False, reason="indegree", witness=v)
    arc = verify_arc(orient, ell)
    if not arc.ok:
        return RigidOrientResult(False, reason="not-arc-connected",
                                 witness=arc.violation)
    sp = is_sparse(graph, ell)
    if not sp.ok:
        raise RuntimeError("in-degree identity contradicts sparsity; engine bug")
    return RigidOrientResult(True, orientation=orient)


# ----------------------------------------------------------------------
# packed orientations


@dataclass(frozen=True)
class PackedOrientResult:
    ok: bool
    orientation: Orientation | None = None
    h1: frozenset[int] = frozenset()
    h2: frozenset[int] = frozenset()
    hypothesis: object = None
    detail: dict = field(compare=False, default_factory=dict)


def packed_orientation(graph: MultiGraph, l: SetFunc, ell: SetFunc,
                       r1, r2, force: bool = False,
                       lowered_vertex: int | None = None) -> PackedOrientResult:
    """Orient the graph with two edge-disjoint rooted arc-connected spanning
    subdigraphs and out-degrees capped at ceil(d(v)/2).

    The first subdigraph has d^-(v) = l(v) - r1(v) and is r1-rooted
    arc-connected for l; the second likewise for ell and r2. A distinguished
    vertex may be lowered to floor(d(u)/2).
    """
    full = graph.full_mask
    r1 = list(r1)
    r2 = list(r2)
    if sum(r1) != l.value(full):
        raise ValueError("first root vector must sum to the value of l on V")
    if sum(r2) != ell.value(full):
        raise ValueError("second root vector must sum to the value of ell on V")
    if any(x < 0 for x in r1) or any(x < 0 for x in r2):
        raise ValueError("root values must be nonnegative")
    for v in range(graph.n):
        if r2[v] > ell.singletons[v]:
            raise ValueError(f"root exceeds the function value at vertex {v}")
        if r1[v] > l.singletons[v]:
            raise ValueError(f"root exceeds the function value at vertex {v}")
    hyp = None
    if not force:
        hyp = packmod.check_pack_basic(graph, l, ell)
        if not hyp.ok:
            return PackedOrientResult(False, hypothesis=hyp)
    # the degree eater absorbs everything above floor(d/2) minus the rooted
    # in-degree targets, so the three in-degree sums reach floor(d/2)
    weights = []
    for v in range(graph.n):
        w = (graph.degree(v) // 2 - l.singletons[v] - ell.singletons[v]
             + r1[v] + r2[v])
        if lowered_vertex == v and graph.degree(v) % 2 == 1:
            w += 1
        if w < 0:
            raise ValueError(f"degree hypothesis fails at vertex {v}")
        weights.append(w)
    funcs = [vertex_weights(weights), l, ell]
    pack = packmod.matroid_union_pack(graph, funcs)
    if not all(p.full for p in pack.parts):
        return PackedOrientResult(False, hypothesis=hyp,
                                  detail={"packing": "deficient"})
    h0, h1, h2 = (p.edges for p in pack.parts)
    heads: list[int | None] = [None] * graph.m
    targets1 = [l.singletons[v] - r1[v] for v in range(graph.n)]
    targets2 = [ell.singletons[v] - r2[v] for v in range(graph.n)]
    for ids, tgt in ((h0, weights), (h1, targets1), (h2, targets2)):
        sub_ids = sorted(ids)
        sub = graph.subgraph(sub_ids)
        hk = hakimi_orient(sub, tgt)
        if not hk.ok:
            raise RuntimeError("packed part refused its in-degree orientation")
        for local, eid in enumerate(sub_ids):
            heads[eid] = hk.orientation.heads[local]
    rest = sorted(set(range(graph.m)) - set(h0) - set(h1) - set(h2))
    if rest:
        sm = smooth_orient(graph.subgraph(rest))
        for local, eid in enumerate(rest):
            heads[eid] = sm.heads[local]
    orient = Orientation(graph, tuple(heads))
    d1 = orient.restricted(h1)
    d2 = orient.restricted(h2)
    for v in range(graph.n):
        if d1.indegrees[v] != targets1[v] or d2.indegrees[v] != targets2[v]:
            raise RuntimeError("in-degree identity failed on a packed part")
    if not verify_arc(d1, l, r1).ok:
        raise RuntimeError("first part failed rooted arc verification")
    if not verify_arc(d2, ell, r2).ok:
        raise RuntimeError("second part failed rooted arc verification")
    for v in range(graph.n):
        bound = -(-graph.degree(v) // 2)
        if lowered_vertex == v:
            bound = graph.degree(v) // 2
        if orient.outdegrees[v] > bound:
            raise RuntimeError(f"out-degree bound violated at vertex {v}")
    return PackedOrientResult(True, orientation=orient,
                              h1=frozenset(h1), h2=frozenset(h2),
                              hypothesis=hyp)


# ----------------------------------------------------------------------
# odd-degree spanning forests and near-regular rigid factors


@dataclass(frozen=True)
class OddForestResult:
    edges: frozenset[int]
    achieved: bool
    targets: tuple[int, ...]


def odd_spanning_forest(graph: MultiGraph, m_param: int) -> OddForestResult:
    """Spanning forest with every degree odd, aiming at ceil(d(v)/m) per vertex.

    All-odd forests exist exactly when every component has even order. The
    degree target is best-effort: a parity-fixed tree is improved by local
    two-edge swaps, and the result reports whether the bound was met.
    """
    if m_param < 1:
        raise ValueError("the divisor must be positive")
    comps = graph.components()
    for comp in comps:
        if bin(comp).count("1") % 2 != 0:
            raise ValueError(
                f"component {vertices_of(comp)} has odd order; no all-odd forest exists")
    targets = tuple(-(-graph.degree(v) // m_param) for v in range(graph.n))
    best: set[int] | None = None
    best_violation = None
    roots = sorted({min(vertices_of(c)) for c in comps})
    for shift in range(min(graph.n, 4)):
        forest = _parity_forest(graph, shift)
        forest = _reduce_degrees(graph, forest, targets)
        violation = _violation(graph, forest, targets)
        if best is None or violation < best_violation:
            best, best_violation = forest, violation
        if best_violation == 0:
            break
    deg = _forest_degrees(graph, best)
    for v in range(graph.n):
        if deg[v] % 2 != 1:
            raise RuntimeError(f"forest degree at {v} is even; engine bug")
    if not _is_forest(graph, best):
        raise RuntimeError("result is not a forest; engine bug")
    return OddForestResult(edges=frozenset(best), achieved=best_violation == 0,
                           targets=targets)


def _parity_forest(graph: MultiGraph, root_shift: int) -> set[int]:
    """Keep a subset of a spanning tree so every vertex gets odd degree."""
    n = graph.n
    inc = [[] for _ in range(n)]
    for eid, (u, v) in enumerate(graph.edges):
        inc[u].append((eid, v))
        inc[v].append((eid, u))
    seen = [False] * n
    kept: set[int] = set()
    deg = [0] * n
    for comp in graph.components():
        verts = vertices_of(comp)
        root = verts[root_shift % len(verts)]
        # BFS tree
        parent_edge: dict[int, tuple[int, int]] = {}
        order = [root]
        seen[root] = True
        qi = 0
        while qi < len(order):
            x = order[qi]
            qi += 1
            for eid, y in inc[x]:
                if not seen[y]:
                    seen[y] = True
                    parent_edge[y] = (eid, x)
                    order.append(y)
        for v in reversed(order):
            if v == root:
                continue
            eid, par = parent_edge[v]
            if deg[v] % 2 == 0:
                kept.add(eid)
                deg[v] += 1
                deg[par] += 1
        if deg[root] % 2 != 1:
            raise RuntimeError("parity fixing failed at the root; engine bug")
    return kept


def _forest_degrees(graph: MultiGraph, forest) -> list[int]:
    deg = [0] * graph.n
    for eid in forest:
        u, v = graph.edges[eid]
        deg[u] += 1
        deg[v] += 1
    return deg


def _violation(graph, forest, targets) -> int:
    deg = _forest_degrees(graph, forest)
    return sum(max(0, deg[v] - targets[v]) for v in range(graph.n))


def _is_forest(graph: MultiGraph, edge_ids) -> bool:
    parent = list(range(graph.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid in edge_ids:
        u, v = graph.edges[eid]
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def _reduce_degrees(graph: MultiGraph, forest: set[int], targets) -> set[int]:
    """Drop two forest edges at an over-target vertex and reconnect their
    far endpoints directly; parities and forest-ness are preserved."""
    forest = set(forest)
    by_pair: dict[tuple[int, int], list[int]] = {}
    for eid, (u, v) in enumerate(graph.edges):
        by_pair.setdefault((min(u, v), max(u, v)), []).append(eid)
    improved = True
    while improved:
        improved = False
        deg = _forest_degrees(graph, forest)
        for v in range(graph.n):
            if deg[v] <= targets[v]:
                continue
            nbrs = []
            for eid in forest:
                a, b = graph.edges[eid]
                if v == a:
                    nbrs.append((b, eid))
                elif v == b:
                    nbrs.append((a, eid))
            done = False
            for i in range(len(nbrs)):
                for j in range(i + 1, len(nbrs)):
                    x, ex = nbrs[i]
                    y, ey = nbrs[j]
                    if x == y:
                        continue
                    key = (min(x, y), max(x, y))
                    cands = [e for e in by_pair.get(key, ()) if e not in forest]
                    if not cands:
                        continue
                    if deg[x] + 0 > targets[x] or deg[y] > targets[y]:
                        pass  # swap leaves x, y degrees unchanged, still fine
                    trial = set(forest)
                    trial.discard(ex)
                    trial.discard(ey)
                    trial.add(cands[0])
                    if not _is_forest(graph, trial):
                        continue
                    forest = trial
                    improved = True
                    done = True
                    break
                if done:
                    break
            if done:
                break
    return forest


@dataclass(frozen=True)
class FactorResult:
    ok: bool
    edges: frozenset[int]
    removed_forest: frozenset[int]
    detail: dict = field(compare=False, default_factory=dict)


def rigid_factor(graph: MultiGraph, k: int, r: int,
                 force: bool = False) -> FactorResult:
    """Spanning k-fold rigid subgraph with every degree in {r-3, r-1}.

    Requires an r-regular host of even order (r >= 4) meeting the
    connectivity hypothesis 2*ceil(r/6) + 4k - 2. The pipeline packs a
    rigid part and a tree-connected part, removes an odd forest of the
    latter, and verifies degrees and rigidity of what remains.
    """
    if r < 4:
        raise ValueError("the factor pipeline needs r >= 4")
    if any(d != r for d in graph.degrees):
        raise ValueError("host graph is not r-regular")
    if graph.n % 2 != 0:
        raise ValueError("host graph must have even order")
    m_param = -(-r // 6)
    need = 2 * m_param + 4 * k - 2
    detail = {"m": m_param, "connectivity_needed": need}
    if not force:
        kappa = graph.vertex_connectivity()
        detail["vertex_connectivity"] = kappa
        if kappa < need:
            return FactorResult(False, frozenset(), frozenset(), detail)
    l = lmn(graph.n, m_param, m_param)
    ell = lmn(graph.n, k, 2 * k - 1)
    outcome = packmod.pack_partition_rigid(graph, l, ell,
                                           degree_mode="halved", force=True)
    if not outcome.ok:
        detail["packing"] = "deficient"
        return FactorResult(False, frozenset(), frozenset(), detail)
    tree_part = sorted(outcome.detail["l_part"])
    sub = graph.subgraph(tree_part)
    forest_local = odd_spanning_forest(sub, m_param)
    forest = frozenset(tree_part[i] for i in forest_local.edges)
    remaining = frozenset(range(graph.m)) - forest
    degs = graph.subgraph(remaining).degrees
    bad = [v for v in range(graph.n) if degs[v] not in (r - 3, r - 1)]
    if bad:
        detail["bad_degrees"] = bad
        return FactorResult(False, remaining, forest, detail)
    rr = rank_and_rigid(graph.subgraph(remaining), ell)
    if not rr.rigid:
        detail["rigidity"] = "failed"
        return FactorResult(False, remaining, forest, detail)
    return FactorResult(True, remaining, forest, detail)


# ----------------------------------------------------------------------
# vertex-robust arc-strong smooth orientations


@dataclass(frozen=True)
class RobustResult:
    ok: bool
    orientation: Orientation | None = None
    hypothesis: object = None
    checks: dict = field(compare=False, default_factory=dict)
    detail: dict = field(compare=False, default_factory=dict)


def robust_arc_strong(graph: MultiGraph, k: int, seed: int = 0,
                      retries: int = 64, force: bool = False) -> RobustResult:
    """Smooth (2k+1)-arc-strong orientation staying k-arc-strong after
    deleting any single vertex.

    Pipeline: split off a spanning tree and a heavily rigid part whose
    union with a connectivity companion is (4k+1)-edge-connected, add a
    parity forest of the tree to make that union Eulerian, tour-orient it
    so every vertex-deleted digraph stays k-arc-strong (seeded retries with
    local arc-reversal repair), and orient the remainder smoothly. All
    three properties are verified on the final orientation; an exhausted
    retry budget reports failure rather than returning unverified output.
    """
    if k < 1:
        raise ValueError("robustness level must be at least 1")
    kk = 2 * k + 1
    hyp = None
    if not force:
        hyp = packmod.check_uniform_weakly_connected(graph, kk, 8 * k + 4)
        if hyp is not None and not hyp.ok:
            return RobustResult(False, hypothesis=hyp)
    l = lmn(graph.n, kk, 1)
    ell = lmn(graph.n, kk, 2 * kk - 1)
    outcome = packmod.pack_partition_rigid(graph, l, ell,
                                           degree_mode="halved", force=True)
    if not outcome.ok:
        return RobustResult(False, hypothesis=hyp,
                            detail={"packing": "deficient"})
    pieces = packmod._split_all(graph, outcome.detail["l_part"],
                                [lmn(graph.n, kk - 1, 0), lmn(graph.n, 1, 1)])
    companion, tree = pieces
    rigid = frozenset(outcome.detail["ell_part"])
    gprime = rigid | companion
    checks: dict = {}
    gsub = graph.subgraph(gprime)
    lam = gsub.edge_connectivity()
    checks["reinforced_edge_connectivity"] = lam
    if lam < 4 * k + 1:
        raise RuntimeError(f"reinforced part is only {lam}-edge-connected")
    worst = INFINITY
    for v in range(graph.n):
        worst = min(worst, gsub.delete_vertex(v).edge_connectivity())
    checks["reinforced_vertex_deleted"] = worst
    if worst < 2 * k:
        raise RuntimeError("vertex-deleted reinforced part below 2k-edge-connected")
    forest = _matching_parity_forest(graph, tree, gprime)
    h_ids = sorted(gprime | forest)
    hsub = graph.subgraph(h_ids)
    if any(d % 2 for d in hsub.degrees):
        raise RuntimeError("parity forest failed to make the union Eulerian")
    lam_h = hsub.edge_connectivity()
    checks["eulerian_edge_connectivity"] = lam_h
    if lam_h < 4 * k + 2:
        raise RuntimeError("Eulerian union below 4k+2 edge connectivity")
    orient_h = _robust_euler_search(hsub, k, seed, retries)
    if orient_h is None:
        return RobustResult(False, hypothesis=hyp, checks=checks,
                            detail={"inner_search": "budget exhausted",
                                    "eulerian_part": h_ids})
    heads: list[int | None] = [None] * graph.m
    for local, eid in enumerate(h_ids):
        heads[eid] = orient_h.heads[local]
    rest = sorted(set(range(graph.m)) - set(h_ids))
    if rest:
        sm = smooth_orient(graph.subgraph(rest))
        for local, eid in enumerate(rest):
            heads[eid] = sm.heads[local]
    orient = Orientation(graph, tuple(heads))
    if not orient.is_smooth():
        raise RuntimeError("combined orientation is not smooth")
    strong = arc_strong_value(orient)
    checks["arc_strong"] = strong
    if strong < kk:
        raise RuntimeError(f"orientation is only {strong}-arc-strong")
    worst_v = INFINITY
    for v in range(graph.n):
        val = _deleted_arc_strong(orient, v)
        worst_v = min(worst_v, val)
    checks["vertex_deleted_arc_strong"] = worst_v
    if worst_v < k:
        raise RuntimeError("a vertex-deleted digraph fell below k-arc-strong")
    return RobustResult(True, orientation=orient, hypothesis=hyp, checks=checks,
                        detail={"rigid_part": sorted(rigid),
                                "companion": sorted(companion),
                                "tree": sorted(tree),
                                "parity_forest": sorted(forest)})


def _matching_parity_forest(graph, tree_ids, other_ids) -> frozenset[int]:
    """Subforest of a spanning tree whose degrees match the other part's
    parity at every vertex."""
    other_deg = [0] * graph.n
    for eid in other_ids:
        u, v = graph.edges[eid]
        other_deg[u] += 1
        other_deg[v] += 1
    inc = [[] for _ in range(graph.n)]
    for eid in tree_ids:
        u, v = graph.edges[eid]
        inc[u].append((eid, v))
        inc[v].append((eid, u))
    root = 0
    parent_edge: dict[int, tuple[int, int]] = {}
    order = [root]
    seen = [False] * graph.n
    seen[root] = True
    qi = 0
    while qi < len(order):
        x = order[qi]
        qi += 1
        for eid, y in inc[x]:
            if not seen[y]:
                seen[y] = True
                parent_edge[y] = (eid, x)
                order.append(y)
    if len(order) != graph.n:
        raise RuntimeError("tree part does not span the graph")
    kept: set[int] = set()
    deg = [0] * graph.n
    for v in reversed(order):
        if v == root:
            continue
        eid, par = parent_edge[v]
        if (deg[v] + other_deg[v]) % 2 == 1:
            kept.add(eid)
            deg[v] += 1
            deg[par] += 1
    if (deg[root] + other_deg[root]) % 2 == 1:
        raise RuntimeError("parity forest inconsistent at the root")
    return frozenset(kept)


def _robust_euler_search(hsub: MultiGraph, k: int, seed: int,
                         retries: int) -> Orientation | None:
    for attempt in range(max(1, retries)):
        rng = None if attempt == 0 else random.Random(seed * 10007 + attempt)
        orient = euler_orient(hsub, rng)
        orient = _repair_orientation(hsub, orient, k)
        if orient is not None:
            return orient
    return None


def _find_robust_violation(orient: Orientation, k: int):
    host = orient.host
    for v in range(host.n):
        val, mask = _deleted_arc_strong(orient, v, want_witness=True)
        if val < k:
            return v, mask
    return None


def _deleted_arc_strong(orient: Orientation, v: int, want_witness: bool = False):
    host = orient.host
    keep = [e for e in range(host.m) if v not in host.edges[e]]
    arcs = [(orient.tail(e), orient.heads[e]) for e in keep]
    rest = [w for w in range(host.n) if w != v]
    pos = {w: i for i, w in enumerate(rest)}
    n1 = len(rest)
    amat = [[0] * n1 for _ in range(n1)]
    for t, h in arcs:
        amat[pos[t]][pos[h]] += 1
    indeg = [0] * n1
    for t, h in arcs:
        indeg[pos[h]] += 1
    tab = [0] * (1 << n1)
    best = None
    best_mask = None
    for s in range(1, (1 << n1) - 1):
        w = (s & -s).bit_length() - 1
        t_mask = s ^ (1 << w)
        into_w = indeg[w]
        out_w = 0
        row = amat[w]
        tm = t_mask
        while tm:
            b = tm & -tm
            x = b.bit_length() - 1
            into_w -= amat[x][w]
            out_w += row[x]
            tm ^= b
        tab[s] = tab[t_mask] - out_w + into_w
        if best is None or tab[s] < best:
            best = tab[s]
            best_mask = s
    if best is None:  # a single remaining vertex has no proper subset
        best = INFINITY
    if want_witness:
        if best_mask is None:
            return best, None
        mask = 0
        for i, w in enumerate(rest):
            if (best_mask >> i) & 1:
                mask |= 1 << w
        return best, mask
    return best


def _repair_orientation(hsub: MultiGraph, orient: Orientation,
                        k: int, passes: int = 8) -> Orientation | None:
    heads = list(orient.heads)
    for _ in range(passes):
        cur = Orientation(hsub, tuple(heads))
        bad = _find_robust_violation(cur, k)
        if bad is None:
            return cur
        v, mask = bad
        fixed = _reverse_cycle_through(hsub, heads, v, mask)
        if not fixed:
            return None
    cur = Orientation(hsub, tuple(heads))
    return cur if _find_robust_violation(cur, k) is None else None


def _reverse_cycle_through(hsub: MultiGraph, heads: list[int], v: int,
                           mask: int) -> bool:
    """Reverse one directed cycle through an arc from v into the deficient
    set; Eulerian balance is preserved and the arc count from v into the
    set drops when the return arc comes from outside it."""
    arcs_from_v = [e for e in range(hsub.m)
                   if heads[e] != v and v in hsub.edges[e]
                   and (mask >> heads[e]) & 1]
    for e0 in arcs_from_v:
        w = heads[e0]
        # BFS for a directed path w -> ... -> v avoiding e0
        parent: dict[int, int] = {w: -1}
        queue = deque([w])
        while queue:
            x = queue.popleft()
            for e in range(hsub.m):
                if e == e0 or heads[e] in parent:
                    continue
                a, b = hsub.edges[e]
                tail = a if heads[e] == b else b
                if tail != x:
                    continue
                parent[heads[e]] = e
                queue.append(heads[e])
        if v not in parent:
            continue
        path = []
        x = v
        while parent[x] != -1:
            e = parent[x]
            path.append(e)
            a, b = hsub.edges[e]
            x = a if heads[e] == b else b
        for e in path + [e0]:
            a, b = hsub.edges[e]
            heads[e] = a if heads[e] == b else b
        return True
    return False
