"""Pebble-game machinery for count matroids.

The engine decides sparsity, extracts maximum sparse subgraphs (matroid
bases), certifies rigidity, finds rigid components and minimal rigid sets,
and performs the single-edge exchange the packing engine is built on.

A pebble state carries per-vertex capacities `caps` and a gather deficit
`ell`. An edge is accepted when ell+1 pebbles can be collected on its two
endpoints by reversing acceptance arcs; the accepted edges are exactly the
independent sets of the matroid whose capacities are
sum(caps over A) - ell on sets of two or more vertices. When a gather
fails, the set of vertices reachable along acceptance arcs is the unique
minimal tight set containing both endpoints, which is what the exchange
step needs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import MultiGraph, vertices_of
from .setfuncs import SetFunc, pebble_params, proper_pebble_params
from . import oracle


@dataclass
class PebbleState:
    caps: tuple[int, ...]
    ell: int
    pebbles: list[int]
    out: list[list[int]]
    accepted: list[int] = field(default_factory=list)

    @classmethod
    def fresh(cls, caps, ell: int) -> "PebbleState":
        caps = tuple(caps)
        return cls(caps=caps, ell=ell, pebbles=list(caps),
                   out=[[] for _ in caps])

    def snapshot(self):
        return (self.pebbles[:], [lst[:] for lst in self.out],
                self.accepted[:])

    def restore(self, snap) -> None:
        pebbles, out, accepted = snap
        self.pebbles = pebbles[:]
        self.out = [lst[:] for lst in out]
        self.accepted = accepted[:]

    def check_invariant(self) -> None:
        total = sum(self.pebbles) + len(self.accepted)
        if total != sum(self.caps):
            raise RuntimeError("pebble accounting broken: "
                               f"{total} != {sum(self.caps)}")
        for v, p in enumerate(self.pebbles):
            if p + len(self.out[v]) != self.caps[v]:
                raise RuntimeError(f"pebble/out mismatch at vertex {v}")

    # ------------------------------------------------------------------

    def gather(self, x: int, y: int):
        """Try to collect ell+1 pebbles on {x, y}.

        Returns None on success. On failure returns the mask of vertices
        reachable from {x, y} along acceptance arcs: the minimal tight set
        containing both endpoints.
        """
        need = self.ell + 1
        peb = self.pebbles
        out = self.out
        while peb[x] + peb[y] < need:
            # DFS from both endpoints, lowest vertex first, for a free pebble
            parent = {x: -1, y: -1}
            stack = [y, x]  # x explored first
            found = -1
            while stack:
                u = stack.pop()
                for w in sorted(set(out[u])):
                    if w in parent:
                        continue
                    parent[w] = u
                    if peb[w] > 0:
                        found = w
                        stack = []
                        break
                    stack.append(w)
            if found < 0:
                mask = 0
                for v in parent:
                    mask |= 1 << v
                return mask
            # reverse the path from the root to the pebble
            path = [found]
            while parent[path[-1]] != -1:
                path.append(parent[path[-1]])
            root = path[-1]
            for i in range(len(path) - 1):
                lo, hi = path[i], path[i + 1]
                out[hi].remove(lo)
                out[lo].append(hi)
            peb[found] -= 1
            peb[root] += 1
        return None

    def insert(self, eid: int, x: int, y: int):
        """Accept edge eid if possible; returns None or the blocking mask."""
        blocked = self.gather(x, y)
        if blocked is not None:
            return blocked
        tail = x if self.pebbles[x] > 0 else y
        head = y if tail == x else x
        self.pebbles[tail] -= 1
        self.out[tail].append(head)
        self.accepted.append(eid)
        return None

    def probe_pair(self, x: int, y: int):
        """Non-mutating gather attempt: None if ell+1 pebbles are collectable,
        else the minimal tight set containing x and y."""
        snap = self.snapshot()
        res = self.gather(x, y)
        self.restore(snap)
        return res

    def max_tight_pair(self, x: int, y: int):
        """Maximal tight set containing x and y, or None if no tight set does.

        After a maximal gather onto {x, y}, a tight superset is out-closed
        and carries no pebbles elsewhere, so the maximal one is the
        complement of the vertices that can still reach a spare pebble.
        """
        snap = self.snapshot()
        res = self.gather(x, y)
        if res is None:
            self.restore(snap)
            return None
        n = len(self.caps)
        pebbled = [w for w in range(n)
                   if w not in (x, y) and self.pebbles[w] > 0]
        rev = [[] for _ in range(n)]
        for a in range(n):
            for b in self.out[a]:
                rev[b].append(a)
        bad = [False] * n
        stack = []
        for w in pebbled:
            bad[w] = True
            stack.append(w)
        while stack:
            w = stack.pop()
            for p in rev[w]:
                if not bad[p]:
                    bad[p] = True
                    stack.append(p)
        self.restore(snap)
        mask = 0
        for w in range(n):
            if not bad[w]:
                mask |= 1 << w
        return mask


class CountMatroid:
    """Incremental independence oracle for one count matroid over a host graph."""

    def __init__(self, host: MultiGraph, func: SetFunc):
        params = pebble_params(func)
        if params is None:
            raise ValueError(
                f"set function {func.describe()} is outside the pebble range")
        self.host = host
        self.func = func
        self.caps, self.ell = params
        self.state = PebbleState.fresh(self.caps, self.ell)
        self.edge_ids: set[int] = set()

    def probe(self, eid: int):
        u, v = self.host.edges[eid]
        return self.state.probe_pair(u, v)

    def probe_pair(self, x: int, y: int):
        return self.state.probe_pair(x, y)

    def insert(self, eid: int) -> bool:
        u, v = self.host.edges[eid]
        if self.state.insert(eid, u, v) is None:
            self.edge_ids.add(eid)
            return True
        return False

    def circuit_edges(self, tight_mask: int) -> list[int]:
        """Edges of the current set induced inside a tight vertex set."""
        edges = self.host.edges
        out = []
        for eid in self.edge_ids:
            u, v = edges[eid]
            if (tight_mask >> u) & 1 and (tight_mask >> v) & 1:
                out.append(eid)
        return sorted(out)

    def rebuild(self, edge_ids) -> None:
        """Reset and re-insert the given edges in ascending id order.

        Raises if any edge is rejected: callers use this as the
        post-exchange verification step.
        """
        self.state = PebbleState.fresh(self.caps, self.ell)
        self.edge_ids = set()
        for eid in sorted(edge_ids):
            if not self.insert(eid):
                raise RuntimeError(
                    f"rebuild rejected edge {eid}: exchange broke sparsity")


# ----------------------------------------------------------------------
# sparsity / rank / rigidity


@dataclass(frozen=True)
class SparseResult:
    ok: bool
    violation: int | None = None  # vertex mask with e(A) > cap(A)


@dataclass(frozen=True)
class RigidResult:
    rank: int
    target: int
    rigid: bool
    basis: tuple[int, ...]

    @property
    def tight_edges(self) -> tuple[int, ...]:
        return self.basis


def pebble_basis(graph: MultiGraph, k: int, ell: int):
    """Greedy basis of the uniform (k, ell) count matroid, ids ascending."""
    if not 0 <= ell <= 2 * k - 1 and not (k == 0 and ell == 0):
        raise ValueError(f"(k, ell) = ({k}, {ell}) outside the matroidal pebble range")
    state = PebbleState.fresh((k,) * graph.n, ell)
    basis = []
    for eid, (u, v) in enumerate(graph.edges):
        if state.insert(eid, u, v) is None:
            basis.append(eid)
    return tuple(basis), state


def is_sparse(graph: MultiGraph, func: SetFunc) -> SparseResult:
    """Does every vertex set A satisfy e(A) <= sum_{v in A} f(v) - f(A)?

    Pebble path for pebble-playable functions, per-vertex-deleted pebble
    runs for functions that only override the full-set value, exhaustive
    sweep otherwise (small ground sets only).
    """
    params = pebble_params(func)
    if params is not None:
        caps, ell = params
        state = PebbleState.fresh(caps, ell)
        for eid, (u, v) in enumerate(graph.edges):
            blocked = state.insert(eid, u, v)
            if blocked is not None:
                return SparseResult(False, blocked)
        return SparseResult(True)
    proper = proper_pebble_params(func)
    if proper is not None:
        caps, ell, full_cap = proper
        if graph.m > full_cap:
            return SparseResult(False, graph.full_mask)
        if graph.n <= 2:
            return SparseResult(True)
        for w in range(graph.n):
            sub = graph.subgraph(
                [i for i, (u, v) in enumerate(graph.edges) if w not in (u, v)])
            state = PebbleState.fresh(caps, ell)
            for eid, (u, v) in enumerate(sub.edges):
                blocked = state.insert(eid, u, v)
                if blocked is not None:
                    return SparseResult(False, blocked)
        return SparseResult(True)
    if graph.n > 16:
        raise ValueError(
            "sparsity for this set function needs the exhaustive path, capped at 16 vertices")
    ok, witness = oracle.bf_sparse(graph, func)
    return SparseResult(ok, witness)


def rank_and_rigid(graph: MultiGraph, func: SetFunc) -> RigidResult:
    """Maximum sparse subgraph size, rigidity verdict, and a tight witness."""
    target = max(func.rigid_target, 0)
    params = pebble_params(func)
    if params is not None:
        caps, ell = params
        state = PebbleState.fresh(caps, ell)
        basis = []
        for eid, (u, v) in enumerate(graph.edges):
            if state.insert(eid, u, v) is None:
                basis.append(eid)
        rank = len(basis)
        return RigidResult(rank=rank, target=target,
                           rigid=rank == target, basis=tuple(basis))
    rank, basis = oracle.bf_rank(graph, func)
    return RigidResult(rank=rank, target=target,
                       rigid=rank == target, basis=tuple(basis))


def is_rigid(graph: MultiGraph, func: SetFunc) -> bool:
    return rank_and_rigid(graph, func).rigid


# ----------------------------------------------------------------------
# rigid components, minimal rigid sets, exchange


def _require_rigid_set_structure(func: SetFunc) -> None:
    """Uniqueness of minimal rigid sets (and disjointness of maximal ones)
    needs 2-intersecting supermodularity plus weak subadditivity. The
    pebble-playable families carry both by construction; explicit tables
    are checked."""
    from .setfuncs import property_report
    rep = property_report(func)
    if not (rep.two_intersecting_supermodular and rep.weakly_subadditive):
        raise ValueError(
            "rigid-set subroutines need a 2-intersecting supermodular, "
            f"weakly subadditive function; counterexamples {rep.counterexamples}")


def rigid_components(graph: MultiGraph, func: SetFunc) -> list[int]:
    """Maximal vertex sets inducing rigid subgraphs of a sparse graph.

    Vertices covered by no rigid set of size >= 2 appear as singleton
    components, so the result always covers the vertex set. Components of
    size >= 2 pairwise share at most one vertex and are edge-disjoint.
    """
    check = is_sparse(graph, func)
    if not check.ok:
        raise ValueError("rigid_components requires a sparse input graph")
    params = pebble_params(func)
    if params is None:
        _require_rigid_set_structure(func)
        return _rigid_components_oracle(graph, func)
    matroid = CountMatroid(graph, func)
    matroid.rebuild(range(graph.m))
    masks = set()
    for x in range(graph.n):
        for y in range(x + 1, graph.n):
            res = matroid.state.max_tight_pair(x, y)
            if res is not None:
                masks.add(res)
    maximal = [s for s in sorted(masks)
               if not any(s != t and s & ~t == 0 for t in masks)]
    for mask in maximal:
        if graph.induced(mask) != func.cap(mask):
            raise RuntimeError("maximal rigid component is not tight")
    covered = 0
    for mask in maximal:
        covered |= mask
    comps = list(maximal)
    for v in range(graph.n):
        if not (covered >> v) & 1:
            comps.append(1 << v)
    return sorted(comps)


def _rigid_components_oracle(graph: MultiGraph, func: SetFunc) -> list[int]:
    if graph.n > 16:
        raise ValueError("oracle rigid components capped at 16 vertices")
    full = graph.full_mask
    etab = graph.induced_table
    rigid_masks = [m for m in range(1, full + 1)
                   if bin(m).count("1") >= 2 and etab[m] == func.cap(m)]
    maximal = [m for m in rigid_masks
               if not any(m != o and m & ~o == 0 for o in rigid_masks)]
    covered = 0
    for m in maximal:
        covered |= m
    for v in range(graph.n):
        if not (covered >> v) & 1:
            maximal.append(1 << v)
    return sorted(maximal)


def minimal_rigid_vertices(graph: MultiGraph, func: SetFunc,
                           x: int, y: int) -> int | None:
    """Minimal rigid vertex set containing x and y, or None for a free pair.

    A free pair means the graph stays sparse after adding an edge xy.
    """
    if x == y:
        raise ValueError("need two distinct vertices")
    check = is_sparse(graph, func)
    if not check.ok:
        raise ValueError("minimal_rigid_vertices requires a sparse graph")
    params = pebble_params(func)
    if params is None:
        _require_rigid_set_structure(func)
        return _minimal_rigid_oracle(graph, func, x, y)
    matroid = CountMatroid(graph, func)
    matroid.rebuild(range(graph.m))
    return matroid.probe_pair(x, y)


def _minimal_rigid_oracle(graph: MultiGraph, func: SetFunc, x: int, y: int):
    if graph.n > 16:
        raise ValueError("oracle minimal rigid set capped at 16 vertices")
    pair = (1 << x) | (1 << y)
    etab = graph.induced_table
    best = None
    for m in range(1, graph.full_mask + 1):
        if m & pair == pair and bin(m).count("1") >= 2 and etab[m] == func.cap(m):
            if best is None or bin(m).count("1") < bin(best).count("1"):
                best = m
    return best


def exchange(graph: MultiGraph, func: SetFunc, x: int, y: int,
             remove_eid: int, *, self_check: bool = True) -> MultiGraph:
    """Replace one edge of the minimal rigid set spanning x, y by a new xy edge.

    The result is re-verified sparse. For subadditive functions the minimal
    rigid set is additionally checked to have no internal cut avoiding
    {x, y} (every proper subset containing both ends has an outgoing edge).
    """
    q = minimal_rigid_vertices(graph, func, x, y)
    if q is None:
        raise ValueError("free pair: adding xy keeps the graph sparse, nothing to exchange")
    u, v = graph.edges[remove_eid]
    if not ((q >> u) & 1 and (q >> v) & 1):
        raise ValueError("edge to remove must lie inside the minimal rigid set")
    if self_check and bin(q).count("1") <= 12:
        _check_internal_connectivity(graph, q, x, y)
    edges = [e for i, e in enumerate(graph.edges) if i != remove_eid]
    edges.append((x, y))
    result = MultiGraph(graph.n, edges)
    verdict = is_sparse(result, func)
    if not verdict.ok:
        raise RuntimeError("exchange produced a non-sparse graph; engine bug")
    return result


def _check_internal_connectivity(graph: MultiGraph, q: int, x: int, y: int) -> None:
    """Every proper subset of the rigid set containing x and y has an edge out."""
    pair = (1 << x) | (1 << y)
    inner = [i for i, (u, v) in enumerate(graph.edges)
             if (q >> u) & 1 and (q >> v) & 1]
    sub_edges = [graph.edges[i] for i in inner]
    verts = vertices_of(q)
    rest = q & ~pair
    sub = rest
    while True:
        a = pair | sub
        if a != q:
            deg = sum(1 for (u, v) in sub_edges
                      if ((a >> u) & 1) != ((a >> v) & 1))
            if deg < 1:
                raise RuntimeError(
                    f"rigid set {verts} has an isolated core around ({x},{y})")
        if sub == 0:
            break
        sub = (sub - 1) & rest
