"""Matroid-union packing of spanning sparse subgraphs, structure partitions
for maximal packings, hypothesis checkers, and the degree-bounded packing
pipelines built on them.

The packing search augments one uncovered edge at a time by breadth-first
exploration over single-edge replacements: an edge either enters a part
directly or displaces an edge of the minimal tight set spanning its ends,
and the displaced edge continues the search. Shortest replacement chains
are applied simultaneously and every touched part is rebuilt and
re-verified. A failed search certifies the edge lies in the span of the
union, so one ascending pass over the edges reaches a maximum packing.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import MultiGraph, INFINITY, vertices_of
from .setfuncs import (
    SetFunc, lmn, const, zero, table_func, halved_slack, rho_slack, scaled,
)
from .sparsity import CountMatroid, is_sparse, rank_and_rigid
from . import oracle

PAIR_SWEEP_BUDGET = 14


# ----------------------------------------------------------------------
# packing containers


@dataclass(frozen=True)
class PackPart:
    func: SetFunc
    edges: frozenset[int]
    target: int

    @property
    def full(self) -> bool:
        return len(self.edges) == self.target


@dataclass(frozen=True)
class Packing:
    host: MultiGraph
    parts: tuple[PackPart, ...]
    uncovered: frozenset[int]
    forbidden: frozenset[int]

    def covered(self) -> int:
        return sum(len(p.edges) for p in self.parts)

    def verify(self) -> None:
        """Re-check disjointness, coverage and per-part sparsity."""
        seen: set[int] = set()
        for part in self.parts:
            if part.edges & seen:
                raise RuntimeError("packing parts overlap")
            seen |= part.edges
            sub = self.host.subgraph(part.edges)
            res = is_sparse(sub, part.func)
            if not res.ok:
                raise RuntimeError("packing part is not sparse")
        if seen | self.uncovered != set(range(self.host.m)) or seen & self.uncovered:
            raise RuntimeError("parts and uncovered do not partition the edges")


# ----------------------------------------------------------------------
# matroid union


def matroid_union_pack(host: MultiGraph, funcs, forbidden=(), allowed=None) -> Packing:
    """Maximum packing of edge-disjoint sparse subgraphs avoiding forbidden edges.

    Edges are attempted in ascending id order; a valid (possibly deficient)
    packing is always returned.
    """
    funcs = list(funcs)
    matroids = [CountMatroid(host, f) for f in funcs]
    blocked = set(forbidden)
    usable = [e for e in range(host.m) if e not in blocked
              and (allowed is None or e in allowed)]
    owner: dict[int, int] = {}
    for eid in usable:
        _augment(host, matroids, owner, eid)
    part_ids: list[set[int]] = [set() for _ in funcs]
    for eid, i in owner.items():
        part_ids[i].add(eid)
    parts = tuple(
        PackPart(func=f, edges=frozenset(ids), target=max(f.rigid_target, 0))
        for f, ids in zip(funcs, part_ids))
    uncovered = frozenset(range(host.m)) - set(owner)
    packing = Packing(host=host, parts=parts, uncovered=uncovered,
                      forbidden=frozenset(blocked))
    packing.verify()
    return packing


def _augment(host: MultiGraph, matroids, owner: dict[int, int], eid: int) -> bool:
    """Breadth-first replacement search; applies the chain on success."""
    parent: dict[int, tuple[int, int]] = {}
    visited = {eid}
    queue = deque([eid])
    while queue:
        x = queue.popleft()
        u, v = host.edges[x]
        for i, mat in enumerate(matroids):
            if owner.get(x) == i:
                continue
            res = mat.state.probe_pair(u, v)
            if res is None:
                _apply_chain(matroids, owner, parent, x, i)
                return True
            for y in mat.circuit_edges(res):
                if y not in visited:
                    visited.add(y)
                    parent[y] = (x, i)
                    queue.append(y)
    return False


def _apply_chain(matroids, owner, parent, last: int, free_part: int) -> None:
    chain = [last]
    while parent.get(chain[-1]) is not None:
        chain.append(parent[chain[-1]][0])
    target = free_part
    for edge in chain:
        prev = owner.get(edge)
        owner[edge] = target
        target = prev
        if prev is None:
            break
    touched = {free_part} | {parent[e][1] for e in chain[:-1] if e in parent}
    for i in touched:
        ids = [e for e, o in owner.items() if o == i]
        matroids[i].rebuild(ids)


# ----------------------------------------------------------------------
# structure certificates for two-part packings


@dataclass(frozen=True)
class StructureCertificate:
    partition: tuple[int, ...]
    pc_verified: tuple[bool, ...]        # property 1, per part of the partition
    crossing_uncovered: tuple[int, ...]  # property 2: must be empty
    rigid_cover: dict = field(compare=False, default_factory=dict)  # eid -> mask

    @property
    def ok(self) -> bool:
        return all(self.pc_verified) and not self.crossing_uncovered


def structure_partition(packing: Packing) -> StructureCertificate:
    """Certifying partition for a maximum packing of an l-sparse and an
    ell-sparse spanning subgraph.

    The partition is read off the closure of the uncovered edges under
    single-edge replacements (each uncovered edge releases every edge of
    the minimal tight set spanning its ends, in either part). All three
    certifying properties are re-verified before returning; a verification
    failure is an engine bug and raises.
    """
    if len(packing.parts) not in (1, 2):
        raise ValueError("structure certificates apply to one- or two-part packings")
    host = packing.host
    part_l = packing.parts[0]
    part_ell = packing.parts[1] if len(packing.parts) == 2 else None
    usable_uncovered = packing.uncovered - packing.forbidden

    if not usable_uncovered and all(p.full for p in packing.parts):
        partition = (host.full_mask,)
    else:
        closure = _replacement_closure(host, packing, usable_uncovered)
        partition = _components_of_edges(host, closure)

    pc_flags = []
    for block in partition:
        pc_flags.append(_verify_partition_connected(host, part_l, block))
    crossing = tuple(
        e for e in usable_uncovered
        if not _within_one_block(host.edges[e], partition))
    cover: dict[int, int] = {}
    if part_ell is not None:
        matroid_ell = CountMatroid(host, part_ell.func)
        matroid_ell.rebuild(part_ell.edges)
        for e in sorted(part_l.edges | usable_uncovered):
            u, v = host.edges[e]
            if not _within_one_block(host.edges[e], partition):
                continue
            block = _block_of(partition, u)
            q = matroid_ell.state.probe_pair(u, v)
            if q is None or q & ~block:
                raise RuntimeError(
                    f"structure certificate: edge {e} has no rigid cover inside its block")
            cover[e] = q
    cert = StructureCertificate(
        partition=partition,
        pc_verified=tuple(pc_flags),
        crossing_uncovered=crossing,
        rigid_cover=cover,
    )
    if not cert.ok:
        raise RuntimeError("structure certificate failed verification")
    return cert


def _replacement_closure(host, packing, seeds) -> set[int]:
    matroids = []
    for part in packing.parts:
        m = CountMatroid(host, part.func)
        m.rebuild(part.edges)
        matroids.append(m)
    released: set[int] = set(seeds)
    pending = deque(sorted(released))
    probed: set[tuple[int, int]] = set()
    while pending:
        e = pending.popleft()
        u, v = host.edges[e]
        for i, mat in enumerate(matroids):
            if (e, i) in probed:
                continue
            probed.add((e, i))
            q = mat.state.probe_pair(u, v)
            if q is None:
                continue
            for y in mat.circuit_edges(q):
                if y not in released:
                    released.add(y)
                    pending.append(y)
    return released


def _components_of_edges(host: MultiGraph, edge_ids) -> tuple[int, ...]:
    sub = [host.edges[e] for e in edge_ids]
    parent = list(range(host.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in sub:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    blocks: dict[int, int] = {}
    for v in range(host.n):
        blocks.setdefault(find(v), 0)
        blocks[find(v)] |= 1 << v
    return tuple(sorted(blocks.values()))


def _within_one_block(edge, partition) -> bool:
    u, v = edge
    pair = (1 << u) | (1 << v)
    return any(pair & ~b == 0 for b in partition)


def _block_of(partition, v: int) -> int:
    for b in partition:
        if (b >> v) & 1:
            return b
    raise RuntimeError("partition does not cover the vertex")


def _verify_partition_connected(host, part: PackPart, block: int) -> bool:
    """Property 1: the first part induced on a block is partition-connected.

    The induced subgraph of a sparse graph is sparse, so for the function
    classes the engine packs this is equivalent to tightness of the induced
    edge count; small blocks fall back to the exhaustive partition sweep.
    """
    inside = sum(1 for e in part.edges
                 if _edge_inside(host.edges[e], block))
    cap = part.func.cap(block)
    if inside == cap:
        return True
    if bin(block).count("1") <= oracle.DEFAULT_BUDGET.partition_n:
        sub_ids = [e for e in part.edges if _edge_inside(host.edges[e], block)]
        sub, verts = host.subgraph(sub_ids).induced_subgraph(block)
        restricted = _restrict_func(part.func, verts)
        ok, _ = oracle.bf_partition_connected(sub, restricted)
        return ok
    return False


def _edge_inside(edge, mask: int) -> bool:
    u, v = edge
    return bool((mask >> u) & 1 and (mask >> v) & 1)


def _restrict_func(f: SetFunc, verts: list[int]) -> SetFunc:
    values = {}
    for sub in range(1, 1 << len(verts)):
        mask = 0
        for i, v in enumerate(verts):
            if (sub >> i) & 1:
                mask |= 1 << v
        values[sub] = f.value(mask)
    return table_func(len(verts), values)


# ----------------------------------------------------------------------
# rigid decomposition


@dataclass(frozen=True)
class RigidDecomposition:
    parts: tuple[frozenset[int], ...]
    leftover: frozenset[int]


def decompose_p_rigid(graph: MultiGraph, ell: SetFunc, p: int) -> RigidDecomposition:
    """Split a p-fold rigid graph into p edge-disjoint spanning rigid subgraphs.

    Requires ell(u) + ell(v) = ell({u,v}) + 1 on every edge (every edge is
    rigid on its own ends) and the p-scaled rank to be full; each returned
    part re-verifies rigid.
    """
    if p < 1:
        raise ValueError("need at least one part")
    for u, v in graph.edges:
        pair = (1 << u) | (1 << v)
        if ell.singletons[u] + ell.singletons[v] != ell.value(pair) + 1:
            raise ValueError(
                f"edge ({u},{v}) violates the adjacency requirement "
                "ell(u) + ell(v) = ell(uv) + 1")
    total = scaled(ell, p)
    rr = rank_and_rigid(graph, total)
    if not rr.rigid:
        raise ValueError(
            f"graph is not {p}-fold rigid: rank {rr.rank} < target {rr.target}")
    packing = matroid_union_pack(graph, [ell] * p)
    per_target = max(ell.rigid_target, 0)
    for part in packing.parts:
        if len(part.edges) != per_target:
            raise RuntimeError("union packing of a p-fold rigid graph "
                               "left a part deficient")
    for part in packing.parts:
        sub = graph.subgraph(part.edges)
        res = rank_and_rigid(sub, ell)
        if not res.rigid:
            raise RuntimeError("decomposition part failed the rigidity re-check")
    return RigidDecomposition(
        parts=tuple(p.edges for p in packing.parts),
        leftover=packing.uncovered)


# ----------------------------------------------------------------------
# hypothesis reports


@dataclass(frozen=True)
class HypothesisReport:
    tag: str
    ok: bool
    witness: dict = field(compare=False, default_factory=dict)
    aux: dict = field(compare=False, default_factory=dict)


def _pair_tables(graph: MultiGraph):
    if graph.n > PAIR_SWEEP_BUDGET:
        raise ValueError(
            f"pair sweep budget exceeded (n={graph.n} > {PAIR_SWEEP_BUDGET}); "
            "use oracle sampling instead")
    return graph.induced_table


def _boundary_minus(etab, m, full, a, b):
    # edges with one end in A and the other outside A|B
    return m - etab[a | b] - etab[full ^ a] + etab[b]


def check_weakly_connected(graph: MultiGraph, ell_singletons, l_func: SetFunc,
                           tag: str = "weakly-connected") -> HypothesisReport:
    """d_{G-B}(A) >= l(A|B) - sum of ell over B for disjoint A != 0, A|B proper."""
    etab = _pair_tables(graph)
    stab = graph.weight_table(ell_singletons)
    full, m = graph.full_mask, graph.m
    for union in range(1, full):
        lval = l_func.value(union)
        b = union
        while True:
            a = union ^ b
            if a:
                need = lval - stab[b]
                if need > 0 and _boundary_minus(etab, m, full, a, b) < need:
                    return HypothesisReport(tag, False, witness={
                        "A": vertices_of(a), "B": vertices_of(b),
                        "lhs": _boundary_minus(etab, m, full, a, b),
                        "rhs": need})
            if b == 0:
                break
            b = (b - 1) & union
    return HypothesisReport(tag, True)


def check_rigid_necessary(graph: MultiGraph, ell: SetFunc) -> HypothesisReport:
    """Necessary cut condition for rigidity, over every disjoint pair."""
    etab = _pair_tables(graph)
    stab = graph.weight_table(ell.singletons)
    full, m = graph.full_mask, graph.m
    ell_g = ell.value(full)
    for union in range(0, full + 1):
        val = ell.value(union)
        b = union
        while True:
            a = union ^ b
            lhs = _boundary_minus(etab, m, full, a, b)
            rhs = val - stab[b] + ell.value(full ^ a) - ell_g
            if lhs < rhs:
                return HypothesisReport("rigid-necessary", False, witness={
                    "A": vertices_of(a), "B": vertices_of(b),
                    "lhs": lhs, "rhs": rhs})
            if b == 0:
                break
            b = (b - 1) & union
    return HypothesisReport("rigid-necessary", True)


def check_rigid_cut_consequences(graph: MultiGraph, k: int) -> HypothesisReport:
    """Cut conditions every k-rigid graph of order >= 3 must satisfy:
    k-edge-connected, essentially (2k-1)-edge-connected, and
    (k-1)-edge-connected after deleting any one vertex."""
    if graph.n < 3:
        raise ValueError("cut consequences apply to graphs of order at least 3")
    aux = {}
    lam = graph.edge_connectivity()
    aux["edge_connectivity"] = lam
    if lam < k:
        return HypothesisReport("rigid-cuts", False,
                                witness={"check": "edge", "value": lam}, aux=aux)
    ess = graph.essential_edge_connectivity()
    aux["essential"] = ess
    if ess < 2 * k - 1:
        return HypothesisReport("rigid-cuts", False,
                                witness={"check": "essential", "value": ess}, aux=aux)
    for v in range(graph.n):
        sub = graph.delete_vertex(v)
        lam_v = sub.edge_connectivity()
        if lam_v < k - 1:
            return HypothesisReport("rigid-cuts", False, witness={
                "check": "vertex-deleted", "vertex": v, "value": lam_v}, aux=aux)
    return HypothesisReport("rigid-cuts", True, aux=aux)


def check_rigid_sufficient(graph: MultiGraph, ell: SetFunc,
                           forbidden=()) -> HypothesisReport:
    """Sufficient cut condition for a spanning rigid subgraph avoiding a
    forbidden edge set of size at most ell(V)."""
    etab = _pair_tables(graph)
    stab = graph.weight_table(ell.singletons)
    full, m = graph.full_mask, graph.m
    if len(set(forbidden)) > ell.value(full):
        return HypothesisReport("rigid-sufficient", False, witness={
            "check": "forbidden-size", "size": len(set(forbidden)),
            "limit": ell.value(full)})
    for v in range(graph.n):
        if graph.degree(v) < 2 * ell.singletons[v]:
            return HypothesisReport("rigid-sufficient", False, witness={
                "check": "degree", "vertex": v, "degree": graph.degree(v)})
    for union in range(1, full):
        if etab[union] <= stab[union] - ell.value(union):
            continue
        val = ell.value(union)
        b = union
        while True:
            a = union ^ b
            need = 2 * val - stab[b]
            if _boundary_minus(etab, m, full, a, b) < need:
                return HypothesisReport("rigid-sufficient", False, witness={
                    "A": vertices_of(a), "B": vertices_of(b),
                    "lhs": _boundary_minus(etab, m, full, a, b), "rhs": need})
            if b == 0:
                break
            b = (b - 1) & union
    return HypothesisReport("rigid-sufficient", True)


def check_pack_basic(graph: MultiGraph, l: SetFunc, ell: SetFunc,
                     tag: str = "pack-basic") -> HypothesisReport:
    """Cut condition for packing a partition-connected and a rigid part."""
    etab = _pair_tables(graph)
    stab = graph.weight_table(ell.singletons)
    full, m = graph.full_mask, graph.m
    for v in range(graph.n):
        if graph.degree(v) < 2 * ell.singletons[v] + 2 * l.singletons[v]:
            return HypothesisReport(tag, False, witness={
                "check": "degree", "vertex": v, "degree": graph.degree(v)})
    for union in range(1, full):
        if etab[union] <= stab[union] - ell.value(union):
            continue
        ell_u = ell.value(union)
        l_u = l.value(union)
        b = union
        while True:
            a = union ^ b
            need = 2 * ell_u - stab[b] + (2 * l_u if a else 0)
            if _boundary_minus(etab, m, full, a, b) < need:
                return HypothesisReport(tag, False, witness={
                    "A": vertices_of(a), "B": vertices_of(b),
                    "lhs": _boundary_minus(etab, m, full, a, b), "rhs": need})
            if b == 0:
                break
            b = (b - 1) & union
    return HypothesisReport(tag, True)


def violation_threshold(graph: MultiGraph, ell: SetFunc):
    """Least size of a vertex set inducing more edges than its capacity."""
    etab = _pair_tables(graph)
    best = None
    for mask in range(1, graph.full_mask + 1):
        if etab[mask] > ell.cap(mask):
            size = bin(mask).count("1")
            if best is None or size < best:
                best = size
    return best


def check_pack_refined(graph: MultiGraph, l: SetFunc, ell: SetFunc,
                       phi, forbidden_count: int = 0) -> HypothesisReport:
    """Refined cut condition with the phi/lambda discount and the slack for
    near-full vertex sets. phi is a constant in [0, 1] or a callable on
    masks returning Fractions."""
    etab = _pair_tables(graph)
    stab = graph.weight_table(ell.singletons)
    full, m, n = graph.full_mask, graph.m, graph.n
    phi_fn = phi if callable(phi) else (lambda _mask, _p=Fraction(phi): _p)
    lam = violation_threshold(graph, ell)
    eps_base = 2 * l.value(full) + 2 * ell.value(full) - 2 * forbidden_count
    aux = {"lambda": lam, "epsilon_near_full": eps_base}
    for v in range(graph.n):
        if graph.degree(v) < 2 * ell.singletons[v] + 2 * l.singletons[v]:
            return HypothesisReport("pack-refined", False, witness={
                "check": "degree", "vertex": v}, aux=aux)
    for union in range(1, full):
        if etab[union] <= stab[union] - ell.value(union):
            continue
        ell_u = ell.value(union)
        l_u = l.value(union)
        eps = eps_base if bin(union).count("1") == n - 1 else 0
        phi_u = Fraction(phi_fn(union))
        if not 0 <= phi_u <= 1:
            raise ValueError("phi must take values in [0, 1]")
        b = union
        while True:
            a = union ^ b
            base = 2 * ell_u - stab[b]
            if b == 0:
                extra = Fraction(2 * l_u)
            elif a == 0:
                extra = Fraction(l_u) * phi_u / lam
            else:
                extra = Fraction(l_u) * (2 - phi_u)
            lhs = Fraction(_boundary_minus(etab, m, full, a, b) + eps)
            if lhs < base + extra:
                return HypothesisReport("pack-refined", False, witness={
                    "A": vertices_of(a), "B": vertices_of(b),
                    "lhs": str(lhs), "rhs": str(base + extra)}, aux=aux)
            if b == 0:
                break
            b = (b - 1) & union
    return HypothesisReport("pack-refined", True, aux=aux)


def check_pack_degree(graph: MultiGraph, l: SetFunc, ell: SetFunc, k,
                      rho) -> HypothesisReport:
    """Cut and density conditions for the k/rho degree-restricted packing."""
    kf = Fraction(k)
    if kf <= 2:
        raise ValueError("the degree-restricted condition needs k > 2")
    etab = _pair_tables(graph)
    stab = graph.weight_table(ell.singletons)
    rtab = graph.weight_table([Fraction(r) for r in rho])
    full, m = graph.full_mask, graph.m
    bound_const = kf / (kf - 2) * (l.value(full) + ell.value(full))
    for mask in range(1, full + 1):
        if Fraction(etab[mask]) > rtab[mask] + bound_const:
            return HypothesisReport("pack-degree", False, witness={
                "check": "density", "S": vertices_of(mask),
                "edges": etab[mask]})
    for v in range(graph.n):
        if Fraction(graph.degree(v)) < kf * (ell.singletons[v] + l.singletons[v]):
            return HypothesisReport("pack-degree", False, witness={
                "check": "degree", "vertex": v})
    for union in range(1, full):
        if etab[union] <= stab[union] - ell.value(union):
            continue
        ell_u = ell.value(union)
        l_u = l.value(union)
        b = union
        while True:
            a = union ^ b
            need = kf * ell_u - kf * Fraction(stab[b], 2) + (kf * l_u if a else 0)
            if Fraction(_boundary_minus(etab, m, full, a, b)) < need:
                return HypothesisReport("pack-degree", False, witness={
                    "A": vertices_of(a), "B": vertices_of(b),
                    "lhs": _boundary_minus(etab, m, full, a, b),
                    "rhs": str(need)})
            if b == 0:
                break
            b = (b - 1) & union
    return HypothesisReport("pack-degree", True)


# ----------------------------------------------------------------------
# packing pipelines


@dataclass(frozen=True)
class PackOutcome:
    ok: bool
    packing: Packing
    hypothesis: HypothesisReport | None = None
    union_edges: frozenset[int] | None = None
    degree_bounds: tuple[int, ...] | None = None
    certificate: StructureCertificate | None = None
    detail: dict = field(compare=False, default_factory=dict)


def extract_rigid(graph: MultiGraph, ell: SetFunc, forbidden=()):
    """Maximum sparse edge set avoiding the forbidden edges, with host ids."""
    blocked = set(forbidden)
    matroid = CountMatroid(graph, ell)
    for eid in range(graph.m):
        if eid not in blocked:
            matroid.insert(eid)
    return frozenset(matroid.edge_ids)


def pack_partition_rigid(graph: MultiGraph, l: SetFunc, ell: SetFunc,
                         forbidden=(), degree_mode: str = "none",
                         force: bool = False, k=None, rho=None,
                         boosted_vertex: int | None = None) -> PackOutcome:
    """Pack a spanning partition-connected part and a spanning rigid part.

    degree_mode:
      * "none": two parts, no degree control;
      * "halved": a third degree-eating part caps the union at
        ceil(d(v)/2) + l(v) + ell(v) per vertex;
      * "rho": the k/rho variant, capping at
        ceil((d(v) - 2 rho(v))/k) + rho(v) + l(v) + ell(v).

    Hypothesis failures reject unless forced; constructions are always
    post-verified. A deficient packing carries a structure certificate.
    """
    if degree_mode not in ("none", "halved", "rho"):
        raise ValueError(f"unknown degree mode {degree_mode!r}")
    hyp = None
    if degree_mode == "rho":
        if k is None or rho is None:
            raise ValueError("rho mode needs k and rho")
        if not force:
            hyp = check_pack_degree(graph, l, ell, k, rho)
    else:
        if not force:
            hyp = check_pack_basic(graph, l, ell)
    if hyp is not None and hyp.ok:
        # the guarantee only covers exclusion sets up to l(V) + ell(V)
        limit = l.value(graph.full_mask) + ell.value(graph.full_mask)
        if len(set(forbidden)) > limit:
            hyp = HypothesisReport(hyp.tag, False, witness={
                "check": "forbidden-size",
                "size": len(set(forbidden)), "limit": limit})
    if hyp is not None and not hyp.ok:
        return PackOutcome(ok=False,
                           packing=Packing(graph, (), frozenset(range(graph.m)),
                                           frozenset(forbidden)),
                           hypothesis=hyp)

    extra = None
    if boosted_vertex is not None:
        extra = [0] * graph.n
        if graph.degree(boosted_vertex) % 2 == 1:
            extra[boosted_vertex] = 1
    if degree_mode == "none":
        funcs = [l, ell]
        l_index, ell_index = 0, 1
    elif degree_mode == "halved":
        funcs = [halved_slack(graph, l, ell, extra), l, ell]
        l_index, ell_index = 1, 2
    else:
        funcs = [rho_slack(graph, l, ell, k, rho), l, ell]
        l_index, ell_index = 1, 2

    packing = matroid_union_pack(graph, funcs, forbidden)
    full = all(p.full for p in packing.parts)
    detail: dict = {"l_part": sorted(packing.parts[l_index].edges),
                    "ell_part": sorted(packing.parts[ell_index].edges)}
    if not full:
        cert = _deficiency_certificate(graph, l, ell, forbidden, packing,
                                       l_index, ell_index)
        return PackOutcome(ok=False, packing=packing, hypothesis=hyp,
                           certificate=cert, detail=detail)

    union = packing.parts[l_index].edges | packing.parts[ell_index].edges
    bounds = None
    if degree_mode != "none":
        bounds = _quoted_degree_bounds(graph, l, ell, degree_mode, k, rho)
        hsub = graph.subgraph(union)
        for v in range(graph.n):
            if hsub.degree(v) > bounds[v]:
                raise RuntimeError(
                    f"degree bound violated at vertex {v}: "
                    f"{hsub.degree(v)} > {bounds[v]}")
    _verify_pack_parts(graph, packing, l_index, ell_index)
    return PackOutcome(ok=True, packing=packing, hypothesis=hyp,
                       union_edges=frozenset(union), degree_bounds=bounds,
                       detail=detail)


def _quoted_degree_bounds(graph, l, ell, mode, k, rho):
    bounds = []
    for v in range(graph.n):
        d = graph.degree(v)
        if mode == "halved":
            bounds.append(-(-d // 2) + l.singletons[v] + ell.singletons[v])
        else:
            kf = Fraction(k)
            bounds.append(math.ceil(Fraction(d - 2 * Fraction(rho[v])) / kf)
                          + math.ceil(Fraction(rho[v]))
                          + l.singletons[v] + ell.singletons[v])
    return tuple(bounds)


def _verify_pack_parts(graph, packing, l_index, ell_index) -> None:
    lp = packing.parts[l_index]
    ep = packing.parts[ell_index]
    if not lp.full or not ep.full:
        raise RuntimeError("parts expected full")
    sub = graph.subgraph(ep.edges)
    rr = rank_and_rigid(sub, ep.func)
    if not rr.rigid:
        raise RuntimeError("rigid part failed the rigidity re-check")
    # the full l-part is a tight sparse spanning subgraph, hence
    # partition-connected for the packed function classes; cross-check small
    if graph.n <= oracle.DEFAULT_BUDGET.partition_n:
        subl = graph.subgraph(lp.edges)
        ok, _ = oracle.bf_partition_connected(subl, lp.func)
        if not ok:
            raise RuntimeError("partition-connected part failed the oracle re-check")


def _deficiency_certificate(graph, l, ell, forbidden, packing,
                            l_index, ell_index):
    if len(packing.parts) == 2:
        return structure_partition(packing)
    two = matroid_union_pack(graph, [l, ell], forbidden)
    return structure_partition(two)


# ----------------------------------------------------------------------
# presets


@dataclass(frozen=True)
class PresetResult:
    ok: bool
    hypothesis: HypothesisReport | None
    union_edges: frozenset[int]
    degree_bounds: tuple[int, ...]
    trees: tuple[frozenset[int], ...] = ()
    rigid_parts: tuple[frozenset[int], ...] = ()
    reinforced: tuple[frozenset[int], ...] = ()
    checks: dict = field(compare=False, default_factory=dict)


def preset_tree_rigid(graph: MultiGraph, k: int, p: int, m: int,
                      force: bool = False) -> PresetResult:
    """m spanning trees plus p spanning k-rigid subgraphs, with the union
    degree capped at ceil(d(v)/2) + kp + m."""
    if k < 2:
        raise ValueError("rigid presets need k >= 2")
    hyp = check_uniform_weakly_connected(graph, k, 4 * k * p - 2 * p + 2 * m, force)
    if hyp is not None and not hyp.ok:
        return PresetResult(ok=False, hypothesis=hyp, union_edges=frozenset(),
                            degree_bounds=())
    l = lmn(graph.n, m, m)
    ell = lmn(graph.n, p * k, p * (2 * k - 1))
    outcome = pack_partition_rigid(graph, l, ell, degree_mode="halved",
                                   force=True)
    if not outcome.ok:
        return PresetResult(ok=False, hypothesis=hyp, union_edges=frozenset(),
                            degree_bounds=(), checks={"packing": "deficient"})
    trees = _split_all(graph, outcome.detail["l_part"], [lmn(graph.n, 1, 1)] * m)
    rigid = _split_all(graph, outcome.detail["ell_part"],
                       [lmn(graph.n, k, 2 * k - 1)] * p)
    checks = _verify_trees_and_rigid(graph, trees, rigid, k)
    return PresetResult(ok=True, hypothesis=hyp,
                        union_edges=outcome.union_edges,
                        degree_bounds=outcome.degree_bounds,
                        trees=trees, rigid_parts=rigid, checks=checks)


def preset_tree_rigid_ec(graph: MultiGraph, k: int, p: int, m: int,
                         force: bool = False) -> PresetResult:
    """Like preset_tree_rigid but each rigid part is reinforced by a
    partition-connected companion so the pair is (2k-1)-edge-connected;
    union degree capped at ceil(d(v)/2) + 2kp - p + m."""
    if k < 2:
        raise ValueError("rigid presets need k >= 2")
    hyp = check_uniform_weakly_connected(graph, k, 4 * k * p - 2 * p + 2 * m, force)
    if hyp is not None and not hyp.ok:
        return PresetResult(ok=False, hypothesis=hyp, union_edges=frozenset(),
                            degree_bounds=())
    l = lmn(graph.n, k * p - p + m, m)
    ell = lmn(graph.n, p * k, p * (2 * k - 1))
    outcome = pack_partition_rigid(graph, l, ell, degree_mode="halved",
                                   force=True)
    if not outcome.ok:
        return PresetResult(ok=False, hypothesis=hyp, union_edges=frozenset(),
                            degree_bounds=(), checks={"packing": "deficient"})
    companions_funcs = [lmn(graph.n, k - 1, 0)] * p + [lmn(graph.n, 1, 1)] * m
    pieces = _split_all(graph, outcome.detail["l_part"], companions_funcs)
    companions, trees = pieces[:p], pieces[p:]
    rigid = _split_all(graph, outcome.detail["ell_part"],
                       [lmn(graph.n, k, 2 * k - 1)] * p)
    reinforced = tuple(r | c for r, c in zip(rigid, companions))
    checks = _verify_trees_and_rigid(graph, trees, rigid, k)
    for i, h in enumerate(reinforced):
        sub = graph.subgraph(h)
        lam = sub.edge_connectivity()
        checks[f"reinforced_{i}_edge_connectivity"] = lam
        if lam < 2 * k - 1:
            raise RuntimeError(
                f"reinforced part {i} is only {lam}-edge-connected")
        worst = INFINITY
        for v in range(graph.n):
            worst = min(worst, sub.delete_vertex(v).edge_connectivity())
        checks[f"reinforced_{i}_vertex_deleted"] = worst
        if worst < k - 1:
            raise RuntimeError(
                f"reinforced part {i} loses too much connectivity at a vertex")
    return PresetResult(ok=True, hypothesis=hyp,
                        union_edges=outcome.union_edges,
                        degree_bounds=outcome.degree_bounds,
                        trees=trees, rigid_parts=rigid,
                        reinforced=reinforced, checks=checks)


def preset_bipartite_degree(graph: MultiGraph, k, side_mask: int,
                            force: bool = False) -> PresetResult:
    """Spanning 2-fold rigid subgraph with degree at most ceil(d(v)/k) + 2
    on one side of a bipartition of a 6k-connected bipartite graph."""
    if graph.bipartition() is None:
        raise ValueError("graph is not bipartite")
    for u, v in graph.edges:
        if (side_mask >> u) & 1 and (side_mask >> v) & 1:
            raise ValueError("side mask is not an independent set")
    kf = Fraction(k)
    hyp = None
    if not force:
        kappa = graph.vertex_connectivity()
        ok = Fraction(kappa) >= 6 * kf
        hyp = HypothesisReport("bipartite-degree", ok,
                               witness={} if ok else {"vertex_connectivity": kappa},
                               aux={"vertex_connectivity": kappa})
        if not ok:
            return PresetResult(ok=False, hypothesis=hyp,
                                union_edges=frozenset(), degree_bounds=())
    ell = lmn(graph.n, 2, 3)
    rho = [0 if (side_mask >> v) & 1 else graph.degree(v)
           for v in range(graph.n)]
    if kf > 2:
        outcome = pack_partition_rigid(graph, zero(graph.n), ell,
                                       degree_mode="rho", force=True,
                                       k=k, rho=rho)
        if not outcome.ok:
            return PresetResult(ok=False, hypothesis=hyp,
                                union_edges=frozenset(), degree_bounds=(),
                                checks={"packing": "deficient"})
        h_edges = outcome.packing.parts[2].edges
    else:
        # the quoted bound exceeds every degree for k <= 2, so a plain
        # maximum rigid extraction suffices and is still post-verified
        h_edges = extract_rigid(graph, ell)
        rr = rank_and_rigid(graph.subgraph(h_edges), ell)
        if not rr.rigid:
            return PresetResult(ok=False, hypothesis=hyp,
                                union_edges=frozenset(), degree_bounds=(),
                                checks={"packing": "rank-deficient"})
    sub = graph.subgraph(h_edges)
    bounds = tuple(math.ceil(Fraction(graph.degree(v)) / kf) + 2
                   for v in range(graph.n))
    for v in vertices_of(side_mask):
        if sub.degree(v) > bounds[v]:
            raise RuntimeError(f"degree bound violated on the side at {v}")
    checks = {"two_connected": _is_two_connected(sub)}
    if not checks["two_connected"]:
        raise RuntimeError("rigid subgraph failed the 2-connectivity re-check")
    return PresetResult(ok=True, hypothesis=hyp, union_edges=frozenset(h_edges),
                        degree_bounds=bounds, rigid_parts=(frozenset(h_edges),),
                        checks=checks)


def _is_two_connected(graph: MultiGraph) -> bool:
    if graph.n < 3 or not graph.is_connected():
        return False
    return all(graph.delete_vertex(v).is_connected() for v in range(graph.n))


def check_uniform_weakly_connected(graph, k: int, conn: int,
                                   force: bool = False):
    """Simple-graph guard plus the weak-connectivity sweep with constant
    slack k per removed vertex against a constant connectivity demand."""
    if force:
        return None
    simple = all(m <= 1 for row in graph.mult for m in row)
    if not simple:
        return HypothesisReport("weakly-connected", False,
                                witness={"check": "simple"})
    return check_weakly_connected(graph, [k] * graph.n, const(graph.n, conn))


def _split_all(graph: MultiGraph, edge_ids, funcs) -> tuple[frozenset[int], ...]:
    """Decompose an edge set exactly into full parts for the given functions."""
    ids = set(edge_ids)
    packing = matroid_union_pack(graph, funcs, allowed=ids)
    covered = set()
    for part in packing.parts:
        if not part.full:
            raise RuntimeError("split left a part deficient")
        covered |= part.edges
    if covered != ids:
        raise RuntimeError("split did not cover the edge set exactly")
    return tuple(p.edges for p in packing.parts)


def _verify_trees_and_rigid(graph, trees, rigid_parts, k) -> dict:
    checks: dict = {}
    for i, t in enumerate(trees):
        sub = graph.subgraph(t)
        if len(t) != graph.n - 1 or not sub.is_connected():
            raise RuntimeError(f"tree part {i} is not a spanning tree")
    checks["trees"] = len(trees)
    ell = lmn(graph.n, k, 2 * k - 1)
    for i, r in enumerate(rigid_parts):
        sub = graph.subgraph(r)
        rr = rank_and_rigid(sub, ell)
        if not rr.rigid:
            raise RuntimeError(f"rigid part {i} failed the rigidity re-check")
        rep = check_rigid_cut_consequences(sub, k)
        checks[f"rigid_{i}_cuts"] = rep.ok
        if not rep.ok:
            raise RuntimeError(f"rigid part {i} failed cut consequences: {rep.witness}")
    return checks
