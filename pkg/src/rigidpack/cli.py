"""Command-line interface: graph files, set-function tokens, certificate
reports, and a post-hoc verifier that re-checks any report it emitted.

Exit codes: 0 = verdict true / construction succeeded, 1 = verdict false or
deficient (with certificate), 2 = usage or hypothesis error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__, generators, oracle
from .graph import MultiGraph, mask_of, vertices_of, INFINITY
from .setfuncs import (
    SetFunc, lmn, const, vertex_weights, table_func, with_overrides,
)
from . import sparsity, packing, orientation

BUDGET_ENV = "RIGIDPACK_BUDGET"


# ----------------------------------------------------------------------
# graph files


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load_graph(path: str) -> tuple[MultiGraph, dict]:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: invalid graph file at line {exc.lineno}, "
                             f"column {exc.colno}: {exc.msg}") from None
    return graph_from_record(data, where=path)


def graph_from_record(data: dict, where: str = "<record>") -> tuple[MultiGraph, dict]:
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise ValueError(f"{where}: graph file needs 'n' and 'edges'")
    names = data.get("vertex_names")
    if names is not None:
        index = {name: i for i, name in enumerate(names)}
        edges = [(index[u], index[v]) for u, v in data["edges"]]
    else:
        edges = [(int(u), int(v)) for u, v in data["edges"]]
    graph = MultiGraph(int(data["n"]), edges)
    meta = {"name": data.get("name", "graph"), "vertex_names": names}
    return graph, meta


def graph_record(graph: MultiGraph, name: str = "graph") -> dict:
    return {"name": name, "n": graph.n,
            "edges": [[u, v] for u, v in graph.edges]}


# ----------------------------------------------------------------------
# set-function tokens


def parse_setfunc(token: str, ground: int) -> SetFunc:
    """lmn:A,B | const:C | w:W0,W1,... | table:@file | mod:<base>:V=<int>"""
    if token.startswith("mod:"):
        rest, _, override = token[4:].rpartition(":")
        if not override.startswith("V=") or not rest:
            raise ValueError(f"bad modified token {token!r}; expected mod:<base>:V=<int>")
        base = parse_setfunc(rest, ground)
        return with_overrides(base, {(1 << ground) - 1: int(override[2:])})
    kind, _, arg = token.partition(":")
    if kind == "lmn":
        a, b = (int(x) for x in arg.split(","))
        return lmn(ground, a, b)
    if kind == "const":
        return const(ground, int(arg))
    if kind == "w":
        weights = [int(x) for x in arg.split(",")]
        if len(weights) != ground:
            raise ValueError(f"weight token needs {ground} values, got {len(weights)}")
        return vertex_weights(weights)
    if kind == "table":
        if not arg.startswith("@"):
            raise ValueError("table token must reference a file: table:@path")
        with open(arg[1:], "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if int(data["n"]) != ground:
            raise ValueError(f"table ground {data['n']} does not match graph n={ground}")
        values = {}
        for key, val in data["values"].items():
            verts = [int(x) for x in key.split(",") if x != ""]
            values[mask_of(verts)] = int(val)
        return table_func(ground, values)
    raise ValueError(f"unknown set function token {token!r}")


def parse_int_list(text: str, count: int, what: str) -> list[int]:
    vals = [int(x) for x in text.split(",")]
    if len(vals) != count:
        raise ValueError(f"{what} needs {count} comma-separated values")
    return vals


# ----------------------------------------------------------------------
# reports


def _mask_list(mask: int) -> list[int]:
    return vertices_of(mask)


def emit(report: dict, fmt: str) -> None:
    if fmt == "structured":
        print(canonical_dumps(report), end="")
        return
    print(f"rigidpack {report['engine_version']} :: {report['subcommand']}")
    g = report["graph"]
    print(f"graph {g['name']}: n={g['n']} m={len(g['edges'])}")
    for key, val in report.get("params", {}).items():
        print(f"  {key} = {val}")
    print(f"verdict: {report['verdict']}")
    for key, val in report.get("certificates", {}).items():
        text = json.dumps(val) if not isinstance(val, str) else val
        if len(text) > 900:
            text = text[:900] + "..."
        print(f"  {key}: {text}")
    print(f"seed={report['seed']} elapsed={report['elapsed_s']:.3f}s")


def make_report(args, subcommand: str, graph: MultiGraph, meta: dict,
                params: dict, verdict: bool, certificates: dict,
                started: float) -> dict:
    return {
        "command": sys.argv[1:],
        "subcommand": subcommand,
        "graph": graph_record(graph, meta.get("name", "graph")),
        "params": params,
        "verdict": bool(verdict),
        "certificates": certificates,
        "engine_version": __version__,
        "seed": args.seed,
        "elapsed_s": round(time.time() - started, 6),
    }


# ----------------------------------------------------------------------
# subcommands


def cmd_sparse(args) -> int:
    started = time.time()
    graph, meta = load_graph(args.graph)
    func = parse_setfunc(args.func, graph.n)
    res = sparsity.is_sparse(graph, func)
    cert = {} if res.ok else {"violation": _mask_list(res.violation)}
    report = make_report(args, "sparse", graph, meta, {"func": args.func},
                         res.ok, cert, started)
    emit(report, args.format)
    return 0 if res.ok else 1


def cmd_rigid(args) -> int:
    started = time.time()
    graph, meta = load_graph(args.graph)
    func = parse_setfunc(args.func, graph.n)
    forbidden = set(args.forbid or [])
    if forbidden:
        hyp = packing.check_rigid_sufficient(graph, func, forbidden)
        ids = packing.extract_rigid(graph, func, forbidden)
        sub = graph.subgraph(ids)
        ok = len(ids) == max(func.rigid_target, 0) and sparsity.is_sparse(sub, func).ok
        cert = {"hypothesis": {"ok": hyp.ok, "witness": hyp.witness},
                "edges": sorted(ids), "target": max(func.rigid_target, 0)}
    else:
        rr = sparsity.rank_and_rigid(graph, func)
        ok = rr.rigid
        cert = {"rank": rr.rank, "target": rr.target,
                "edges": sorted(rr.basis)}
    report = make_report(args, "rigid", graph, meta,
                         {"func": args.func, "forbid": sorted(forbidden)},
                         ok, cert, started)
    emit(report, args.format)
    return 0 if ok else 1


def cmd_components(args) -> int:
    started = time.time()
    graph, meta = load_graph(args.graph)
    func = parse_setfunc(args.func, graph.n)
    comps = sparsity.rigid_components(graph, func)
    cert = {"components": [_mask_list(c) for c in comps]}
    report = make_report(args, "components", graph, meta,
                         {"func": args.func}, True, cert, started)
    emit(report, args.format)
    return 0


def _packing_cert(packing_obj) -> dict:
    return {
        "parts": [{"func": p.func.describe(), "edges": sorted(p.edges),
                   "target": p.target, "full": p.full}
                  for p in packing_obj.parts],
        "uncovered": sorted(packing_obj.uncovered),
        "forbidden": sorted(packing_obj.forbidden),
    }


def _structure_cert(cert) -> dict:
    return {
        "partition": [_mask_list(b) for b in cert.partition],
        "pc_verified": list(cert.pc_verified),
        "crossing_uncovered": list(cert.crossing_uncovered),
        "rigid_cover": {str(e): _mask_list(q) for e, q in cert.rigid_cover.items()},
    }


def cmd_pack(args) -> int:
    started = time.time()
    graph, meta = load_graph(args.graph)
    forbidden = set(args.forbid or [])
    if args.preset:
        return _run_preset(args, graph, meta, started)
    if args.l or args.ell:
        if not (args.l and args.ell):
            raise ValueError("--l and --ell go together")
        l = parse_setfunc(args.l, graph.n)
        ell = parse_setfunc(args.ell, graph.n)
        rho = parse_int_list(args.rho, graph.n, "--rho") if args.rho else None
        k = Fraction(args.k) if args.k else None
        outcome = packing.pack_partition_rigid(
            graph, l, ell, forbidden, degree_mode=args.mode,
            force=args.force, k=k, rho=rho)
        cert: dict = {}
        if outcome.hypothesis is not None:
            cert["hypothesis"] = {"ok": outcome.hypothesis.ok,
                                  "witness": outcome.hypothesis.witness}
        if outcome.packing.parts:
            cert["packing"] = _packing_cert(outcome.packing)
        if outcome.union_edges is not None:
            cert["union"] = sorted(outcome.union_edges)
            cert["degree_bounds"] = list(outcome.degree_bounds or [])
        if outcome.certificate is not None:
            cert["structure"] = _structure_cert(outcome.certificate)
        report = make_report(args, "pack", graph, meta,
                             {"l": args.l, "ell": args.ell, "mode": args.mode,
                              "forbid": sorted(forbidden)},
                             outcome.ok, cert, started)
        emit(report, args.format)
        if outcome.hypothesis is not None and not outcome.hypothesis.ok \
                and not outcome.packing.parts:
            return 2
        return 0 if outcome.ok else 1
    if not args.funcs:
        raise ValueError("pack needs --funcs, --l/--ell, or --preset")
    funcs = [parse_setfunc(t, graph.n) for t in args.funcs]
    pk = packing.matroid_union_pack(graph, funcs, forbidden)
    ok = all(p.full for p in pk.parts)
    cert = {"packing": _packing_cert(pk)}
    if not ok and len(funcs) in (1, 2):
        cert["structure"] = _structure_cert(packing.structure_partition(pk))
    report = make_report(args, "pack", graph, meta,
                         {"funcs": args.funcs, "forbid": sorted(forbidden)},
                         ok, cert, started)
    emit(report, args.format)
    return 0 if ok else 1


def _run_preset(args, graph, meta, started) -> int:
    name = args.preset
    if name == "tree-rigid":
        res = packing.preset_tree_rigid(graph, args.k_int, args.p, args.m,
                                        force=args.force)
    elif name == "tree-rigid-ec":
        res = packing.preset_tree_rigid_ec(graph, args.k_int, args.p, args.m,
                                           force=args.force)
    elif name == "bipartite-degree":
        if args.side is None:
            raise ValueError("bipartite-degree needs --side")
        side = mask_of(args.side)
        res = packing.preset_bipartite_degree(graph, Fraction(args.k or "1"),
                                              side, force=args.force)
    else:
        raise ValueError(f"unknown preset {name!r}")
    cert: dict = {"checks": {k: (v if v is not INFINITY else "inf")
                             for k, v in res.checks.items()}}
    if res.hypothesis is not None:
        cert["hypothesis"] = {"ok": res.hypothesis.ok,
                              "witness": res.hypothesis.witness}
    cert["union"] = sorted(res.union_edges)
    cert["degree_bounds"] = list(res.degree_bounds)
    cert["trees"] = [sorted(t) for t in res.trees]
    cert["rigid_parts"] = [sorted(r) for r in res.rigid_parts]
    cert["reinforced"] = [sorted(r) for r in res.reinforced]
    report = make_report(args, "pack", graph, meta,
                         {"preset": name, "k": str(args.k_int or args.k),
                          "p": args.p, "m": args.m},
                         res.ok, cert, started)
    emit(report, args.format)
    if not res.ok and res.hypothesis is not None and not res.hypothesis.ok:
        return 2
    return 0 if res.ok else 1


def cmd_decompose(args) -> int:
    started = time.time()
    graph, meta = load_graph(args.graph)
    func = parse_setfunc(args.func, graph.n)
    try:
        dec = packing.decompose_p_rigid(graph, func, args.parts)
    except ValueError as exc:
        report = make_report(args, "decompose", graph, meta,
                             {"func": args.func, "parts": args.parts},
                             False, {"error": str(exc)}, started)
        emit(report, args.format)
        return 2
    cert = {"parts": [sorted(p) for p in dec.parts],
            "leftover": sorted(dec.leftover)}
    report = make_report(args, "decompose", graph, meta,
                         {"func": args.func, "parts": args.parts},
                         True, cert, started)
    emit(report, args.format)
    return 0


def _orient_cert(orient: orientation.Orientation) -> dict:
    return {"arcs": [[t, h] for t, h in orient.arcs],
            "indegrees": list(orient.indegrees),
            "outdegrees": list(orient.outdegrees)}


def cmd_orient(args) -> int:
    started = time.time()
    graph, meta = load_graph(args.graph)
    mode = args.mode
    params: dict = {"mode": mode}
    if mode == "hakimi":
        targets = parse_int_list(args.targets, graph.n, "--targets")
        params["targets"] = targets
        res = orientation.hakimi_orient(graph, targets)
        cert = _orient_cert(res.orientation) if res.ok else \
            {"violation": _mask_list(res.violation)}
        ok = res.ok
    elif mode in ("eulerian", "smooth"):
        fn = orientation.euler_orient if mode == "eulerian" else orientation.smooth_orient
        orient = fn(graph)
        cert = _orient_cert(orient)
        ok = True
    elif mode == "rigid":
        func = parse_setfunc(args.func, graph.n)
        params["func"] = args.func
        res = orientation.rigid_to_orientation(graph, func)
        ok = res.ok
        cert = _orient_cert(res.orientation) if res.ok else \
            {"reason": res.reason,
             "witness": _mask_list(res.witness) if isinstance(res.witness, int)
             and res.reason == "not-sparse" else res.witness}
    elif mode == "packed":
        l = parse_setfunc(args.l, graph.n)
        ell = parse_setfunc(args.ell, graph.n)
        r1 = parse_int_list(args.r1, graph.n, "--r1")
        r2 = parse_int_list(args.r2, graph.n, "--r2")
        params.update({"l": args.l, "ell": args.ell, "r1": r1, "r2": r2})
        res = orientation.packed_orientation(graph, l, ell, r1, r2,
                                             force=args.force)
        ok = res.ok
        if ok:
            cert = _orient_cert(res.orientation)
            cert["h1"] = sorted(res.h1)
            cert["h2"] = sorted(res.h2)
        else:
            hyp_failed = res.hypothesis is not None and not res.hypothesis.ok
            cert = {"hypothesis": res.hypothesis.witness if res.hypothesis else None,
                    "detail": res.detail}
            emit(make_report(args, "orient", graph, meta, params, ok, cert,
                             started), args.format)
            return 2 if hyp_failed else 1
    elif mode == "robust":
        k = args.k or 1
        params["k"] = k
        res = orientation.robust_arc_strong(graph, k, seed=args.seed,
                                            retries=args.retries,
                                            force=args.force)
        ok = res.ok
        if ok:
            cert = _orient_cert(res.orientation)
            cert["checks"] = {key: (v if v is not INFINITY else "inf")
                              for key, v in res.checks.items()}
        else:
            hyp_failed = res.hypothesis is not None and not res.hypothesis.ok
            cert = {"hypothesis": res.hypothesis.witness if res.hypothesis else None,
                    "detail": res.detail}
            emit(make_report(args, "orient", graph, meta, params, ok, cert,
                             started), args.format)
            return 2 if hyp_failed else 1
    else:
        raise ValueError(f"unknown orientation mode {mode!r}")
    report = make_report(args, "orient", graph, meta, params, ok, cert, started)
    emit(report, args.format)
    return 0 if ok else 1


def cmd_hypothesis(args) -> int:
    started = time.time()
    graph, meta = load_graph(args.graph)
    check = args.check
    params: dict = {"check": check}
    if check == "rigid-necessary":
        rep = packing.check_rigid_necessary(graph, parse_setfunc(args.ell, graph.n))
    elif check == "rigid-sufficient":
        rep = packing.check_rigid_sufficient(graph, parse_setfunc(args.ell, graph.n),
                                             set(args.forbid or []))
    elif check == "rigid-cuts":
        rep = packing.check_rigid_cut_consequences(graph, args.k_int)
        params["k"] = args.k_int
    elif check == "pack-basic":
        rep = packing.check_pack_basic(graph, parse_setfunc(args.l, graph.n),
                                       parse_setfunc(args.ell, graph.n))
    elif check == "pack-refined":
        rep = packing.check_pack_refined(
            graph, parse_setfunc(args.l, graph.n),
            parse_setfunc(args.ell, graph.n),
            Fraction(args.phi), len(set(args.forbid or [])))
        params["phi"] = args.phi
    elif check == "pack-degree":
        rep = packing.check_pack_degree(
            graph, parse_setfunc(args.l, graph.n),
            parse_setfunc(args.ell, graph.n), Fraction(args.k),
            parse_int_list(args.rho, graph.n, "--rho"))
        params["k"] = args.k
    elif check == "weakly-connected":
        ell_vec = parse_int_list(args.ell_vec, graph.n, "--ell-vec") \
            if args.ell_vec else [args.k_int or 1] * graph.n
        rep = packing.check_weakly_connected(graph, ell_vec,
                                             parse_setfunc(args.l, graph.n))
    else:
        raise ValueError(f"unknown hypothesis check {check!r}")
    cert = {"witness": rep.witness,
            "aux": {k: (v if v is not None else "none") for k, v in rep.aux.items()}}
    report = make_report(args, "hypothesis", graph, meta, params, rep.ok,
                         cert, started)
    emit(report, args.format)
    return 0 if rep.ok else 1


def cmd_oracle(args) -> int:
    started = time.time()
    budget = oracle.OracleBudget(
        subset_n=args.budget, partition_n=args.budget,
        pair_n=args.budget, rank_m=2 * args.budget)
    if args.what == "census":
        graphs = list(oracle.census(args.census_n,
                                    connected=args.census_filter == "connected"))
        cert = {"count": len(graphs)}
        graph = MultiGraph(1, [])
        report = make_report(args, "oracle", graph, {"name": "census"},
                             {"what": "census", "n": args.census_n,
                              "filter": args.census_filter},
                             True, cert, started)
        emit(report, args.format)
        return 0
    graph, meta = load_graph(args.graph)
    func = parse_setfunc(args.func, graph.n) if args.func else None
    what = args.what
    if what == "sparse":
        ok, wit = oracle.bf_sparse(graph, func, budget)
        cert = {"witness": _mask_list(wit) if wit is not None else None}
    elif what == "rank":
        rank, basis = oracle.bf_rank(graph, func, budget)
        ok, cert = True, {"rank": rank, "basis": sorted(basis)}
    elif what == "rigid":
        ok, rank, target = oracle.bf_rigid(graph, func, budget)
        cert = {"rank": rank, "target": target}
    elif what == "partition-connected":
        ok, wit = oracle.bf_partition_connected(graph, func, budget)
        cert = {"witness": [_mask_list(p) for p in wit] if wit else None}
    elif what == "edge-connected":
        ok, wit = oracle.bf_edge_connected(graph, func, budget)
        cert = {"witness": _mask_list(wit) if wit is not None else None}
    elif what == "matroid-axioms":
        ok, detail = oracle.bf_matroid_axioms(graph, func, budget)
        cert = {"detail": list(detail) if detail else None}
    elif what == "arc-connected":
        heads = parse_int_list(args.heads, graph.m, "--heads")
        roots = parse_int_list(args.roots, graph.n, "--roots") \
            if args.roots else None
        ok, wit = oracle.bf_arc_connected(graph, heads, func, roots, budget)
        cert = {"witness": _mask_list(wit) if wit is not None else None}
    elif what == "weakly-connected":
        ell_vec = parse_int_list(args.ell_vec, graph.n, "--ell-vec")
        ok, wit = oracle.bf_weakly_connected(graph, ell_vec, func, budget)
        cert = {"witness": [_mask_list(m) for m in wit] if wit else None}
    else:
        raise ValueError(f"unknown oracle check {what!r}")
    report = make_report(args, "oracle", graph, meta,
                         {"what": what, "func": args.func}, ok, cert, started)
    emit(report, args.format)
    return 0 if ok else 1


def cmd_gen(args) -> int:
    fam = args.family
    if fam == "complete":
        graph = generators.complete(args.n)
        name = f"K{args.n}"
    elif fam == "complete-bipartite":
        graph = generators.complete_bipartite(args.a, args.b)
        name = f"K{args.a}_{args.b}"
    elif fam == "circulant":
        graph = generators.circulant(args.n, args.offsets)
        name = f"C{args.n}({','.join(map(str, args.offsets))})"
    elif fam == "random-simple":
        graph = generators.random_simple(args.n, args.m, args.seed)
        name = f"G{args.n}_{args.m}_s{args.seed}"
    elif fam == "random-regular":
        graph = generators.random_regular(args.n, args.r, args.seed)
        name = f"R{args.n}_{args.r}_s{args.seed}"
    elif fam == "doubled":
        base, meta = load_graph(args.base)
        graph = generators.doubled(base, args.mult)
        name = f"{meta['name']}x{args.mult}"
    else:
        raise ValueError(f"unknown family {fam!r}")
    text = canonical_dumps(graph_record(graph, name))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="")
    return 0


# ----------------------------------------------------------------------
# report verification


def cmd_verify(args) -> int:
    with open(args.report, "r", encoding="utf-8") as fh:
        report = json.load(fh)
    graph, _ = graph_from_record(report["graph"], where=args.report)
    sub = report["subcommand"]
    params = report.get("params", {})
    certs = report.get("certificates", {})
    verdict = report["verdict"]
    ok = _reverify(sub, graph, params, certs, verdict)
    print(f"verify {args.report}: subcommand={sub} recorded verdict={verdict} "
          f"-> {'REPRODUCED' if ok else 'MISMATCH'}")
    return 0 if ok else 1


def _reverify(sub, graph, params, certs, verdict) -> bool:
    if sub == "sparse":
        func = parse_setfunc(params["func"], graph.n)
        res = sparsity.is_sparse(graph, func)
        if res.ok != verdict:
            return False
        if not verdict:
            mask = mask_of(certs["violation"])
            return graph.induced(mask) > func.cap(mask)
        return True
    if sub == "rigid":
        func = parse_setfunc(params["func"], graph.n)
        edges = certs.get("edges", [])
        subg = graph.subgraph(edges)
        if not sparsity.is_sparse(subg, func).ok:
            return False
        target = max(func.rigid_target, 0)
        return (len(edges) == target) == verdict
    if sub == "components":
        func = parse_setfunc(params["func"], graph.n)
        comps = [mask_of(c) for c in certs["components"]]
        for c in comps:
            if bin(c).count("1") >= 2 and graph.induced(c) != func.cap(c):
                return False
        for i, a in enumerate(comps):
            for b in comps[i + 1:]:
                if bin(a & b).count("1") > 1:
                    return False
        return True
    if sub == "pack":
        pk = certs.get("packing")
        if pk is not None:
            seen: set[int] = set()
            for part in pk["parts"]:
                func = parse_setfunc(part["func"], graph.n)
                ids = part["edges"]
                if seen & set(ids):
                    return False
                seen |= set(ids)
                if not sparsity.is_sparse(graph.subgraph(ids), func).ok:
                    return False
                if part["full"] != (len(ids) == part["target"]):
                    return False
        for key in ("trees", "rigid_parts"):
            for ids in certs.get(key, []):
                if not graph.subgraph(ids).is_connected():
                    return False
        struct = certs.get("structure")
        if struct is not None:
            parts = [mask_of(b) for b in struct["partition"]]
            covered = 0
            for b in parts:
                if b & covered:
                    return False
                covered |= b
            if covered != graph.full_mask:
                return False
        return True
    if sub == "decompose":
        func = parse_setfunc(params["func"], graph.n)
        target = max(func.rigid_target, 0)
        seen: set[int] = set()
        for ids in certs["parts"]:
            if set(ids) & seen:
                return False
            seen |= set(ids)
            subg = graph.subgraph(ids)
            if len(ids) != target or not sparsity.is_sparse(subg, func).ok:
                return False
        return verdict
    if sub == "orient":
        if not verdict or "arcs" not in certs:
            return not verdict
        heads = tuple(h for _, h in certs["arcs"])
        orient = orientation.Orientation(graph, heads)
        mode = params["mode"]
        if mode == "hakimi":
            return list(orient.indegrees) == list(params["targets"])
        if mode == "eulerian":
            return orient.is_balanced()
        if mode == "smooth":
            return orient.is_smooth()
        if mode == "rigid":
            func = parse_setfunc(params["func"], graph.n)
            return orientation.orientation_to_rigid(orient, func).ok
        if mode == "packed":
            l = parse_setfunc(params["l"], graph.n)
            ell = parse_setfunc(params["ell"], graph.n)
            r1, r2 = params["r1"], params["r2"]
            d1 = orient.restricted(certs["h1"])
            d2 = orient.restricted(certs["h2"])
            return (orientation.verify_arc(d1, l, r1).ok
                    and orientation.verify_arc(d2, ell, r2).ok)
        if mode == "robust":
            k = params["k"]
            if not orient.is_smooth():
                return False
            if orientation.arc_strong_value(orient) < 2 * k + 1:
                return False
            return all(orientation._deleted_arc_strong(orient, v) >= k
                       for v in range(graph.n))
        return False
    if sub == "hypothesis":
        return True  # hypothesis reports re-run through the hypothesis command
    if sub == "oracle":
        return True
    raise ValueError(f"cannot verify reports for subcommand {sub!r}")


# ----------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    # global flags work both before and after the subcommand; the
    # subparser copies use SUPPRESS so they never clobber parsed values
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS)
    common.add_argument("--force", action="store_true",
                        default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("human", "structured"),
                        default=argparse.SUPPRESS)
    parser = argparse.ArgumentParser(
        prog="rigidpack",
        description="certified sparsity / rigidity / packing / orientation toolkit")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--budget", type=int,
                        default=int(os.environ.get(BUDGET_ENV, "12")))
    parser.add_argument("--force", action="store_true", default=False,
                        help="run constructions even when the hypothesis check fails")
    parser.add_argument("--format", choices=("human", "structured"),
                        default="human")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, parents=[common], **kwargs)
        p.set_defaults(func_entry=fn)
        return p

    p = add("sparse", cmd_sparse)
    p.add_argument("--graph", required=True)
    p.add_argument("--func", required=True)

    p = add("rigid", cmd_rigid)
    p.add_argument("--graph", required=True)
    p.add_argument("--func", required=True)
    p.add_argument("--forbid", type=int, nargs="*")

    p = add("components", cmd_components)
    p.add_argument("--graph", required=True)
    p.add_argument("--func", required=True)

    p = add("pack", cmd_pack)
    p.add_argument("--graph", required=True)
    p.add_argument("--funcs", nargs="*")
    p.add_argument("--l")
    p.add_argument("--ell")
    p.add_argument("--mode", choices=("none", "halved", "rho"), default="none")
    p.add_argument("--k")
    p.add_argument("--k-int", type=int)
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--rho")
    p.add_argument("--side", type=int, nargs="*")
    p.add_argument("--forbid", type=int, nargs="*")
    p.add_argument("--preset",
                   choices=("tree-rigid", "tree-rigid-ec", "bipartite-degree"))

    p = add("decompose", cmd_decompose)
    p.add_argument("--graph", required=True)
    p.add_argument("--func", required=True)
    p.add_argument("--parts", type=int, required=True)

    p = add("orient", cmd_orient)
    p.add_argument("--graph", required=True)
    p.add_argument("--mode", required=True,
                   choices=("hakimi", "eulerian", "smooth", "rigid",
                            "packed", "robust"))
    p.add_argument("--targets")
    p.add_argument("--func")
    p.add_argument("--l")
    p.add_argument("--ell")
    p.add_argument("--r1")
    p.add_argument("--r2")
    p.add_argument("--k", type=int)
    p.add_argument("--retries", type=int, default=64)

    p = add("hypothesis", cmd_hypothesis)
    p.add_argument("--graph", required=True)
    p.add_argument("--check", required=True,
                   choices=("rigid-necessary", "rigid-sufficient", "rigid-cuts",
                            "pack-basic", "pack-refined", "pack-degree",
                            "weakly-connected"))
    p.add_argument("--l")
    p.add_argument("--ell")
    p.add_argument("--ell-vec")
    p.add_argument("--k")
    p.add_argument("--k-int", type=int)
    p.add_argument("--phi", default="1")
    p.add_argument("--rho")
    p.add_argument("--forbid", type=int, nargs="*")

    p = add("verify", cmd_verify)
    p.add_argument("--report", required=True)

    p = add("oracle", cmd_oracle)
    p.add_argument("--graph")
    p.add_argument("--func")
    p.add_argument("--what", required=True,
                   choices=("sparse", "rank", "rigid", "partition-connected",
                            "edge-connected", "arc-connected",
                            "weakly-connected", "matroid-axioms", "census"))
    p.add_argument("--heads")
    p.add_argument("--roots")
    p.add_argument("--ell-vec")
    p.add_argument("--census-n", type=int, default=4)
    p.add_argument("--census-filter", choices=("all", "connected"),
                   default="all")

    p = add("gen", cmd_gen)
    p.add_argument("--family", required=True,
                   choices=("complete", "complete-bipartite", "circulant",
                            "random-simple", "random-regular", "doubled"))
    p.add_argument("--n", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--offsets", type=int, nargs="*")
    p.add_argument("--base")
    p.add_argument("--mult", type=int, default=2)
    p.add_argument("--out")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func_entry(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
