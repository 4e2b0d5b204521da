"""Command-line interface: generate, recognize, decompose, color, check, render.

JSON results go to standard output, human-readable summaries to standard
error.  Exit codes: 0 success, 1 input or usage error, 2 honest
mathematical infeasibility (not pseudo-outerplanar, no such decomposition),
3 internal diagnostic (configuration catalog miss).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional

from . import decompose as dec_mod
from . import jsonio, render
from .colorings import chromatic_index, po_edge_color, po_linear_arboricity
from .configurations import catalog, find_configuration
from .diagram import Diagram, maximal_completion, recognize, to_hamiltonian_diagram, validate
from .errors import BudgetExceededError, DiagnosticError, NotPseudoOuterplanarError, PographError
from .generators import FAMILIES, generate
from .graph import Graph, verify_decomposition, verify_edge_coloring
from .oracles import (
    SearchBudget,
    brute_chromatic_index,
    brute_linear_arboricity,
    enumerate_po,
    exists_k_forest_partition,
    exists_removal_decomposition,
    outerplanar_by_planarity,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_DIAGNOSTIC = 3


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _read_json(path: Optional[str]) -> Any:
    data = sys.stdin.read() if path in (None, "-") else open(path).read()
    return json.loads(data)


def _write(text: str, path: Optional[str]) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _load_graph(obj: Any) -> Graph:
    if isinstance(obj, dict) and "graph" in obj:
        return jsonio.graph_from_obj(obj["graph"])
    return jsonio.graph_from_obj(obj)


def _load_diagram(obj: Any) -> Diagram:
    """Diagram from diagram json, combined json, or a bare graph (recognized)."""
    if isinstance(obj, dict) and "blocks" in obj and "graph" in obj:
        return jsonio.diagram_from_obj(obj)
    if isinstance(obj, dict) and "diagram" in obj:
        return jsonio.diagram_from_obj(obj["diagram"])
    g = _load_graph(obj)
    d = recognize(g)
    if d is None:
        raise NotPseudoOuterplanarError("not pseudo-outerplanar")
    return d


def _budget(args) -> SearchBudget:
    return SearchBudget(
        max_nodes=args.budget_nodes,
        time_limit=args.budget_seconds,
    )


def _trace_obj(trace) -> list[dict[str, Any]]:
    return [
        {
            "kind": s.kind,
            "detail": s.detail,
            "assign": [[u, v, c] for (u, v), c in sorted(s.assign.items())],
            "recolor": [[u, v, c] for (u, v), c in sorted(s.recolor.items())],
            "drop": [list(e) for e in s.drop],
        }
        for s in trace.steps
    ]


def cmd_generate(args) -> int:
    g, d = generate(args.family, args.n, args.seed, args.density)
    _write(jsonio.dumps({"graph": jsonio.graph_to_obj(g),
                         "diagram": jsonio.diagram_to_obj(d)}), args.out)
    _say(f"{args.family}: {g.n} vertices, {g.m} edges, {d.crossing_count()} crossings")
    return EXIT_OK


def cmd_validate(args) -> int:
    try:
        d = jsonio.diagram_from_obj(_read_json(args.infile))
    except PographError as e:
        # parse succeeded structurally but invariants failed: still a report
        _write(jsonio.dumps({"valid": False, "violations": [str(e)]}), args.out)
        _say("invalid")
        return EXIT_INFEASIBLE
    rep = validate(d)
    _write(jsonio.dumps({"valid": rep.valid, "violations": list(rep.violations)}), args.out)
    _say("valid" if rep.valid else "invalid")
    return EXIT_OK if rep.valid else EXIT_INFEASIBLE


def cmd_recognize(args) -> int:
    g = _load_graph(_read_json(args.infile))
    d = recognize(g, guard=args.guard)
    if d is None:
        _say("not pseudo-outerplanar")
        return EXIT_INFEASIBLE
    _write(jsonio.dumps(jsonio.diagram_to_obj(d)), args.out)
    _say(f"recognized with {d.crossing_count()} crossings")
    return EXIT_OK


def cmd_hamiltonize(args) -> int:
    d = _load_diagram(_read_json(args.infile))
    cycle = [int(x) for x in args.cycle.split(",")]
    out = to_hamiltonian_diagram(d, cycle)
    _write(jsonio.dumps(jsonio.diagram_to_obj(out)), args.out)
    _say("cycle drawn as boundary")
    return EXIT_OK


def cmd_maximalize(args) -> int:
    d = _load_diagram(_read_json(args.infile))
    out, added = maximal_completion(d)
    _write(jsonio.dumps({"diagram": jsonio.diagram_to_obj(out),
                         "added": [list(e) for e in sorted(added)]}), args.out)
    _say(f"added {len(added)} edges")
    return EXIT_OK


def cmd_decompose(args) -> int:
    d = _load_diagram(_read_json(args.infile))
    g = d.graph
    if args.mode == "two-forests-matching":
        dec = dec_mod.two_forests_plus_matching(g, d)
    else:
        kind = "linear-forest" if args.mode == "cover-linear" else "star-forest"
        dec = dec_mod.cover_outerplanar_plus(g, kind, d)
    if not args.no_verify:
        problems = verify_decomposition(g, dec, outerplanar_check=outerplanar_by_planarity)
        if problems:  # pragma: no cover - decompositions are verified internally
            _say("; ".join(problems))
            return EXIT_DIAGNOSTIC
    _write(jsonio.dumps(jsonio.decomposition_to_obj(dec)), args.out)
    _say(f"{len(dec.parts)} verified parts")
    return EXIT_OK


def cmd_color_edges(args) -> int:
    d = _load_diagram(_read_json(args.infile))
    coloring, trace = po_edge_color(d)
    if not args.no_verify:
        rep = verify_edge_coloring(d.graph, coloring)
        if not rep.valid:  # pragma: no cover
            _say("; ".join(rep.violations))
            return EXIT_DIAGNOSTIC
    obj = jsonio.coloring_to_obj(coloring)
    if args.trace:
        obj["trace"] = _trace_obj(trace)
    _write(jsonio.dumps(obj), args.out)
    _say(f"proper coloring with {coloring.k} colors")
    return EXIT_OK


def cmd_linear_arboricity(args) -> int:
    d = _load_diagram(_read_json(args.infile))
    k, coloring, trace = po_linear_arboricity(d)
    if not args.no_verify:
        rep = verify_edge_coloring(d.graph, coloring)
        if not rep.valid:  # pragma: no cover
            _say("; ".join(rep.violations))
            return EXIT_DIAGNOSTIC
    obj = jsonio.coloring_to_obj(coloring)
    if args.trace:
        obj["trace"] = _trace_obj(trace)
    _write(jsonio.dumps(obj), args.out)
    _say(f"{k} linear forests")
    return EXIT_OK


def cmd_find_config(args) -> int:
    d = _load_diagram(_read_json(args.infile))
    allowed = args.allowed.split(",") if args.allowed else None
    known = {p.id for p in catalog()}
    if allowed and not set(allowed) <= known:
        _say(f"unknown configuration ids: {sorted(set(allowed) - known)}")
        return EXIT_INPUT
    match = find_configuration(d, allowed)
    if match is None:
        _say("no configuration matches")
        return EXIT_INFEASIBLE
    obj = {
        "id": match.id,
        "roles": match.roles,
        "edges": [list(e) for e in sorted(match.edges)],
    }
    if match.xy_present is not None:
        obj["xy_present"] = match.xy_present
    if match.xy_addable is not None:
        obj["xy_addable"] = match.xy_addable
    _write(jsonio.dumps(obj), args.out)
    _say(f"matched {match.id}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    obj = _read_json(args.infile)
    g = _load_graph(obj)
    budget = _budget(args)
    if args.op == "chromatic-index":
        value = brute_chromatic_index(g, budget)
        out: dict[str, Any] = {"op": args.op, "value": value}
    elif args.op == "linear-arboricity":
        value = brute_linear_arboricity(g, budget)
        out = {"op": args.op, "value": value}
    elif args.op == "removal":
        got = exists_removal_decomposition(g, args.kind, budget)
        out = {
            "op": args.op,
            "kind": args.kind,
            "exists": got is not None,
            "edges": sorted([list(e) for e in got]) if got is not None else None,
        }
        _write(jsonio.dumps(out), args.out)
        _say("found" if got is not None else "none exists")
        return EXIT_OK if got is not None else EXIT_INFEASIBLE
    elif args.op == "forest-partition":
        got = exists_k_forest_partition(g, args.k, budget)
        out = {
            "op": args.op,
            "k": args.k,
            "exists": got is not None,
            "forests": [sorted([list(e) for e in fs]) for fs in got] if got else None,
        }
        _write(jsonio.dumps(out), args.out)
        _say("found" if got is not None else "none exists")
        return EXIT_OK if got is not None else EXIT_INFEASIBLE
    else:  # pragma: no cover - argparse restricts choices
        return EXIT_INPUT
    _write(jsonio.dumps(out), args.out)
    _say(f"{args.op} = {out['value']}")
    return EXIT_OK


def cmd_render(args) -> int:
    d = _load_diagram(_read_json(args.infile))
    rep = validate(d)
    if not rep.valid:
        _say("; ".join(rep.violations))
        return EXIT_INFEASIBLE
    doc = render.render_svg(d) if args.format == "svg" else render.render_dot(d)
    _write(doc, args.out)
    return EXIT_OK


def _corpus_checks(n_max: int, checks: list[str]) -> list[str]:
    from .graph import class_membership, complete_graph, is_isomorphic_small, vertex_connectivity

    failures: list[str] = []
    items = []
    for n in range(2, n_max + 1):
        items.extend(enumerate_po(n))

    def check(name: str, cond: bool, what: str) -> None:
        status = "ok" if cond else "FAIL"
        if not cond:
            failures.append(f"{name}: {what}")
        _say(f"  [{status}] {name}: {what}")

    if "structure" in checks:
        bad_deg = [g for g, _ in items if g.min_degree > 3]
        k4 = complete_graph(4)
        bad_kappa = []
        for g, _ in items:
            if g.n >= 2 and g.is_connected() and vertex_connectivity(g) >= 3:
                if not is_isomorphic_small(g, k4):
                    bad_kappa.append(g)
        check("structure", not bad_deg and not bad_kappa,
              f"min degree <= 3 and kappa <= 2 unless K4 over {len(items)} graphs")
    if "classes" in checks:
        bad = []
        for n in range(2, min(n_max, 6) + 1):
            from .oracles import enumerate_connected
            for g in enumerate_connected(n):
                fl = class_membership(g)
                if fl.quasi_hamiltonian_po and fl.k4_minor_free and not fl.outerplanar:
                    bad.append(("2.5", g))
                if fl.k23_minor_free and not fl.quasi_hamiltonian_po:
                    bad.append(("2.8", g))
                if g.is_connected() and g.n >= 3 and fl.k23_minor_free:
                    if vertex_connectivity(g) >= 2 and not fl.outerplanar:
                        if not is_isomorphic_small(g, complete_graph(4)):
                            bad.append(("2.7", g))
        check("classes", not bad, f"set relations on the n <= {min(n_max, 6)} corpus")
    if "covers" in checks:
        bad = 0
        for g, d in items:
            for kind in ("linear-forest", "star-forest"):
                dec = dec_mod.cover_outerplanar_plus(g, kind, d)
                if verify_decomposition(g, dec, outerplanar_check=outerplanar_by_planarity):
                    bad += 1
        check("covers", bad == 0, f"outerplanar+forest covers on {len(items)} graphs")
    if "two-forests" in checks:
        bad = 0
        for g, d in items:
            dec = dec_mod.two_forests_plus_matching(g, d)
            if verify_decomposition(g, dec):
                bad += 1
            if exists_k_forest_partition(g, 3) is None:
                bad += 1
        check("two-forests", bad == 0, f"two forests + matching on {len(items)} graphs")
    if "coloring" in checks:
        bad = 0
        for g, d in items:
            if g.max_degree < 4:
                continue
            coloring, _ = po_edge_color(d)
            if not verify_edge_coloring(g, coloring).valid:
                bad += 1
            if brute_chromatic_index(g) != g.max_degree:
                bad += 1
        check("coloring", bad == 0, "chromatic index Delta for Delta >= 4")
    if "arboricity" in checks:
        bad = 0
        for g, d in items:
            if g.max_degree != 3:
                continue
            k, coloring, _ = po_linear_arboricity(d)
            if k != 2 or not verify_edge_coloring(g, coloring).valid:
                bad += 1
        check("arboricity", bad == 0, "two linear forests at Delta 3")
    if "unavoidability" in checks:
        from .configurations import COLORING_IDS
        bad = 0
        for g, d in items:
            if g.max_degree < 4 or g.min_degree < 2:
                continue
            dd = g.max_degree
            if not all(g.degree(u) + g.degree(v) >= dd + 2 for u, v in g.edges):
                continue
            if find_configuration(d, COLORING_IDS) is None:
                bad += 1
        check("unavoidability", bad == 0, "eight coloring patterns cover critical hosts")
    return failures


def cmd_corpus(args) -> int:
    all_checks = ["structure", "classes", "covers", "two-forests", "coloring",
                  "arboricity", "unavoidability"]
    checks = all_checks if args.check == "all" else [args.check]
    failures = _corpus_checks(args.n, checks)
    _write(jsonio.dumps({"n": args.n, "checks": checks, "failures": failures}), args.out)
    return EXIT_OK if not failures else EXIT_INFEASIBLE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pograph", description=__doc__)
    sub = ap.add_subparsers(dest="verb", required=True)

    def common(p, infile=True):
        if infile:
            p.add_argument("--in", dest="infile", default=None, help="input file (default stdin)")
        p.add_argument("--out", default=None, help="output file (default stdout)")

    p = sub.add_parser("generate", help="emit a named graph family with its diagram")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", type=float, default=0.3)
    common(p, infile=False)
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("validate", help="check diagram invariants")
    common(p)
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("recognize", help="find a minimum-crossing diagram")
    p.add_argument("--guard", type=int, default=10)
    common(p)
    p.set_defaults(fn=cmd_recognize)

    p = sub.add_parser("hamiltonize", help="redraw a block with a cycle as boundary")
    p.add_argument("--cycle", required=True, help="comma-separated vertex cycle")
    common(p)
    p.set_defaults(fn=cmd_hamiltonize)

    p = sub.add_parser("maximalize", help="complete to a maximal diagram")
    common(p)
    p.set_defaults(fn=cmd_maximalize)

    p = sub.add_parser("decompose", help="edge decompositions")
    p.add_argument("--mode", required=True,
                   choices=["cover-linear", "cover-star", "two-forests-matching"])
    p.add_argument("--no-verify", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("color-edges", help="proper Delta-edge-coloring (Delta >= 4)")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--no-verify", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_color_edges)

    p = sub.add_parser("linear-arboricity", help="partition into linear forests")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--no-verify", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_linear_arboricity)

    p = sub.add_parser("find-config", help="match an unavoidable configuration")
    p.add_argument("--allowed", default=None, help="comma-separated configuration ids")
    common(p)
    p.set_defaults(fn=cmd_find_config)

    p = sub.add_parser("oracle", help="brute-force ground truth")
    p.add_argument("--op", required=True,
                   choices=["chromatic-index", "linear-arboricity", "removal",
                            "forest-partition"])
    p.add_argument("--kind", default="matching",
                   choices=["matching", "linear-forest", "star-forest"])
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--budget-nodes", type=int, default=20_000_000)
    p.add_argument("--budget-seconds", type=float, default=None)
    common(p)
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("corpus", help="run corpus-wide property checks")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--check", default="all",
                   choices=["all", "structure", "classes", "covers", "two-forests",
                            "coloring", "arboricity", "unavoidability"])
    common(p, infile=False)
    p.set_defaults(fn=cmd_corpus)

    p = sub.add_parser("render", help="draw the diagram")
    p.add_argument("--format", default="svg", choices=["svg", "dot"])
    common(p)
    p.set_defaults(fn=cmd_render)

    return ap


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (json.JSONDecodeError, ValueError) as e:
        _say(f"input error: {e}")
        return EXIT_INPUT
    except NotPseudoOuterplanarError as e:
        _say(str(e) or "not pseudo-outerplanar")
        return EXIT_INFEASIBLE
    except BudgetExceededError as e:
        _say(f"budget exceeded: {e}")
        return EXIT_INFEASIBLE
    except DiagnosticError as e:
        _say(f"diagnostic: {e}")
        return EXIT_DIAGNOSTIC
    except PographError as e:
        _say(str(e))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
