"""Command-line interface: every capability as a subcommand with
machine-readable output (text, JSON, or DOT)."""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bratteli, diagrams, dimensions, groups, idempotents, matrix_units, repgraph, verify
from .groups import parse_group
from .tensor_endo import SolverGuardError

EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _guard_default():
    return int(os.environ.get("SU2CENT_SOLVER_GUARD", "8"))


def _emit(data, as_json, text):
    if as_json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_graph(args):
    spec = parse_group(args.group)
    graph = verify.graph_for(spec, args.truncation or 6)
    if args.dot:
        print(repgraph.to_dot(graph, name=spec.name))
        return 0
    data = repgraph.to_json(graph)
    text = "\n".join(
        "%-4s dim %d  --  %s" % (
            node["label"], node["dim"],
            ", ".join(e["to"] for e in data["edges"] if e["from"] == node["label"]))
        for node in data["nodes"]
    )
    _emit(data, args.json, text)
    return 0


def cmd_bratteli(args):
    spec = parse_group(args.group)
    graph = verify.graph_for(spec, args.k)
    if args.dot:
        print(bratteli.bratteli_to_dot(graph, args.k, name=spec.name))
        return 0
    table = bratteli.multiplicities(graph, args.k)
    classified = bratteli.classify_edges(graph, args.k)
    data = {
        "group": spec.name,
        "levels": [
            {
                "k": k,
                "multiplicities": {str(l): str(m) for l, m in sorted(
                    table.levels[k].items(), key=lambda kv: str(kv[0]))},
                "dim": str(sum(m * m for m in table.levels[k].values())),
            }
            for k in range(args.k + 1)
        ],
        "new_edges": [
            {"level": e["level"],
             "edges": [["%s" % a, "%s" % b] for a, b in e["new"]]}
            for e in classified
        ],
    }
    text = "\n".join(
        "k=%-3d dim=%-12s %s" % (
            lvl["k"], lvl["dim"],
            " ".join("%s:%s" % (l, m) for l, m in lvl["multiplicities"].items()))
        for lvl in data["levels"]
    )
    _emit(data, args.json, text)
    return 0


def cmd_dim(args):
    spec = parse_group(args.group)
    graph = verify.graph_for(spec, args.k)
    formula = verify._dim_formula(spec, args.k)
    oracles = {"formula": formula}
    if args.all_oracles:
        oracles["walks"] = bratteli.dim_centralizer_walks(graph, args.k)
        count = verify._basis_count(spec, args.k)
        if count is not None:
            oracles["basis"] = count
        if spec.is_finite:
            try:
                oracles["commutant"] = len(
                    groups.centralizer_basis(spec, args.k, _guard_default()))
            except SolverGuardError as exc:
                print("resource error: %s" % exc, file=sys.stderr)
                return EXIT_RESOURCE
    agree = len(set(oracles.values())) == 1
    data = {"group": spec.name, "k": args.k,
            "oracles": {name: str(val) for name, val in oracles.items()},
            "agree": agree}
    text = "dim Z_%d(%s) = %s  [%s]" % (
        args.k, spec.name,
        " = ".join(str(v) for v in oracles.values()),
        "agree" if agree else "MISMATCH")
    _emit(data, args.json, text)
    return 0 if agree else EXIT_CHECK_FAILED


def cmd_basis(args):
    spec = parse_group(args.group)
    if args.diagrams:
        family = diagrams.CYCLIC if spec.family == groups.CYCLIC else diagrams.DIHEDRAL
        pool = diagrams.enumerate_diagrams(family, spec.n, args.k)
        data = {"group": spec.name, "k": args.k, "count": len(pool),
                "diagrams": [d.to_json() for d in pool]}
        _emit(data, args.json, "%d diagrams" % len(pool))
        return 0
    if args.matrix_units and spec.family == groups.DIHEDRAL:
        blocks = matrix_units.dihedral_matrix_unit_basis(spec.n, args.k)
        data = {
            "group": spec.name, "k": args.k,
            "blocks": {str(node): info["size"] for node, info in sorted(
                blocks.items(), key=lambda kv: str(kv[0]))},
        }
        text = "matrix blocks: " + "  ".join(
            "%s:M_%d" % (node, size) for node, size in data["blocks"].items())
        _emit(data, args.json, text)
        return 0
    if spec.family == groups.CYCLIC:
        labels = matrix_units.cyclic_labels(spec.n, args.k)
    elif spec.family == groups.DIHEDRAL:
        labels = [lab for lab, _ in matrix_units.dihedral_basis(spec.n, args.k)]
    elif spec.family == groups.CYCLIC_INF:
        labels = matrix_units.planar_rook_units(args.k)[0]
    elif spec.family == groups.DIHEDRAL_INF:
        labels = [lab for lab, _ in matrix_units.dinf_basis(args.k)]
    else:
        print("no matrix-unit basis for %s (exceptional groups are "
              "out of scope here)" % spec.name, file=sys.stderr)
        return EXIT_USAGE
    data = {
        "group": spec.name, "k": args.k, "count": len(labels),
        "labels": [
            {"row": list(lab.row), "col": list(lab.col), "node": str(lab.node)}
            for lab in labels
        ],
    }
    _emit(data, args.json, "%d basis elements" % len(labels))
    return 0


def cmd_modules(args):
    spec = parse_group(args.group)
    dims = verify._module_dims_formula(spec, args.k)
    graph = verify.graph_for(spec, args.k)
    walks = verify._walk_module_dims(spec, graph, args.k)
    agree = {str(k): v for k, v in dims.items() if v} == {
        str(k): v for k, v in walks.items()}
    data = {"group": spec.name, "k": args.k,
            "dims": {str(node): str(v) for node, v in sorted(
                dims.items(), key=lambda kv: str(kv[0])) if v},
            "agree": agree}
    text = "  ".join("%s:%s" % (n, v) for n, v in data["dims"].items())
    _emit(data, args.json, text + ("" if agree else "  [MISMATCH vs walks]"))
    return 0 if agree else EXIT_CHECK_FAILED


def cmd_idempotents(args):
    spec = parse_group(args.group)
    if not spec.is_finite:
        print("idempotent chains need a finite group", file=sys.stderr)
        return EXIT_USAGE
    chain = idempotents.branch_idempotent_chain(spec)
    entries = [e for e in chain.in_order() if e.level <= args.k]
    data = {
        "group": spec.name,
        "branch_level": chain.branch_level,
        "complete_at": chain.complete_at,
        "entries": [
            {"label": str(e.label), "node": str(e.node), "level": e.level,
             "dim": e.dim, "via": e.via, "trace": str(e.endo.trace()),
             "nnz": len(e.endo.entries)}
            for e in entries
        ],
    }
    if args.k > chain.complete_at:
        data["note"] = ("no new idempotents past level %d" % chain.complete_at)
    text = "\n".join(
        "f_(%s)  level %d  dim %d  trace %s  via %s" % (
            e["label"], e["level"], e["dim"], e["trace"], e["via"])
        for e in data["entries"]
    )
    if "note" in data:
        text += "\n" + data["note"]
    _emit(data, args.json, text)
    return 0


def cmd_verify(args):
    if args.grid:
        with open(args.grid) as handle:
            raw = json.load(handle)
        cases = [
            verify.GridCase(c["group"], c["k"], tuple(c["checks"]),
                            c.get("commutant", False))
            for c in raw["cases"]
        ]
        grid = verify.VerificationGrid(
            cases,
            solver_guard=raw.get("solver_guard", _guard_default()),
            seed=raw.get("seed", verify.DEFAULT_SEED),
        )
    else:
        grid = verify.default_grid()
        grid.solver_guard = _guard_default()
    report = verify.run_grid(grid)
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(verify.report_table(report))
    if args.golden:
        diff = verify.golden_compare(report, args.golden)
        if diff:
            print(json.dumps(diff, indent=2, sort_keys=True), file=sys.stderr)
            return EXIT_CHECK_FAILED
    return 0 if report["ok"] else EXIT_CHECK_FAILED


def cmd_diagmul(args):
    with open(args.file) as handle:
        data = json.load(handle)
    d1 = diagrams.TwoRowDiagram.from_json(data["d1"])
    d2 = diagrams.TwoRowDiagram.from_json(data["d2"])
    product = diagrams.multiply(d1, d2)
    if product is None:
        _emit({"product": None}, args.json, "zero")
    else:
        _emit({"product": product.to_json()}, args.json,
              "top=%s bottom=%s" % (sorted(product.top), sorted(product.bottom)))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="su2cent",
        description="Exact centralizer algebras of the SU(2) subgroups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, k_required=True):
        p.add_argument("group", help="C<n>, D<n>, T, O, I, Cinf, Dinf")
        if k_required:
            p.add_argument("--k", type=int, required=True)
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("graph", help="representation graph")
    common(p, k_required=False)
    p.add_argument("--dot", action="store_true")
    p.add_argument("--truncation", type=int, help="depth for Cinf/Dinf")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("bratteli", help="levels, multiplicities, new edges")
    common(p)
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_bratteli)

    p = sub.add_parser("dim", help="centralizer dimension")
    common(p)
    p.add_argument("--all-oracles", action="store_true")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("basis", help="basis listing")
    common(p)
    p.add_argument("--matrix-units", action="store_true")
    p.add_argument("--diagrams", action="store_true")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("modules", help="irreducible-module dimensions")
    common(p)
    p.set_defaults(func=cmd_modules)

    p = sub.add_parser("idempotents", help="branch idempotent chain")
    common(p)
    p.set_defaults(func=cmd_idempotents)

    p = sub.add_parser("verify", help="run the verification grid")
    p.add_argument("--grid", help="JSON grid file")
    p.add_argument("--golden", help="golden report for regression diff")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("diagmul", help="multiply two diagrams from a JSON file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_diagmul)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SolverGuardError as exc:
        print("resource error: %s" % exc, file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, KeyError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
