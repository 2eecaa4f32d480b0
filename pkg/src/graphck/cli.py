"""Batch command-line front end with reproducible JSON reports.

Exit codes: 0 success (and verification pass), 1 verification failure,
2 input error (unparseable graph, bad flags, guard exceeded).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .algebra import diag_expectation, element_w_normal_form
from .cycles import (
    CycleCountError,
    canonical_cutting_set,
    entrance_free_classes,
    simple_cycles,
)
from .exact import ExactnessError, Phase, PolarCoeff
from .expr import ExprError, parse_element
from .graph import GraphError, is_cofinal, parse_graph, sources
from .reps import (
    BOUNDARY,
    LEFT_REGULAR,
    OMEGA,
    TWISTED,
    boundary,
    extract_kappa,
    left_regular,
    min_verification_depth,
    omega,
    twisted_boundary,
    verify_relations,
)
from .tails import TailGuardError, maximal_tails, prim_ideal_catalog
from .transform import reduced_graph, toeplitz_graph

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


def _load_graph(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def _report(command: str, g, result: dict) -> dict:
    return {
        "command": command,
        "fingerprint": g.fingerprint(),
        "version": __version__,
        "result": result,
    }


def _emit(report: dict, pretty: bool) -> None:
    if pretty:
        _print_pretty(report)
    else:
        print(json.dumps(report, indent=2, sort_keys=True))


def _print_pretty(report: dict, prefix: str = "") -> None:
    print(f"{prefix}command : {report['command']}")
    print(f"{prefix}graph   : {report['fingerprint'][:16]}")
    for key, value in sorted(report["result"].items()):
        if isinstance(value, list):
            print(f"{prefix}{key}:")
            for item in value:
                print(f"{prefix}  - {json.dumps(item, sort_keys=True)}")
        else:
            print(f"{prefix}{key}: {json.dumps(value, sort_keys=True)}")


def _cmd_analyze(args) -> int:
    g = _load_graph(args.graph)
    classes = entrance_free_classes(g)
    cofinal = is_cofinal(g)
    result = {
        "sources": list(sources(g)),
        "simpleCycles": [c.render() for c in simple_cycles(g)],
        "entranceFreeClasses": [list(c.representative.edges) for c in classes],
        "cuttingSet": list(canonical_cutting_set(g)),
        "cofinal": cofinal,
        "simple": cofinal,
    }
    _emit(_report("analyze", g, result), args.pretty)
    return EXIT_OK


def _cmd_transform(args) -> int:
    g = _load_graph(args.graph)
    if args.toeplitz:
        tg = toeplitz_graph(g)
        emitted = tg.graph
        result = {
            "kind": "toeplitz",
            "alphaVertices": dict(tg.alpha_v),
            "betaVertices": dict(tg.beta_v),
            "alphaEdges": dict(tg.alpha_e),
            "betaEdges": dict(tg.beta_e),
            "graphText": emitted.to_text(),
        }
    else:
        cutting = (
            tuple(args.cutting_set.split(","))
            if args.cutting_set
            else canonical_cutting_set(g)
        )
        rg = reduced_graph(g, cutting)
        emitted = rg.graph
        result = {
            "kind": "reduced",
            "cuttingSet": list(rg.cutting_set),
            "vertexMap": dict(rg.zeta_v),
            "edgeMap": dict(rg.zeta_e),
            "graphText": emitted.to_text(),
        }
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(emitted.to_text())
    _emit(_report("transform", g, result), args.pretty)
    return EXIT_OK


def _cmd_tails(args) -> int:
    g = _load_graph(args.graph)
    target = toeplitz_graph(g).graph if args.toeplitz_of else g
    tails = maximal_tails(target, guard=args.max_vertices)
    catalog = prim_ideal_catalog(target, guard=args.max_vertices)
    result = {
        "over": "toeplitz" if args.toeplitz_of else "input",
        "tails": [
            {
                "vertices": sorted(t.vertices),
                "kind": t.kind,
                **(
                    {"class": list(t.cycle_class.representative.edges)}
                    if t.cycle_class
                    else {}
                ),
            }
            for t in tails
        ],
        "primIdeals": [
            {
                "kind": d.kind,
                "vertices": sorted(d.tail.vertices),
                "generators": list(d.generators),
            }
            for d in catalog
        ],
    }
    _emit(_report("tails", g, result), args.pretty)
    return EXIT_OK


def _parse_kappa(text: str) -> dict[str, Phase]:
    table: dict[str, Phase] = {}
    for item in text.split(","):
        if ":" not in item:
            raise GraphError(f"malformed kappa entry {item!r}; use edge:num/den")
        edge, turn = item.split(":", 1)
        try:
            table[edge.strip()] = Phase(Fraction(turn.strip()))
        except (ValueError, ZeroDivisionError) as err:
            raise GraphError(f"malformed kappa phase {turn!r}") from err
    return table


def _cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    if args.rep == TWISTED:
        table = _parse_kappa(args.kappa) if args.kappa else {}
        try:
            rep = twisted_boundary(g, table)
        except GraphError as err:
            if not args.kappa:
                raise GraphError(
                    "--rep=twisted requires --kappa covering each "
                    "entrance-free class"
                ) from err
            raise
    else:
        if args.kappa:
            raise GraphError("--kappa only applies to --rep=twisted")
        rep = {
            LEFT_REGULAR: left_regular,
            BOUNDARY: boundary,
            OMEGA: omega,
        }[args.rep](g)
    depth = args.depth
    if depth is None:
        depth = min_verification_depth(g, args.level) + len(g.vertices)
    report = verify_relations(rep, args.level, depth)
    result = {
        "rep": args.rep,
        "level": report.level,
        "depth": report.depth,
        "pass": report.passed,
        "failures": [
            {"relation": f.relation, "witness": f.witness} for f in report.failures
        ],
    }
    if args.rep == TWISTED:
        entries = []
        for cls, value in sorted(
            extract_kappa(rep).items(), key=lambda kv: kv[0].representative.edges
        ):
            entry = {"class": cls.representative.render()}
            if isinstance(value, Phase):
                entry["turn"] = str(value.turn)
                entry["value"] = str(PolarCoeff.from_phase(value))
            else:
                entry["value"] = repr(value)
            entries.append(entry)
        result["kappa"] = entries
    _emit(_report("verify", g, result), args.pretty)
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_expect(args) -> int:
    g = _load_graph(args.graph)
    element = parse_element(g, args.element)
    result = {
        "element": element.render(),
        "wNormalForm": element_w_normal_form(g, element).render(),
        "expectation": diag_expectation(g, element).render(),
    }
    _emit(_report("expect", g, result), args.pretty)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphck",
        description="Symbolic analysis of Cuntz-Krieger families on finite graphs",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("graph", help="graph description file")
        p.add_argument("--pretty", action="store_true", help="human-readable output")

    p = sub.add_parser("analyze", help="cycles, cutting sets, cofinality/simplicity")
    common(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("transform", help="emit the Toeplitz or reduced graph")
    common(p)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--toeplitz", action="store_true")
    mode.add_argument("--reduce", action="store_true")
    p.add_argument("--cutting-set", help="comma-separated edge ids (reduce mode)")
    p.add_argument("--output", help="also write the emitted graph to this file")
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("tails", help="maximal tails and primitive-ideal catalog")
    common(p)
    p.add_argument(
        "--toeplitz-of",
        action="store_true",
        help="catalog the Toeplitz graph of the input instead of the input",
    )
    p.add_argument("--max-vertices", type=int, default=16, help="enumeration guard")
    p.set_defaults(func=_cmd_tails)

    p = sub.add_parser("verify", help="check family relations in a representation")
    common(p)
    p.add_argument(
        "--rep",
        required=True,
        choices=[LEFT_REGULAR, BOUNDARY, OMEGA, TWISTED],
    )
    p.add_argument(
        "--level", required=True, choices=["tck", "ck", "reduced", "normalized"]
    )
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--kappa", help="edge:num/den[,edge:num/den...] phase turns")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("expect", help="W-normal form and diagonal expectation")
    common(p)
    p.add_argument("--element", required=True, help="element expression")
    p.set_defaults(func=_cmd_expect)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        GraphError,
        ExprError,
        ExactnessError,
        CycleCountError,
        TailGuardError,
        ValueError,
        OSError,
    ) as err:
        print(f"graphck: error: {err}", file=sys.stderr)
        return EXIT_INPUT


def console_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_entry()
