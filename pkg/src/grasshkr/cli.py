"""Command-line interface.

Exit status: 0 on success, 2 on usage errors, 3 when a resource cap is hit.
Environment fallbacks: GRASSHKR_P_CAP, GRASSHKR_WORKERS, GRASSHKR_MAX_KEYS
(size cap for the exterior-power tables), GRASSHKR_NO_NUMBA.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from . import render
from .hkr import (
    adjoint_decomposition,
    bott_vanishing_witness,
    cominuscule_decomposition,
    gr_table,
    hkr_report,
    kostant_cohomology,
    kostant_sum,
    scan,
)
from .levirep import ResourceCapError
from .parabolic import ParabolicData, ParabolicError, build_parabolic, classify, parse_nodes
from .rootsys import CartanType, RootSystemError
from .weyl import bruhat_graph, minimal_coset_reps

EXIT_USAGE = 2
EXIT_CAP = 3

KUNNETH = (
    "semisimple input {text!r}: Hochschild cohomology of a product is the tensor product of the "
    "factors (Kunneth formula), so run each simple factor separately"
)


class UsageError(Exception):
    pass


def _env_int(name):
    v = os.environ.get(name)
    if v in (None, ""):
        return None
    try:
        return int(v)
    except ValueError:
        raise UsageError(f"environment variable {name} must be an integer, got {v!r}") from None


def parse_variety(type_text: str, nodes_text: str) -> ParabolicData:
    if re.search(r"[x+*,]|\s", type_text.strip()):
        raise UsageError(KUNNETH.format(text=type_text))
    try:
        ct = CartanType.parse(type_text)
        return build_parabolic(ct, parse_nodes(nodes_text))
    except (RootSystemError, ParabolicError) as exc:
        raise UsageError(str(exc)) from None


def _emit(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _check_format(args, allowed):
    if args.format not in allowed:
        raise UsageError(f"--format {args.format} is not available for '{args.command}' (choose from {', '.join(allowed)})")


def cmd_classify(args):
    _check_format(args, ("text", "csv", "json"))
    par = parse_variety(args.type, args.nodes)
    if args.format == "json":
        _emit(json.dumps({"schema_version": render.SCHEMA_VERSION, "kind": "classification",
                          "classification": render.classification_dict(par)}, indent=1))
    elif args.format == "csv":
        _emit(render.classification_csv(par))
    else:
        _emit(render.classification_text(par))


def cmd_gr_table(args):
    _check_format(args, ("text", "csv", "json"))
    par = parse_variety(args.type, args.nodes)
    if args.p is None:
        ps = range(par.dimension + 1)
    else:
        if not 0 <= args.p <= par.dimension:
            raise UsageError(f"p = {args.p} out of range 0..{par.dimension}")
        ps = [args.p]
    tables = [gr_table(par, p) for p in ps]
    out = {"json": render.gr_tables_json, "csv": render.gr_tables_csv, "text": render.gr_tables_text}[args.format]
    _emit(out(tables))


def _p_cap(args):
    return args.p_cap if args.p_cap is not None else _env_int("GRASSHKR_P_CAP")


def cmd_hkr(args):
    _check_format(args, ("text", "csv", "json"))
    par = parse_variety(args.type, args.nodes)
    rep = hkr_report(par, _p_cap(args))
    out = {"json": render.report_json, "csv": render.report_csv, "text": render.report_text}[args.format]
    _emit(out(rep))


def cmd_coset_graph(args):
    par = parse_variety(args.type, args.nodes)
    g = bruhat_graph(minimal_coset_reps(par.root_system, par))
    if args.format == "dot":
        _emit(render.graph_dot(g, par.name()))
    elif args.format == "json":
        doc = {"schema_version": render.SCHEMA_VERSION, "kind": "bruhat_graph", "variety": par.name()}
        doc.update(render.graph_dict(g))
        _emit(json.dumps(doc, indent=1))
    elif args.format == "csv":
        _emit(render.graph_csv(g))
    else:
        _emit(render.graph_text(g))


def cmd_kostant(args):
    _check_format(args, ("text", "json"))
    par = parse_variety(args.type, args.nodes)
    doc = {"schema_version": render.SCHEMA_VERSION, "kind": "kostant", "variety": par.name()}
    lines = [f"{par.name()}  dim {par.dimension}  index {par.index}"]
    if args.j is None:
        doc["cohomology"] = {}
        lines.append("Lie algebra cohomology of the nilradical (Levi weights w.0):")
        for i in range(par.dimension + 1):
            pcs = kostant_cohomology(par, i)
            doc["cohomology"][str(i)] = [{"weight": list(lam), "rank": d, "word": list(w.reduced_word)} for lam, d, w in pcs]
            desc = " + ".join(f"{render.fmt_vec(lam)}[{d}]" for lam, d, _ in pcs)
            lines.append(f"  i={i}: dim {sum(d for _, d, _ in pcs)}  {desc}")
        cl = classify(par)
        closed = None
        if cl.cominuscule:
            closed = ("cominuscule", cominuscule_decomposition(par))
        elif cl.adjoint and (par.is_maximal or par.is_type_a_adjoint):
            closed = ("adjoint", adjoint_decomposition(par))
        if closed:
            doc["decomposition"] = {"theorem": closed[0],
                                    "degrees": {str(i): [[list(w), d] for w, d in v] for i, v in closed[1].items()}}
            lines.append(f"global sections of wedge^i T ({closed[0]} decomposition):")
            for i, v in closed[1].items():
                desc = " + ".join(f"V{render.fmt_vec(w)}[{d}]" for w, d in v) or "0"
                lines.append(f"  i={i}: dim {sum(d for _, d in v)}  {desc}")
    else:
        try:
            pieces = {i: kostant_sum(par, i, args.j, args.restricted) for i in range(par.dimension + 1)}
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        doc["j"] = args.j
        doc["restricted"] = args.restricted
        doc["sums"] = {str(i): [{"weight": list(x.weight), "regular": x.regular, "word": list(x.w.reduced_word)} for x in v]
                       for i, v in pieces.items()}
        lines.append(f"Kostant sums with twist j={args.j}{' (regular only)' if args.restricted else ''}:")
        for i, v in pieces.items():
            desc = ", ".join(f"{render.fmt_vec(x.weight)}{'' if x.regular else ' singular'}" for x in v)
            lines.append(f"  i={i}: {desc}")
    _emit(json.dumps(doc, indent=1) if args.format == "json" else "\n".join(lines))


def cmd_scan(args):
    _check_format(args, ("text", "csv", "json"))
    max_rank = args.max_rank if args.max_rank is not None else (_env_int("GRASSHKR_MAX_RANK") or 4)
    workers = args.workers if args.workers is not None else (_env_int("GRASSHKR_WORKERS") or 1)
    if max_rank < 2:
        raise UsageError("--max-rank must be at least 2")
    results = scan(max_rank, _p_cap(args), workers, with_reports=True)
    entries = [e for e, _ in results]
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for e, rep in results:
            doc = {"schema_version": render.SCHEMA_VERSION, "kind": "scan_entry", "entry": render.scan_row(e),
                   "report": None if rep is None else render.report_dict(rep)}
            (outdir / f"{e.cartan_type}_{e.node}.json").write_text(json.dumps(doc, indent=1) + "\n")
    out = {"json": render.scan_json, "csv": render.scan_csv, "text": render.scan_text}[args.format]
    _emit(out(entries))
    if any(e.error for e in entries):
        return EXIT_CAP
    return 0


def cmd_bott_witness(args):
    _check_format(args, ("text", "json"))
    par = parse_variety(args.type, args.nodes)
    w = bott_vanishing_witness(par, hkr_report(par, _p_cap(args)))
    if args.format == "json":
        doc = {"schema_version": render.SCHEMA_VERSION, "kind": "bott_witness", "variety": par.name(),
               "witness": None if w is None else {"p": w.p, "q": w.q, "weight": list(w.weight), "omega_degree": w.omega_degree}}
        _emit(json.dumps(doc, indent=1))
    elif w is None:
        _emit(f"{par.name()}: no definite failure of Bott vanishing found on the E1 page")
    else:
        _emit(
            f"{par.name()}: H^{w.q}(wedge^{w.p} T) contains V{render.fmt_vec(w.weight)}, i.e. "
            f"H^{w.q}(Omega^{w.omega_degree} (x) anticanonical) != 0, so Bott vanishing fails"
        )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="grasshkr", description="HKR decompositions of generalised Grassmannians G/P.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "csv", "json", "dot"], default="text")
    variety = argparse.ArgumentParser(add_help=False)
    variety.add_argument("type", help="Cartan type of a simple group, e.g. B4")
    variety.add_argument("nodes", help="crossed nodes, e.g. 3 or 1,3")
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("classify", parents=[common, variety], help="dimension, index and classification flags")
    p = sub.add_parser("gr-table", parents=[common, variety], help="associated graded of wedge^p T with BWB data")
    p.add_argument("-p", type=int, default=None, help="exterior power (default: all)")
    p = sub.add_parser("hkr", parents=[common, variety], help="E1-page report and verdict")
    p.add_argument("--p-cap", type=int, default=None)
    sub.add_parser("coset-graph", parents=[common, variety], help="parabolic Bruhat graph of W^P")
    p = sub.add_parser("kostant", parents=[common, variety], help="Kostant cohomology, Kostant sums, closed forms")
    p.add_argument("-j", type=int, default=None, help="twist j for the Kostant sums")
    p.add_argument("--restricted", action="store_true", help="keep only regular weights")
    p = sub.add_parser("scan", parents=[common], help="verdicts for all maximal parabolics up to a rank")
    p.add_argument("--max-rank", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--p-cap", type=int, default=None)
    p.add_argument("--out", default=None, help="directory for one JSON file per variety")
    p = sub.add_parser("bott-witness", parents=[common, variety], help="definite failure of Bott vanishing")
    p.add_argument("--p-cap", type=int, default=None)
    return ap


COMMANDS = {
    "classify": cmd_classify,
    "gr-table": cmd_gr_table,
    "hkr": cmd_hkr,
    "coset-graph": cmd_coset_graph,
    "kostant": cmd_kostant,
    "scan": cmd_scan,
    "bott-witness": cmd_bott_witness,
}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    try:
        if args.command != "coset-graph" and args.format == "dot":
            raise UsageError("--format dot is only available for coset-graph")
        return COMMANDS[args.command](args) or 0
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"grasshkr: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapError as exc:
        print(f"grasshkr: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
