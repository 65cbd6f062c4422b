"""Text, CSV, JSON and DOT renderings of tables, reports and graphs."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict

from .hkr import BWBResult, GrSummand, GrTable, HKRPiece, HKRReport, ScanEntry
from .parabolic import ParabolicData, classify, nilradical_structure
from .weyl import BruhatGraph

SCHEMA_VERSION = 1


def fmt_vec(v) -> str:
    return "" if v is None else "(" + ", ".join(str(x) for x in v) + ")"


def _tuple(v):
    return None if v is None else tuple(v)


def _align(rows: list[list[str]], right=None) -> list[str]:
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    right = right or set()
    out = []
    for r in rows:
        cells = [s.rjust(w) if c in right else s.ljust(w) for c, (s, w) in enumerate(zip(r, widths))]
        out.append("  ".join(cells).rstrip())
    return out


# ----------------------------------------------------------------------------
# gr tables

GR_FIELDS = ["p", "grading", "weight", "rank", "degree", "representation", "dimension", "sum_of_roots", "multiplicity"]


def gr_row_dict(p: int, r: GrSummand) -> dict:
    return {
        "p": p,
        "grading": r.grading_degree,
        "weight": list(r.levi_weight),
        "rank": r.rank,
        "degree": r.bwb.degree,
        "representation": None if r.bwb.vanishes else list(r.bwb.dominant_weight),
        "dimension": None if r.bwb.vanishes else r.bwb.dimension,
        "sum_of_roots": list(r.sum_of_roots),
        "multiplicity": r.multiplicity,
    }


def gr_tables_json(tables: list[GrTable]) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "gr_table",
        "variety": tables[0].variety if tables else None,
        "tables": [{"p": t.p, "rows": [gr_row_dict(t.p, r) for r in t.rows]} for t in tables],
    }
    return json.dumps(doc, indent=1)


def gr_tables_from_json(text: str) -> list[GrTable]:
    doc = json.loads(text)
    out = []
    for t in doc["tables"]:
        rows = []
        for r in t["rows"]:
            if r["degree"] is None:
                b = BWBResult(None)
            else:
                b = BWBResult(r["degree"], tuple(r["representation"]), r["dimension"])
            rows.append(GrSummand(tuple(r["weight"]), r["grading"], r["rank"], b, tuple(r["sum_of_roots"]), r["multiplicity"]))
        out.append(GrTable(doc["variety"], t["p"], tuple(rows)))
    return out


def gr_tables_csv(tables: list[GrTable]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(GR_FIELDS)
    for t in tables:
        for r in t.rows:
            d = gr_row_dict(t.p, r)
            w.writerow([fmt_vec(d[f]) if isinstance(d[f], list) else ("" if d[f] is None else d[f]) for f in GR_FIELDS])
    return buf.getvalue()


def gr_tables_text(tables: list[GrTable]) -> str:
    show_mult = any(r.multiplicity > 1 for t in tables for r in t.rows)
    header = ["weight", "rank", "degree", "representation", "dimension", "sum of roots"]
    if show_mult:
        header.append("mult")
    out = []
    for t in tables:
        out.append(f"{t.variety}  wedge^{t.p} T")
        body = [header]
        seps = []
        last = None
        for r in t.rows:
            if last is not None and r.grading_degree != last:
                seps.append(len(body))
            last = r.grading_degree
            b = r.bwb
            row = [
                fmt_vec(r.levi_weight),
                str(r.rank),
                "" if b.vanishes else str(b.degree),
                "" if b.vanishes else fmt_vec(b.dominant_weight),
                "" if b.vanishes else str(b.dimension),
                fmt_vec(r.sum_of_roots),
            ]
            if show_mult:
                row.append(str(r.multiplicity))
            body.append(row)
        lines = _align(body, right={1, 2, 4, 6})
        rule = "-" * max(len(x) for x in lines)
        for k, line in enumerate(lines):
            if k in seps:
                out.append("")
            out.append(line)
            if k == 0:
                out.append(rule)
        out.append("")
    return "\n".join(out)


# ----------------------------------------------------------------------------
# reports


def report_dict(rep: HKRReport) -> dict:
    d = asdict(rep)
    d["pieces"] = [asdict(x) for x in rep.pieces]
    closed = rep.closed_form
    if closed:
        d["closed_form"] = {
            "theorem": closed["theorem"],
            "degrees": {str(i): [[list(w), dim] for w, dim in v] for i, v in closed["degrees"].items()},
        }
    return d


def report_json(rep: HKRReport) -> str:
    doc = {"schema_version": SCHEMA_VERSION, "kind": "hkr_report", "report": report_dict(rep)}
    return json.dumps(doc, indent=1)


def report_from_dict(d: dict) -> HKRReport:
    pieces = tuple(
        HKRPiece(x["p"], x["q"], tuple(x["weight"]), x["dimension"], x["multiplicity"], x["lower_bound"], x["status"])
        for x in d["pieces"]
    )
    closed = d.get("closed_form") or {}
    if closed:
        closed = {
            "theorem": closed["theorem"],
            "degrees": {int(i): [(tuple(w), dim) for w, dim in v] for i, v in closed["degrees"].items()},
        }
    return HKRReport(
        variety=d["variety"],
        dimension=d["dimension"],
        p_range=tuple(d["p_range"]),
        truncated=d["truncated"],
        pieces=pieces,
        computed_verdict=d["computed_verdict"],
        theorem=d["theorem"],
        verdict=d["verdict"],
        closed_form=closed,
        exotic=d.get("exotic", False),
    )


def report_from_json(text: str) -> HKRReport:
    return report_from_dict(json.loads(text)["report"])


REPORT_FIELDS = ["p", "q", "total_degree", "weight", "dimension", "multiplicity", "lower_bound", "status"]


def report_csv(rep: HKRReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_FIELDS)
    for x in rep.pieces:
        w.writerow([x.p, x.q, x.total_degree, fmt_vec(x.weight), x.dimension, x.multiplicity, x.lower_bound, x.status])
    return buf.getvalue()


def report_text(rep: HKRReport) -> str:
    out = [f"{rep.variety}  dim {rep.dimension}"]
    out.append(f"verdict: {rep.verdict}")
    out.append(f"  by computation (E1 page): {rep.computed_verdict}")
    if rep.theorem:
        out.append(f"  by theorem: vanishing holds for {rep.theorem} varieties")
    if rep.truncated:
        out.append(f"  TRUNCATED: only p = {rep.p_range[0]}..{rep.p_range[1]} computed")
    if rep.exotic:
        out.append("  note: the tangent bundle has a larger automorphism group; computed as given")
    out.append("")
    by_p: dict[int, list[HKRPiece]] = {}
    for x in rep.pieces:
        by_p.setdefault(x.p, []).append(x)
    for p in sorted(by_p):
        out.append(f"wedge^{p} T")
        rows = [["q", "representation", "dimension", "mult", "lower bound", "status"]]
        for x in by_p[p]:
            rows.append([str(x.q), fmt_vec(x.weight), str(x.dimension), str(x.multiplicity), str(x.lower_bound), x.status])
        out.extend("  " + line for line in _align(rows, right={0, 2, 3, 4}))
    if rep.closed_form:
        out.append("")
        out.append(f"closed form ({rep.closed_form['theorem']} decomposition), HH^i:")
        for i, pieces in rep.closed_form["degrees"].items():
            desc = " + ".join(f"V{fmt_vec(w)}[{d}]" for w, d in pieces) or "0"
            out.append(f"  i={i}: dim {sum(d for _, d in pieces)}  {desc}")
    if rep.witnesses:
        out.append("")
        out.append("definite higher cohomology:")
        for x in rep.witnesses:
            out.append(f"  H^{x.q}(wedge^{x.p} T) contains V{fmt_vec(x.weight)} (dim {x.dimension}) at least {x.lower_bound} time(s)")
    return "\n".join(out) + "\n"


# ----------------------------------------------------------------------------
# classification


def classification_dict(par: ParabolicData) -> dict:
    cl = classify(par)
    d = {
        "variety": par.name(),
        "type": str(par.cartan_type),
        "crossed": list(par.crossed),
        "dimension": par.dimension,
        "index": par.index,
        "anticanonical_bidegree": list(par.bidegree),
        "levi": par.levi_type,
        "nilradical": str(nilradical_structure(par)),
    }
    d.update(asdict(cl))
    return d


def classification_text(par: ParabolicData) -> str:
    d = classification_dict(par)
    lines = [f"{d['variety']}"]
    for k, v in d.items():
        if k == "variety":
            continue
        if isinstance(v, list):
            v = fmt_vec(v)
        lines.append(f"  {k:<26} {v}")
    if d["exotic_automorphism_flag"]:
        lines.append("  note: the tangent bundle has a larger automorphism group; computed as given")
    return "\n".join(lines) + "\n"


def classification_csv(par: ParabolicData) -> str:
    d = classification_dict(par)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(d))
    w.writerow([fmt_vec(v) if isinstance(v, list) else v for v in d.values()])
    return buf.getvalue()


# ----------------------------------------------------------------------------
# Bruhat graphs


def graph_dict(g: BruhatGraph) -> dict:
    return {
        "nodes": [{"id": k, "word": list(w.reduced_word), "length": w.length} for k, w in enumerate(g.nodes)],
        "edges": [{"source": e.source, "target": e.target, "label": e.label} for e in g.edges],
    }


def graph_dot(g: BruhatGraph, name: str = "W_P") -> str:
    out = [f'digraph "{name}" {{', "  rankdir=LR;", "  node [shape=point];"]
    by_len: dict[int, list[int]] = {}
    for k, w in enumerate(g.nodes):
        by_len.setdefault(w.length, []).append(k)
        out.append(f'  n{k} [xlabel="{w.word_str()}"];')
    for l, ks in sorted(by_len.items()):
        out.append("  { rank=same; " + " ".join(f"n{k};" for k in ks) + " }")
    for e in g.edges:
        attr = f' [label="{e.label}"]' if e.label is not None else ""
        out.append(f"  n{e.source} -> n{e.target}{attr};")
    out.append("}")
    return "\n".join(out) + "\n"


def graph_text(g: BruhatGraph) -> str:
    out = []
    for k, w in enumerate(g.nodes):
        out.append(f"{k:>3}  l={w.length:<3} {w.word_str()}")
    out.append("")
    for e in g.edges:
        lab = "" if e.label is None else f"  s{e.label}"
        out.append(f"{e.source:>3} -> {e.target:<3}{lab}")
    return "\n".join(out) + "\n"


def graph_csv(g: BruhatGraph) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["source", "target", "source_word", "target_word", "label"])
    for e in g.edges:
        w.writerow([e.source, e.target, g.nodes[e.source].word_str(), g.nodes[e.target].word_str(),
                    "" if e.label is None else e.label])
    return buf.getvalue()


# ----------------------------------------------------------------------------
# scans

SCAN_FIELDS = ["type", "node", "dimension", "classes", "exotic", "computed_verdict", "theorem", "verdict", "truncated", "witness", "error"]


def scan_row(e: ScanEntry) -> dict:
    return {
        "type": e.cartan_type,
        "node": e.node,
        "dimension": e.dimension,
        "classes": list(e.classes),
        "exotic": e.exotic,
        "computed_verdict": e.computed_verdict,
        "theorem": e.theorem,
        "verdict": e.verdict,
        "truncated": e.truncated,
        "witness": None if e.witness is None else {"p": e.witness[0], "q": e.witness[1], "weight": list(e.witness[2])},
        "error": e.error,
    }


def scan_text(entries: list[ScanEntry]) -> str:
    rows = [["variety", "dim", "classes", "E1 verdict", "verdict", "witness (p, q, weight)"]]
    for e in entries:
        wit = "" if e.witness is None else f"({e.witness[0]}, {e.witness[1]}, {fmt_vec(e.witness[2])})"
        verdict = e.verdict + (" [truncated]" if e.truncated else "") + (" *" if e.exotic else "")
        rows.append([f"{e.cartan_type}/{e.node}", str(e.dimension), ",".join(e.classes) or "-", e.computed_verdict, verdict, wit])
    lines = _align(rows, right={1})
    lines.insert(1, "-" * max(len(x) for x in lines))
    if any(e.exotic for e in entries):
        lines.append("")
        lines.append("* tangent bundle has a larger automorphism group (computed as given)")
    return "\n".join(lines) + "\n"


def scan_csv(entries: list[ScanEntry]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SCAN_FIELDS)
    for e in entries:
        d = scan_row(e)
        wit = "" if d["witness"] is None else f"{d['witness']['p']};{d['witness']['q']};{fmt_vec(d['witness']['weight'])}"
        w.writerow([d["type"], d["node"], d["dimension"], ";".join(d["classes"]), d["exotic"], d["computed_verdict"],
                    d["theorem"] or "", d["verdict"], d["truncated"], wit, d["error"] or ""])
    return buf.getvalue()


def scan_json(entries: list[ScanEntry]) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, "kind": "scan", "entries": [scan_row(e) for e in entries]}, indent=1)
