import functools

import pytest

from grasshkr.parabolic import build_parabolic
from grasshkr.rootsys import build_root_system


@functools.lru_cache(maxsize=None)
def rs_of(name):
    return build_root_system(name)


@functools.lru_cache(maxsize=None)
def par_of(name, nodes):
    if isinstance(nodes, int):
        nodes = (nodes,)
    return build_parabolic(rs_of(name), tuple(nodes))


@pytest.fixture
def par():
    return par_of


import json
from collections import Counter
from pathlib import Path

GOLDEN = json.loads((Path(__file__).parent / "golden" / "gr_tables.json").read_text())


def _row_key(weight, rank, degree, rep, dim, sor):
    return (tuple(weight), rank, degree, None if rep is None else tuple(rep), dim, tuple(sor))


def golden_blocks(entry, p):
    """{filtration degree: Counter of row keys} for a golden table."""
    out = {}
    for r in entry["tables"][str(p)]:
        g = sum(r["sum_of_roots"][k - 1] for k in entry["crossed"])
        key = _row_key(r["weight"], r["rank"], r["degree"], r["representation"], r["dimension"], r["sum_of_roots"])
        out.setdefault(g, Counter())[key] += 1
    return out


def computed_blocks(table):
    out = {}
    for r in table.rows:
        b = r.bwb
        key = _row_key(r.levi_weight, r.rank, b.degree, b.dominant_weight, b.dimension or None, r.sum_of_roots)
        out.setdefault(r.grading_degree, Counter())[key] += r.multiplicity
    return out


# one line per acceptance criterion, shown at the end of the run
ACCEPTANCE: list[str] = []


def record(n, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    ACCEPTANCE.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
