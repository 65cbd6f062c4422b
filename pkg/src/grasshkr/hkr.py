"""Borel-Weil-Bott on graded pieces, E1-page reports and closed-form decompositions."""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import _accel
from .levirep import (
    ResourceCapError,
    g_dim,
    levi_dim,
    levi_dominant_wedge,
    peel,
)
from .parabolic import ParabolicData, build_parabolic, classify, maximal_parabolics
from .rootsys import Weight
from .weyl import CosetSystem, WeylElement, dot_action, minimal_coset_reps


# ----------------------------------------------------------------------------
# Borel-Weil-Bott


@dataclass(frozen=True)
class BWBResult:
    """Cohomology of the homogeneous bundle with Levi highest weight lam.

    ``degree`` is None when every cohomology group vanishes.
    """

    degree: int | None
    dominant_weight: Weight | None = None
    dimension: int = 0

    @property
    def vanishes(self) -> bool:
        return self.degree is None


VANISHES = BWBResult(None)


def bwb(par: ParabolicData, lam) -> BWBResult:
    return bwb_batch(par, [lam])[0]


def bwb_batch(par: ParabolicData, weights) -> list[BWBResult]:
    rs = par.root_system
    weights = [rs.check_weight(w) for w in weights]
    for w in weights:
        if not par.is_levi_dominant(w):
            raise ValueError(f"{w} is not dominant for the Levi of {par.name()}")
    if not weights:
        return []
    V = np.asarray(weights, dtype=np.int64) + 1
    D, steps = _accel.dominant_chamber(V, rs.cartan_matrix)
    # the number of NP+ roots pairing negatively with lam + rho is the length
    npp_rows = [rs.root_index[b.weight_coords] for b in par.np_positive]
    P = V @ rs.coroot_table[npp_rows].T
    out = []
    for k in range(len(weights)):
        if D[k].min() == 0:
            out.append(VANISHES)
            continue
        deg = int((P[k] < 0).sum())
        if deg != steps[k]:
            raise AssertionError(f"length mismatch for {weights[k]}: {deg} != {steps[k]}")
        dom = tuple(int(x) - 1 for x in D[k])
        out.append(BWBResult(deg, dom, g_dim(rs, dom)))
    return out


# ----------------------------------------------------------------------------
# graded pieces of exterior powers


@dataclass(frozen=True)
class GrSummand:
    levi_weight: Weight
    grading_degree: int
    rank: int
    bwb: BWBResult
    sum_of_roots: tuple[int, ...]
    multiplicity: int = 1


@dataclass(frozen=True)
class GrTable:
    variety: str
    p: int
    rows: tuple[GrSummand, ...]

    def blocks(self) -> dict[int, list[GrSummand]]:
        out: dict[int, list[GrSummand]] = {}
        for r in self.rows:
            out.setdefault(r.grading_degree, []).append(r)
        return out

    @property
    def total_rank(self) -> int:
        return sum(r.rank * r.multiplicity for r in self.rows)


def gr_table(par: ParabolicData, p: int, negate: bool = False) -> GrTable:
    """Associated graded of the p-th exterior power of the tangent bundle.

    With ``negate`` the cotangent bundle is used instead.
    """
    if not 0 <= p <= par.dimension:
        raise ValueError(f"p = {p} out of range 0..{par.dimension}")
    rs = par.root_system
    blocks = levi_dominant_wedge(par, p, negate)
    rows = []
    for g in sorted(blocks, reverse=True):
        pieces = peel(par, blocks[g])
        results = bwb_batch(par, [lam for lam, _ in pieces])
        for (lam, m), res in zip(pieces, results):
            rows.append(GrSummand(lam, g, levi_dim(par, lam), res, rs.to_simple(lam), m))
    table = GrTable(par.name(), p, tuple(rows))
    if table.total_rank != comb(par.dimension, p):
        raise AssertionError(f"{par.name()} p={p}: ranks sum to {table.total_rank}, not C({par.dimension},{p})")
    return table


def hodge_euler(par: ParabolicData, p: int) -> int:
    """Signed sum of E1 dimensions for the p-th exterior power of the cotangent bundle."""
    total = 0
    for row in gr_table(par, p, negate=True).rows:
        if not row.bwb.vanishes:
            total += (-1) ** row.bwb.degree * row.bwb.dimension * row.multiplicity
    return total


# ----------------------------------------------------------------------------
# reports


DEFINITE = "definite"
POTENTIALLY_CANCELLED = "potentially_cancelled"

AFFINE = "hochschild_affine"
NOT_AFFINE = "not_affine"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class HKRPiece:
    """An isotypic piece V^weight in H^q of the p-th exterior power, on E1."""

    p: int
    q: int
    weight: Weight
    dimension: int
    multiplicity: int
    lower_bound: int
    status: str

    @property
    def total_degree(self) -> int:
        return self.p + self.q


@dataclass(frozen=True)
class HKRReport:
    variety: str
    dimension: int
    p_range: tuple[int, int]
    truncated: bool
    pieces: tuple[HKRPiece, ...]
    computed_verdict: str
    theorem: str | None
    verdict: str
    closed_form: dict = field(default_factory=dict)
    exotic: bool = False

    def certain_h0(self, i: int) -> list[tuple[Weight, int]]:
        return [(x.weight, x.lower_bound) for x in self.pieces if x.q == 0 and x.p == i and x.lower_bound > 0]

    def higher(self) -> list[HKRPiece]:
        return [x for x in self.pieces if x.q > 0]

    @property
    def witnesses(self) -> list[HKRPiece]:
        return [x for x in self.higher() if x.status == DEFINITE]

    def by_total_degree(self) -> dict[int, list[HKRPiece]]:
        out: dict[int, list[HKRPiece]] = {}
        for x in self.pieces:
            out.setdefault(x.total_degree, []).append(x)
        return out

    def e1_dimensions(self) -> dict[int, int]:
        """Total E1 dimension in each total degree i = p + q."""
        return {i: sum(x.dimension * x.multiplicity for x in xs) for i, xs in sorted(self.by_total_degree().items())}


def _pieces_for_p(par: ParabolicData, p: int) -> list[HKRPiece]:
    mults: dict[int, Counter] = {}
    dims = {}
    for row in gr_table(par, p).rows:
        if row.bwb.vanishes:
            continue
        lam = row.bwb.dominant_weight
        mults.setdefault(row.bwb.degree, Counter())[lam] += row.multiplicity
        dims[lam] = row.bwb.dimension
    pieces = []
    for q in sorted(mults):
        for lam, m in sorted(mults[q].items(), key=lambda t: (-dims[t[0]], t[0])):
            bound = m - mults.get(q - 1, Counter())[lam] - mults.get(q + 1, Counter())[lam]
            status = DEFINITE if bound > 0 else POTENTIALLY_CANCELLED
            pieces.append(HKRPiece(p, q, lam, dims[lam], m, bound, status))
    return pieces


def hkr_report(par: ParabolicData, p_cap: int | None = None) -> HKRReport:
    top = par.dimension if p_cap is None else min(p_cap, par.dimension)
    pieces = []
    for p in range(top + 1):
        pieces.extend(_pieces_for_p(par, p))
    higher = [x for x in pieces if x.q > 0]
    if not higher:
        computed = AFFINE
    elif any(x.status == DEFINITE for x in higher):
        computed = NOT_AFFINE
    else:
        computed = INCONCLUSIVE
    if computed == AFFINE and top < par.dimension:
        # the unseen exterior powers could still carry higher cohomology
        computed = INCONCLUSIVE
    theorem = classify(par).theorem_class()
    if theorem is not None and computed == NOT_AFFINE:
        raise AssertionError(f"{par.name()}: definite higher cohomology contradicts the {theorem} vanishing theorem")
    verdict = AFFINE if theorem is not None else computed
    closed = {}
    cl = classify(par)
    if cl.cominuscule:
        closed = {"theorem": "cominuscule", "degrees": cominuscule_decomposition(par)}
    elif cl.adjoint and (par.is_maximal or par.is_type_a_adjoint):
        closed = {"theorem": "adjoint", "degrees": adjoint_decomposition(par)}
    return HKRReport(
        variety=par.name(),
        dimension=par.dimension,
        p_range=(0, top),
        truncated=top < par.dimension,
        pieces=tuple(pieces),
        computed_verdict=computed,
        theorem=theorem,
        verdict=verdict,
        closed_form=closed,
        exotic=cl.exotic_automorphism_flag,
    )


@dataclass(frozen=True)
class BottWitness:
    p: int
    q: int
    weight: Weight
    # the same class read as H^q(Omega^(dim - p) tensor the anticanonical bundle)
    omega_degree: int


def bott_vanishing_witness(par: ParabolicData, report: HKRReport | None = None) -> BottWitness | None:
    report = report or hkr_report(par)
    ws = report.witnesses
    if not ws:
        return None
    x = min(ws, key=lambda x: (x.p, x.q, -x.dimension, x.weight))
    return BottWitness(x.p, x.q, x.weight, par.dimension - x.p)


# ----------------------------------------------------------------------------
# Kostant's theorem and the closed forms


@dataclass(frozen=True)
class KostantPiece:
    w: WeylElement
    weight: Weight
    regular: bool


_COSETS: dict = {}


def cosets(par: ParabolicData) -> CosetSystem:
    key = id(par)
    hit = _COSETS.get(key)
    if hit is None or hit[0] is not par:
        hit = (par, minimal_coset_reps(par.root_system, par))
        _COSETS[key] = hit
    return hit[1]


def kostant_cohomology(par: ParabolicData, i: int) -> list[tuple[Weight, int, WeylElement]]:
    """(w.0, Levi dimension, w) over w in W^P of length i."""
    if not 0 <= i <= par.dimension:
        raise ValueError(f"degree {i} out of range 0..{par.dimension}")
    rho = par.root_system.rho
    zero = (0,) * par.root_system.rank
    out = []
    for w in cosets(par).by_length.get(i, ()):
        lam = dot_action(w, zero, rho)
        out.append((lam, levi_dim(par, lam), w))
    return out


def _check_fundamental(par: ParabolicData):
    if not (par.is_maximal or par.is_type_a_adjoint):
        raise ValueError(f"{par.name()}: Kostant sums need a maximal parabolic or the type-A adjoint one")
    if par.anticanonical != tuple(par.index * x for x in par.fundamental):
        raise ValueError(f"{par.name()}: anticanonical weight is not a multiple of the fundamental weight")


def kostant_sum(par: ParabolicData, i: int, j: int, restricted: bool = False) -> list[KostantPiece]:
    """Pieces w.0 + (index + j) varpi_k over w in W^P with l(w) = dim - i."""
    _check_fundamental(par)
    rs = par.root_system
    length = par.dimension - i
    if not 0 <= length <= par.dimension:
        return []
    shift = [(par.index + j) * x for x in par.fundamental]
    zero = (0,) * rs.rank
    out = []
    for w in cosets(par).by_length.get(length, ()):
        lam = tuple(a + b for a, b in zip(dot_action(w, zero, rs.rho), shift))
        reg = rs.is_regular(tuple(x + 1 for x in lam))
        if reg or not restricted:
            out.append(KostantPiece(w, lam, reg))
    return out


def cominuscule_decomposition(par: ParabolicData) -> dict[int, list[tuple[Weight, int]]]:
    if not classify(par).cominuscule:
        raise ValueError(f"{par.name()} is not cominuscule")
    out = {}
    for i in range(par.dimension + 1):
        out[i] = [(x.weight, g_dim(par.root_system, x.weight)) for x in kostant_sum(par, i, 0)]
    return out


def adjoint_decomposition(par: ParabolicData) -> dict[int, list[tuple[Weight, int]]]:
    """Global sections of the exterior powers of the tangent bundle, adjoint case.

    With dim = 2r + 1, the lower half uses the Kostant sums K(i - 2p, p) and
    K(i - 2p - 1, p + 1); the upper half uses K(i + 1 + 2p, -p - 1) and
    K(i + 2p, -p).
    """
    if not classify(par).adjoint:
        raise ValueError(f"{par.name()} is not adjoint")
    rs = par.root_system
    r = (par.dimension - 1) // 2
    out = {}
    for i in range(par.dimension + 1):
        terms = []
        if i <= r:
            terms += [(i - 2 * p, p) for p in range(i // 2 + 1)]
            terms += [(i - 2 * p - 1, p + 1) for p in range((i - 1) // 2 + 1)]
        else:
            terms += [(i + 1 + 2 * p, -p - 1) for p in range((2 * r - i) // 2 + 1)]
            terms += [(i + 2 * p, -p) for p in range((2 * r - i + 1) // 2 + 1)]
        pieces = []
        for a, b in terms:
            for x in kostant_sum(par, a, b, restricted=True):
                if not rs.is_dominant(x.weight):
                    raise AssertionError(f"{par.name()}: regular Kostant weight {x.weight} is not dominant")
                pieces.append((x.weight, g_dim(rs, x.weight)))
        out[i] = sorted(pieces, key=lambda t: (-t[1], t[0]))
    return out


def heisenberg_betti(r: int, i: int) -> int:
    """Betti numbers of the (2r+1)-dimensional Heisenberg Lie algebra."""
    if r < 1 or not 0 <= i <= 2 * r + 1:
        raise ValueError(f"need r >= 1 and 0 <= i <= {2 * r + 1}")
    if i <= r:
        return comb(2 * r, i) - (comb(2 * r, i - 2) if i >= 2 else 0)
    return comb(2 * r, i - 1) - (comb(2 * r, i + 1) if i + 1 <= 2 * r else 0)


# ----------------------------------------------------------------------------
# scans


@dataclass(frozen=True)
class ScanEntry:
    cartan_type: str
    node: int
    dimension: int
    classes: tuple[str, ...]
    exotic: bool
    computed_verdict: str
    theorem: str | None
    verdict: str
    truncated: bool
    error: str | None = None
    witness: tuple | None = None


def _scan_one(args) -> tuple[ScanEntry, HKRReport | None]:
    ct, node, p_cap = args
    par = build_parabolic(ct, [node])
    cl = classify(par)
    classes = tuple(n for n in ("minuscule", "cominuscule", "adjoint", "coadjoint") if getattr(cl, n))
    try:
        rep = hkr_report(par, p_cap)
    except ResourceCapError as exc:
        entry = ScanEntry(str(ct), node, par.dimension, classes, cl.exotic_automorphism_flag,
                          "not_computed", cl.theorem_class(), "not_computed", True, str(exc))
        return entry, None
    w = rep.witnesses
    wit = None
    if w:
        x = min(w, key=lambda x: (x.p, x.q, x.weight))
        wit = (x.p, x.q, x.weight)
    entry = ScanEntry(str(ct), node, par.dimension, classes, cl.exotic_automorphism_flag,
                      rep.computed_verdict, rep.theorem, rep.verdict, rep.truncated, None, wit)
    return entry, rep


def scan(max_rank: int, max_p: int | None = None, workers: int | None = None, with_reports: bool = False):
    if max_rank < 2:
        raise ValueError("max_rank must be at least 2")
    tasks = [(ct, k, max_p) for ct, k in maximal_parabolics(max_rank, min_rank=2)]
    workers = workers or int(os.environ.get("GRASSHKR_WORKERS", 0)) or 1
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_one, tasks))
    else:
        results = [_scan_one(t) for t in tasks]
    results.sort(key=lambda t: (t[0].cartan_type[0], int(t[0].cartan_type[1:]), t[0].node))
    if with_reports:
        return results
    return [e for e, _ in results]
