"""Weight multisets of exterior powers of g/p and their Levi decompositions."""

from __future__ import annotations

import os
import weakref
from dataclasses import dataclass, field
from functools import lru_cache
from math import prod

import numpy as np

from . import _accel
from .parabolic import ParabolicData
from .rootsys import RootSystem, Weight


class ResourceCapError(RuntimeError):
    """Raised when a computation would exceed the configured size limits."""


class DecompositionError(RuntimeError):
    """Internal inconsistency while peeling irreducibles; indicates a bug."""


def max_keys() -> int:
    return int(os.environ.get("GRASSHKR_MAX_KEYS", 50_000_000))


@dataclass
class WeightMultiset:
    entries: dict = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def __len__(self):
        return len(self.entries)

    def negated(self) -> "WeightMultiset":
        return WeightMultiset({tuple(-x for x in k): m for k, m in self.entries.items()})


@dataclass(frozen=True)
class LeviIrrep:
    highest_weight: Weight
    rank: int


@dataclass
class Decomposition:
    pieces: list  # of (LeviIrrep, multiplicity)

    @property
    def total(self) -> int:
        return sum(ir.rank * m for ir, m in self.pieces)


# exterior-power tables, cached per parabolic: (coords, radices, strides, layers)
_LAYERS: "weakref.WeakKeyDictionary[ParabolicData, dict]" = weakref.WeakKeyDictionary()


def _npp_simple(par: ParabolicData) -> np.ndarray:
    return np.asarray([b.simple_coords for b in par.np_positive], dtype=np.int64)


def _wedge_layers(par: ParabolicData, p: int):
    """Sparse tables of all subset sums of NP+ of size up to p.

    Sums are encoded as mixed-radix integers in simple-root coordinates, each
    coordinate bounded by the same coordinate of the full sum of NP+.
    """
    state = _LAYERS.get(par)
    if state is not None and state["p"] >= p:
        return state
    S = _npp_simple(par)
    bound = S.sum(axis=0)
    radix = bound + 1
    if float(np.prod(radix.astype(float))) >= 2.0**62:
        raise ResourceCapError(f"{par.name()}: weight encoding does not fit in 64 bits")
    strides = np.concatenate(([1], np.cumprod(radix[:-1]))).astype(np.int64)
    offsets = S @ strides
    layers = [(np.zeros(1, dtype=np.int64), np.ones(1, dtype=np.int64))]
    layers += [(np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)) for _ in range(p)]
    cap = max_keys()
    for t, o in enumerate(offsets):
        for q in range(min(t + 1, p), 0, -1):
            ka, ca = layers[q]
            kb, cb = layers[q - 1]
            layers[q] = _accel.merge_shifted(ka, ca, kb, cb, o)
        if sum(k.size for k, _ in layers) > cap:
            raise ResourceCapError(
                f"{par.name()}: exterior power table exceeds {cap} entries (raise GRASSHKR_MAX_KEYS)"
            )
    state = {"p": p, "radix": radix, "strides": strides, "layers": layers}
    _LAYERS[par] = state
    return state


def wedge_arrays(par: ParabolicData, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Simple-root coordinates and multiplicities of all p-subset sums of NP+."""
    if not 0 <= p <= par.dimension:
        raise ValueError(f"p = {p} out of range 0..{par.dimension}")
    st = _wedge_layers(par, p)
    keys, cnts = st["layers"][p]
    coords = (keys[:, None] // st["strides"][None, :]) % st["radix"][None, :]
    return coords, cnts


def exterior_power_weights(par: ParabolicData, p: int, negate: bool = False):
    """List of (grading degree, WeightMultiset) for the weights of the p-th exterior power.

    With ``negate`` the weights of the p-th exterior power of the cotangent
    space are returned instead (gradings negative).
    """
    coords, cnts = wedge_arrays(par, p)
    A = par.root_system.cartan_matrix
    W = coords @ A.T
    crossed = [k - 1 for k in par.crossed]
    grades = coords[:, crossed].sum(axis=1)
    sign = -1 if negate else 1
    out = {}
    for g, w, m in zip(grades.tolist(), W.tolist(), cnts.tolist()):
        out.setdefault(sign * g, {})[tuple(sign * x for x in w)] = m
    return [(g, WeightMultiset(out[g])) for g in sorted(out, reverse=not negate)]


def levi_dominant_wedge(par: ParabolicData, p: int, negate: bool = False) -> dict:
    """{grading: {L-dominant weight: multiplicity}} for the p-th exterior power."""
    coords, cnts = wedge_arrays(par, p)
    A = par.root_system.cartan_matrix
    sign = -1 if negate else 1
    W = sign * (coords @ A.T)
    levi = [j - 1 for j in par.levi_nodes]
    keep = np.all(W[:, levi] >= 0, axis=1) if levi else np.ones(len(W), dtype=bool)
    crossed = [k - 1 for k in par.crossed]
    grades = sign * coords[keep][:, crossed].sum(axis=1)
    out = {}
    for g, w, m in zip(grades.tolist(), W[keep].tolist(), cnts[keep].tolist()):
        out.setdefault(g, {})[tuple(w)] = m
    return out


# Levi data and Freudenthal's formula, all in "depth" coordinates: a weight
# of V(lam) is lam - sum_j n_j alpha_j over Levi nodes j, stored as n.


@dataclass(frozen=True)
class LeviSystem:
    nodes: tuple[int, ...]  # 0-based indices into the ambient rank
    cartan: tuple  # A restricted to Levi nodes, as nested tuples
    sym: tuple[int, ...]  # symmetrizers on Levi nodes
    roots: tuple  # positive Levi roots, coefficients on Levi nodes
    coroots: tuple  # matching coroot coefficients


def levi_system(par: ParabolicData) -> LeviSystem:
    rs = par.root_system
    J = [j - 1 for j in par.levi_nodes]
    A = rs.cartan_matrix
    cart = tuple(tuple(int(A[i, j]) for j in J) for i in J)
    sym = tuple(rs.symmetrizers[j] for j in J)
    roots, coroots = [], []
    for a, r in enumerate(rs.positive_roots):
        if par.grading(r) == 0:
            roots.append(tuple(r.simple_coords[j] for j in J))
            coroots.append(tuple(int(rs.coroot_table[a, j]) for j in J))
    return LeviSystem(tuple(J), cart, sym, tuple(roots), tuple(coroots))


def _to_dominant(lam_J, cart, n):
    """Reflect the weight with depth n into the dominant chamber; return its depth."""
    n = list(n)
    r = len(n)
    while True:
        for j in range(r):
            v = lam_J[j] - sum(cart[j][k] * n[k] for k in range(r))
            if v < 0:
                n[j] += v
                break
        else:
            return tuple(n)


@lru_cache(maxsize=None)
def dominant_multiplicities(cart: tuple, sym: tuple, roots: tuple, lam_J: tuple) -> dict:
    """Freudenthal multiplicities of the dominant weights of V(lam) for a Levi.

    Returns {depth n: multiplicity} for every dominant weight lam - sum n_j alpha_j.
    """
    r = len(lam_J)
    if r == 0:
        return {(): 1}
    B = [[sym[i] * cart[i][j] for j in range(r)] for i in range(r)]

    def weight(n):
        return tuple(lam_J[j] - sum(cart[j][k] * n[k] for k in range(r)) for j in range(r))

    # dominant weights below lam, connected by positive roots
    zero = (0,) * r
    dom = {zero}
    stack = [zero]
    while stack:
        n = stack.pop()
        for c in roots:
            m = tuple(a + b for a, b in zip(n, c))
            if m not in dom and min(weight(m)) >= 0:
                dom.add(m)
                stack.append(m)
    order = sorted(dom, key=lambda n: (sum(n), n))
    lam_rho = [sym[j] * (lam_J[j] + 1) for j in range(r)]  # (lam + rho_L, alpha_j)
    mult = {zero: 1}
    lam_dot = [sum(c[j] * sym[j] * lam_J[j] for j in range(r)) for c in roots]  # (lam, alpha)
    Bc = [[sum(B[i][j] * c[j] for j in range(r)) for i in range(r)] for c in roots]
    for n in order[1:]:
        nBn = sum(n[i] * B[i][j] * n[j] for i in range(r) for j in range(r))
        denom = 2 * sum(n[j] * lam_rho[j] for j in range(r)) - nBn
        total = 0
        for a, c in enumerate(roots):
            k = 1
            while True:
                m = tuple(x - k * y for x, y in zip(n, c))
                if min(m) < 0:
                    break
                got = mult.get(_to_dominant(lam_J, cart, m), 0)
                if got == 0:
                    break
                # (mu + k alpha, alpha) with mu + k alpha = lam - sum m_j alpha_j
                pair = lam_dot[a] - sum(m[i] * Bc[a][i] for i in range(r))
                total += got * pair
                k += 1
        num = 2 * total
        if num % denom:
            raise DecompositionError(f"non-integral Freudenthal multiplicity at depth {n}")
        if num:
            mult[n] = num // denom
    return mult


def levi_dominant_character(par: ParabolicData, lam, ls: LeviSystem | None = None) -> dict:
    """{L-dominant weight: multiplicity} for the Levi irrep of highest weight lam."""
    ls = ls or levi_system(par)
    A = par.root_system.cartan_matrix
    lam_J = tuple(int(lam[j]) for j in ls.nodes)
    mults = dominant_multiplicities(ls.cartan, ls.sym, ls.roots, lam_J)
    cols = A[:, list(ls.nodes)]
    lam = np.asarray(lam, dtype=np.int64)
    return {tuple(int(x) for x in lam - cols @ np.asarray(n, dtype=np.int64)): m for n, m in mults.items()}


def levi_character(par: ParabolicData, lam) -> dict:
    """Full weight multiset of the Levi irrep, by W_L orbits of dominant weights."""
    rs = par.root_system
    out = {}
    for mu, m in levi_dominant_character(par, lam).items():
        orbit = {mu}
        stack = [mu]
        while stack:
            v = stack.pop()
            for j in par.levi_nodes:
                u = rs.reflect(v, j - 1)
                if u not in orbit:
                    orbit.add(u)
                    stack.append(u)
        for v in orbit:
            out[v] = out.get(v, 0) + m
    return out


def _dim_formula(coroots: np.ndarray, lam_plus_rho: np.ndarray, rho: np.ndarray) -> int:
    if coroots.size == 0:
        return 1
    num = prod(int(x) for x in coroots @ lam_plus_rho)
    den = prod(int(x) for x in coroots @ rho)
    q, r = divmod(num, den)
    assert r == 0
    return q


def levi_dim(par: ParabolicData, lam) -> int:
    lam = par.root_system.check_weight(lam)
    if not par.is_levi_dominant(lam):
        raise ValueError(f"{lam} is not dominant for the Levi of {par.name()}")
    rs = par.root_system
    rows = [a for a, r in enumerate(rs.positive_roots) if par.grading(r) == 0]
    C = rs.coroot_table[rows]
    mask = np.zeros(rs.rank, dtype=np.int64)
    mask[[j - 1 for j in par.levi_nodes]] = 1
    lam = np.asarray(lam, dtype=np.int64) * mask
    return _dim_formula(C, lam + mask, mask)


def g_dim(rs: RootSystem, lam) -> int:
    lam = rs.check_weight(lam)
    if not rs.is_dominant(lam):
        raise ValueError(f"{lam} is not dominant for {rs.cartan_type}")
    one = np.ones(rs.rank, dtype=np.int64)
    return _dim_formula(rs.coroot_table, np.asarray(lam, dtype=np.int64) + one, one)


def _height_key(rs: RootSystem, lam):
    # height scaled by det(A), so weights outside the root lattice are fine
    num, _ = rs.inverse_cartan
    return int((num @ np.asarray(lam, dtype=np.int64)).sum())


def peel(par: ParabolicData, dominant: dict) -> list:
    """Split a W_L-invariant multiset, given by its L-dominant part, into Levi irreps.

    Returns [(highest weight, multiplicity)] in peeling order (highest first).
    """
    rs = par.root_system
    ls = levi_system(par)
    remaining = dict(dominant)
    order = sorted(remaining, key=lambda w: (_height_key(rs, w), w), reverse=True)
    pieces = []
    for lam in order:
        m = remaining.get(lam, 0)
        if m == 0:
            continue
        if m < 0:
            raise DecompositionError(f"negative remainder {m} at {lam}")
        pieces.append((lam, m))
        for mu, k in levi_dominant_character(par, lam, ls).items():
            left = remaining.get(mu, 0) - m * k
            if left < 0:
                raise DecompositionError(f"remainder at {mu} would become {left}")
            remaining[mu] = left
    return pieces


def decompose(par: ParabolicData, wm: WeightMultiset) -> Decomposition:
    dom = {w: m for w, m in wm.entries.items() if par.is_levi_dominant(w)}
    pieces = [(LeviIrrep(lam, levi_dim(par, lam)), m) for lam, m in peel(par, dom)]
    dec = Decomposition(pieces)
    if dec.total != wm.total:
        raise DecompositionError(f"decomposition accounts for {dec.total} of {wm.total} weights")
    return dec
