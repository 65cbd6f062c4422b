"""Weyl group elements, minimal coset representatives and parabolic Bruhat graphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .rootsys import RootSystem, RootSystemError, Weight


@dataclass(frozen=True, eq=False)
class WeylElement:
    """An element of W acting on fundamental-weight coordinates.

    ``reduced_word`` lists 1-based simple reflection indices, leftmost first,
    so ``(2, 1)`` is s_2 s_1.  Equality is decided by the matrix.
    """

    matrix_action: np.ndarray = field(repr=False)
    reduced_word: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.reduced_word)

    def key(self) -> bytes:
        return self.matrix_action.tobytes()

    def __eq__(self, other):
        return isinstance(other, WeylElement) and np.array_equal(self.matrix_action, other.matrix_action)

    def __hash__(self):
        return hash(self.key())

    def word_str(self) -> str:
        return "e" if not self.reduced_word else "".join(f"s{i}" for i in self.reduced_word)


def simple_reflection_matrix(rs: RootSystem, i: int) -> np.ndarray:
    """Matrix of s_i (1-based) on weight coordinates: lam -> lam - lam_i alpha_i."""
    n = rs.rank
    M = np.eye(n, dtype=np.int64)
    M[:, i - 1] -= rs.cartan_matrix[:, i - 1]
    return M


def identity(rs: RootSystem) -> WeylElement:
    return WeylElement(np.eye(rs.rank, dtype=np.int64), ())


def from_word(rs: RootSystem, word) -> WeylElement:
    """Build the element s_{w1} ... s_{wk}; the word is not checked for reducedness."""
    M = np.eye(rs.rank, dtype=np.int64)
    for i in word:
        if not 1 <= i <= rs.rank:
            raise RootSystemError(f"simple reflection index {i} out of range 1..{rs.rank}")
        M = M @ simple_reflection_matrix(rs, i)
    return WeylElement(M, tuple(word))


def apply(w: WeylElement, lam) -> Weight:
    lam = np.asarray(lam, dtype=np.int64)
    if lam.shape != (w.matrix_action.shape[0],):
        raise RootSystemError(f"weight of length {lam.size} does not match rank {w.matrix_action.shape[0]}")
    return tuple(int(x) for x in w.matrix_action @ lam)


def dot_action(w: WeylElement, lam, rho) -> Weight:
    """w . lam = w(lam + rho) - rho."""
    shifted = tuple(int(a) + int(b) for a, b in zip(lam, rho))
    if len(shifted) != len(rho) or len(lam) != len(rho):
        raise RootSystemError("weight and rho have different lengths")
    return tuple(x - r for x, r in zip(apply(w, shifted), rho))


def inversion_count(rs: RootSystem, w: WeylElement) -> int:
    """Number of positive roots sent to negative roots."""
    images = rs.positive_roots
    W = np.asarray([a.weight_coords for a in images], dtype=np.int64) @ w.matrix_action.T
    count = 0
    for row in W:
        r = rs.root(row)
        if r is None:
            raise RootSystemError("matrix does not permute the roots")
        count += not r.is_positive
    return count


def all_elements(rs: RootSystem, limit: int = 2_000_000) -> list[WeylElement]:
    """Every element of W, by BFS over the orbit of rho (test oracle, small rank)."""
    start = identity(rs)
    rho = np.ones(rs.rank, dtype=np.int64)
    seen = {tuple(rho): start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for i in range(1, rs.rank + 1):
            M = w.matrix_action @ simple_reflection_matrix(rs, i)
            key = tuple(int(x) for x in M @ rho)
            if key not in seen:
                if len(seen) >= limit:
                    raise RootSystemError(f"Weyl group larger than {limit}")
                u = WeylElement(M, w.reduced_word + (i,))
                seen[key] = u
                queue.append(u)
    return list(seen.values())


@dataclass(frozen=True, eq=False)
class CosetSystem:
    parabolic: object
    representatives: tuple[WeylElement, ...]
    by_length: dict

    def __len__(self):
        return len(self.representatives)

    @property
    def max_length(self) -> int:
        return max(self.by_length)

    def lengths(self) -> list[int]:
        """Number of representatives of each length 0..max."""
        return [len(self.by_length.get(l, ())) for l in range(self.max_length + 1)]


def _in_wp(M: np.ndarray, levi_idx) -> bool:
    # w lies in W^P iff w(rho) is strictly positive on every Levi node
    v = M.sum(axis=1)
    return all(v[j] > 0 for j in levi_idx)


def minimal_coset_reps(rs: RootSystem, par) -> CosetSystem:
    """W^P, the elements whose left descents avoid the Levi nodes.

    The set is closed under prefixes, so a BFS that appends simple
    reflections on the right reaches all of it.  Words are built in
    lexicographic order, so each element keeps its lex-least reduced word.
    """
    levi = [j - 1 for j in par.levi_nodes]
    rho = np.ones(rs.rank, dtype=np.int64)
    start = identity(rs)
    seen = {tuple(rho)}
    layer = [start]
    reps = [start]
    while layer:
        nxt = {}
        for w in layer:
            for i in range(1, rs.rank + 1):
                M = w.matrix_action @ simple_reflection_matrix(rs, i)
                # length goes up iff w(alpha_i) > 0, i.e. the new rho-image is lower
                v = M @ rho
                key = tuple(int(x) for x in v)
                if key in seen or key in nxt:
                    continue
                diff = w.matrix_action @ rho - v
                if rs.root(diff) is None or not rs.root(diff).is_positive:
                    continue
                if _in_wp(M, levi):
                    nxt[key] = WeylElement(M, w.reduced_word + (i,))
        seen.update(nxt)
        layer = sorted(nxt.values(), key=lambda u: u.reduced_word)
        reps.extend(layer)
    by_length: dict[int, list[WeylElement]] = {}
    for w in reps:
        by_length.setdefault(w.length, []).append(w)
    return CosetSystem(par, tuple(reps), {k: tuple(v) for k, v in by_length.items()})


@dataclass(frozen=True)
class BruhatEdge:
    source: int
    target: int
    label: int | None


@dataclass(frozen=True, eq=False)
class BruhatGraph:
    cosets: CosetSystem
    nodes: tuple[WeylElement, ...]
    edges: tuple[BruhatEdge, ...]

    def lengths(self) -> list[int]:
        return [w.length for w in self.nodes]


def bruhat_graph(cs: CosetSystem) -> BruhatGraph:
    """Covering relations of the Bruhat order restricted to W^P.

    A cover w < w t with t = s_beta a reflection is labelled i when t is the
    simple reflection s_i, i.e. when the target is the source with s_i
    appended on the right.
    """
    par = cs.parabolic
    rs = par.root_system
    rho = np.ones(rs.rank, dtype=np.int64)
    nodes = cs.representatives
    index = {tuple(int(x) for x in w.matrix_action @ rho): k for k, w in enumerate(nodes)}
    reflections = []
    for a, beta in enumerate(rs.positive_roots):
        # s_beta(lam) = lam - <lam, beta^vee> beta
        R = np.eye(rs.rank, dtype=np.int64) - np.outer(np.asarray(beta.weight_coords), rs.coroot_table[a])
        label = a + 1 if a < rs.rank else None
        reflections.append((R, label))
    edges = []
    for k, w in enumerate(nodes):
        for R, label in reflections:
            M = w.matrix_action @ R
            t = index.get(tuple(int(x) for x in M @ rho))
            if t is not None and nodes[t].length == w.length + 1:
                edges.append(BruhatEdge(k, t, label))
    edges.sort(key=lambda e: (nodes[e.source].length, e.source, e.target))
    return BruhatGraph(cs, nodes, tuple(edges))
