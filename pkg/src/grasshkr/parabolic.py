"""Parabolic subgroups given by crossed nodes of the Dynkin diagram."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

import numpy as np

from .rootsys import CartanType, Root, RootSystem, RootSystemError, Weight, build_root_system


class ParabolicError(ValueError):
    pass


@dataclass(frozen=True)
class Classification:
    minuscule: bool
    cominuscule: bool
    adjoint: bool
    coadjoint: bool
    exotic_automorphism_flag: bool
    heisenberg_nilradical: bool
    abelian_nilradical: bool

    def theorem_class(self) -> str | None:
        """Name of the class that puts the variety under the vanishing theorem."""
        for name in ("cominuscule", "minuscule", "adjoint", "coadjoint"):
            if getattr(self, name):
                return name
        return None


@dataclass(frozen=True)
class NilradicalStructure:
    """``kind`` is 'abelian', 'heisenberg' (value r) or 'general' (value = depth)."""

    kind: str
    value: int | None = None

    def __str__(self):
        if self.kind == "abelian":
            return "abelian"
        if self.kind == "heisenberg":
            return f"heisenberg(r={self.value})"
        return f"general(depth={self.value})"


@dataclass(frozen=True)
class LeviComponent:
    nodes: tuple[int, ...]
    type_name: str


@dataclass(frozen=True, eq=False)
class ParabolicData:
    root_system: RootSystem
    crossed: tuple[int, ...]
    levi_nodes: tuple[int, ...]
    np_positive: tuple[Root, ...]
    levi_positive: tuple[Root, ...]
    gradings: tuple[int, ...] = field(repr=False)

    @property
    def cartan_type(self) -> CartanType:
        return self.root_system.cartan_type

    @property
    def dimension(self) -> int:
        return len(self.np_positive)

    @property
    def is_maximal(self) -> bool:
        return len(self.crossed) == 1

    @property
    def is_type_a_adjoint(self) -> bool:
        n = self.cartan_type.rank
        return self.cartan_type.series == "A" and n >= 2 and self.crossed == (1, n)

    @property
    def grading_coweight(self) -> tuple[int, ...]:
        """Coefficients of the grading coweight on the fundamental coweights."""
        return tuple(int(k in self.crossed) for k in range(1, self.cartan_type.rank + 1))

    @cached_property
    def anticanonical(self) -> Weight:
        """Sum of NP+ in weight coordinates; supported on crossed nodes."""
        n = self.cartan_type.rank
        return tuple(sum(b.weight_coords[i] for b in self.np_positive) for i in range(n))

    @property
    def bidegree(self) -> tuple[int, ...]:
        return tuple(self.anticanonical[k - 1] for k in self.crossed)

    @property
    def index(self) -> int:
        """Fano index: gcd of the anticanonical coefficients on crossed nodes."""
        return gcd(*self.bidegree)

    @property
    def fundamental(self) -> Weight:
        """Sum of the fundamental weights of the crossed nodes."""
        return self.grading_coweight

    @cached_property
    def levi_rank_data(self) -> tuple[LeviComponent, ...]:
        return tuple(
            LeviComponent(c, _identify(self.root_system.cartan_matrix, c)) for c in _components(self)
        )

    @property
    def levi_type(self) -> str:
        return "x".join(c.type_name for c in self.levi_rank_data) or "torus"

    def grading(self, root: Root) -> int:
        return sum(root.simple_coords[k - 1] for k in self.crossed)

    def is_levi_dominant(self, lam) -> bool:
        return all(lam[j - 1] >= 0 for j in self.levi_nodes)

    def name(self) -> str:
        return f"{self.cartan_type}/{','.join(map(str, self.crossed))}"

    def __repr__(self):
        return f"ParabolicData({self.name()})"


def _components(par: ParabolicData):
    A = par.root_system.cartan_matrix
    left = set(par.levi_nodes)
    comps = []
    while left:
        start = min(left)
        comp, stack = {start}, [start]
        while stack:
            i = stack.pop()
            for j in list(left - comp):
                if A[i - 1, j - 1] != 0:
                    comp.add(j)
                    stack.append(j)
        left -= comp
        comps.append(tuple(sorted(comp)))
    return comps


def _identify(A: np.ndarray, nodes) -> str:
    """Cartan type name of a connected subdiagram."""
    n = len(nodes)
    idx = [k - 1 for k in nodes]
    sub = A[np.ix_(idx, idx)]
    prods = {(i, j): int(sub[i, j] * sub[j, i]) for i in range(n) for j in range(n) if i != j}
    if any(v == 3 for v in prods.values()):
        return "G2"
    degree = [sum(1 for j in range(n) if j != i and sub[i, j] != 0) for i in range(n)]
    double = [(i, j) for (i, j), v in prods.items() if v == 2 and i < j]
    if double:
        if n == 2:
            return "B2"
        i, j = double[0]
        ends = [k for k in range(n) if degree[k] == 1]
        if i not in ends and j not in ends:
            return "F4"
        end, other = (i, j) if i in ends else (j, i)
        # |A[end, other]| = 2 means alpha_end is the long root
        return f"C{n}" if abs(sub[end, other]) == 1 else f"B{n}"
    if max(degree, default=0) <= 2:
        return f"A{n}"
    centre = degree.index(3)
    arms = []
    for start in (j for j in range(n) if sub[centre, j] != 0 and j != centre):
        prev, cur, length = centre, start, 1
        while True:
            nxt = [k for k in range(n) if k not in (prev, cur) and sub[cur, k] != 0]
            if not nxt:
                break
            prev, cur, length = cur, nxt[0], length + 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return f"D{n}"
    return f"E{n}"


def build_parabolic(rs: RootSystem | CartanType | str, crossed) -> ParabolicData:
    if not isinstance(rs, RootSystem):
        rs = build_root_system(rs)
    n = rs.rank
    crossed = tuple(sorted({int(k) for k in crossed}))
    if not crossed:
        raise ParabolicError("crossed node set must be nonempty")
    bad = [k for k in crossed if not 1 <= k <= n]
    if bad:
        raise ParabolicError(f"invalid node(s) {bad} for {rs.cartan_type} (nodes are 1..{n})")
    levi = tuple(k for k in range(1, n + 1) if k not in crossed)
    npp, levi_pos, grads = [], [], []
    for a in rs.positive_roots:
        g = sum(a.simple_coords[k - 1] for k in crossed)
        if g > 0:
            npp.append(a)
            grads.append(g)
        else:
            levi_pos.append(a)
    return ParabolicData(rs, crossed, levi, tuple(npp), tuple(levi_pos), tuple(grads))


def parse_nodes(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise ParabolicError(f"cannot parse node list {text!r} (expected e.g. '3' or '1,3')") from None


def _is_exotic(par: ParabolicData) -> bool:
    if not par.is_maximal:
        return False
    ct, k = par.cartan_type, par.crossed[0]
    return (ct.series == "B" and k == ct.rank) or (ct.series, k) in {("C", 1), ("G", 1)}


def _sum_of_roots_in_npp(par: ParabolicData):
    """Pairs (a, b) of NP+ indices whose sum is a root, and the set of such sums."""
    rs = par.root_system
    sums = {}
    for a, x in enumerate(par.np_positive):
        for b in range(a + 1, len(par.np_positive)):
            y = par.np_positive[b]
            s = tuple(p + q for p, q in zip(x.weight_coords, y.weight_coords))
            if s in rs.root_index:
                sums.setdefault(s, []).append((a, b))
    return sums


def classify(par: ParabolicData) -> Classification:
    rs = par.root_system
    lam = par.fundamental
    pair = rs.pairings(lam)
    minuscule = bool(np.all(pair <= 1))
    cominuscule = all(par.grading(a) <= 1 for a in rs.positive_roots)
    adjoint = lam == rs.highest_root.weight_coords
    coadjoint = lam == rs.highest_short_root.weight_coords
    sums = _sum_of_roots_in_npp(par)
    abelian = not sums
    heisenberg = False
    if len(sums) == 1:
        (centre, pairs), = sums.items()
        central = all(
            tuple(p + q for p, q in zip(centre, b.weight_coords)) not in rs.root_index for b in par.np_positive
        )
        partnered = {i for pr in pairs for i in pr}
        heisenberg = central and len(partnered) == par.dimension - 1
    return Classification(
        minuscule=minuscule,
        cominuscule=cominuscule,
        adjoint=adjoint,
        coadjoint=coadjoint,
        exotic_automorphism_flag=_is_exotic(par),
        heisenberg_nilradical=heisenberg,
        abelian_nilradical=abelian,
    )


def nilradical_structure(par: ParabolicData) -> NilradicalStructure:
    grads = par.gradings
    top = max(grads)
    if top == 1:
        return NilradicalStructure("abelian")
    if top == 2 and grads.count(2) == 1 and par.dimension % 2 == 1:
        return NilradicalStructure("heisenberg", (par.dimension - 1) // 2)
    return NilradicalStructure("general", top)


def maximal_parabolics(max_rank: int, min_rank: int = 1):
    """(CartanType, node) for every maximal parabolic of a simple group up to max_rank.

    D3 is skipped since it coincides with A3.
    """
    out = []
    for series in "ABCDEFG":
        for n in range(max(min_rank, 1), max_rank + 1):
            try:
                ct = CartanType(series, n)
            except RootSystemError:
                continue
            if series == "D" and n == 3:
                continue
            for k in range(1, n + 1):
                out.append((ct, k))
    return out
