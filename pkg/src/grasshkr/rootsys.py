"""Simple root systems of types A-G in the Bourbaki labelling.

Weights are integer tuples in the fundamental-weight basis, roots are stored
both in simple-root and fundamental-weight coordinates.  Every pairing is
computed with integers only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import NamedTuple

import numpy as np

Weight = tuple[int, ...]

_RANK_RULES = {
    "A": (lambda n: n >= 1, "A_n needs n >= 1"),
    "B": (lambda n: n >= 2, "B_n needs n >= 2"),
    "C": (lambda n: n >= 2, "C_n needs n >= 2"),
    "D": (lambda n: n >= 3, "D_n needs n >= 3"),
    "E": (lambda n: n in (6, 7, 8), "E_n needs n in {6, 7, 8}"),
    "F": (lambda n: n == 4, "F_n needs n = 4"),
    "G": (lambda n: n == 2, "G_n needs n = 2"),
}


class RootSystemError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CartanType:
    series: str
    rank: int

    def __post_init__(self):
        rule = _RANK_RULES.get(self.series)
        if rule is None:
            raise RootSystemError(f"unknown series {self.series!r}, expected one of A-G")
        if not isinstance(self.rank, int) or not rule[0](self.rank):
            raise RootSystemError(f"invalid rank {self.rank!r}: {rule[1]}")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        text = text.strip()
        if len(text) < 2 or not text[1:].isdigit():
            raise RootSystemError(f"cannot parse Cartan type {text!r} (expected e.g. 'B4')")
        return cls(text[0].upper(), int(text[1:]))

    def __str__(self):
        return f"{self.series}{self.rank}"


def cartan_matrix(ct: CartanType) -> np.ndarray:
    """Cartan matrix with A[i, j] = <alpha_j, alpha_i^vee>."""
    n = ct.rank
    A = 2 * np.eye(n, dtype=np.int64)

    def bond(i, j, a_ij=-1, a_ji=-1):
        A[i, j] = a_ij
        A[j, i] = a_ji

    s = ct.series
    if s in "ABCD":
        for i in range(n - 1):
            bond(i, i + 1)
        if s == "B":
            bond(n - 2, n - 1, -1, -2)
        elif s == "C":
            bond(n - 2, n - 1, -2, -1)
        elif s == "D":
            A[n - 2, n - 1] = A[n - 1, n - 2] = 0
            bond(n - 3, n - 1)
    elif s == "E":
        for i, j in [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]:
            bond(i, j)
    elif s == "F":
        bond(0, 1)
        bond(1, 2, -1, -2)
        bond(2, 3)
    elif s == "G":
        bond(0, 1, -3, -1)
    return A


def symmetrizers(A: np.ndarray) -> tuple[int, ...]:
    """Minimal positive integers d_i with d_i A[i, j] = d_j A[j, i]."""
    n = A.shape[0]
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and A[i, j] != 0 and d[j] is None:
                d[j] = d[i] * int(A[i, j]) / int(A[j, i])
                stack.append(j)
    if any(x is None for x in d):
        raise RootSystemError("Dynkin diagram is not connected")
    m = lcm(*(x.denominator for x in d))
    ints = [int(x * m) for x in d]
    g = gcd(*ints)
    return tuple(x // g for x in ints)


@dataclass(frozen=True)
class Root:
    simple_coords: tuple[int, ...]
    weight_coords: Weight

    @property
    def height(self) -> int:
        return sum(self.simple_coords)

    @property
    def is_positive(self) -> bool:
        return self.height > 0

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.simple_coords), tuple(-c for c in self.weight_coords))


class DotResult(NamedTuple):
    """Outcome of moving lambda + rho into the dominant chamber."""

    length: int
    dominant: Weight


@dataclass(frozen=True, eq=False)
class RootSystem:
    cartan_type: CartanType
    cartan_matrix: np.ndarray
    symmetrizers: tuple[int, ...]
    positive_roots: tuple[Root, ...]
    # coroot_table[a] holds the simple-coroot coefficients of the a-th positive
    # coroot, so <lam, alpha^vee> = lam @ coroot_table[a]
    coroot_table: np.ndarray = field(repr=False)
    root_index: dict = field(repr=False)
    # (N, det) with A^-1 = N / det, N integral
    inverse_cartan: tuple = field(repr=False)

    @property
    def rank(self) -> int:
        return self.cartan_type.rank

    @property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        return self.positive_roots[: self.rank]

    @property
    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    @property
    def highest_short_root(self) -> Root:
        lengths = [self.norm2(a) for a in self.positive_roots]
        short = min(lengths)
        return max((a for a, l in zip(self.positive_roots, lengths) if l == short), key=lambda a: a.height)

    def norm2(self, alpha: Root) -> int:
        """(alpha, alpha) in the normalisation where (alpha_i, alpha_i) = 2 d_i."""
        c = np.asarray(alpha.simple_coords, dtype=np.int64)
        B = np.asarray(self.symmetrizers, dtype=np.int64)[:, None] * self.cartan_matrix
        return int(c @ B @ c)

    def root(self, weight_coords) -> Root | None:
        """Look up a root (positive or negative) by its weight coordinates."""
        key = tuple(int(x) for x in weight_coords)
        a = self.root_index.get(key)
        if a is not None:
            return self.positive_roots[a]
        a = self.root_index.get(tuple(-x for x in key))
        return None if a is None else -self.positive_roots[a]

    def check_weight(self, lam) -> Weight:
        lam = tuple(int(x) for x in lam)
        if len(lam) != self.rank:
            raise RootSystemError(f"weight {lam} has length {len(lam)}, expected {self.rank}")
        return lam

    def pairing(self, lam, alpha: Root) -> int:
        """<lam, alpha^vee> as an exact integer."""
        lam = self.check_weight(lam)
        if len(alpha.simple_coords) != self.rank:
            raise RootSystemError("root belongs to a root system of different rank")
        sign = 1
        if not alpha.is_positive:
            alpha, sign = -alpha, -1
        a = self.root_index[alpha.weight_coords]
        return sign * int(np.dot(lam, self.coroot_table[a]))

    def pairings(self, lam) -> np.ndarray:
        """Pairings of lam with every positive coroot, in positive_roots order."""
        return self.coroot_table @ np.asarray(self.check_weight(lam), dtype=np.int64)

    def to_simple(self, lam) -> tuple[int, ...]:
        """Simple-root coordinates of a weight in the root lattice."""
        lam = self.check_weight(lam)
        num, det = self.inverse_cartan
        x = num @ np.asarray(lam, dtype=np.int64)
        if np.any(x % det):
            raise RootSystemError(f"weight {lam} is not in the root lattice")
        return tuple(int(v) for v in x // det)

    def to_weight(self, simple) -> Weight:
        return tuple(int(v) for v in self.cartan_matrix @ np.asarray(simple, dtype=np.int64))

    def is_dominant(self, lam) -> bool:
        return all(x >= 0 for x in self.check_weight(lam))

    def is_regular(self, lam) -> bool:
        return bool(np.all(self.pairings(lam) != 0))

    def reflect(self, lam, i: int) -> Weight:
        """Simple reflection s_i (0-based node) on weight coordinates."""
        c = lam[i]
        return tuple(x - c * int(a) for x, a in zip(lam, self.cartan_matrix[:, i]))

    def __repr__(self):
        return f"RootSystem({self.cartan_type})"


def pairing(rs: RootSystem, lam, alpha: Root) -> int:
    """<lam, alpha^vee> as an exact integer."""
    return rs.pairing(lam, alpha)


def is_regular_dominant_after_rho(rs: RootSystem, lam) -> DotResult | None:
    """Return None if lam + rho is singular, else the dot-dominant translate."""
    lam = rs.check_weight(lam)
    v = tuple(x + 1 for x in lam)
    if not rs.is_regular(v):
        return None
    length = 0
    while True:
        for i, x in enumerate(v):
            if x < 0:
                v = rs.reflect(v, i)
                length += 1
                break
        else:
            return DotResult(length, tuple(x - 1 for x in v))


def _integer_inverse(A: np.ndarray) -> tuple[np.ndarray, int]:
    n = A.shape[0]
    M = [[Fraction(int(A[i, j])) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [x / pv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    inv = [row[n:] for row in M]
    det = lcm(*(x.denominator for row in inv for x in row))
    return np.array([[int(x * det) for x in row] for row in inv], dtype=np.int64), det


def _positive_roots(A: np.ndarray) -> list[tuple[int, ...]]:
    n = A.shape[0]
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for c in layer:
            w = A @ np.asarray(c)
            for i in range(n):
                # alpha_i-string through c: p steps down are roots, q = p - <c, alpha_i^vee>
                p = 0
                down = list(c)
                while True:
                    down[i] -= 1
                    if tuple(down) in found:
                        p += 1
                    else:
                        break
                if p - int(w[i]) > 0:
                    up = list(c)
                    up[i] += 1
                    up = tuple(up)
                    if up not in found:
                        found.add(up)
                        nxt.append(up)
        layer = nxt
    # height first, then reverse-lexicographic so alpha_1..alpha_n come first in order
    return sorted(found, key=lambda c: (sum(c), tuple(-x for x in c)))


def build_root_system(ct: CartanType | str) -> RootSystem:
    if isinstance(ct, str):
        ct = CartanType.parse(ct)
    A = cartan_matrix(ct)
    d = symmetrizers(A)
    D = np.asarray(d, dtype=np.int64)
    B = D[:, None] * A
    roots, coroots = [], []
    for c in _positive_roots(A):
        cv = np.asarray(c, dtype=np.int64)
        roots.append(Root(c, tuple(int(x) for x in A @ cv)))
        half = int(cv @ B @ cv) // 2
        # alpha^vee = sum_j c_j d_j / ((alpha, alpha)/2) alpha_j^vee
        num = cv * D
        assert np.all(num % half == 0)
        coroots.append(num // half)
    index = {r.weight_coords: a for a, r in enumerate(roots)}
    return RootSystem(ct, A, d, tuple(roots), np.asarray(coroots, dtype=np.int64), index, _integer_inverse(A))


_EXPECTED_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


def expected_positive_root_count(ct: CartanType) -> int:
    return _EXPECTED_COUNTS[ct.series](ct.rank)
