import itertools
from collections import Counter
from functools import lru_cache
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grasshkr.levirep import (
    ResourceCapError,
    WeightMultiset,
    decompose,
    dominant_multiplicities,
    exterior_power_weights,
    g_dim,
    levi_character,
    levi_dim,
    peel,
    wedge_arrays,
)
from grasshkr.weyl import all_elements, apply

from conftest import par_of, rs_of

SMALL = [("A3", (2,)), ("A3", (1, 3)), ("B3", (2,)), ("C3", (2,)), ("G2", (1,)), ("G2", (2,)), ("B2", (1, 2)), ("F4", (4,))]


@pytest.mark.parametrize("name,nodes", SMALL)
def test_wedge_dp_matches_subset_enumeration(name, nodes):
    par = par_of(name, nodes)
    roots = [b.simple_coords for b in par.np_positive]
    for p in range(min(par.dimension, 6) + 1):
        want = Counter(tuple(map(sum, zip(*c))) if c else (0,) * len(roots[0]) for c in itertools.combinations(roots, p))
        coords, cnts = wedge_arrays(par, p)
        got = Counter({tuple(int(x) for x in c): int(m) for c, m in zip(coords, cnts)})
        assert got == want
        assert int(cnts.sum()) == comb(par.dimension, p)


def test_wedge_out_of_range():
    with pytest.raises(ValueError):
        wedge_arrays(par_of("A3", 2), 5)


def test_resource_cap(monkeypatch):
    from grasshkr import levirep

    monkeypatch.setenv("GRASSHKR_MAX_KEYS", "10")
    par = par_of("C4", 3)
    levirep._LAYERS.pop(par, None)
    with pytest.raises(ResourceCapError):
        wedge_arrays(par, 6)
    monkeypatch.delenv("GRASSHKR_MAX_KEYS")
    levirep._LAYERS.pop(par, None)
    assert wedge_arrays(par, 6)[1].sum() == comb(12, 6)


# Kostant's multiplicity formula as an oracle for Freudenthal


def kostant_multiplicity(rs, lam, mu):
    pos = [a.simple_coords for a in rs.positive_roots]

    @lru_cache(maxsize=None)
    def partitions(v, start):
        if all(x == 0 for x in v):
            return 1
        if min(v) < 0 or start == len(pos):
            return 0
        total = 0
        k = 0
        while True:
            u = tuple(x - k * y for x, y in zip(v, pos[start]))
            if min(u) < 0:
                break
            total += partitions(u, start + 1)
            k += 1
        return total

    lr = tuple(x + 1 for x in lam)
    total = 0
    for w in all_elements(rs):
        v = tuple(a - b - 1 for a, b in zip(apply(w, lr), mu))
        total += (-1) ** w.length * partitions(rs.to_simple(v), 0)
    return total


def freudenthal(rs, lam):
    roots = tuple(a.simple_coords for a in rs.positive_roots)
    cart = tuple(tuple(int(x) for x in row) for row in rs.cartan_matrix)
    return dominant_multiplicities(cart, rs.symmetrizers, roots, tuple(lam))


CASES = [
    ("A2", (2, 1)), ("A2", (3, 0)), ("B2", (1, 1)), ("B2", (0, 3)), ("G2", (1, 1)), ("G2", (2, 0)),
    ("A3", (1, 1, 1)), ("B3", (1, 0, 1)), ("C3", (0, 1, 1)), ("C3", (2, 0, 0)),
]


@pytest.mark.parametrize("name,lam", CASES)
def test_freudenthal_against_kostant_formula(name, lam):
    rs = rs_of(name)
    A = rs.cartan_matrix
    got = freudenthal(rs, lam)
    assert got[(0,) * rs.rank] == 1
    for n, m in got.items():
        mu = tuple(int(x) for x in np.asarray(lam) - A @ np.asarray(n))
        assert rs.is_dominant(mu)
        assert m == kostant_multiplicity(rs, lam, mu), (n, mu)
    # and no dominant weight is missed
    for n in itertools.product(range(4), repeat=rs.rank):
        mu = tuple(int(x) for x in np.asarray(lam) - A @ np.asarray(n))
        if rs.is_dominant(mu) and n not in got:
            assert kostant_multiplicity(rs, lam, mu) == 0


# Levis: B4/1 has Levi B3, F4/4 has B3, C4/1 has C3, A4/4 has A3, B3/1 has B2
LEVI_PARS = [("B4", 1), ("F4", 4), ("C4", 1), ("A4", 4), ("B3", 1), ("G2", 1)]


@pytest.mark.parametrize("name,k", LEVI_PARS)
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_levi_character_size_is_weyl_dimension(name, k, data):
    par = par_of(name, k)
    lam = tuple(
        data.draw(st.integers(-3, 3)) if j in par.crossed else data.draw(st.integers(0, 2))
        for j in range(1, par.root_system.rank + 1)
    )
    ch = levi_character(par, lam)
    assert sum(ch.values()) == levi_dim(par, lam)
    num, _ = par.root_system.inverse_cartan
    assert max(ch, key=lambda w: int((num @ np.asarray(w)).sum())) == lam


@pytest.mark.parametrize("name,nodes", SMALL + [("C4", (3,)), ("B4", (3,))])
def test_decompose_round_trip(name, nodes):
    par = par_of(name, nodes)
    for p in range(par.dimension + 1):
        for g, wm in exterior_power_weights(par, p):
            dec = decompose(par, wm)
            back = Counter()
            for irr, m in dec.pieces:
                for w, k in levi_character(par, irr.highest_weight).items():
                    back[w] += m * k
            assert back == Counter(wm.entries)


def brauer_klimyk(par, lam, mu):
    # V(lam) x V(mu) = sum over weights nu of V(mu) of sign * V(dominant(lam + nu + rho) - rho)
    rs = par.root_system
    out = Counter()
    for nu, m in levi_character(par, mu).items():
        v = [a + b + 1 for a, b in zip(lam, nu)]
        sign = 1
        while True:
            bad = [j - 1 for j in par.levi_nodes if v[j - 1] <= 0]
            if not bad:
                break
            if v[bad[0]] == 0:
                sign = 0
                break
            v = list(rs.reflect(v, bad[0]))
            sign = -sign
        if sign:
            out[tuple(x - 1 for x in v)] += sign * m
    return {k: v for k, v in out.items() if v}


@pytest.mark.parametrize(
    "name,k,lam,mu",
    [("B4", 1, (0, 1, 0, 0), (0, 0, 0, 1)), ("F4", 4, (0, 0, 1, 0), (1, 0, 0, 0)), ("A4", 4, (1, 1, 0, 0), (0, 1, 1, 0)),
     ("C4", 1, (0, 0, 1, 0), (0, 1, 0, 1))],
)
def test_peel_tensor_product_against_brauer_klimyk(name, k, lam, mu):
    par = par_of(name, k)
    a, b = levi_character(par, lam), levi_character(par, mu)
    prod = Counter()
    for x, m in a.items():
        for y, n in b.items():
            prod[tuple(p + q for p, q in zip(x, y))] += m * n
    dominant = {w: m for w, m in prod.items() if par.is_levi_dominant(w)}
    assert dict(peel(par, dominant)) == brauer_klimyk(par, lam, mu)


def test_weight_multiset_negation():
    wm = WeightMultiset({(1, -2): 2, (0, 1): 1})
    assert wm.total == 3
    assert wm.negated().entries == {(-1, 2): 2, (0, -1): 1}


@pytest.mark.parametrize(
    "name,lam,dim",
    [("B3", (0, 1, 0), 21), ("B3", (1, 0, 0), 7), ("B3", (0, 0, 1), 8), ("G2", (1, 0), 7), ("G2", (0, 1), 14),
     ("F4", (0, 0, 0, 1), 26), ("F4", (1, 0, 0, 0), 52), ("E6", (1, 0, 0, 0, 0, 0), 27), ("E7", (0, 0, 0, 0, 0, 0, 1), 56),
     ("E8", (0, 0, 0, 0, 0, 0, 0, 1), 248), ("C4", (0, 0, 0, 1), 42), ("A3", (1, 1, 1), 64), ("D4", (0, 1, 0, 0), 28)],
)
def test_weyl_dimension(name, lam, dim):
    assert g_dim(rs_of(name), lam) == dim


def test_levi_dim():
    par = par_of("B3", 2)
    assert levi_dim(par, (1, -2, 2)) == 6
    assert levi_dim(par, (0, -4, 0)) == 1
    with pytest.raises(ValueError):
        levi_dim(par, (-1, 0, 0))
