import pytest

from grasshkr.parabolic import ParabolicError, build_parabolic, classify, maximal_parabolics, nilradical_structure, parse_nodes

from conftest import par_of, rs_of

# (type, nodes): dimension, index, classes
# classical values: Grassmannians, quadrics, (co)adjoint varieties, spinor varieties
ROWS = [
    ("A4", (2,), 6, 5, {"minuscule", "cominuscule"}),
    ("A5", (3,), 9, 6, {"minuscule", "cominuscule"}),
    ("A3", (1, 3), 5, 3, {"adjoint", "coadjoint"}),
    ("B3", (1,), 5, 5, {"cominuscule", "coadjoint"}),
    ("B4", (4,), 10, 8, {"minuscule"}),
    ("B3", (2,), 7, 4, {"adjoint"}),
    ("B5", (2,), 15, 8, {"adjoint"}),
    ("C3", (1,), 5, 6, {"minuscule"}),
    ("C4", (4,), 10, 5, {"cominuscule"}),
    ("C4", (2,), 11, 7, {"coadjoint"}),
    ("D5", (1,), 8, 8, {"minuscule", "cominuscule"}),
    ("D5", (5,), 10, 8, {"minuscule", "cominuscule"}),
    ("D5", (2,), 13, 7, {"adjoint", "coadjoint"}),
    ("E6", (1,), 16, 12, {"minuscule", "cominuscule"}),
    ("E6", (2,), 21, 11, {"adjoint", "coadjoint"}),
    ("E7", (7,), 27, 18, {"minuscule", "cominuscule"}),
    ("E7", (1,), 33, 17, {"adjoint", "coadjoint"}),
    ("E8", (8,), 57, 29, {"adjoint", "coadjoint"}),
    ("F4", (1,), 15, 8, {"adjoint"}),
    ("F4", (4,), 15, 11, {"coadjoint"}),
    ("G2", (2,), 5, 3, {"adjoint"}),
    ("G2", (1,), 5, 5, {"coadjoint"}),
    ("C4", (3,), 12, 6, set()),
    ("B4", (3,), 12, 5, set()),
]


@pytest.mark.parametrize("name,nodes,dim,index,classes", ROWS)
def test_dimension_index_classes(name, nodes, dim, index, classes):
    par = par_of(name, nodes)
    assert par.dimension == dim
    assert par.index == index
    cl = classify(par)
    got = {n for n in ("minuscule", "cominuscule", "adjoint", "coadjoint") if getattr(cl, n)}
    assert got == classes


def test_type_a_adjoint_index_on_both_nodes():
    par = par_of("A3", (1, 3))
    assert par.bidegree == (3, 3)
    assert par.is_type_a_adjoint and not par.is_maximal


@pytest.mark.parametrize("ct,k", maximal_parabolics(6, min_rank=2))
def test_dimension_is_count_of_npp_and_cominuscule_is_abelian(ct, k):
    par = par_of(str(ct), k)
    rs = par.root_system
    assert par.dimension == sum(1 for a in rs.positive_roots if a.simple_coords[k - 1] > 0)
    cl = classify(par)
    assert cl.cominuscule == cl.abelian_nilradical
    if cl.adjoint:
        assert cl.heisenberg_nilradical
        assert str(nilradical_structure(par)).startswith("heisenberg")
    if cl.minuscule:
        # minuscule for G is cominuscule for the dual group
        assert all(rs.pairing(par.fundamental, a) <= 1 for a in rs.positive_roots)


@pytest.mark.parametrize("name,k", [("A4", 1), ("B4", 2), ("D5", 2), ("E6", 2), ("E7", 1), ("F4", 1), ("G2", 2)])
def test_adjoint_highest_root_minus_simple(name, k):
    rs = rs_of(name)
    par = par_of(name, k)
    if name == "A4":
        par = par_of(name, (1, 4))
    theta = rs.highest_root
    nodes = par.crossed
    for j in nodes:
        a = rs.simple_roots[j - 1]
        assert rs.pairing(theta.weight_coords, a) == 1
        d = rs.root(tuple(x - y for x, y in zip(theta.weight_coords, a.weight_coords)))
        assert d is not None and d.is_positive
        assert rs.pairing(d.weight_coords, a) < 0


def test_exotic_flags():
    flagged = {(str(ct), k) for ct, k in maximal_parabolics(5, min_rank=2) if classify(par_of(str(ct), k)).exotic_automorphism_flag}
    assert flagged == {("B2", 2), ("B3", 3), ("B4", 4), ("B5", 5), ("C2", 1), ("C3", 1), ("C4", 1), ("C5", 1), ("G2", 1)}


def test_levi_types():
    assert par_of("B3", 2).levi_type == "A1xA1"
    assert par_of("E7", 1).levi_type == "D6"
    assert par_of("F4", 4).levi_type == "B3"
    assert par_of("C4", 3).levi_type == "A2xA1"


def test_bad_input():
    with pytest.raises(ParabolicError):
        build_parabolic("A3", (4,))
    with pytest.raises(ParabolicError):
        build_parabolic("A3", ())
    with pytest.raises(ParabolicError):
        parse_nodes("1;3")
    assert parse_nodes("1,3") == (1, 3)


def test_maximal_parabolic_enumeration_skips_d3():
    got = maximal_parabolics(4, min_rank=2)
    names = {str(ct) for ct, _ in got}
    assert "D3" not in names and "D4" in names
    # A2-A4, B2-B4, C2-C4 have 2+3+4 each, then D4, F4, G2
    assert len(got) == 3 * 9 + 4 + 4 + 2
