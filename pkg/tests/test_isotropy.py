import pytest
from hypothesis import given, settings, strategies as st

from eqchrom.errors import PrecisionTooLow
from eqchrom.groups import PGroupSpec, build_lattice
from eqchrom.isotropy import (
    Compatible, Incompatible, IsotropyDiagram, ROC2Monomial, UnknownMembership, edge_maps,
    geometric_fixed_points, mahowald_lift_degree_check, node_ring, ro_degree, strickland_table, vnm_check,
)

C2 = build_lattice(PGroupSpec(2, (1,)))
C4 = build_lattice(PGroupSpec(2, (2,)))


@pytest.fixture(scope="module")
def table():
    return strickland_table()


@pytest.fixture(scope="module")
def diagram():
    return IsotropyDiagram(C2, N=5)


def test_node_rings_c2():
    borel = node_ring(C2, "S0", N=3).describe()
    assert borel["series"] == ["e"] and borel["b_generators"] == []
    assert borel["relations"] == ["2*e + v1*e^2"]
    geom = node_ring(C2, "S1", N=3).describe()
    assert geom["inverted"] == ["e"] and geom["b_generators"] == ["b1", "b2", "b3"]
    assert geom["series"] == [] and geom["relations"] == []


def test_node_rings_c4():
    mid = node_ring(C4, "S1", N=3).describe()
    assert mid["inverted"] == ["e_1"] and mid["series"] == ["e_2"]
    top = node_ring(C4, "S2", N=3).describe()
    assert top["inverted"] == ["e_1", "e_2", "e_3"] and len(top["b_generators"]) == 9


def test_edge_map_c2():
    em = edge_maps(C2, "S0", "S1", N=3)
    doc = em.to_json()
    assert doc["images"]["e"] == "e"
    # b_i maps to the z^i coefficient of e +_F z, not to b_i
    assert doc["images"]["b1"] == "1 + v1*e + v1^2*e^2"
    assert doc["invertible"] == {"e": True}
    assert [r["status"] for r in doc["relations"]] == ["zero"]


def test_edge_map_c4_top():
    em = edge_maps(C4, "S1", "S2", N=3, strict=True)
    imgs = {k: v.text() for k, v in em.images().items()}
    assert imgs["b1_1"] == "b1_1" and imgs["b3_1"] == "b3_1"
    assert imgs["e_3"].startswith("e_1 + b1_1*e_2")
    assert all(em.to_json()["invertible"].values())


def test_limit_membership_examples(diagram):
    assert isinstance(diagram.limit_membership(diagram.parse_tuple({"S0": "1", "S1": "1"})), Compatible)
    bad = diagram.limit_membership(diagram.parse_tuple({"S0": "0", "S1": "1"}))
    assert isinstance(bad, Incompatible) and bad.edge == ("S0", "S1")
    # 2e restricts to a unit multiple of e, not certifiable at this precision
    unk = diagram.limit_membership(diagram.parse_tuple({"S0": "2*e", "S1": "0"}))
    assert isinstance(unk, UnknownMembership)


def test_limit_membership_degree_mismatch(diagram):
    res = diagram.limit_membership(diagram.parse_tuple({"S0": "e", "S1": "1"}))
    assert isinstance(res, Incompatible) and "degree" in res.reason


def test_strickland_table(table):
    assert table.ok
    assert all(isinstance(c, Compatible) for c in table.compatibility.values())
    assert table.relations["eq1"]["equals_two_series"]
    assert all(table.relations["q_certificates"]["checks"].values())
    assert table.q(2).geom.text() == "-2*e^-1"
    assert table.q(1).geom.is_zero()
    assert table.b(1, 0).geom.text() == "b1"


def test_q_certificates_are_shifts(table):
    for i in range(1, table.i_max + 1):
        cert = table.compatibility[f"q{i}"].to_json()["certificates"]["S0<S1"]
        assert cert == {"shift": "e" if i == 1 else f"e^{i}", "multipliers": ["1"]}


def test_strickland_precision_guard():
    with pytest.raises(PrecisionTooLow):
        strickland_table(i_max=5, N=4)


def test_geometric_fixed_points(table):
    assert geometric_fixed_points(table.q(1), "e").text() == "2"
    assert geometric_fixed_points(table.q(2), "C2").text() == "-2*e^-1"
    assert geometric_fixed_points(table.q(2), "e").text() == "v1"
    with pytest.raises(ValueError):
        geometric_fixed_points(table.q(1), "C4")


@pytest.mark.parametrize("n, unit_e, unit_g", [(1, "1", "-e^-1"), (2, "1", "-e^-2"), (3, "1", "-e^-4")])
def test_vnm(n, unit_e, unit_g):
    rep = vnm_check(n)
    assert rep.ok
    doc = rep.to_json()
    assert doc["phi_e_unit"] == unit_e and doc["phi_c2_unit"] == unit_g


def test_ro_degree_examples():
    assert ro_degree("a") == (0, -1)
    assert ro_degree("u") == (2, -2)
    assert ro_degree("u^-2*q4") == (2, 4)
    m = ROC2Monomial.parse("a^2*u^-1").normalize()
    assert ro_degree(m) == ro_degree("e") == (-2, 0)
    assert ROC2Monomial.parse("a*q1").normalize().is_zero()
    assert ROC2Monomial.parse("e*q1").normalize().is_zero()
    assert all(mahowald_lift_degree_check(n) for n in range(1, 5))


TOKENS = ["a", "u", "e", "q1", "q2", "q4", "v1", "v2", "b1", "b2,1"]
mono = st.lists(st.tuples(st.sampled_from(TOKENS), st.integers(-2, 3)), max_size=4).map(
    lambda ts: ROC2Monomial.parse("*".join(f"{t}^{k}" for t, k in ts) or "1")
)


@settings(max_examples=40)
@given(mono, mono)
def test_property_ro_degree_is_monoid_map(x, y):
    dx, dy = ro_degree(x), ro_degree(y)
    assert ro_degree(x * y) == (dx[0] + dy[0], dx[1] + dy[1])
    assert ro_degree(ROC2Monomial.parse("1")) == (0, 0)
