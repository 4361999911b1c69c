import pytest
from hypothesis import given, strategies as st

from eqchrom.errors import GroupTooLarge, InvalidGroupSpec, NotASubgroup
from eqchrom.groups import PGroupSpec, build_lattice

import oracles

SMALL = ["2:[1]", "2:[2]", "2:[3]", "2:[1,1]", "2:[2,1]", "3:[1]", "3:[1,1]", "2:[1,1,1]"]


@pytest.mark.parametrize(
    "spec, count",
    [("2:[1,1]", 5), ("2:[2]", 3), ("2:[2,1]", 8), ("2:[3]", 4), ("2:[1,1,1]", 16), ("3:[1,1]", 6), ("2:[]", 1)],
)
def test_subgroup_counts(spec, count):
    assert len(build_lattice(spec)) == count


@pytest.mark.parametrize("spec", ["2:[2,1]", "2:[1,1]", "2:[3]", "3:[1,1]"])
def test_subgroups_match_brute_force_closure(spec):
    s = PGroupSpec.parse(spec)
    lat = build_lattice(s)
    assert {x.element_set for x in lat} == oracles.brute_subgroups(s.p, s.exponents)


def test_klein_four_shape():
    lat = build_lattice("2:[1,1]")
    assert [s.order for s in lat] == [1, 2, 2, 2, 4]
    assert len(lat.hasse) == 6


def test_c4_is_a_chain():
    lat = build_lattice("2:[2]")
    assert lat.hasse == (("S0", "S1"), ("S1", "S2"))


def test_ids_are_stable():
    a = [(s.id, s.elements) for s in build_lattice("2:[2,1]")]
    b = [(s.id, s.elements) for s in build_lattice("2:[2,1]")]
    assert a == b


def test_bad_specs():
    for text in ("4:[1]", "2:[1,2]", "2:[0]", "2-[1]"):
        with pytest.raises(InvalidGroupSpec):
            PGroupSpec.parse(text)


def test_group_too_large():
    with pytest.raises(GroupTooLarge):
        build_lattice("2:[5,4]")


def test_p_rank_examples():
    lat = build_lattice("2:[2,1]")
    assert lat.p_rank(lat.top) == 2
    c8 = build_lattice("2:[3]")
    c4 = next(s for s in c8 if s.order == 4)
    assert c8.p_rank(c8.bottom, c4) == 1
    v4 = build_lattice("2:[1,1]")
    assert v4.p_rank(v4.bottom, v4.top) == 2
    with pytest.raises(NotASubgroup):
        v4.p_rank("S1", "S2")


@pytest.mark.parametrize("spec", SMALL)
def test_p_rank_matches_coset_oracle_and_subadditive(spec):
    lat = build_lattice(spec)
    mods = lat.spec.moduli
    for B in lat:
        assert lat.p_rank(B) == oracles.rank_of(lat.p, B.element_set, mods) == lat.p_torsion_rank(B)
        for C in lat:
            if B <= C:
                assert lat.p_rank(B, C) == oracles.quotient_rank(lat.p, B.element_set, C.element_set, mods)
                for D in lat:
                    if B <= D <= C:
                        assert lat.p_rank(B, C) <= lat.p_rank(B, D) + lat.p_rank(D, C)


def test_character_examples():
    v4 = build_lattice("2:[1,1]")
    info = {c.character: c for c in v4.characters()}
    assert set(info[(1, 0)].kernel.elements) == {(0, 0), (0, 1)}
    assert info[(1, 0)].order == 2
    assert info[(0, 0)].kernel.id == v4.top.id and info[(0, 0)].order == 1
    c4 = build_lattice("2:[2]")
    assert c4.kernel((1,)).id == c4.bottom.id
    assert c4.character_order((1,)) == 4


@pytest.mark.parametrize("spec", SMALL)
def test_characters_count_and_kernels(spec):
    lat = build_lattice(spec)
    chars = lat.characters()
    assert len(chars) == lat.spec.order
    for c in chars:
        assert c.kernel.element_set in {s.element_set for s in lat}


def test_quotient_characters_examples():
    c4 = build_lattice("2:[2]")
    chars, basis = c4.quotient_characters("S1")
    assert sorted(chars) == [(0,), (2,)]
    assert basis == (((2,), 2),)
    v4 = build_lattice("2:[1,1]")
    chars, basis = v4.quotient_characters(v4.bottom)
    assert len(chars) == 4 and [o for _, o in basis] == [2, 2]
    chars, basis = v4.quotient_characters(v4.top)
    assert chars == [(0, 0)] and basis == ()


def test_section_examples():
    c4 = build_lattice("2:[2]")
    sec = c4.section("S1")
    assert sorted(sec.values()) == [(0,), (1,)]
    v4 = build_lattice("2:[1,1]")
    a = v4.find([(0, 0), (1, 0)])
    assert [s for s in v4.section_chars(a) if s != (0, 0)] == [(1, 0)]
    assert v4.section(a)[v4.restriction((0, 0), a)] == (0, 0)


@pytest.mark.parametrize("spec", SMALL)
def test_section_then_restriction_is_identity(spec):
    lat = build_lattice(spec)
    for B in lat:
        for key, s in lat.section(B).items():
            assert lat.restriction(s, B) == key
        assert len(lat.section(B)) == B.order


@pytest.mark.parametrize("spec", SMALL)
def test_hasse_closure_is_containment(spec):
    lat = build_lattice(spec)
    n = len(lat)
    reach = [[i == j for j in range(n)] for i in range(n)]
    for a, b in lat.hasse:
        reach[lat[a].index][lat[b].index] = True
    for k in range(n):
        for i in range(n):
            for j in range(n):
                reach[i][j] = reach[i][j] or (reach[i][k] and reach[k][j])
    assert [list(r) for r in lat.leq] == reach


@pytest.mark.parametrize("spec, verts, edges, arrows", [("2:[1]", 2, 1, 2), ("2:[2]", 3, 2, 4), ("2:[1,1]", 5, 6, 12)])
def test_sd_diagram(spec, verts, edges, arrows):
    sd = build_lattice(spec).sd_diagram()
    assert (len(sd.vertices), len(sd.edges), len(sd.arrows)) == (verts, edges, arrows)


@given(st.sampled_from(SMALL), st.data())
def test_property_generated_subgroups(spec, data):
    lat = build_lattice(spec)
    gens = data.draw(st.lists(st.sampled_from(lat.elements), max_size=3))
    H = lat.generated_by(gens) if gens else lat.bottom
    assert all(g in H for g in gens)
    assert lat.spec.order % H.order == 0
    assert lat.generated_by(H.generators).id == H.id
    assert len(H.generators) == lat.p_rank(H)
