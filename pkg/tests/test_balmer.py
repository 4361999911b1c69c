import pytest
from hypothesis import given, strategies as st

from eqchrom import balmer as bm
from eqchrom.balmer import INF
from eqchrom.errors import NotAdmissible, NotDownwardClosed, PreconditionViolated, SNotInFiniteDomain, TooLarge
from eqchrom.groups import build_lattice

import oracles

C2 = build_lattice("2:[1]")
V4 = build_lattice("2:[1,1]")
GROUPS = ["2:[1]", "2:[2]", "2:[1,1]", "3:[1]", "2:[2,1]"]


def fn(*vals, lat=C2):
    return bm.from_tuple(lat, vals)


def test_point_leq_examples():
    assert bm.point_leq(C2, ("S0", 3), ("S1", 2))
    assert not bm.point_leq(C2, ("S0", 2), ("S1", 2))
    for n in range(5):
        assert bm.point_leq(C2, ("S1", INF), ("S1", n))


@given(st.sampled_from(GROUPS), st.data())
def test_point_leq_is_a_partial_order(spec, data):
    lat = build_lattice(spec)
    pts = bm.points(lat, 3)
    P, Q, R = (data.draw(st.sampled_from(pts)) for _ in range(3))
    assert bm.point_leq(lat, P, P)
    if bm.point_leq(lat, P, Q) and bm.point_leq(lat, Q, P):
        assert P == Q
    if bm.point_leq(lat, P, Q) and bm.point_leq(lat, Q, R):
        assert bm.point_leq(lat, P, R)


def test_admissible_examples():
    assert bm.is_admissible(C2, fn(2, 1))
    res = bm.is_admissible(C2, fn(3, 1))
    assert not res and res.witness == ("S0", "S1")
    for spec in GROUPS:
        lat = build_lattice(spec)
        for n in range(4):
            assert bm.is_admissible(lat, bm.standard_functions(lat, "h", n))


def test_closed_set_examples():
    cs = bm.closed_set_of(C2, fn(1, 0))
    assert cs.thresholds == {"S0": 1, "S1": 0}
    empty = bm.closed_set_of(C2, fn(INF, INF))
    assert empty.thresholds == {} and bm.is_closed(C2, empty)
    # {e >= 0, C2 >= 2} is closed: (e, 3) lies below (C2, 2) and is present
    assert bm.is_closed(C2, bm.ClosedSet({"S0": 0, "S1": 2}, frozenset({"S0", "S1"})))
    res = bm.is_closed(C2, bm.ClosedSet({"S0": 3, "S1": 1}, frozenset({"S0", "S1"})))
    assert not res and res.witness == (("S0", 2), ("S1", 1))


@pytest.mark.parametrize("spec", GROUPS)
def test_admissible_iff_closed(spec):
    lat = build_lattice(spec)
    for f in bm.enumerate_admissible(lat, 2):
        assert bm.is_closed(lat, bm.closed_set_of(lat, f))
        assert bm.threshold_function(lat, bm.closed_set_of(lat, f)) == f


@given(st.sampled_from(GROUPS), st.data())
def test_property_closedness_matches_admissibility(spec, data):
    lat = build_lattice(spec)
    vals = data.draw(st.lists(st.sampled_from([0, 1, 2, 3, INF]), min_size=len(lat), max_size=len(lat)))
    f = bm.from_tuple(lat, vals)
    assert bool(bm.is_admissible(lat, f)) == bool(bm.is_closed(lat, bm.closed_set_of(lat, f)))


def test_enumeration_small_cases():
    got = {tuple(f[s.id] for s in C2) for f in bm.enumerate_admissible(C2, 1)}
    assert (INF, 0) not in got
    assert {(INF, INF), (1, 0), (0, INF)} <= got
    assert len(got) == len(oracles.closed_threshold_functions(2, [1], 1))
    trivial = build_lattice("2:[]")
    assert len(bm.enumerate_admissible(trivial, 2)) == 4
    with pytest.raises(TooLarge):
        bm.enumerate_admissible(C2, 9)


@pytest.mark.parametrize("spec", ["2:[1]", "2:[2]", "2:[1,1]", "3:[1,1]"])
def test_enumeration_matches_oracle(spec):
    lat = build_lattice(spec)
    p, ks = lat.spec.p, list(lat.spec.exponents)
    mine = {tuple(f[s.id] for s in lat) for f in bm.enumerate_admissible(lat, 3)}
    assert mine == set(oracles.closed_threshold_functions(p, ks, 3))


def test_family_examples():
    a = V4.find([(0, 0), (1, 0)])
    F = bm.make_family(V4, ("subeq", a.id))
    assert F.members == {"S0", a.id}
    alpha = next(c.character for c in V4.characters() if c.kernel.id == a.id)
    assert bm.make_family(V4, ("euler", alpha)) == F
    assert bm.make_family(V4, ("notsupeq", "S0")).members == frozenset()
    with pytest.raises(NotDownwardClosed):
        bm.make_family(V4, ("explicit", {"S1"}))


def test_family_calculus_v4():
    fams = bm.all_families(V4)
    assert len(fams) == 10
    n = 3
    for F in fams:
        for G in fams:
            U = bm.make_family(V4, ("union", F, G))
            I = bm.make_family(V4, ("intersect", F, G))
            assert bm.V(V4, U).points(V4, n) == bm.V(V4, F).points(V4, n) | bm.V(V4, G).points(V4, n)
            assert bm.V(V4, I).points(V4, n) == bm.V(V4, F).points(V4, n) & bm.V(V4, G).points(V4, n)


def test_standard_function_examples():
    h2 = bm.standard_functions(V4, "h", 2)
    assert [h2[s.id] for s in V4] == [2, 1, 1, 1, 0]
    assert set(bm.standard_functions(V4, "c", 0).values()) == {0}
    na = bm.standard_functions(C2, "n_alpha", (1,))
    assert na == {"S0": -1, "S1": INF}
    assert bm.is_admissible(C2, na)


def test_obstruction_examples():
    f = fn(1, 0)
    assert isinstance(bm.obstruction_check(C2, f, ["S0"]), bm.Obstructed)
    assert bm.obstruction_check(C2, f, ["S0"]).witness == ("S0", "S1")
    assert isinstance(bm.obstruction_check(C2, f, ["S0", "S1"]), bm.Allowed)
    assert isinstance(bm.obstruction_check(C2, f, ["S1"]), bm.Allowed)
    assert isinstance(bm.obstruction_check(C2, f, []), bm.Allowed)
    with pytest.raises(SNotInFiniteDomain):
        bm.obstruction_check(C2, fn(INF, 0), ["S0"])
    with pytest.raises(NotAdmissible):
        bm.obstruction_check(C2, fn(3, 0), [])


def test_fracture_examples():
    assert bm.fracture_set(C2, fn(1, 0), fn(2, 1)) == [("S0", 2), ("S1", 1)]
    assert bm.fracture_set(C2, fn(1, 0), fn(1, 0)) == []
    assert bm.fracture_set(C2, fn(0, INF), fn(2, INF)) == [("S0", 1), ("S0", 2)]
    with pytest.raises(PreconditionViolated) as exc:
        bm.fracture_set(C2, fn(INF, 0), fn(INF, 2))
    assert exc.value.details["clause"] == "admissible"


def test_ephi_examples():
    assert bm.ephi_behavior(C2, fn(INF, INF), "S1").kind == "Identity"
    assert bm.ephi_behavior(C2, fn(3, 3), "S1") == bm.EPhi("Localize", 3)
    assert bm.ephi_behavior(C2, fn(-1, -1), "S1").kind == "Zero"


@pytest.mark.parametrize("spec", GROUPS)
def test_height_strata_are_closed(spec):
    lat = build_lattice(spec)
    for n in range(4):
        assert bm.is_closed(lat, bm.height_stratum(lat, n))


@given(st.sampled_from(GROUPS), st.data())
def test_property_restriction_domain(spec, data):
    lat = build_lattice(spec)
    vals = data.draw(st.lists(st.integers(0, 4), min_size=len(lat), max_size=len(lat)))
    f = bm.from_tuple(lat, vals)
    S = data.draw(st.sets(st.sampled_from([s.id for s in lat])))
    assert bm.domain(bm.restrict(f, S), lambda v: v >= 0) == S


def test_type_height_shift():
    f = fn(2, INF)
    assert bm.type_to_height(f) == {"S0": 1, "S1": INF}
    assert bm.height_to_type(bm.type_to_height(f)) == f
