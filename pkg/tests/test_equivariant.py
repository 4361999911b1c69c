import json

import pytest
from hypothesis import given, settings, strategies as st

from eqchrom import io
from eqchrom.equivariant import (
    FAIL, PASS, borel_model, check_axioms, decompose, factorization_consistency, multiplicative_c2_model,
)
from eqchrom.fgl import ARAKI, p_typical
from eqchrom.groups import PGroupSpec, build_lattice


@pytest.fixture(scope="module")
def F2():
    return p_typical(2, ARAKI, 2, 8)


def test_multiplicative_model_passes():
    rep = check_axioms(multiplicative_c2_model())
    assert rep.ok
    assert rep.to_json()["axioms"] == {"i": PASS, "ii": PASS, "iii": PASS, "iv": PASS}


def test_corrupted_model_fails_iii_and_iv():
    rep = check_axioms(multiplicative_c2_model(corrupt=True))
    assert rep.status("i") == PASS and rep.status("ii") == PASS
    assert rep.status("iv") == FAIL
    # b(e) = 2e differs from e_{sigma^2} = 0 by -2e, which is not in (e^2 + 2e)
    assert rep.status("iii") == FAIL
    iii = [e for e in rep.entries if e.axiom == "iii" and e.status == FAIL]
    assert iii[0].detail.endswith("-2*e")


@pytest.mark.parametrize("ks", [(1,), (2,), (1, 1)])
def test_borel_models_satisfy_axioms(F2, ks):
    D = borel_model(build_lattice(PGroupSpec(2, ks)), F2, N=5)
    assert check_axioms(D).ok
    assert set(factorization_consistency(D).values()) == {PASS}


def test_borel_model_c3():
    D = borel_model(build_lattice(PGroupSpec(3, (1,))), p_typical(3, ARAKI, 1, 6), N=4)
    assert check_axioms(D).ok


def test_efgl_json_round_trip(F2):
    D = borel_model(build_lattice(PGroupSpec(2, (2,))), F2, N=4)
    doc = D.to_json()
    text = io.dumps(doc)
    D2 = io.decode(json.loads(text), io.EFGL)
    assert io.dumps(D2.to_json()) == text
    assert check_axioms(D2).ok


def test_multiplicative_round_trip():
    D = multiplicative_c2_model(corrupt=True)
    D2 = io.decode(D.to_json(), io.EFGL)
    assert check_axioms(D2).failed == check_axioms(D).failed


@settings(max_examples=10)
@given(st.sampled_from([(2, (1,)), (2, (2,)), (2, (1, 1)), (3, (1,)), (2, (2, 1))]))
def test_property_decompose_is_bijective(case):
    p, ks = case
    lat = build_lattice(PGroupSpec(p, ks))
    _, basis = lat.quotient_characters(lat.bottom)
    coords = decompose(lat, basis)
    assert set(coords) == set(lat.all_characters)
    assert len(set(coords.values())) == len(coords)
