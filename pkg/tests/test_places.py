import pytest

import oracles
from sspcm.arith import primes_below
from sspcm.catalog import WeilNumberInstance, catalog_field, enumerate_catalog
from sspcm.places import (INERT, RAMIFIED, SPLIT, decomposition_group, frobenius_valuation, governing_delta,
                          inertia_group, splitting_profile)
from sspcm.surface import surface_for


def _m(inst):
    return tuple(int(c) for c in catalog_field(inst.p, inst.family).m)


@pytest.mark.parametrize("p,fam,beh", [
    (7, "sqrtP_zeta3", SPLIT), (5, "sqrtP_zeta3", INERT), (3, "sqrtP_zeta3", INERT),
    (2, "sqrtP_zeta3", INERT), (2, "sqrt2_zeta24_plus", INERT), (5, "sqrtP_zeta8", SPLIT),
    (7, "sqrtP_zeta8", INERT), (11, "sqrtP_zeta12", INERT), (13, "sqrtP_zeta12", SPLIT),
    (5, "sqrt5_zeta5_plus", RAMIFIED), (3, "sqrtP", INERT), (13, "sqrtP", SPLIT),
])
def test_behaviour_examples(p, fam, beh):
    prof = splitting_profile(WeilNumberInstance(p, fam))
    assert prof.behavior == beh
    assert (prof.e_v, prof.f_v) == (2, 1)


def test_p2_note_explains_inertness():
    prof = splitting_profile(WeilNumberInstance(2, "sqrtP_zeta3"))
    assert prof.behavior == INERT
    assert any("inert" in n for n in prof.notes)


@pytest.mark.parametrize("p", primes_below(400))
def test_profile_matches_oracle(p):
    for inst in enumerate_catalog(p):
        m = _m(inst)
        prof = splitting_profile(inst)
        e, f, g = oracles.efg(m, p)
        assert [(w.e, w.f) for w in prof.places] == [(e, f)] * g
        assert prof.behavior == oracles.relative_behaviour(m, p)
        assert sum(w.e * w.f for w in prof.places) == 4


@pytest.mark.parametrize("p", primes_below(200))
def test_groups_and_cosets(p):
    for inst in enumerate_catalog(p):
        prof = splitting_profile(inst)
        surface = surface_for(inst)
        d, i = decomposition_group(inst), inertia_group(inst)
        assert i <= d
        w = prof.places[0]
        assert len(d) == w.e * w.f and len(i) == w.e
        assert frozenset().union(*(x.coset for x in prof.places)) == frozenset(range(4))
        for x in prof.places:
            assert len(x.residue_cosets) == x.f
            assert frozenset().union(*x.residue_cosets) == x.coset
            assert 0 in x.residue_cosets[0] or x.label != "w"
        # complex conjugation fixes w exactly when v does not split in L
        c = surface.group.complex_conjugation
        conj_w = frozenset(surface.group.mul(c, a) for a in prof.place("w").coset)
        assert (conj_w == prof.place("w").coset) == (prof.behavior != SPLIT)
        if prof.behavior == SPLIT:
            assert conj_w == prof.place("wbar").coset


@pytest.mark.parametrize("p", primes_below(1000))
def test_frobenius_valuations(p):
    # pi^2 / p is a root of unity, so ord_w(pi) = ord_w(p) / 2 = e_w / 2
    for inst in enumerate_catalog(p):
        prof = splitting_profile(inst)
        want = 2 if inst.family.startswith("sqrt5") else 1
        for w in prof.places:
            assert w.frob_valuation == w.e // 2 == want
            assert frobenius_valuation(inst, w.label) == want
        assert sum(w.f * w.frob_valuation for w in prof.places) == 2  # ord_p N(pi) = ord_p p^2


def test_oracle_root_of_unity_behind_valuation_rule():
    for p in (2, 3, 5, 7):
        for inst in enumerate_catalog(p):
            if inst.concern:
                assert oracles.weil_root_of_unity_order(inst.minpoly, p) is not None


def test_governing_subfields():
    assert governing_delta(WeilNumberInstance(7, "sqrtP_zeta3")) == -3
    assert governing_delta(WeilNumberInstance(3, "sqrtP_zeta3")) == -1
    assert governing_delta(WeilNumberInstance(7, "sqrtP_zeta8")) == -1
    assert governing_delta(WeilNumberInstance(2, "sqrt2_zeta24_plus")) == -3
    assert governing_delta(WeilNumberInstance(5, "sqrt5_zeta5_plus")) is None
