import random
from fractions import Fraction

import pytest

import oracles
from helpers import cm_type_roots
from sspcm.arith import primes_below
from sspcm.catalog import WeilNumberInstance, enumerate_catalog
from sspcm.cmtypes import CMTypeAnalysis
from sspcm.places import INERT, splitting_profile
from sspcm.rrc import reflex_residue_check, rrc_verdict, shimura_taniyama_check, variety_slopes
from sspcm.surface import surface_for


def test_reflex_residue_check():
    assert reflex_residue_check(1, 7)
    assert not reflex_residue_check(2, 7)
    assert reflex_residue_check(2, 49)
    assert reflex_residue_check(2, 7 ** 4)
    assert not reflex_residue_check(2, 7 ** 3)
    with pytest.raises(ValueError):
        reflex_residue_check(1, 12)


def test_sqrt7zeta3_witnesses_are_the_half_slope_types():
    surface = surface_for(WeilNumberInstance(7, "sqrtP_zeta3"))
    v = rrc_verdict(surface)
    assert v.q == 7 and v.satisfiable
    got = {frozenset(w.to_list()) for w in v.witnesses}
    assert got == {frozenset({"id", "(-,-)"}), frozenset({"(-,+)", "(+,-)"})}
    for t in v.types:
        assert t.reflex_ok  # 7 splits in Q(sqrt -3) and Q(sqrt -21)
        assert t.rrc == t.st_ok


def test_q_must_be_power_of_p():
    surface = surface_for(WeilNumberInstance(7, "sqrtP_zeta3"))
    with pytest.raises(ValueError):
        rrc_verdict(surface, 5)
    with pytest.raises(ValueError):
        rrc_verdict(surface, 14)


def test_variety_slopes_are_half_over_prime_field():
    for p in (2, 3, 5, 7, 13):
        for inst in enumerate_catalog(p):
            surface = surface_for(inst)
            assert set(variety_slopes(surface, splitting_profile(inst)).values()) == {Fraction(1, 2)}


def test_shimura_taniyama_uses_given_slopes():
    inst = WeilNumberInstance(7, "sqrtP_zeta3")
    surface, prof = surface_for(inst), splitting_profile(inst)
    a = CMTypeAnalysis(surface, prof)
    lopsided = {"w": Fraction(1), "wbar": Fraction(0)}
    hits = [r.phi for r in a.reports if shimura_taniyama_check(r.phi, prof, lopsided)]
    assert len(hits) == 1 and hits[0].names == ("id", "(-,+)")


def _sample(pred, k=10, seed=7):
    ps = [p for p in primes_below(1000) if pred(p)]
    rng = random.Random(seed)
    return sorted(rng.sample(ps, min(k, len(ps))))


CLASSES = [
    ("sqrtP_zeta8", lambda p: p % 4 == 3),
    ("sqrtP_zeta3", lambda p: p % 12 in (5, 11)),
    ("sqrtP_zeta12", lambda p: p % 12 in (5, 11)),
    ("sqrtP", lambda p: p % 12 in (5, 11)),
]


@pytest.mark.parametrize("fam,pred", CLASSES, ids=[c[0] for c in CLASSES])
def test_reflex_failures_follow_oracle_residue_degree(fam, pred):
    # at inert v every type has slope 1/2; the type fails over F_p exactly when
    # p is inert in its (oracle-computed) reflex field
    for p in _sample(pred):
        inst = WeilNumberInstance(p, fam)
        surface = surface_for(inst)
        prof = splitting_profile(inst)
        assert prof.behavior == INERT
        a = CMTypeAnalysis(surface, prof)
        at_p, at_p2 = rrc_verdict(surface, p, a), rrc_verdict(surface, p * p, a)
        n_fail = 0
        for rep, t1, t2 in zip(a.reports, at_p.types, at_p2.types):
            deg, d = oracles.reflex_field(*cm_type_roots(surface, rep.phi))
            assert deg == 2
            inert_in_reflex = oracles.quadratic_behaviour(d, p) == "inert"
            assert t1.st_ok
            assert t1.failing == (["reflex-residue"] if inert_in_reflex else [])
            assert t2.rrc
            n_fail += inert_in_reflex
        assert n_fail == 2  # one conjugate pair


@pytest.mark.parametrize("p", primes_below(1000)[::4])
def test_rrc_satisfiable_at_p_squared(p):
    for inst in enumerate_catalog(p):
        assert rrc_verdict(surface_for(inst), p * p).satisfiable


def test_json_shape():
    v = rrc_verdict(surface_for(WeilNumberInstance(5, "sqrtP_zeta3")), 5)
    js = v.to_json()
    assert js["q"] == 5 and js["satisfiable"] is True
    assert len(js["cm_types"]) == 4
    assert sum(1 for t in js["cm_types"] if t["failing"] == ["reflex-residue"]) == 2
