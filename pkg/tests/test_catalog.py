import cmath
import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from sspcm.arith import primes_below
from sspcm.catalog import (FAMILIES, LmfdbClass, WeilNumberInstance, canonical_square_roots, catalog_field,
                           closed_form_conjugates, enumerate_catalog, format_lmfdb_label, frobenius_element,
                           identify_catalog_member, is_admissible, is_irreducible_quartic, parse_lmfdb_label,
                           root_of_unity_order, verify_weil)
from sspcm.numfield import poly_eval


def _families(p):
    return [i.family for i in enumerate_catalog(p)]


def test_catalog_at_small_primes():
    assert _families(2) == ["sqrtP", "sqrtP_zeta3", "sqrtP_zeta12", "sqrt2_zeta24_plus", "sqrt2_zeta24_minus"]
    assert _families(3) == ["sqrtP", "sqrtP_zeta3", "sqrtP_zeta8"]
    assert _families(5) == ["sqrtP", "sqrtP_zeta3", "sqrtP_zeta8", "sqrtP_zeta12",
                            "sqrt5_zeta5_plus", "sqrt5_zeta5_minus"]
    assert _families(11) == ["sqrtP", "sqrtP_zeta3", "sqrtP_zeta8", "sqrtP_zeta12"]


@pytest.mark.parametrize("fam,p,m", [
    ("sqrtP_zeta3", 7, (49, 0, 7, 0, 1)),
    ("sqrtP_zeta8", 3, (9, 0, 0, 0, 1)),
    ("sqrtP_zeta12", 5, (25, 0, -5, 0, 1)),
    ("sqrt5_zeta5_plus", 5, (25, 25, 15, 5, 1)),
    ("sqrt5_zeta5_minus", 5, (25, -25, 15, -5, 1)),
    ("sqrtP", 13, (-13, 0, 1)),
])
def test_minimal_polynomials(fam, p, m):
    assert WeilNumberInstance(p, fam).minpoly == m


def test_sqrt2zeta24_minpolys_have_the_named_root():
    # sqrt(2) zeta24 = sqrt(2) e^{2 pi i / 24}; the minus family is its negative
    z = cmath.sqrt(2) * cmath.exp(2j * cmath.pi / 24)
    for fam, r in (("sqrt2_zeta24_plus", z), ("sqrt2_zeta24_minus", -z)):
        m = WeilNumberInstance(2, fam).minpoly
        assert abs(sum(c * r ** i for i, c in enumerate(m))) < 1e-9


def test_inadmissible_instances_rejected():
    with pytest.raises(ValueError):
        WeilNumberInstance(2, "sqrtP_zeta8")
    with pytest.raises(ValueError):
        WeilNumberInstance(3, "sqrtP_zeta12")
    with pytest.raises(ValueError):
        WeilNumberInstance(7, "sqrt5_zeta5_plus")
    with pytest.raises(ValueError):
        WeilNumberInstance(9, "sqrtP")
    with pytest.raises(ValueError):
        is_admissible("zeta7", 7)
    with pytest.raises(ValueError):
        enumerate_catalog(15)


def test_verify_weil_examples():
    assert verify_weil((49, 0, 7, 0, 1), 7)
    assert not verify_weil((1, 0, 0, 0, 1), 7)  # x^4 + 1 fails the functional equation at p = 7
    assert root_of_unity_order((49, 0, 7, 0, 1), 7) == 3  # (pi^2/7)^3 = 1
    assert root_of_unity_order((1, 0, 0, 0, 1), 7) is None
    with pytest.raises(ValueError):
        verify_weil((1, 0, 1), 7)


@pytest.mark.parametrize("p", primes_below(200))
def test_catalog_members_are_weil_and_irreducible(p):
    for inst in enumerate_catalog(p):
        m = inst.minpoly
        assert oracles.is_irreducible(m)
        if inst.concern:
            assert oracles.functional_equation_holds(m, p)
            assert verify_weil(m, p)
            assert is_irreducible_quartic(m)
            k = root_of_unity_order(m, p)
            assert k == oracles.weil_root_of_unity_order(m, p)
            for r in oracles.roots(m):
                assert abs(abs(r) ** 2 - p) < 1e-30


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-30, 30), min_size=4, max_size=4))
def test_irreducibility_against_sympy(cs):
    m = tuple(cs) + (1,)
    if m[0] == 0:
        assert not is_irreducible_quartic(m)
    else:
        assert is_irreducible_quartic(m) == oracles.is_irreducible(m)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([2, 3, 5, 7, 11, 13]), st.integers(-40, 40), st.integers(-80, 80))
def test_verify_weil_matches_root_check(p, a1, a2):
    m = (p * p, a1 * p, a2, a1, 1)  # functional equation built in
    rs = oracles.roots(m)
    expect = all(abs(abs(r) ** 2 - p) < 1e-25 and abs(r.imag) > 1e-25 for r in rs) and \
        oracles.weil_root_of_unity_order(m, p) is not None
    assert verify_weil(m, p) == expect


@pytest.mark.parametrize("p", primes_below(100))
def test_closed_form_conjugates_are_roots(p):
    for inst in enumerate_catalog(p):
        f = catalog_field(p, inst.family)
        conj = closed_form_conjugates(inst)
        assert len(set(c.coords for c in conj)) == 4
        for c in conj:
            assert poly_eval(f.m, c).is_zero()
        pi = frobenius_element(inst)
        assert poly_eval(inst.minpoly, pi).is_zero()


def test_zeta5_conjugates_carry_legendre_signs():
    inst = WeilNumberInstance(5, "sqrt5_zeta5_plus")
    f = catalog_field(5, inst.family)
    conj = closed_form_conjugates(inst)
    s = f.gen ** 5 / 25
    assert s * s == f(5)
    zeta = f.gen ** 6 / 125
    assert zeta ** 5 == f.one and zeta != f.one
    assert conj[1] == s * zeta ** 2 * -1 and conj[3] == s * zeta ** 4


def test_canonical_square_roots():
    assert canonical_square_roots(WeilNumberInstance(7, "sqrtP_zeta3")) == (7, -3)
    assert canonical_square_roots(WeilNumberInstance(7, "sqrtP_zeta8")) == (14, -1)
    assert canonical_square_roots(WeilNumberInstance(7, "sqrtP_zeta12")) == (-7, -3)
    assert canonical_square_roots(WeilNumberInstance(2, "sqrt2_zeta24_plus")) == (3, -1)
    assert canonical_square_roots(WeilNumberInstance(5, "sqrt5_zeta5_plus")) is None


# --- LMFDB labels

def test_lmfdb_examples():
    c = parse_lmfdb_label("2.5.a_af")
    assert (c.g, c.q, c.coeffs) == (2, 5, (0, -5))
    assert c.weil_polynomial == (25, 0, -5, 0, 1)
    assert identify_catalog_member(c.weil_polynomial, 5) == WeilNumberInstance(5, "sqrtP_zeta12")

    c = parse_lmfdb_label("2.25.a_az")
    assert c.weil_polynomial == (625, 0, -25, 0, 1)
    assert identify_catalog_member(c.weil_polynomial, 25) is None

    c = parse_lmfdb_label("2.5.a_a")
    assert c.weil_polynomial == (25, 0, 0, 0, 1)
    assert identify_catalog_member(c.weil_polynomial, 5) == WeilNumberInstance(5, "sqrtP_zeta8")


def test_real_family_identified_by_square():
    assert identify_catalog_member((49, 0, -14, 0, 1), 7) == WeilNumberInstance(7, "sqrtP")


@pytest.mark.parametrize("label", ["2.5", "2.6.a_a", "2.5.a", "x.5.a_a", "2.5.a_A", "2.5.aab_a", "2.5.a_bz"])
def test_malformed_labels(label):
    with pytest.raises(ValueError):
        parse_lmfdb_label(label)


def test_lmfdb_round_trip_random_vectors():
    rng = random.Random(20240101)
    for _ in range(200):
        g = rng.choice([1, 2, 3])
        q = rng.choice([2, 3, 4, 5, 7, 8, 9, 25, 27, 49, 121])
        coeffs = tuple(rng.randint(-700, 700) for _ in range(g))
        label = format_lmfdb_label(g, q, coeffs)
        back = parse_lmfdb_label(label, check_bounds=False)
        assert back == LmfdbClass(g, q, coeffs)
        assert back.label == label


@given(st.integers(-10 ** 6, 10 ** 6), st.integers(-10 ** 6, 10 ** 6))
def test_lmfdb_round_trip_property(a1, a2):
    label = format_lmfdb_label(2, 7, (a1, a2))
    assert parse_lmfdb_label(label, check_bounds=False).coeffs == (a1, a2)


def test_catalog_member_labels_identify_back():
    for p in primes_below(60):
        for inst in enumerate_catalog(p):
            if not inst.concern:
                continue
            m = inst.minpoly
            label = format_lmfdb_label(2, p, (m[3], m[2]))
            cls = parse_lmfdb_label(label)
            assert cls.weil_polynomial == m
            assert identify_catalog_member(cls.weil_polynomial, p) == inst


def test_every_family_reachable():
    seen = {i.family for p in primes_below(30) for i in enumerate_catalog(p)}
    assert seen == set(FAMILIES)
