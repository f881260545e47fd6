import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

import oracles
from sspcm.arith import (factor_squarefree_quartic_mod_p, factorint, fp2, gr2, gr2_frobenius, is_prime,
                         kronecker, poly_divmod_mod, poly_eval_mod, poly_mul_mod, prime_power, primes_below, sqrt_mod,
                         squarefree_part, valuation)


# --- kronecker symbol

@pytest.mark.parametrize("a,n,want", [(-3, 7, 1), (-1, 3, -1), (1, 9, 1), (1, 15, 1), (-3, 2, -1), (5, 2, -1),
                                      (0, 1, 1), (7, -1, 1), (-7, -1, -1)])
def test_kronecker_examples(a, n, want):
    assert kronecker(a, n) == want


def test_kronecker_rejects_zero_modulus():
    with pytest.raises(ValueError):
        kronecker(2, 0)


def test_kronecker_matches_definition():
    for a in range(-60, 61):
        for n in [n for n in range(-40, 121) if n]:
            assert kronecker(a, n) == oracles.kronecker(a, n), (a, n)


def test_kronecker_multiplicative_in_numerator():
    odd = range(3, 200, 2)
    for n in odd:
        for a in range(-50, 51):
            for b in range(-50, 51, 7):
                assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)


def test_quadratic_reciprocity():
    ps = [p for p in primes_below(100) if p > 2]
    for p, q in itertools.combinations(ps, 2):
        sign = -1 if (p % 4 == 3 and q % 4 == 3) else 1
        assert kronecker(p, q) * kronecker(q, p) == sign


# --- integers

def test_primes_and_factorint_against_sympy():
    assert primes_below(1000) == list(sympy.primerange(2, 1000))
    for n in range(2, 3000):
        assert is_prime(n) == sympy.isprime(n)
        assert factorint(n) == sympy.factorint(n)
    big = 2 ** 61 - 1
    assert is_prime(big)
    assert factorint(big * 1000003) == {big: 1, 1000003: 1}


@pytest.mark.parametrize("n,want", [(12, 3), (-84, -21), (49, 1), (-1, -1), (75, 3), (-27, -3)])
def test_squarefree_part(n, want):
    assert squarefree_part(n) == want == oracles.squarefree(n)


def test_prime_power_and_valuation():
    assert prime_power(25) == (5, 2)
    assert prime_power(7) == (7, 1)
    assert prime_power(12) is None
    assert prime_power(1) is None
    assert valuation(72, 2) == 3
    assert valuation(Fraction(5, 27), 3) == -3


@given(st.sampled_from([3, 5, 7, 11, 13, 101]), st.integers(0, 10 ** 6))
def test_sqrt_mod(p, a):
    a %= p
    if kronecker(a, p) == -1:
        with pytest.raises(ValueError):
            sqrt_mod(a, p)
    else:
        r = sqrt_mod(a, p)
        assert r * r % p == a


# --- factoring over F_p

def _expand(factors, p):
    out = (1,)
    for f, k in factors:
        for _ in range(k):
            out = poly_mul_mod(out, f, p)
    return out


def _monic(f, p):
    f = [c % p for c in f]
    while f and f[-1] == 0:
        f.pop()
    inv = pow(f[-1], -1, p)
    return tuple(c * inv % p for c in f)


def test_x2_plus_1_mod_7():
    # -1 is not a square mod 7, so no root: irreducible (brute force agrees)
    assert all((x * x + 1) % 7 for x in range(7))
    assert factor_squarefree_quartic_mod_p((1, 0, 1), 7) == [((1, 0, 1), 1)]


def test_x2_plus_x_plus_1_mod_2():
    assert factor_squarefree_quartic_mod_p((1, 1, 1), 2) == [((1, 1, 1), 1)]


def test_x2_plus_3_mod_3():
    assert factor_squarefree_quartic_mod_p((3, 0, 1), 3) == [((0, 1), 2)]


def test_x2_plus_1_mod_5_splits():
    fs = factor_squarefree_quartic_mod_p((1, 0, 1), 5)
    assert sorted(fs) == [((2, 1), 1), ((3, 1), 1)]


def _has_root(f, p):
    return any(poly_eval_mod(f, x, p) == 0 for x in range(p))


def _has_quadratic_factor(f, p):
    for b, c in itertools.product(range(p), repeat=2):
        q = (c, b, 1)
        if not any(poly_divmod_mod(f, q, p)[1]):
            return True
    return False


@settings(max_examples=300, deadline=None)
@given(st.sampled_from([2, 3, 5, 7, 11]), st.lists(st.integers(0, 100), min_size=5, max_size=5))
def test_factorisation_reexpands(p, cs):
    cs[-1] = cs[-1] % p or 1
    f = _monic(cs, p)
    factors = factor_squarefree_quartic_mod_p(f, p)
    assert _expand(factors, p) == f
    for g, _ in factors:
        if len(g) - 1 >= 2:
            assert not _has_root(g, p)
        if len(g) - 1 == 4:
            assert not _has_quadratic_factor(g, p)


def test_factorisation_agrees_with_sympy():
    x = sympy.symbols("x")
    for p in (2, 3, 5, 7):
        for cs in itertools.product(range(p), repeat=4):
            f = tuple(cs) + (1,)
            ours = sorted((len(g) - 1, k) for g, k in factor_squarefree_quartic_mod_p(f, p))
            theirs = sympy.Poly(sum(c * x ** i for i, c in enumerate(f)), x, modulus=p).factor_list()[1]
            assert ours == sorted((g.degree(), k) for g, k in theirs), (p, f)


# --- GR(p^2, 2)

def test_sigma_fixes_one_and_squares_to_identity_on_gr9():
    r = gr2(3)
    assert gr2_frobenius(r(1)) == r(1)
    for a in r.elements():
        assert gr2_frobenius(gr2_frobenius(a)) == a


@settings(max_examples=200)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6),
       st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_sigma_is_ring_homomorphism(p, a0, a1, b0, b1):
    r = gr2(p)
    a, b = r(a0, a1), r(b0, b1)
    s = gr2_frobenius
    assert s(a + b) == s(a) + s(b)
    assert s(a * b) == s(a) * s(b)
    assert s(s(a)) == a
    # reduction commutes with sigma, which reduces to x -> x^p on F_{p^2}
    assert s(a).reduce() == s(a.reduce())
    assert s(a).reduce() == a.reduce() ** p


def test_teichmuller_lift_of_generator():
    for p in (3, 5, 7):
        k = fp2(p)
        g = next(x for x in k.elements() if x and all((x ** ((p * p - 1) // q)) != k(1)
                                                         for q in sympy.primefactors(p * p - 1)))
        lift = gr2(p)(g.a0, g.a1) ** (p * p)  # x -> x^(p^2) lands on the Teichmuller lift
        assert lift.reduce() == g
        assert gr2_frobenius(lift).reduce() == g ** p
        assert gr2_frobenius(lift) == lift ** p


def test_fp2_is_a_field():
    for p in (2, 3, 5):
        k = fp2(p)
        units = [x for x in k.elements() if x]
        assert len(units) == p * p - 1
        for x in units:
            assert x * x.inverse() == k(1)
