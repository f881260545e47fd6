import ast
import json
from pathlib import Path

import pytest

import sspcm.dieudonne
from sspcm.arith import primes_below
from sspcm.catalog import WeilNumberInstance, enumerate_catalog
from sspcm.dieudonne import (DieudonneModule, canonical_dims, catalog_module, module_from_fixture, pattern_module,
                             random_semilinearity_check, roots_in_fp2)
from sspcm.surface import surface_for
from sspcm.worked import notgood_module

FIXTURES = Path(__file__).parent / "fixtures"


def _fixture(name):
    return module_from_fixture(json.loads((FIXTURES / f"{name}.json").read_text()))


def _catalog(p, fam, level=2):
    s = surface_for(WeilNumberInstance(p, fam))
    return catalog_module(s.field, s.frob, p, level=level)


def test_oracle_is_independent_of_valuation_code():
    tree = ast.parse(Path(sspcm.dieudonne.__file__).read_text())
    imported = {n.module for n in ast.walk(tree) if isinstance(n, ast.ImportFrom)}
    imported |= {a.name for n in ast.walk(tree) if isinstance(n, ast.Import) for a in n.names}
    assert not any(m and ("lie" in m.split(".") or "places" in m.split(".")) for m in imported)


def test_elliptic_fixture():
    m = _fixture("elliptic_f3")
    assert m.p == 3 and m.level == 2
    assert m.A == [[0, 3], [1, 0]]  # F e1 = e2, F e2 = 3 e1
    assert m.check_fv()
    assert m.lie_dimensions() == [[1]]
    assert m.total_lie_dimension() == 1
    assert m.is_superspecial()


def test_adversarial_fixture_is_not_superspecial():
    m = _fixture("adversarial_split")
    assert m.check_fv()
    assert not m.is_superspecial()


def test_broken_fv_is_rejected():
    ident = [[1, 0], [0, 1]]
    m = DieudonneModule(3, 2, ident, ident)
    assert not m.check_fv()
    with pytest.raises(ValueError):
        m.is_superspecial()


def test_notgood_fixture_matches_worked_module():
    m = _fixture("notgood_2_25_a_az")
    n = notgood_module()
    assert (m.A, m.B) == (n.A, n.B)
    assert m.lie_dimensions() == [[1, 0], [1, 0]]
    assert m.is_superspecial()


def test_level_one_has_no_superspecial_test():
    with pytest.raises(ValueError):
        _fixture("elliptic_f3").reduce().is_superspecial()


@pytest.mark.parametrize("places", [[{"e": 2, "f": 1, "F_pattern": [3]}], [{"e": 1, "f": 2, "F_pattern": [1]}]])
def test_bad_patterns(places):
    with pytest.raises(ValueError):
        pattern_module(5, places)


def test_worked_catalog_modules():
    assert _catalog(7, "sqrtP_zeta3").lie_dimensions() == [[1], [1]]
    z = _catalog(5, "sqrt5_zeta5_plus")
    assert z.lie_dimensions() == [[2]]
    assert z.is_superspecial()


@pytest.mark.parametrize("p", primes_below(120))
def test_catalog_module_invariants(p):
    for inst in enumerate_catalog(p):
        m = _catalog(p, inst.family)
        assert m.check_fv()
        assert m.is_superspecial()
        assert m.total_lie_dimension() == 2
        low = _catalog(p, inst.family, level=1)
        red = m.reduce()
        assert (red.A, red.B) == (low.A, low.B)
        assert red.lie_dimensions() == low.lie_dimensions()


@pytest.mark.parametrize("p", [3, 5, 7])
def test_semilinearity(p):
    for inst in enumerate_catalog(p):
        for level in (1, 2):
            assert random_semilinearity_check(_catalog(p, inst.family, level), trials=100, seed=p)
    assert random_semilinearity_check(_fixture("elliptic_f3"), trials=100)


def test_sigma_squared_is_identity_on_module_scalars():
    m = _catalog(5, "sqrtP_zeta3")
    r = m.ring
    for a in range(25):
        for b in range(0, 25, 3):
            x = r(a, b)
            assert x.sigma().sigma() == x


def test_canonical_dims():
    assert canonical_dims([[0, 1], [2]]) == [(1, 0), (2,)]
    assert canonical_dims([[1], [1]]) == [(1,), (1,)]


def test_roots_in_fp2():
    for p in (2, 3, 5, 7):
        for poly in ((1, 0, 1), (1, 1, 1), (-2, 0, 1), (p * p, 0, p, 0, 1)):
            for r in roots_in_fp2(poly, p):
                val = sum((r ** i * c for i, c in enumerate(poly) if c % p), r.ring(0))
                assert val.is_zero()
