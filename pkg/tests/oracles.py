"""Reference computations that do not go through sspcm.

Everything here uses sympy (exact algebra, factorisation, round-two maximal
orders, Hermite normal form) or mpmath (high-precision complex roots).  Tests
compare the package against these, and values that are expensive to recompute
are frozen in the test files after agreeing once.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import mpmath
import sympy
from sympy import Matrix, Poly, QQ, ZZ, symbols
from sympy.matrices.normalforms import hermite_normal_form
from sympy.polys.numberfields.basis import round_two

X = symbols("x")
mpmath.mp.dps = 60


# ----------------------------------------------------------------------------
# residue symbols

def legendre(a: int, p: int) -> int:
    """Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol from the definition, factoring n with sympy."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    out = 1
    if n < 0:
        n = -n
        if a < 0:
            out = -out
    for q, k in sympy.factorint(n).items():
        if q == 2:
            if a % 2 == 0:
                return 0
            s = 1 if a % 8 in (1, 7) else -1
        else:
            s = legendre(a, q)
        out *= s ** k
    return out


def squarefree(n: int) -> int:
    sign = -1 if n < 0 else 1
    out = 1
    for q, k in sympy.factorint(abs(n)).items():
        if k % 2:
            out *= q
    return sign * out


def fundamental_disc(d: int) -> int:
    d = squarefree(d)
    return d if d % 4 == 1 else 4 * d


# ----------------------------------------------------------------------------
# polynomials

def poly_expr(coeffs) -> sympy.Expr:
    """Ascending integer coefficients -> sympy expression in X."""
    return sum(sympy.Integer(c) * X ** i for i, c in enumerate(coeffs))


def functional_equation_holds(coeffs, p: int) -> bool:
    """x^n m(p/x) = p^(n/2) m(x) as polynomials (n = degree)."""
    m = poly_expr(coeffs)
    n = len(coeffs) - 1
    lhs = sympy.expand(X ** n * m.subs(X, sympy.Integer(p) / X))
    rhs = sympy.expand(sympy.Integer(p) ** (n // 2) * m)
    return sympy.simplify(lhs - rhs) == 0


def is_irreducible(coeffs) -> bool:
    return Poly(poly_expr(coeffs), X).is_irreducible


def roots(coeffs) -> list[mpmath.mpc]:
    return list(mpmath.polyroots(list(reversed([int(c) for c in coeffs])), maxsteps=200, extraprec=200))


def weil_root_of_unity_order(coeffs, p: int, bound: int = 24) -> int | None:
    """Smallest k <= bound with (r^2/p)^k = 1 for every root r."""
    rs = roots(coeffs)
    for k in range(1, bound + 1):
        if all(abs((r * r / p) ** k - 1) < mpmath.mpf(10) ** -30 for r in rs):
            return k
    return None


def _integer_poly_from_values(values) -> Poly:
    poly = [mpmath.mpc(1)]
    for v in values:
        nxt = [mpmath.mpc(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i] += c * (-v)
            nxt[i + 1] += c
        poly = nxt
    ints = []
    for c in poly:
        r = int(mpmath.nint(c.real))
        if abs(c.real - r) > mpmath.mpf(10) ** -20 or abs(c.imag) > mpmath.mpf(10) ** -20:
            raise ArithmeticError(f"coefficient {c} is not an integer")
        ints.append(r)
    return Poly(sum(c * X ** i for i, c in enumerate(ints)), X)


def _quadratic_factor_disc(factor: Poly) -> int | None:
    if factor.degree() != 2:
        return None
    a, b, c = factor.all_coeffs()
    return squarefree(int(b * b - 4 * a * c))


# ----------------------------------------------------------------------------
# quartic fields: quadratic subfields and splitting of p

@lru_cache(maxsize=None)
def quadratic_subfields(coeffs: tuple[int, ...]) -> tuple[int, ...]:
    """Squarefree d of every quadratic subfield Q(sqrt d) of the quartic field Q[x]/(m).

    Quadratic irreducible factors of resolvent sextics built from pair sums,
    pair products and squared pair differences of the roots.
    """
    rs = roots(coeffs)
    found = set()
    for op in (lambda a, b: a + b, lambda a, b: a * b, lambda a, b: (a - b) ** 2, lambda a, b: a + 2 * b):
        vals = [op(rs[i], rs[j]) for i, j in itertools.permutations(range(4), 2)]
        res = _integer_poly_from_values(vals)
        for fac, _ in res.factor_list()[1]:
            d = _quadratic_factor_disc(fac)
            if d is not None and d != 1:
                found.add(d)
    return tuple(sorted(found))


def quadratic_behaviour(d: int, p: int) -> str:
    k = kronecker(fundamental_disc(d), p)
    return {0: "ramified", 1: "split", -1: "inert"}[k]


def efg(coeffs: tuple[int, ...], p: int) -> tuple[int, int, int]:
    """(e, f, g) of p in a quartic abelian field.

    Klein four: the inertia group fixes exactly the unramified quadratic
    subfields, so #ramified subfields in {0, 2, 3} gives e in {1, 2, 4}; f is 2
    iff some unramified subfield is inert.  Cyclic quartic: only used for
    Q(zeta5) at 5, where sympy's prime decomposition is reliable.
    """
    subs = quadratic_subfields(tuple(coeffs))
    if len(subs) == 3:
        beh = [quadratic_behaviour(d, p) for d in subs]
        ram = beh.count("ramified")
        e = {0: 1, 2: 2, 3: 4}[ram]
        unram = [b for b in beh if b != "ramified"]
        f = 2 if "inert" in unram else 1
        return e, f, 4 // (e * f)
    from sympy.polys.numberfields.primes import prime_decomp
    dec = prime_decomp(p, T=Poly(poly_expr(coeffs), X))
    (e, f), g = {(P.e, P.f) for P in dec}.pop(), len(dec)
    return e, f, g


def real_subfield(coeffs: tuple[int, ...]) -> int:
    (d,) = [d for d in quadratic_subfields(tuple(coeffs)) if d > 0]
    return d


def relative_behaviour(coeffs: tuple[int, ...], p: int) -> str:
    """Behaviour of v (the place of L0 over p) in L/L0."""
    e, f, g = efg(coeffs, p)
    d0 = real_subfield(coeffs)
    beh0 = quadratic_behaviour(d0, p)
    e0, f0, g0 = {"ramified": (2, 1, 1), "split": (1, 1, 2), "inert": (1, 2, 1)}[beh0]
    if e == 2 * e0:
        return "Ramified"
    if f == 2 * f0:
        return "Inert"
    assert g == 2 * g0
    return "Split"


# ----------------------------------------------------------------------------
# reflex fields

def reflex_field(phi_roots, all_roots) -> tuple[int, int | None]:
    """(degree, squarefree d or None) of the reflex field of a CM type of a quartic field.

    The type trace t of a generic element is a root of the sextic whose roots
    are the traces over all 2-subsets of embeddings; the irreducible factor
    vanishing at t is the minimal polynomial of t, and Q(t) is the reflex field
    for generic enough elements (three are tried; the largest degree wins).
    """
    best = (0, None)
    for g in ((1, 2, 3), (2, -1, 5), (1, 0, 7)):
        f = lambda r: g[0] * r + g[1] * r ** 2 + g[2] * r ** 3  # noqa: E731
        t = sum(f(r) for r in phi_roots)
        vals = [f(a) + f(b) for a, b in itertools.combinations(all_roots, 2)]
        res = _integer_poly_from_values(vals)
        for fac, _ in res.factor_list()[1]:
            cs = [mpmath.mpf(int(c)) for c in fac.all_coeffs()]
            if abs(mpmath.polyval(cs, t)) < mpmath.mpf(10) ** -15 * max(1, abs(t)) ** fac.degree():
                cand = (fac.degree(), _quadratic_factor_disc(fac))
                best = max(best, cand, key=lambda x: x[0])
                break
    if best[0] == 0:
        raise ArithmeticError("no type trace factor found")
    return best


def reflex_squarefree(phi_roots, all_roots) -> int:
    deg, d = reflex_field(phi_roots, all_roots)
    if deg != 2:
        raise ArithmeticError(f"reflex field has degree {deg}")
    return d


def residue_degree_quadratic(d: int, p: int) -> int:
    return 2 if quadratic_behaviour(d, p) == "inert" else 1


# ----------------------------------------------------------------------------
# orders

def field_discriminant(coeffs) -> int:
    _, d = round_two(Poly(poly_expr(coeffs), X, domain=ZZ))
    return int(d)


def _power_coords(expr, coeffs) -> list[sympy.Rational]:
    m = Poly(poly_expr(coeffs), X, domain=QQ)
    r = Poly(expr, X, domain=QQ).rem(m)
    c = list(reversed(r.all_coeffs()))
    n = m.degree()
    return [sympy.Rational(x) for x in c] + [sympy.Rational(0)] * (n - len(c))


def ring_generated_index(coeffs, gens_expr, p: int) -> int:
    """[O_L : Z[gens]], via HNF of the monomials and the round-two discriminant.

    Each generator is integral of degree <= 4, so monomials with exponents < 4
    span the ring.
    """
    m = Poly(poly_expr(coeffs), X, domain=QQ)
    n = m.degree()
    vecs = []
    for exps in itertools.product(range(n), repeat=len(gens_expr)):
        e = sympy.Integer(1)
        for g, k in zip(gens_expr, exps):
            e = e * g ** k
        vecs.append(_power_coords(sympy.expand(e), coeffs))
    den = sympy.ilcm(*[v.q for vec in vecs for v in vec])
    mat = Matrix([[int(v * den) for v in vec] for vec in vecs]).T  # columns generate the lattice
    h = hermite_normal_form(mat)
    det = abs(h.det()) if h.shape[0] == h.shape[1] else None
    if det is None:
        raise ArithmeticError("lattice is not of full rank")
    disc_poly = sympy.discriminant(poly_expr(coeffs), X)
    disc_r = sympy.Rational(disc_poly) * (sympy.Rational(det) / den ** n) ** 2
    ratio = disc_r / field_discriminant(coeffs)
    idx = sympy.sqrt(ratio)
    assert idx.is_Integer, ratio
    return int(idx)


def r_sp_index(coeffs, p: int) -> int:
    """[O_L : Z[pi, p/pi, pi^2/p]] for the Weil polynomial m."""
    m = Poly(poly_expr(coeffs), X, domain=QQ)
    inv = Poly(sympy.invert(X, m.as_expr(), X), X, domain=QQ)
    p_over_pi = sympy.expand(p * inv.as_expr())
    return ring_generated_index(coeffs, [X, p_over_pi, X ** 2 / p], p)


# ----------------------------------------------------------------------------
# Galois group of Q(zeta5)-type fields

def cyclic_quartic(coeffs) -> bool:
    """Galois group of an irreducible quartic with exactly one quadratic subfield is C4 (abelian case)."""
    return len(quadratic_subfields(tuple(coeffs))) == 1
