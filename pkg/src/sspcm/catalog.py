"""Catalog of supersingular Weil-p numbers for simple abelian surfaces, and LMFDB labels.

For each prime p the catalog lists the Weil-p numbers of simple supersingular
surfaces over F_p: sqrt(p) times a root of unity from a short family list.
Everything other than the real number sqrt(p) generates a quartic CM field.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .arith import is_prime, kronecker, prime_power
from .numfield import NFElement, NumberField, poly_eval

FAMILIES = (
    "sqrtP",
    "sqrtP_zeta3",
    "sqrtP_zeta8",
    "sqrtP_zeta12",
    "sqrt5_zeta5_plus",
    "sqrt5_zeta5_minus",
    "sqrt2_zeta24_plus",
    "sqrt2_zeta24_minus",
)

# display names
FAMILY_SYMBOL = {
    "sqrtP": "√p",
    "sqrtP_zeta3": "√pζ3",
    "sqrtP_zeta8": "√pζ8",
    "sqrtP_zeta12": "√pζ12",
    "sqrt5_zeta5_plus": "√5ζ5",
    "sqrt5_zeta5_minus": "-√5ζ5",
    "sqrt2_zeta24_plus": "√2ζ24",
    "sqrt2_zeta24_minus": "-√2ζ24",
}


def is_admissible(family: str, p: int) -> bool:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if family in ("sqrtP", "sqrtP_zeta3"):
        return True
    if family == "sqrtP_zeta8":
        return p != 2
    if family == "sqrtP_zeta12":
        return p != 3
    if family.startswith("sqrt5"):
        return p == 5
    return p == 2


def _minpoly(family: str, p: int) -> tuple[int, ...]:
    if family == "sqrtP":
        return (-p, 0, 1)
    if family == "sqrtP_zeta3":
        return (p * p, 0, p, 0, 1)
    if family == "sqrtP_zeta8":
        return (p * p, 0, 0, 0, 1)
    if family == "sqrtP_zeta12":
        return (p * p, 0, -p, 0, 1)
    if family == "sqrt5_zeta5_plus":
        return (25, 25, 15, 5, 1)
    if family == "sqrt5_zeta5_minus":
        return (25, -25, 15, -5, 1)
    if family == "sqrt2_zeta24_plus":
        return (4, -4, 2, -2, 1)
    return (4, 4, 2, 2, 1)


@dataclass(frozen=True, order=True)
class WeilNumberInstance:
    p: int
    family: str

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if not is_admissible(self.family, self.p):
            raise ValueError(f"family {self.family} is not admissible at p = {self.p}")

    @property
    def minpoly(self) -> tuple[int, ...]:
        return _minpoly(self.family, self.p)

    @property
    def concern(self) -> bool:
        return self.family != "sqrtP"

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    @property
    def symbol(self) -> str:
        return FAMILY_SYMBOL[self.family].replace("p", str(self.p)) \
            if "P" in self.family else FAMILY_SYMBOL[self.family]

    def to_json(self) -> dict:
        return {"p": self.p, "family": self.family, "minpoly": list(self.minpoly), "concern": self.concern}

    def sort_key(self) -> tuple[int, int]:
        return self.p, FAMILIES.index(self.family)


def enumerate_catalog(p: int) -> list[WeilNumberInstance]:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return [WeilNumberInstance(p, f) for f in FAMILIES if is_admissible(f, p)]


def minimal_polynomial(inst: WeilNumberInstance) -> tuple[int, ...]:
    return inst.minpoly


# --------------------------------------------------------------------------
# Weil checks

def _reverse_check(m: Sequence[int], p: int) -> bool:
    """x^n m(p/x) == p^(n/2) m(x), compared coefficientwise."""
    n = len(m) - 1
    if n % 2:
        return False
    return all(m[n - j] * p ** (n - j) == p ** (n // 2) * m[j] for j in range(n + 1))


def has_real_root(m: Sequence[int]) -> bool:
    """Exact test via Sturm's theorem on the squarefree part."""
    f = [Fraction(c) for c in m]

    def trim(g):
        g = list(g)
        while g and g[-1] == 0:
            g.pop()
        return g

    def deriv(g):
        return [i * g[i] for i in range(1, len(g))]

    def rem(a, b):
        a = list(a)
        while len(a) >= len(b) and a:
            c = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, bi in enumerate(b):
                a[shift + i] -= c * bi
            a = trim(a)
        return a

    seq = [trim(f), trim(deriv(f))]
    while seq[-1]:
        r = rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])

    def sign_changes(vals):
        vals = [v for v in vals if v != 0]
        return sum(1 for a, b in zip(vals, vals[1:]) if (a > 0) != (b > 0))

    at_pinf = [g[-1] for g in seq if g]
    at_minf = [g[-1] * (-1) ** (len(g) - 1) for g in seq if g]
    return sign_changes(at_minf) - sign_changes(at_pinf) > 0


def root_of_unity_order(m: Sequence[int], p: int, bound: int = 24) -> int | None:
    """Least k <= bound with (pi^2 / p)^k = 1 in Q[x]/(m), or None."""
    field = NumberField(m)
    w = field.gen ** 2 / p
    cur = field.one
    for k in range(1, bound + 1):
        cur = cur * w
        if cur == field.one:
            return k
    return None


def verify_weil(m: Sequence[int], p: int) -> bool:
    """Functional equation, no real roots, and pi^2/p a root of unity."""
    m = tuple(int(c) for c in m)
    if len(m) != 5 or m[-1] != 1:
        raise ValueError("expected a monic quartic")
    if m[0] != p * p:
        return False
    if not _reverse_check(m, p):
        return False
    if has_real_root(m):
        return False
    return root_of_unity_order(m, p) is not None


def is_irreducible_quartic(m: Sequence[int]) -> bool:
    """Irreducibility over Q of a monic integer quartic.

    No rational root (divisors of the constant term) and no factorisation into
    monic integer quadratics (x^2 + a x + b)(x^2 + c x + d).  For each divisor
    pair b d = m_0 the remaining equations pin a and c as roots of an integer
    quadratic, so the search is finite and exact.
    """
    m = [int(c) for c in m]
    if len(m) != 5 or m[-1] != 1:
        raise ValueError("expected a monic quartic")
    m0, m1, m2, m3 = m[0], m[1], m[2], m[3]
    if m0 == 0:
        return False
    divs = _divisors(abs(m0))
    for r in divs:
        for s in (r, -r):
            if sum(c * s ** i for i, c in enumerate(m)) == 0:
                return False
    # quadratic factors: b*d = m0, a + c = m3, b + d + a c = m2, a d + b c = m1
    for b in divs:
        for b_s in (b, -b):
            d = m0 // b_s
            # a c = m2 - b - d, a + c = m3  => a is a root of t^2 - m3 t + (m2 - b - d)
            disc = m3 * m3 - 4 * (m2 - b_s - d)
            if disc < 0:
                continue
            r = math.isqrt(disc)
            if r * r != disc or (m3 + r) % 2:
                continue
            for a in ((m3 + r) // 2, (m3 - r) // 2):
                c = m3 - a
                if a * d + b_s * c == m1:
                    return False
    return True


def _divisors(n: int) -> list[int]:
    out = set()
    for i in range(1, math.isqrt(n) + 1):
        if n % i == 0:
            out.add(i)
            out.add(n // i)
    return sorted(out)


# --------------------------------------------------------------------------
# fields and closed-form conjugates

@lru_cache(maxsize=4096)
def catalog_field(p: int, family: str) -> NumberField:
    """Q(pi) for a concern family; for sqrtP the ambient CM field Q(sqrt(p) zeta3)."""
    inst = WeilNumberInstance(p, family)
    if not inst.concern:
        return catalog_field(p, "sqrtP_zeta3")
    return NumberField(inst.minpoly, name=f"Q({inst.symbol})")


def closed_form_conjugates(inst: WeilNumberInstance) -> list[NFElement]:
    """Images of pi under the four automorphisms, by family formula."""
    if not inst.concern:
        inst = WeilNumberInstance(inst.p, "sqrtP_zeta3")
    field = catalog_field(inst.p, inst.family)
    pi, p = field.gen, inst.p
    fam = inst.family
    if fam in ("sqrtP_zeta3", "sqrtP_zeta8", "sqrtP_zeta12"):
        a = inst.minpoly[2]
        p_over_pi = -(pi ** 3 + a * pi) / p  # from pi^4 + a pi^2 + p^2 = 0
        return [pi, -pi, p_over_pi, -p_over_pi]
    if fam.startswith("sqrt5"):
        zeta = pi ** 6 / 125
        s = pi ** 5 / 25  # +-sqrt(5), same sign as pi / zeta
        return [kronecker(k, 5) * s * zeta ** k for k in (1, 2, 3, 4)]
    zeta = pi ** 2 / 2  # a primitive 12th root of unity
    t = zeta ** 2 + zeta ** 11
    eps = 1 if t == pi else -1
    assert eps * t == pi
    return [eps * (zeta ** (2 * k) + zeta ** (12 - k)) for k in (1, 5, 7, 11)]


def frobenius_element(inst: WeilNumberInstance) -> NFElement:
    """The Weil number itself inside its CM field (sqrt(p) = pi^3 / p for the real case)."""
    field = catalog_field(inst.p, inst.family)
    if inst.concern:
        return field.gen
    s = field.gen ** 3 / inst.p
    assert s * s == field(inst.p)
    return s


# canonical square roots used to name automorphisms as sign pairs
def canonical_square_roots(inst: WeilNumberInstance) -> tuple[int, int] | None:
    p, fam = inst.p, inst.family
    if fam in ("sqrtP", "sqrtP_zeta3"):
        return (p, -3)
    if fam == "sqrtP_zeta8":
        return (2 * p, -1)
    if fam == "sqrtP_zeta12":
        return (-p, -3)
    if fam.startswith("sqrt2"):
        return (3, -1)
    return None


# --------------------------------------------------------------------------
# LMFDB isogeny-class labels

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def _encode_int(a: int) -> str:
    if a == 0:
        return "a"
    digits = []
    n = abs(a)
    while n:
        n, r = divmod(n, 26)
        digits.append(_LETTERS[r])
    tok = "".join(reversed(digits))
    return "a" + tok if a < 0 else tok


def _decode_int(tok: str) -> int:
    if not tok or not re.fullmatch(r"[a-z]+", tok):
        raise ValueError(f"malformed coefficient token {tok!r}")
    neg = len(tok) > 1 and tok[0] == "a"
    body = tok[1:] if neg else tok
    if len(body) > 1 and body[0] == "a":
        raise ValueError(f"malformed coefficient token {tok!r}")
    n = 0
    for ch in body:
        n = n * 26 + _LETTERS.index(ch)
    return -n if neg else n


@dataclass(frozen=True)
class LmfdbClass:
    g: int
    q: int
    coeffs: tuple[int, ...]  # a_1 .. a_g

    @property
    def weil_polynomial(self) -> tuple[int, ...]:
        """Ascending coefficients of the degree-2g Weil polynomial."""
        g, q, a = self.g, self.q, self.coeffs
        desc = [1] + list(a)
        for i in range(g - 1, -1, -1):
            desc.append(q ** (g - i) * (a[i - 1] if i > 0 else 1))
        return tuple(reversed(desc))

    @property
    def label(self) -> str:
        return format_lmfdb_label(self.g, self.q, self.coeffs)


def format_lmfdb_label(g: int, q: int, coeffs: Sequence[int]) -> str:
    if len(coeffs) != g:
        raise ValueError("need exactly g coefficients")
    return f"{g}.{q}." + "_".join(_encode_int(a) for a in coeffs)


def parse_lmfdb_label(label: str, check_bounds: bool = True) -> LmfdbClass:
    parts = label.strip().split(".")
    if len(parts) != 3:
        raise ValueError(f"malformed label {label!r}")
    try:
        g, q = int(parts[0]), int(parts[1])
    except ValueError:
        raise ValueError(f"malformed label {label!r}") from None
    if g < 1:
        raise ValueError("dimension must be positive")
    if prime_power(q) is None:
        raise ValueError(f"q = {q} is not a prime power")
    toks = parts[2].split("_")
    if len(toks) != g:
        raise ValueError(f"expected {g} coefficient tokens, got {len(toks)}")
    coeffs = tuple(_decode_int(t) for t in toks)
    if check_bounds:
        for i, a in enumerate(coeffs, start=1):
            if a * a > math.comb(2 * g, i) ** 2 * q ** i:
                raise ValueError(f"a_{i} = {a} violates the Weil bound")
    return LmfdbClass(g, q, coeffs)


def identify_catalog_member(poly: Sequence[int], q: int) -> WeilNumberInstance | None:
    """Catalog instance over F_q (q prime) whose Weil polynomial is `poly`.

    The real family sqrt(q) has Weil polynomial (x^2 - q)^2 for a surface.
    """
    if not is_prime(q):
        return None
    poly = tuple(int(c) for c in poly)
    for inst in enumerate_catalog(q):
        target = inst.minpoly if inst.concern else (q * q, 0, -2 * q, 0, 1)
        if poly == target:
            return inst
    return None


def check_root(field: NumberField, m: Sequence[int], a: NFElement) -> bool:
    return poly_eval(m, a).is_zero()
