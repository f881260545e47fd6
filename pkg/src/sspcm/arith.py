"""Integer arithmetic, residue symbols, polynomials over F_p, F_{p^2} and GR(p^2, 2).

Polynomials are tuples of coefficients in ascending degree order.  Field and
ring elements are small immutable value objects; the rings that define
them (`fp2`, `gr2`) are cached per prime.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Poly = tuple  # ascending coefficients

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


# --------------------------------------------------------------------------
# primes and factorization

def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24, trial division below."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_below(n: int) -> list[int]:
    if n <= 2:
        return []
    sieve = bytearray([1]) * n
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n - 1) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, n, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        x = y = rng.randrange(2, n)
        c = rng.randrange(1, n)
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def factorint(n: int) -> dict[int, int]:
    """Prime factorization of a nonzero integer (sign dropped)."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for q in primes_below(1000):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.extend([d, m // d])
    return dict(sorted(out.items()))


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q = p^k, or None if q is not a prime power."""
    if q < 2:
        return None
    f = factorint(q)
    if len(f) != 1:
        return None
    (p, k), = f.items()
    return p, k


def valuation(n: int | Fraction, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    n = Fraction(n)
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    num, den = n.numerator, n.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def squarefree_part(n: int) -> int:
    """Signed squarefree kernel: n = squarefree_part(n) * k^2."""
    if n == 0:
        raise ValueError("squarefree part of 0")
    sign = -1 if n < 0 else 1
    out = 1
    for q, e in factorint(n).items():
        if e % 2:
            out *= q
    return sign * out


def fundamental_discriminant(d: int) -> int:
    """Discriminant of Q(sqrt(d)) for a non-square integer d."""
    d = squarefree_part(d)
    if d == 1:
        raise ValueError("d is a square")
    return d if d % 4 == 1 else 4 * d


# --------------------------------------------------------------------------
# residue symbols

def jacobi(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise ValueError("Jacobi symbol needs odd positive modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n) for any integer n != 0."""
    if n == 0:
        raise ValueError("Kronecker symbol undefined for n = 0")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * jacobi(a, n)


def sqrt_mod(a: int, p: int) -> int:
    """A square root of a mod an odd prime p (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        raise ValueError(f"{a} is not a square mod {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


# --------------------------------------------------------------------------
# polynomials over F_p

def poly_trim(f: Iterable[int], p: int | None = None) -> Poly:
    c = [x % p for x in f] if p else list(f)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_mul_mod(f: Sequence[int], g: Sequence[int], p: int) -> Poly:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return poly_trim(out, p)


def poly_divmod_mod(f: Sequence[int], g: Sequence[int], p: int) -> tuple[Poly, Poly]:
    f, g = list(poly_trim(f, p)), poly_trim(g, p)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(g[-1], -1, p)
    dg = len(g) - 1
    if len(f) - 1 < dg:
        return (), tuple(f)
    quo = [0] * (len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i] * inv % p
        if c:
            quo[i - dg] = c
            for j in range(dg + 1):
                f[i - dg + j] = (f[i - dg + j] - c * g[j]) % p
    return poly_trim(quo, p), poly_trim(f[:dg], p)


def poly_gcd_mod(f: Sequence[int], g: Sequence[int], p: int) -> Poly:
    a, b = poly_trim(f, p), poly_trim(g, p)
    while b:
        a, b = b, poly_divmod_mod(a, b, p)[1]
    if not a:
        return ()
    inv = pow(a[-1], -1, p)
    return tuple(x * inv % p for x in a)


def poly_powmod_mod(base: Sequence[int], e: int, mod: Sequence[int], p: int) -> Poly:
    result: Poly = (1,)
    base = poly_divmod_mod(base, mod, p)[1]
    while e:
        if e & 1:
            result = poly_divmod_mod(poly_mul_mod(result, base, p), mod, p)[1]
        base = poly_divmod_mod(poly_mul_mod(base, base, p), mod, p)[1]
        e >>= 1
    return result


def poly_eval_mod(f: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def _monic(f: Poly, p: int) -> Poly:
    inv = pow(f[-1], -1, p)
    return tuple(c * inv % p for c in f)


def _quadratic_roots(s: int, t: int, p: int) -> list[int]:
    """Roots of X^2 - sX + t over F_p."""
    if p == 2:
        return [r for r in range(2) if (r * r - s * r + t) % 2 == 0]
    disc = (s * s - 4 * t) % p
    if kronecker(disc, p) == -1:
        return []
    r = sqrt_mod(disc, p)
    inv2 = pow(2, -1, p)
    return sorted({(s + r) * inv2 % p, (s - r) * inv2 % p})


def _split_rootless_quartic(f: Poly, p: int) -> tuple[Poly, Poly] | None:
    """Write a monic rootless quartic as a product of two monic quadratics."""
    f0, f1, f2, f3 = f[0], f[1], f[2], f[3]
    for a in range(p):
        c = (f3 - a) % p
        s = (f2 - a * c) % p  # b + d
        if a != c:
            d = (f1 - c * s) * pow(a - c, -1, p) % p
            b = (s - d) % p
            if b * d % p == f0:
                return (b, a, 1), (d, c, 1)
        else:
            if a * s % p != f1:
                continue
            roots = _quadratic_roots(s, f0, p)
            if roots:
                b = roots[0]
                d = (s - b) % p
                return (b, a, 1), (d, c, 1)
    return None


def factor_squarefree_quartic_mod_p(m: Sequence[int], p: int) -> list[tuple[Poly, int]]:
    """Factor a polynomial of degree <= 4 over F_p into monic irreducibles.

    Linear factors are found by root search (guided by gcd with x^p - x); a
    rootless quartic is split into quadratics by a search over the linear
    coefficient of one factor.  Returns (factor, multiplicity) pairs sorted by
    degree, then coefficients.
    """
    f = poly_trim(m, p)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    if len(f) > 5:
        raise ValueError("degree above 4")
    if len(f) == 1:
        return []
    f = _monic(f, p)
    found: dict[Poly, int] = {}

    def add(g: Poly) -> None:
        found[g] = found.get(g, 0) + 1

    while len(f) > 2:
        h = poly_gcd_mod(f, _sub(poly_powmod_mod((0, 1), p, f, p), (0, 1), p), p)
        if len(h) <= 1:
            break
        if len(h) == 2:
            r = (-h[0]) % p
        elif len(h) == 3:
            r = _quadratic_roots((-h[1]) % p, h[0], p)[0]
        else:
            r = next(x for x in range(p) if poly_eval_mod(h, x, p) == 0)
        lin = ((-r) % p, 1)
        while len(f) > 1 and poly_eval_mod(f, r, p) == 0:
            add(lin)
            f = poly_divmod_mod(f, lin, p)[0]
    deg = len(f) - 1
    if deg == 4:
        pair = _split_rootless_quartic(f, p)
        if pair is None:
            add(f)
        else:
            add(pair[0])
            add(pair[1])
    elif deg >= 1:
        add(f)
    return sorted(found.items(), key=lambda kv: (len(kv[0]), kv[0][::-1]))


def _sub(f: Sequence[int], g: Sequence[int], p: int) -> Poly:
    n = max(len(f), len(g))
    f = list(f) + [0] * (n - len(f))
    g = list(g) + [0] * (n - len(g))
    return poly_trim([a - b for a, b in zip(f, g)], p)


# --------------------------------------------------------------------------
# F_{p^2} and the Galois ring GR(p^2, 2)

def least_irreducible_quadratic(p: int) -> tuple[int, int]:
    """(b, c) minimal in lexicographic order with x^2 + bx + c irreducible mod p."""
    for b in range(p):
        for c in range(p):
            if all((x * x + b * x + c) % p for x in range(p)):
                return b, c
    raise AssertionError("no irreducible quadratic found")


@dataclass(frozen=True)
class QuadExt:
    """Z/p^n [x] / (x^2 + bx + c): F_{p^2} for n = 1, GR(p^2, 2) for n = 2."""

    p: int
    n: int
    b: int
    c: int

    @property
    def modulus(self) -> int:
        return self.p ** self.n

    def __call__(self, a0: int, a1: int = 0) -> "QuadElem":
        m = self.modulus
        return QuadElem(self, a0 % m, a1 % m)

    @property
    def gen(self) -> "QuadElem":
        return self(0, 1)

    def elements(self) -> Iterable["QuadElem"]:
        m = self.modulus
        for a0 in range(m):
            for a1 in range(m):
                yield QuadElem(self, a0, a1)

    def mul_matrix(self, a: "QuadElem") -> list[list[int]]:
        """Matrix of y -> a*y on the basis (1, x), columns are images."""
        m = self.modulus
        return [[a.a0, (-self.c * a.a1) % m],
                [a.a1, (a.a0 - self.b * a.a1) % m]]

    def sigma_matrix(self) -> list[list[int]]:
        """Matrix of the Frobenius lift on the basis (1, x)."""
        m = self.modulus
        return [[1, (-self.b) % m], [0, m - 1]]


@dataclass(frozen=True)
class QuadElem:
    ring: QuadExt
    a0: int
    a1: int

    def _check(self, other: "QuadElem | int") -> "QuadElem":
        if isinstance(other, int):
            return self.ring(other)
        if other.ring != self.ring:
            raise ValueError("elements of different rings")
        return other

    def __add__(self, other):
        o = self._check(other)
        return self.ring(self.a0 + o.a0, self.a1 + o.a1)

    __radd__ = __add__

    def __neg__(self):
        return self.ring(-self.a0, -self.a1)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        o = self._check(other)
        r = self.ring
        # x^2 = -b x - c
        hi = self.a1 * o.a1
        return r(self.a0 * o.a0 - r.c * hi, self.a0 * o.a1 + self.a1 * o.a0 - r.b * hi)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.ring(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def norm(self) -> int:
        r = self.ring
        return (self.a0 * self.a0 - r.b * self.a0 * self.a1 + r.c * self.a1 * self.a1) % r.modulus

    def inverse(self) -> "QuadElem":
        r = self.ring
        nrm = self.norm()
        if nrm % r.p == 0:
            raise ZeroDivisionError("element is not a unit")
        inv = pow(nrm, -1, r.modulus)
        conj = self.sigma()  # a * sigma(a) = norm
        return r(conj.a0 * inv, conj.a1 * inv)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def sigma(self) -> "QuadElem":
        """Frobenius (lift): x -> -b - x, the other root of the modulus."""
        r = self.ring
        return r(self.a0 - r.b * self.a1, -self.a1)

    def reduce(self) -> "QuadElem":
        """Reduction GR(p^2, 2) -> F_{p^2}."""
        r = self.ring
        return fp2(r.p)(self.a0, self.a1)

    def is_zero(self) -> bool:
        return self.a0 == 0 and self.a1 == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"{self.a0}+{self.a1}x"


@lru_cache(maxsize=None)
def fp2(p: int) -> QuadExt:
    """F_{p^2} with the lexicographically least irreducible modulus."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    b, c = least_irreducible_quadratic(p)
    return QuadExt(p, 1, b, c)


@lru_cache(maxsize=None)
def gr2(p: int) -> QuadExt:
    """GR(p^2, 2) = (Z/p^2)[x]/(x^2 + bx + c) with the F_{p^2} modulus lifted verbatim."""
    k = fp2(p)
    return QuadExt(p, 2, k.b, k.c)


def gr2_frobenius(a: QuadElem) -> QuadElem:
    return a.sigma()


kronecker_symbol = kronecker
FF2Element = QuadElem
GR2Element = QuadElem
