"""Number fields Q[x]/(m) with exact arithmetic, Galois action, subfields and orders.

Elements are coordinate vectors in the power basis 1, pi, ..., pi^(n-1).  The
fields met in this package have degree 2 or 4, so everything is done with
`Fraction` and dense Gaussian elimination.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .arith import factorint, fundamental_discriminant, squarefree_part

Q0, Q1 = Fraction(0), Fraction(1)


def _frac_tuple(xs: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in xs)


def poly_to_str(coeffs: Sequence, var: str = "x") -> str:
    """Human-readable polynomial from ascending coefficients."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[i])
        if c == 0:
            continue
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mon and abs(c) == 1:
            coef = "-" if c < 0 else "+"
        else:
            coef = f"{'-' if c < 0 else '+'}{abs(c)}"
        terms.append(f"{coef}{mon}")
    if not terms:
        return "0"
    s = "".join(terms)
    return s[1:] if s.startswith("+") else s


def charpoly_of_matrix(a: Sequence[Sequence[Fraction]]) -> tuple[Fraction, ...]:
    """Characteristic polynomial det(xI - A), ascending, via Faddeev-LeVerrier."""
    n = len(a)
    a = [[Fraction(x) for x in r] for r in a]
    coeffs = [Q0] * (n + 1)
    coeffs[n] = Q1
    mk = [[Q0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prod = linalg.matmul(a, mk) if k > 1 else [[Q0] * n for _ in range(n)]
        for i in range(n):
            prod[i][i] += coeffs[n - k + 1]
        mk = prod
        am = linalg.matmul(a, mk)
        coeffs[n - k] = -sum(am[i][i] for i in range(n)) / k
    return tuple(coeffs)


class NumberField:
    """Q[x]/(m) for a monic irreducible m with rational coefficients."""

    def __init__(self, m: Sequence, name: str | None = None):
        m = _frac_tuple(m)
        while m and m[-1] == 0:
            m = m[:-1]
        if len(m) < 2 or m[-1] != 1:
            raise ValueError("defining polynomial must be monic of degree >= 1")
        self.m = m
        self.n = len(m) - 1
        self.name = name or poly_to_str(m)
        # reductions of pi^n .. pi^(2n-2) in the power basis
        red = []
        cur = [-c for c in m[:-1]]
        for _ in range(self.n - 1):
            red.append(tuple(cur))
            top = cur[-1]
            cur = [Q0] + cur[:-1]
            cur = [c - top * mc for c, mc in zip(cur, m[:-1])]
        red.append(tuple(cur))
        self._reductions = red
        integral = m[-1] == 1 and all(c.denominator == 1 for c in m)
        self._int_reductions = [tuple(int(c) for c in r) for r in red] if integral else None

    def int_mul(self, a: Sequence[int], b: Sequence[int]) -> list[int]:
        """Product of integer power-basis vectors (monic integral m only)."""
        n = self.n
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:n]
        for k in range(n, 2 * n - 1):
            if prod[k]:
                r = self._int_reductions[k - n]
                out = [o + prod[k] * ri for o, ri in zip(out, r)]
        return out

    def __repr__(self) -> str:
        return f"NumberField({self.name})"

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and self.m == other.m

    def __hash__(self) -> int:
        return hash(self.m)

    # element construction
    def element(self, coords: Sequence) -> "NFElement":
        c = list(_frac_tuple(coords))
        if len(c) > self.n:
            return self.from_poly(c)
        return NFElement(self, tuple(c + [Q0] * (self.n - len(c))))

    def from_poly(self, coeffs: Sequence) -> "NFElement":
        """Reduce a polynomial in pi of any degree."""
        c = list(_frac_tuple(coeffs))
        out = list(c[:self.n]) + [Q0] * max(0, self.n - len(c))
        for k in range(self.n, len(c)):
            if c[k]:
                # pi^k with k >= n: reduce recursively via repeated multiplication
                term = self.gen ** k
                out = [a + c[k] * b for a, b in zip(out, term.coords)]
        return NFElement(self, tuple(out))

    def __call__(self, x) -> "NFElement":
        if isinstance(x, NFElement):
            return x
        return self.element([x])

    @cached_property
    def gen(self) -> "NFElement":
        return self.element([0, 1]) if self.n > 1 else self.element([0])

    @cached_property
    def one(self) -> "NFElement":
        return self.element([1])

    @cached_property
    def zero(self) -> "NFElement":
        return self.element([0])

    def _mul_coords(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
        n = self.n
        prod = [Q0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:n]
        for k in range(n, 2 * n - 1):
            if prod[k]:
                r = self._reductions[k - n]
                out = [o + prod[k] * ri for o, ri in zip(out, r)]
        return tuple(out)

    @cached_property
    def power_traces(self) -> tuple[Fraction, ...]:
        """Tr(pi^k) for 0 <= k < 2n - 1 (traces of companion-matrix powers)."""
        out = []
        cur = self.one
        for _ in range(2 * self.n - 1):
            m = cur.mul_matrix()
            out.append(sum((m[i][i] for i in range(self.n)), Q0))
            cur = cur * self.gen
        return tuple(out)

    def trace_vector(self) -> tuple[Fraction, ...]:
        return self.power_traces[:self.n]

    @cached_property
    def poly_discriminant(self) -> Fraction:
        """Discriminant of m = det of the trace form on the power basis."""
        s = self.power_traces
        return linalg.det([[s[i + j] for j in range(self.n)] for i in range(self.n)])

    @cached_property
    def complex_roots(self) -> np.ndarray:
        coeffs = [float(c) for c in reversed(self.m)]
        return np.roots(coeffs)

    def galois_group(self, candidates: Sequence["NFElement"] | None = None) -> "GaloisGroup":
        return GaloisGroup.from_images(self, candidates)


@dataclass(frozen=True)
class NFElement:
    field: NumberField
    coords: tuple[Fraction, ...]

    def __add__(self, other):
        o = self.field(other)
        return NFElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-self.field(other))

    def __rsub__(self, other):
        return self.field(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NFElement(self.field, tuple(a * other for a in self.coords))
        return NFElement(self.field, self.field._mul_coords(self.coords, other.coords))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return NFElement(self.field, tuple(a / other for a in self.coords))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def mul_matrix(self) -> list[list[Fraction]]:
        """Matrix of y -> self*y; column j is self*pi^j."""
        f = self.field
        cols = []
        for j in range(f.n):
            e = [Q0] * f.n
            e[j] = Q1
            cols.append(f._mul_coords(self.coords, e))
        return linalg.transpose(cols)

    def trace(self) -> Fraction:
        return sum((c * t for c, t in zip(self.coords, self.field.trace_vector())), Q0)

    def norm(self) -> Fraction:
        return linalg.det(self.mul_matrix())

    def charpoly(self) -> tuple[Fraction, ...]:
        """det(x - mult by self), from the traces of powers via Newton's identities."""
        n = self.field.n
        traces = []
        cur = self
        for k in range(n):
            traces.append(cur.trace())
            if k < n - 1:
                cur = cur * self
        # e_k = (1/k) sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i
        e = [Q1]
        for k in range(1, n + 1):
            acc = sum(((-1) ** (i - 1) * e[k - i] * traces[i - 1] for i in range(1, k + 1)), Q0)
            e.append(acc / k)
        return tuple((-1) ** k * e[k] for k in range(n, -1, -1))

    def minpoly(self) -> tuple[Fraction, ...]:
        """Monic minimal polynomial over Q, ascending coefficients."""
        powers = [self.field.one.coords]
        cur = self.field.one
        for d in range(1, self.field.n + 1):
            cur = cur * self
            rows = linalg.transpose(powers)  # columns = powers
            sol = linalg.solve(rows, cur.coords) if powers else None
            if sol is not None:
                return tuple([-c for c in sol] + [Q1])
            powers.append(cur.coords)
        raise AssertionError("no minimal polynomial found")

    def inverse(self) -> "NFElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        e0 = [Q1] + [Q0] * (self.field.n - 1)
        sol = linalg.solve(self.mul_matrix(), e0)
        return NFElement(self.field, tuple(sol))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.charpoly())

    def evaluate_at(self, z: complex) -> complex:
        """Value of this element's polynomial in pi at a complex number."""
        acc = 0j
        for c in reversed(self.coords):
            acc = acc * z + float(c)
        return acc

    def compose(self, image_of_gen: "NFElement") -> "NFElement":
        """Substitute pi -> image_of_gen."""
        acc = self.field.zero
        for c in reversed(self.coords):
            acc = acc * image_of_gen + c
        return acc

    def __repr__(self) -> str:
        return poly_to_str(self.coords, "pi")


def poly_eval(coeffs: Sequence, x: NFElement) -> NFElement:
    acc = x.field.zero
    for c in reversed(coeffs):
        acc = acc * x + Fraction(c)
    return acc


# --------------------------------------------------------------------------
# Galois groups

@dataclass(frozen=True)
class Automorphism:
    image: NFElement  # image of the generator pi

    @property
    def field(self) -> NumberField:
        return self.image.field

    @cached_property
    def matrix(self) -> list[list[Fraction]]:
        """Column j is sigma(pi^j)."""
        f = self.field
        cols = [f.one.coords]
        cur = f.one
        for _ in range(1, f.n):
            cur = cur * self.image
            cols.append(cur.coords)
        return linalg.transpose(cols)

    def __call__(self, x: NFElement) -> NFElement:
        return NFElement(x.field, tuple(linalg.matvec(self.matrix, list(x.coords))))

    def __matmul__(self, other: "Automorphism") -> "Automorphism":
        """Composition self o other."""
        return Automorphism(self(other.image))

    def key(self) -> tuple[Fraction, ...]:
        return self.image.coords


class GaloisGroup:
    """Automorphism group of a Galois number field, given by images of pi."""

    def __init__(self, field: NumberField, autos: Sequence[Automorphism]):
        self.field = field
        ident = field.gen.coords
        autos = sorted(autos, key=lambda a: (a.key() != ident, ))
        self.elements: list[Automorphism] = list(autos)
        self._index = {a.key(): i for i, a in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise ValueError("repeated automorphism")
        n = len(self.elements)
        self.table = [[self.index(self.elements[i] @ self.elements[j]) for j in range(n)] for i in range(n)]

    @classmethod
    def from_images(cls, field: NumberField, candidates: Sequence[NFElement] | None = None) -> "GaloisGroup":
        if candidates is None:
            candidates = find_conjugates(field)
        roots = []
        for a in candidates:
            if not poly_eval(field.m, a).is_zero():
                raise ValueError(f"{a} is not a root of {field.name}")
            if a.coords not in [r.coords for r in roots]:
                roots.append(a)
        if len(roots) != field.n:
            raise ValueError(f"{field.name} is not Galois or conjugates were not all found "
                             f"({len(roots)} of {field.n} roots in the field)")
        return cls(field, [Automorphism(r) for r in roots])

    def index(self, a: Automorphism) -> int:
        try:
            return self._index[a.key()]
        except KeyError:
            raise ValueError("composition left the group (not closed)") from None

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i: int) -> Automorphism:
        return self.elements[i]

    @property
    def identity(self) -> int:
        return 0

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        return next(j for j in range(len(self)) if self.table[i][j] == 0)

    def order(self, i: int) -> int:
        k, cur = 1, i
        while cur != 0:
            cur = self.table[cur][i]
            k += 1
        return k

    def is_abelian(self) -> bool:
        n = len(self)
        return all(self.table[i][j] == self.table[j][i] for i in range(n) for j in range(n))

    def structure(self) -> str:
        """'C2', 'C4' or 'C2xC2' (or a generic description)."""
        n = len(self)
        orders = sorted(self.order(i) for i in range(n))
        if n == 4:
            return "C4" if 4 in orders else "C2xC2"
        if n == 2:
            return "C2"
        return f"order {n}"

    def check_table(self) -> None:
        n = len(self)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    assert self.table[self.table[i][j]][k] == self.table[i][self.table[j][k]]
        for i in range(n):
            assert sum(1 for j in range(n) if self.table[i][j] == 0) == 1

    @cached_property
    def complex_conjugation(self) -> int:
        """Index of the element acting as z -> conj(z) under every complex embedding.

        Checked numerically at each root of m; the result is an exact
        automorphism, so the numeric step only selects among verified roots.
        """
        roots = self.field.complex_roots
        scale = max(1.0, float(np.max(np.abs(roots))))
        hits = []
        for i, a in enumerate(self.elements):
            ok = all(abs(a.image.evaluate_at(z) - np.conj(z)) < 1e-7 * scale for z in roots)
            if ok:
                hits.append(i)
        if len(hits) != 1 or hits[0] == 0:
            raise ValueError(f"{self.field.name} is not a CM field (conjugation candidates {hits})")
        return hits[0]

    def subgroup(self, gens: Iterable[int]) -> frozenset[int]:
        sub = {0}
        frontier = set(gens)
        while frontier:
            sub |= frontier
            frontier = {self.table[a][b] for a in sub for b in sub} - sub
        return frozenset(sub)

    def subgroups_of_order(self, k: int) -> list[frozenset[int]]:
        out = set()
        for combo in itertools.combinations(range(len(self)), 2):
            s = self.subgroup(combo)
            if len(s) == k:
                out.add(s)
        for i in range(len(self)):
            s = self.subgroup([i])
            if len(s) == k:
                out.add(s)
        return sorted(out, key=sorted)

    def fixed_field(self, subgroup: Iterable[int]) -> "Subfield":
        """Subfield fixed by the given automorphisms."""
        f = self.field
        rows = []
        for i in subgroup:
            a = self.elements[i].matrix
            for r in range(f.n):
                rows.append([a[r][c] - (Q1 if r == c else Q0) for c in range(f.n)])
        basis = linalg.nullspace(rows, f.n) if rows else linalg.identity(f.n)
        return Subfield.from_span(f, [f.element(b) for b in basis])

    def fixing_subgroup(self, sub: "Subfield") -> frozenset[int]:
        return frozenset(i for i, a in enumerate(self.elements)
                         if all(a(b) == b for b in sub.basis))


def find_conjugates(field: NumberField) -> list[NFElement]:
    """Roots of m inside Q(pi), found without closed forms.

    Tries +-pi and c0^(1/2)/pi-style candidates first (even Weil polynomials);
    otherwise matches complex roots against rational polynomial expressions by
    solving a Vandermonde system for each permutation of the roots and
    recognising rational coefficients, then verifies every candidate exactly.
    """
    n, m = field.n, field.m
    pi = field.gen
    found: list[NFElement] = []

    def add(a: NFElement) -> None:
        if poly_eval(m, a).is_zero() and a.coords not in [r.coords for r in found]:
            found.append(a)

    add(pi)
    c0 = m[0]
    s = math.isqrt(abs(c0.numerator)) if c0.denominator == 1 else 0
    if s * s == abs(c0) and s:
        for sign in (1, -1):
            add(sign * pi)
            add(sign * Fraction(s) / pi)
    if len(found) == n:
        return found
    roots = field.complex_roots
    vand = np.array([[z ** j for j in range(n)] for z in roots])
    for perm in itertools.permutations(range(n)):
        target = np.array([roots[k] for k in perm])
        try:
            coef = np.linalg.solve(vand, target)
        except np.linalg.LinAlgError:
            continue
        if np.max(np.abs(coef.imag)) > 1e-6:
            continue
        cand = field.element([Fraction(float(c)).limit_denominator(10 ** 6) for c in coef.real])
        add(cand)
        if len(found) == n:
            break
    return found


# --------------------------------------------------------------------------
# subfields

@dataclass
class Subfield:
    field: NumberField
    basis: list[NFElement]  # echelon basis, first element 1

    @classmethod
    def from_span(cls, field: NumberField, elems: Sequence[NFElement]) -> "Subfield":
        rows = [list(e.coords) for e in elems]
        red, _ = linalg.rref(rows) if rows else ([], [])
        basis = [field.element(r) for r in red]
        return cls(field, basis)

    @property
    def degree(self) -> int:
        return len(self.basis)

    def contains(self, x: NFElement) -> bool:
        rows = [list(b.coords) for b in self.basis]
        return linalg.rank(rows + [list(x.coords)]) == len(rows)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subfield) and self.field == other.field
                and self.degree == other.degree and all(self.contains(b) for b in other.basis))

    def __hash__(self) -> int:
        return hash((self.field, self.degree))

    @cached_property
    def primitive_element(self) -> NFElement:
        """First combination sum_i k^i b_i (k = 0, 1, 2, ...) of the non-unit basis
        vectors whose minimal polynomial has full degree."""
        d = self.degree
        if d == 1:
            return self.field.one
        others = [b for b in self.basis if not b.is_rational()]
        for k in itertools.count():
            x = self.field.zero
            for i, b in enumerate(others):
                x = x + b * (k ** i if i else 1)
            if len(x.minpoly()) - 1 == d:
                return x
        raise AssertionError("unreachable")

    @cached_property
    def minpoly(self) -> tuple[Fraction, ...]:
        return self.primitive_element.minpoly()

    @cached_property
    def quadratic_data(self) -> tuple[int, NFElement]:
        """For a quadratic subfield: squarefree d and an element s with s^2 = d."""
        if self.degree != 2:
            raise ValueError("not a quadratic subfield")
        y = self.primitive_element
        c, b, _ = self.minpoly  # y^2 + b y + c
        disc = b * b - 4 * c
        num = disc.numerator * disc.denominator
        d = squarefree_part(num)
        k2 = Fraction(num, d) / (disc.denominator ** 2)  # disc = d * k2
        k = Fraction(math.isqrt(k2.numerator), math.isqrt(k2.denominator))
        assert k * k == k2
        s = (2 * y + b) / k
        assert s * s == s.field(d)
        return d, s

    @property
    def squarefree(self) -> int:
        return self.quadratic_data[0]

    @property
    def sqrt(self) -> NFElement:
        return self.quadratic_data[1]

    @property
    def discriminant(self) -> int:
        if self.degree == 2:
            return fundamental_discriminant(self.squarefree)
        raise ValueError("discriminant only provided for quadratic subfields")


def subfield_generated_by(field: NumberField, elements: Sequence[NFElement]) -> Subfield:
    """Smallest Q-subalgebra containing the given elements."""
    span = [field.one] + list(elements)
    sub = Subfield.from_span(field, span)
    for _ in range(field.n + 1):
        prods = [a * b for a in sub.basis for b in sub.basis]
        nxt = Subfield.from_span(field, sub.basis + prods)
        if nxt.degree == sub.degree:
            return sub
        sub = nxt
    raise AssertionError("subalgebra closure did not stabilise")


# --------------------------------------------------------------------------
# orders

class Order:
    """Z-lattice of full rank that is a ring; basis rows num[i] / den in power-basis coordinates."""

    def __init__(self, field: NumberField, rows: Sequence[Sequence[Fraction]]):
        self.field = field
        rows = [_frac_tuple(r) for r in rows]
        den = 1
        for r in rows:
            for x in r:
                den = den * x.denominator // math.gcd(den, x.denominator)
        num = linalg.hnf([[int(x * den) for x in r] for r in rows])
        g = 0
        for r in num:
            for x in r:
                g = math.gcd(g, x)
        g = math.gcd(g, den)
        if g > 1:
            num = [[x // g for x in r] for r in num]
            den //= g
        self.num = num
        self.den = den
        if len(num) != field.n:
            raise ValueError(f"lattice has rank {len(num)}, expected {field.n}")

    @property
    def basis(self) -> list[NFElement]:
        return [self.field.element([Fraction(x, self.den) for x in r]) for r in self.num]

    @cached_property
    def _basis_matrix(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.den) for x in r] for r in self.num]

    def coordinates(self, x: NFElement) -> list[Fraction]:
        """Coordinates of x in this order's basis (rational in general)."""
        return _solve_upper([[Fraction(v) for v in r] for r in self.num],
                            [c * self.den for c in x.coords])

    def contains(self, x: NFElement) -> bool:
        return all(c.denominator == 1 for c in self.coordinates(x))

    def contains_order(self, other: "Order") -> bool:
        return all(self.contains(b) for b in other.basis)

    @cached_property
    def discriminant(self) -> int:
        if self.field._int_reductions is not None:
            idx = Fraction(math.prod(self.num[i][i] for i in range(self.field.n)), self.den ** self.field.n)
            d = self.field.poly_discriminant * idx * idx
            assert d.denominator == 1
            return int(d)
        b = self.basis
        gram = [[(x * y).trace() for y in b] for x in b]
        d = linalg.det(gram)
        assert d.denominator == 1
        return int(d)

    @cached_property
    def structure_constants(self) -> list[list[list[int]]]:
        """c[i][j][k] with b_i b_j = sum_k c[i][j][k] b_k."""
        if self.field._int_reductions is not None:
            # (num_i / den)(num_j / den) = sum_k c_k num_k / den
            out = []
            for x in self.num:
                row = []
                for y in self.num:
                    prod = self.field.int_mul(x, y)
                    co = _solve_upper_int(self.num, prod, self.den)
                    if co is None:
                        raise ValueError("basis is not closed under multiplication")
                    row.append(co)
                out.append(row)
            return out
        b = self.basis
        out = []
        for x in b:
            row = []
            for y in b:
                co = self.coordinates(x * y)
                if any(c.denominator != 1 for c in co):
                    raise ValueError("basis is not closed under multiplication")
                row.append([int(c) for c in co])
            out.append(row)
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Order) and self.field == other.field and \
            self.num == other.num and self.den == other.den

    def __repr__(self) -> str:
        return f"Order(disc={self.discriminant}, den={self.den})"


OrderZBasis = Order


def _solve_upper(rows: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> list[Fraction]:
    """y with y . rows = v for an upper-triangular invertible matrix."""
    n = len(rows)
    y = []
    for t in range(n):
        acc = v[t] - sum((y[i] * rows[i][t] for i in range(t)), Q0)
        y.append(acc / rows[t][t])
    return y


def _solve_upper_int(rows: Sequence[Sequence[int]], v: Sequence[int], scale: int = 1) -> list[int] | None:
    """Integer y with y . rows * scale = v, or None when y is not integral."""
    y = []
    for t in range(len(rows)):
        acc = v[t] - scale * sum(y[i] * rows[i][t] for i in range(t))
        q, r = divmod(acc, scale * rows[t][t])
        if r:
            return None
        y.append(q)
    return y


def _closure_rows(field: NumberField, elems: Sequence[NFElement]) -> list[list[Fraction]]:
    return [list(e.coords) for e in elems]


def order_from_generators(field: NumberField, gens: Sequence[NFElement], max_rounds: int = 8) -> Order:
    """HNF basis of Z[gens] (multiplicative closure of 1 and the generators)."""
    for g in gens:
        if not g.is_integral():
            raise ValueError(f"generator {g} is not an algebraic integer")
    elems = [field.one] + list(gens)
    cur = _lattice(field, elems)
    for _ in range(max_rounds):
        basis = cur
        prods = [a * b for a in basis for b in basis]
        nxt = _lattice(field, basis + prods)
        if _same_lattice(nxt, basis):
            if len(basis) != field.n:
                raise ValueError(f"Z[gens] has rank {len(basis)} < {field.n}")
            return Order(field, [e.coords for e in basis])
        cur = nxt
    raise AssertionError("order closure did not stabilise")


def _lattice(field: NumberField, elems: Sequence[NFElement]) -> list[NFElement]:
    den = 1
    for e in elems:
        for x in e.coords:
            den = den * x.denominator // math.gcd(den, x.denominator)
    num = linalg.hnf([[int(x * den) for x in e.coords] for e in elems])
    return [field.element([Fraction(x, den) for x in r]) for r in num]


def _same_lattice(a: Sequence[NFElement], b: Sequence[NFElement]) -> bool:
    return [x.coords for x in a] == [x.coords for x in b]


def equation_order(field: NumberField) -> Order:
    if any(c.denominator != 1 for c in field.m):
        raise ValueError("defining polynomial is not integral")
    return Order(field, linalg.identity(field.n))


def order_index(sub: Order, sup: Order) -> int:
    """[sup : sub] for sub contained in sup."""
    rows = [sup.coordinates(b) for b in sub.basis]
    if any(c.denominator != 1 for r in rows for c in r):
        raise ValueError("first order is not contained in the second")
    return abs(linalg.int_det([[int(c) for c in r] for r in rows]))


def _radical_mod_p(order: Order, p: int) -> list[list[int]]:
    """Basis (order coordinates, mod p) of the nilradical of O/pO."""
    n = order.field.n
    c = order.structure_constants
    j = 1
    while p ** j < n:
        j += 1

    def mul(x: Sequence[int], y: Sequence[int]) -> list[int]:
        out = [0] * n
        for a, xa in enumerate(x):
            if xa:
                for b, yb in enumerate(y):
                    if yb:
                        f = xa * yb
                        cab = c[a][b]
                        for k in range(n):
                            out[k] += f * cab[k]
        return [v % p for v in out]

    one = [int(v) for v in order.coordinates(order.field.one)]

    def power(x: list[int], e: int) -> list[int]:
        result, base = [v % p for v in one], x
        while e:
            if e & 1:
                result = mul(result, base)
            base = mul(base, base)
            e >>= 1
        return result

    images = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        images.append(power(e, p ** j))
    # kernel of the linear map x -> x^(p^j): columns are images
    return linalg.nullspace_mod(linalg.transpose(images), n, p)


def radical_dimension(order: Order, p: int) -> int:
    return len(_radical_mod_p(order, p))


def _enlarge_at(order: Order, p: int) -> Order:
    """One round-2 step: the ring of multipliers of the p-radical."""
    n = order.field.n
    c = order.structure_constants
    rad = _radical_mod_p(order, p)
    # Z-basis of I_p in order coordinates
    gens = [list(v) for v in rad] + [[p if i == k else 0 for k in range(n)] for i in range(n)]
    ip = linalg.hnf(gens)
    # y -> (y * g_j in I_p coordinates mod p) for each basis vector g_j of I_p
    cols = []
    for k in range(n):
        col = []
        for g in ip:
            prod = [sum(g[l] * c[k][l][t] for l in range(n)) for t in range(n)]
            co = _solve_upper_int(ip, prod)
            assert co is not None
            col.extend(x % p for x in co)
        cols.append(col)
    kernel = linalg.nullspace_mod(linalg.transpose(cols), n, p)
    bm = order._basis_matrix
    rows = [list(b) for b in bm]
    for u in kernel:
        rows.append([sum(Fraction(u[i], p) * bm[i][t] for i in range(n)) for t in range(n)])
    return Order(order.field, rows)


def p_maximal_order(order: Order, p: int) -> Order:
    cur = order
    while True:
        nxt = _enlarge_at(cur, p)
        if nxt.discriminant == cur.discriminant:
            return cur
        cur = nxt


def maximal_order(field: NumberField, start: Order | None = None) -> Order:
    """Ring of integers by round-2 enlargement at every p with p^2 | disc."""
    cur = start or equation_order(field)
    for p, e in factorint(cur.discriminant).items():
        if e >= 2:
            cur = p_maximal_order(cur, p)
    return cur
