"""Finite models of Dieudonne modules over W(F_{p^2}) truncated at p or p^2.

A module is free of rank N over R = F_{p^2} (level 1) or GR(p^2, 2) (level 2).
F and V are semilinear: F(v) = A sigma(v), V(v) = B sigma^{-1}(v) with integer
matrices A, B, so FV = VF = p amounts to AB = BA = p.  The module comes with a
decomposition into components M_j permuted by F, grouped into places.

This module deliberately does not use the place/valuation machinery: catalog
modules are built from O_L and the Frobenius element alone, and components are
found as generalised eigenspaces of an element of O_L.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .arith import QuadElem, QuadExt, factor_squarefree_quartic_mod_p, fp2, gr2, sqrt_mod
from .numfield import NFElement, NumberField, Order, maximal_order, radical_dimension

Vector = list  # of QuadElem


@dataclass
class DieudonneModule:
    p: int
    level: int  # 1: mod p, 2: mod p^2
    A: list[list[int]]  # F = A o sigma
    B: list[list[int]]  # V = B o sigma^{-1}
    components: list[list[Vector]] = field(default_factory=list)  # bases over R
    successor: list[int] = field(default_factory=list)  # F(M_j) lies in M_successor[j]
    places: list[list[int]] = field(default_factory=list)  # component indices, in F-order
    label: str = ""

    @property
    def ring(self) -> QuadExt:
        return fp2(self.p) if self.level == 1 else gr2(self.p)

    @property
    def rank(self) -> int:
        return len(self.A)

    @property
    def modulus(self) -> int:
        return self.p ** self.level

    def _apply(self, mat: Sequence[Sequence[int]], v: Vector) -> Vector:
        r = self.ring
        tw = [x.sigma() for x in v]
        return [sum((tw[j] * (mat[i][j] % self.modulus) for j in range(self.rank)), r(0))
                for i in range(self.rank)]

    def F(self, v: Vector) -> Vector:
        return self._apply(self.A, v)

    def V(self, v: Vector) -> Vector:
        return self._apply(self.B, v)

    def check_fv(self) -> bool:
        """FV = VF = p on the underlying ring."""
        n, mod = self.rank, self.modulus
        ab = linalg.matmul(self.A, self.B)
        ba = linalg.matmul(self.B, self.A)
        target = [[self.p if i == j else 0 for j in range(n)] for i in range(n)]
        return all((ab[i][j] - target[i][j]) % mod == 0 and (ba[i][j] - target[i][j]) % mod == 0
                   for i in range(n) for j in range(n))

    def reduce(self) -> "DieudonneModule":
        """Reduction of a level-2 model to level 1."""
        if self.level == 1:
            return self
        comps = [[[x.reduce() for x in v] for v in basis] for basis in self.components]
        return DieudonneModule(self.p, 1, [[x % self.p for x in r] for r in self.A],
                               [[x % self.p for x in r] for r in self.B], comps,
                               list(self.successor), [list(pl) for pl in self.places], self.label)

    def lie_dimensions(self) -> list[list[int]]:
        """Per place, per component j: dim M_{succ(j)} / F(M_j) over F_{p^2}."""
        m = self.reduce()
        one = m.ring(1)
        out = []
        for place in m.places:
            dims = []
            for j in place:
                images = [m.F(v) for v in m.components[j]]
                r = linalg.rank(images, one) if images else 0
                dims.append(len(m.components[m.successor[j]]) - r)
            out.append(dims)
        return out

    def is_superspecial(self) -> bool:
        """V^2 M = p M, via elementary divisors of V^2 = B^2 over Z/p^2."""
        if self.level != 2:
            raise ValueError("superspeciality needs the level-2 model")
        if not self.check_fv():
            raise ValueError("FV = VF = p fails: not a Dieudonne module")
        b2 = linalg.matmul(self.B, self.B)
        vals = linalg.elementary_divisor_valuations(b2, self.p, 2)
        return all(v == 1 for v in vals)

    def total_lie_dimension(self) -> int:
        return sum(sum(d) for d in self.lie_dimensions())


# --------------------------------------------------------------------------
# modules from exponent patterns

def pattern_module(p: int, places: Sequence[dict], level: int = 2, label: str = "") -> DieudonneModule:
    """Module with one rank-1 F_{p^2}[pi_w]/(pi_w^e) component per residue index.

    Each place is {"e": e, "f": f, "F_pattern": [a_0, ..., a_{f-1}]}; F sends
    pi^k m^i to pi^(k + a_i) m^(i+1) and V sends pi^k m^(i+1) to
    pi^(k + e - a_i) m^i, with pi^e = p.
    """
    index = {}
    comps_idx: list[list[int]] = []
    successor: list[int] = []
    place_lists: list[list[int]] = []
    n = 0
    for pl_no, pl in enumerate(places):
        e, f, pat = pl["e"], pl["f"], list(pl["F_pattern"])
        if len(pat) != f or any(a < 0 or a > e for a in pat):
            raise ValueError(f"bad F-pattern {pat} for e={e}, f={f}")
        first = len(comps_idx)
        place_lists.append(list(range(first, first + f)))
        for i in range(f):
            block = []
            for k in range(e):
                index[(pl_no, i, k)] = n
                block.append(n)
                n += 1
            comps_idx.append(block)
            successor.append(first + (i + 1) % f)
    mod = p ** level
    a_mat = [[0] * n for _ in range(n)]
    b_mat = [[0] * n for _ in range(n)]

    def put(mat, src, dst_key, exp, e):
        q, r = divmod(exp, e)
        coeff = p ** q % mod
        if coeff:
            dst = index[dst_key[0], dst_key[1], r]
            mat[dst][src] = (mat[dst][src] + coeff) % mod

    for pl_no, pl in enumerate(places):
        e, f, pat = pl["e"], pl["f"], pl["F_pattern"]
        for i in range(f):
            nxt = (i + 1) % f
            for k in range(e):
                put(a_mat, index[(pl_no, i, k)], (pl_no, nxt), k + pat[i], e)
                put(b_mat, index[(pl_no, nxt, k)], (pl_no, i), k + e - pat[i], e)
    ring = fp2(p) if level == 1 else gr2(p)
    comps = []
    for block in comps_idx:
        basis = []
        for idx in block:
            v = [ring(0)] * n
            v[idx] = ring(1)
            basis.append(v)
        comps.append(basis)
    return DieudonneModule(p, level, a_mat, b_mat, comps, successor, place_lists, label)


def module_from_fixture(data: dict) -> DieudonneModule:
    """{"p": 3, "places": [{"e": 2, "f": 1, "F_pattern": [1]}], "level": "p2"}."""
    level = {"p": 1, "p2": 2}[data.get("level", "p2")]
    return pattern_module(int(data["p"]), data["places"], level, data.get("label", ""))


# --------------------------------------------------------------------------
# modules attached to a Weil number: M = O_L (x) R

def _int_matrix(order: Order, x: NFElement) -> list[list[int]]:
    """Matrix of multiplication by x on the order's basis (columns are images)."""
    cols = []
    for b in order.basis:
        co = order.coordinates(x * b)
        if any(c.denominator != 1 for c in co):
            raise ValueError(f"{x} does not preserve the order")
        cols.append([int(c) for c in co])
    return linalg.transpose(cols)


def roots_in_fp2(poly: Sequence[int], p: int) -> list[QuadElem]:
    """Distinct roots in F_{p^2} of an integer polynomial of degree <= 4 (reduced mod p)."""
    k = fp2(p)
    out: list[QuadElem] = []
    for fac, _ in factor_squarefree_quartic_mod_p(poly, p):
        deg = len(fac) - 1
        if deg == 1:
            out.append(k(-fac[0]))
        elif deg == 2:
            out.extend(_quadratic_roots_fp2(fac[1], fac[0], p))
        else:
            raise ValueError("factor of degree > 2 has no roots in F_{p^2}")
    uniq = []
    for r in out:
        if r not in uniq:
            uniq.append(r)
    return uniq


def _quadratic_roots_fp2(s: int, t: int, p: int) -> list[QuadElem]:
    """Roots of the irreducible X^2 + sX + t in F_{p^2}."""
    k = fp2(p)
    if p == 2:
        return [x for x in k.elements() if (x * x + x * s + t).is_zero()]
    disc = (s * s - 4 * t) % p
    delta0 = (k.b * k.b - 4 * k.c) % p  # (2x + b)^2 = delta0, a non-residue
    r = sqrt_mod(disc * pow(delta0, -1, p), p)
    root_disc = k(k.b * r, 2 * r)  # r (2x + b)
    inv2 = pow(2, -1, p)
    return [(root_disc * sign - s) * inv2 for sign in (1, -1)]


def _generalised_eigenspace(t_mat: Sequence[Sequence[int]], lam: QuadElem, n: int) -> list[Vector]:
    k = lam.ring
    m = [[k(t_mat[i][j]) - (lam if i == j else k(0)) for j in range(n)] for i in range(n)]
    power = m
    for _ in range(n - 1):
        power = linalg.matmul(power, m)
    return linalg.nullspace(power, n, k(1))


def _lift(v: Vector, ring: QuadExt) -> Vector:
    return [ring(x.a0, x.a1) for x in v]


def catalog_module(field: NumberField, pi: NFElement, p: int, level: int = 2,
                   order: Order | None = None, label: str = "") -> DieudonneModule:
    """M = O_L (x) R with F = (p/pi) o sigma and V = pi o sigma^{-1}.

    Components are the generalised eigenspaces (over F_{p^2}) of multiplication
    by an element theta of O_L chosen so that the number of distinct eigenvalues
    equals dim O_L/p minus the dimension of its radical.  F maps the
    lambda-component into the lambda^p-component; places are the orbits.
    """
    order = order or maximal_order(field)
    n = field.n
    a_mat = _int_matrix(order, p / pi)
    b_mat = _int_matrix(order, pi)
    target = n - radical_dimension(order, p)
    basis = order.basis
    k = fp2(p)
    for coeffs in itertools.product(range(-2, 3), repeat=n - 1):
        theta = sum((c * b for c, b in zip(coeffs, basis[1:])), field.zero)
        t_mat = _int_matrix(order, theta)
        cp = theta.charpoly()
        eig = roots_in_fp2([int(c) for c in cp], p)
        if len(eig) == target:
            break
    else:
        raise AssertionError("no separating element of O_L found")
    spaces = [_generalised_eigenspace(t_mat, lam, n) for lam in eig]
    assert sum(len(s) for s in spaces) == n
    succ = [eig.index(lam ** p) for lam in eig]
    places, seen = [], set()
    for j in range(len(eig)):
        if j in seen:
            continue
        orbit, cur = [], j
        while cur not in orbit:
            orbit.append(cur)
            cur = succ[cur]
        seen.update(orbit)
        places.append(orbit)
    ring = k if level == 1 else gr2(p)
    comps = [[_lift(v, ring) for v in s] for s in spaces]
    mod = p ** level
    mod_mat = lambda mat: [[x % mod for x in r] for r in mat]  # noqa: E731
    return DieudonneModule(p, level, mod_mat(a_mat), mod_mat(b_mat), comps, succ, places, label)


# --------------------------------------------------------------------------
# helpers for comparisons

def canonical_dims(dims: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Sort places and rotate each to its lexicographically largest rotation."""
    out = []
    for d in dims:
        d = tuple(d)
        rots = [d[i:] + d[:i] for i in range(len(d))] or [d]
        out.append(max(rots))
    return sorted(out)


def random_semilinearity_check(mod: DieudonneModule, trials: int = 100, seed: int = 0) -> bool:
    """F(lambda m) = sigma(lambda) F(m) and V(lambda m) = sigma^{-1}(lambda) V(m)."""
    rng = random.Random(seed)
    r = mod.ring
    n = mod.rank
    q = mod.modulus
    for _ in range(trials):
        lam = r(rng.randrange(q), rng.randrange(q))
        v = [r(rng.randrange(q), rng.randrange(q)) for _ in range(n)]
        lv = [lam * x for x in v]
        if mod.F(lv) != [lam.sigma() * x for x in mod.F(v)]:
            return False
        if mod.V(lv) != [lam.sigma() * x for x in mod.V(v)]:
            return False
    return True
