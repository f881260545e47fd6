"""The Frobenius orders R_sp = Z[pi, p/pi, pi^2/p] and R_ss = Z[pi, p/pi] inside O_L."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .arith import factorint, valuation
from .catalog import WeilNumberInstance, catalog_field
from .numfield import NFElement, Order, maximal_order, order_from_generators, order_index


def p_over_pi(inst: WeilNumberInstance) -> NFElement:
    """p/pi from the minimal polynomial: pi (pi^3 + m3 pi^2 + m2 pi + m1) = -p^2."""
    if not inst.concern:
        raise ValueError("only defined for quartic Weil numbers")
    field = catalog_field(inst.p, inst.family)
    pi = field.gen
    m = inst.minpoly
    out = -(pi ** 3 + m[3] * pi ** 2 + m[2] * pi + m[1]) / inst.p
    assert out * pi == field(inst.p)
    return out


@dataclass(frozen=True)
class FrobeniusOrders:
    maximal: Order
    r_sp: Order
    r_ss: Order

    @property
    def index_sp(self) -> int:
        return order_index(self.r_sp, self.maximal)

    @property
    def index_ss_in_sp(self) -> int:
        return order_index(self.r_ss, self.r_sp)

    def local_index_ss(self, p: int) -> int:
        """p-part of [O_L : R_ss], i.e. [O_L (x) Z_p : R_ss (x) Z_p]."""
        idx = order_index(self.r_ss, self.maximal)
        return p ** valuation(idx, p)


@lru_cache(maxsize=2048)
def frobenius_orders(inst: WeilNumberInstance) -> FrobeniusOrders:
    field = catalog_field(inst.p, inst.family)
    pi = field.gen
    pp = p_over_pi(inst)
    r_ss = order_from_generators(field, [pi, pp])
    r_sp = order_from_generators(field, [pi, pp, pi ** 2 / inst.p])
    ok = maximal_order(field, start=r_ss)
    return FrobeniusOrders(ok, r_sp, r_ss)


def index_r_sp(inst: WeilNumberInstance) -> int:
    return frobenius_orders(inst).index_sp


def intermediate_orders(sub: Order, sup: Order) -> list[Order]:
    """Orders strictly between sub and sup.

    Every intermediate lattice is sub + Z x for some x when [sup : sub] has at
    most two prime factors (all proper subgroups of the quotient are cyclic).
    """
    idx = order_index(sub, sup)
    if sum(factorint(idx).values()) > 2:
        raise ValueError(f"index {idx} has more than two prime factors")
    field = sup.field
    n = field.n
    base = [list(b.coords) for b in sub.basis]
    out: list[Order] = []
    for coeffs in itertools.product(range(idx), repeat=n):
        x = sum((c * b for c, b in zip(coeffs, sup.basis)), field.zero)
        if sub.contains(x):
            continue
        lat = Order(field, base + [list(x.coords)])
        k = order_index(lat, sup)
        if k in (1, idx) or any(lat == o for o in out):
            continue
        try:
            lat.structure_constants
        except ValueError:
            continue
        out.append(lat)
    return out
