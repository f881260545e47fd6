"""A simple CM abelian surface up to isogeny: CM field, Galois data and Frobenius.

A `CMSurface` bundles what every downstream computation needs: the quartic CM
field L with its automorphisms and complex conjugation, the totally real
subfield L0, the Weil-q number (as an element of L), and naming conventions
for automorphisms.  Catalog instances and bare Weil polynomials both produce one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

from .arith import prime_power, squarefree_part
from .catalog import (WeilNumberInstance, canonical_square_roots, catalog_field,
                      closed_form_conjugates, frobenius_element)
from .numfield import GaloisGroup, NFElement, NumberField, Subfield


@dataclass(eq=False)
class CMSurface:
    label: str
    p: int
    q: int
    field: NumberField
    group: GaloisGroup
    frob: NFElement
    instance: WeilNumberInstance | None = None
    sqrt_names: tuple[int, int] | None = None
    zeta5: NFElement | None = None

    @property
    def c(self) -> int:
        return self.group.complex_conjugation

    @cached_property
    def real_subfield(self) -> Subfield:
        return self.group.fixed_field([0, self.c])

    @cached_property
    def quadratic_subfields(self) -> list[tuple[frozenset[int], Subfield]]:
        """(order-2 subgroup, its fixed field) pairs, or the unique one for C4."""
        out = []
        for h in self.group.subgroups_of_order(2):
            out.append((h, self.group.fixed_field(h)))
        return out

    def subgroup_fixing_sqrt(self, d: int) -> frozenset[int]:
        """Gal(L / Q(sqrt d)) for a quadratic subfield Q(sqrt d) of L."""
        d0 = squarefree_part(d)
        for h, sub in self.quadratic_subfields:
            if sub.squarefree == d0:
                return h
        raise ValueError(f"Q(sqrt({d})) is not a subfield of {self.field.name}")

    def sqrt_element(self, d: int) -> NFElement:
        """An element s of L with s^2 = d (d need not be squarefree)."""
        d0 = squarefree_part(d)
        for _, sub in self.quadratic_subfields:
            if sub.squarefree == d0:
                k = math.isqrt(d // d0)
                assert k * k * d0 == d
                return sub.sqrt * k
        raise ValueError(f"sqrt({d}) is not in {self.field.name}")

    @cached_property
    def automorphism_names(self) -> list[str]:
        """Readable names: sign pairs on two square roots, or powers of g for C4."""
        g = self.group
        if g.structure() == "C2xC2" and self.sqrt_names:
            roots = [self.sqrt_element(d) for d in self.sqrt_names]
            names = []
            for a in g:
                signs = []
                for r in roots:
                    img = a(r)
                    signs.append("+" if img == r else "-")
                    assert img == r or img == -r
                names.append("id" if signs == ["+", "+"] else f"({signs[0]},{signs[1]})")
            return names
        if g.structure() == "C4" and self.zeta5 is not None:
            z = self.zeta5
            gen = next(i for i, a in enumerate(g) if a(z) == z ** 2)
            names = [""] * 4
            cur = 0
            for k in range(4):
                names[cur] = "id" if k == 0 else ("g" if k == 1 else f"g^{k}")
                cur = g.mul(gen, cur)
            return names
        return ["id"] + [f"s{i}" for i in range(1, len(g))]

    def name(self, i: int) -> str:
        return self.automorphism_names[i]

    def index_of(self, name: str) -> int:
        return self.automorphism_names.index(name)


@lru_cache(maxsize=4096)
def surface_for(inst: WeilNumberInstance) -> CMSurface:
    """CM surface attached to a catalog instance (real family: L = Q(sqrt(p) zeta3))."""
    field = catalog_field(inst.p, inst.family)
    group = GaloisGroup.from_images(field, closed_form_conjugates(inst))
    zeta5 = field.gen ** 6 / 125 if inst.family.startswith("sqrt5") else None
    return CMSurface(label=f"{inst.symbol} (p={inst.p})", p=inst.p, q=inst.p, field=field,
                     group=group, frob=frobenius_element(inst), instance=inst,
                     sqrt_names=canonical_square_roots(inst), zeta5=zeta5)


def surface_from_weil_polynomial(poly: Sequence[int], q: int, label: str | None = None,
                                 sqrt_names: tuple[int, int] | None = None) -> CMSurface:
    """CM surface whose Frobenius generates Q[x]/(poly) (poly an irreducible Weil-q quartic)."""
    pk = prime_power(q)
    if pk is None:
        raise ValueError(f"q = {q} is not a prime power")
    field = NumberField(poly)
    group = field.galois_group()
    return CMSurface(label=label or field.name, p=pk[0], q=q, field=field, group=group,
                     frob=field.gen, sqrt_names=sqrt_names)
