"""CM types of a quartic CM field, their place partitions, slopes and reflex fields.

Embeddings L -> Qbar are identified with automorphisms (L is Galois), so a CM
type is a 2-element subset of the Galois group meeting each conjugate pair
{g, c g} once.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .arith import factor_squarefree_quartic_mod_p, fundamental_discriminant, kronecker
from .numfield import Subfield, subfield_generated_by
from .places import SplittingProfile
from .surface import CMSurface


@dataclass(frozen=True)
class CMType:
    elements: frozenset[int]
    names: tuple[str, ...]

    def __iter__(self):
        return iter(sorted(self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def conjugate(self, surface: CMSurface) -> "CMType":
        c = surface.c
        els = frozenset(surface.group.mul(c, g) for g in self.elements)
        return make_cm_type(surface, els)

    def to_list(self) -> list[str]:
        return list(self.names)


def make_cm_type(surface: CMSurface, elements) -> CMType:
    els = frozenset(elements)
    return CMType(els, tuple(surface.name(i) for i in sorted(els)))


def enumerate_cm_types(surface: CMSurface) -> list[CMType]:
    """All 2-subsets Phi of Gal(L/Q) with Phi and c*Phi disjoint."""
    g = surface.group
    c = surface.c
    out = []
    for pair in itertools.combinations(range(len(g)), 2):
        phi = frozenset(pair)
        cphi = {g.mul(c, x) for x in phi}
        if not phi & cphi:
            out.append(make_cm_type(surface, phi))
    assert len(out) == 4
    return out


def induced_place_partition(phi: CMType, profile: SplittingProfile) -> tuple[dict[str, int], dict[str, list[int]]]:
    """(|Phi_w| per place, [|Phi_w^i| per residue index] per place)."""
    counts = {w.label: len(phi.elements & w.coset) for w in profile.places}
    residue = {w.label: [len(phi.elements & r) for r in w.residue_cosets] for w in profile.places}
    return counts, residue


def slope_of_cm_type(phi: CMType, profile: SplittingProfile) -> dict[str, Fraction]:
    counts, _ = induced_place_partition(phi, profile)
    return {w.label: Fraction(counts[w.label], w.e * w.f) for w in profile.places}


@dataclass
class ReflexField:
    subfield: Subfield
    degree: int
    minpoly: tuple[int, ...]  # x^2 - d for quadratic reflex fields, ascending
    squarefree: int | None
    residue_degree: int

    def to_json(self) -> dict:
        return {"reflex_minpoly": list(self.minpoly), "reflex_residue_degree": self.residue_degree}

    @property
    def display(self) -> str:
        if self.squarefree is not None:
            return f"Q(sqrt({self.squarefree}))"
        return f"degree {self.degree}"


def reflex_subfield(phi: CMType, surface: CMSurface) -> Subfield:
    """Field generated by the Phi-traces sum_{s in Phi} s(pi^i)."""
    f = surface.field
    g = surface.group
    traces = []
    cur = f.one
    for _ in range(f.n):
        traces.append(sum((g[s](cur) for s in phi.elements), f.zero))
        cur = cur * f.gen
    return subfield_generated_by(f, traces)


def quadratic_residue_degree(d: int, p: int) -> int:
    """Residue degree of p in Q(sqrt d) via Dedekind on the generator of the maximal order."""
    if d % 4 == 1:
        gen_poly = ((1 - d) // 4, -1, 1)  # (1 + sqrt d)/2
    else:
        gen_poly = (-d, 0, 1)
    facs = factor_squarefree_quartic_mod_p(gen_poly, p)
    f = max(len(fc) - 1 for fc, _ in facs)
    expected = 2 if kronecker(fundamental_discriminant(d), p) == -1 else 1
    assert f == expected, (d, p, f, expected)
    return f


def reflex_field(phi: CMType, surface: CMSurface, profile: SplittingProfile) -> ReflexField:
    sub = reflex_subfield(phi, surface)
    if sub.degree == 2:
        d = sub.squarefree
        return ReflexField(sub, 2, (-d, 0, 1), d, quadratic_residue_degree(d, surface.p))
    if sub.degree == 4:
        # reflex field is L itself; the induced place is w
        mp = tuple(int(c) for c in sub.minpoly) if all(c.denominator == 1 for c in sub.minpoly) \
            else tuple(sub.minpoly)
        return ReflexField(sub, 4, mp, None, profile.places[0].f)
    raise AssertionError(f"reflex field of degree {sub.degree}")


@dataclass
class CMTypeReport:
    phi: CMType
    counts: dict[str, int]
    residue: dict[str, list[int]]
    slope: dict[str, Fraction]
    reflex: ReflexField

    def to_json(self) -> dict:
        return {"phi": self.phi.to_list(),
                "slope": {k: str(v) for k, v in self.slope.items()},
                **self.reflex.to_json()}


class CMTypeAnalysis:
    """CM types of a surface together with their partitions, slopes and reflex fields."""

    def __init__(self, surface: CMSurface, profile: SplittingProfile):
        self.surface = surface
        self.profile = profile

    @cached_property
    def types(self) -> list[CMType]:
        return enumerate_cm_types(self.surface)

    @cached_property
    def reports(self) -> list[CMTypeReport]:
        out = []
        for phi in self.types:
            counts, residue = induced_place_partition(phi, self.profile)
            out.append(CMTypeReport(phi, counts, residue, slope_of_cm_type(phi, self.profile),
                                    reflex_field(phi, self.surface, self.profile)))
        return out

    def report_for(self, phi: CMType) -> CMTypeReport:
        return next(r for r in self.reports if r.phi.elements == phi.elements)
