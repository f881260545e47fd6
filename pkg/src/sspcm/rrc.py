"""Residual reflex condition: Shimura-Taniyama slope matching plus the reflex residue field.

A CM type Phi satisfies the condition over F_q (q = p^k) when |Phi_w| / [L_w:Q_p]
equals the slope of the variety at every place w, and the residue field of the
reflex field at the induced place embeds in F_q, i.e. f' divides k.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import prime_power
from .cmtypes import CMType, CMTypeAnalysis, ReflexField, induced_place_partition
from .places import SplittingProfile, profile_of
from .surface import CMSurface

HALF = Fraction(1, 2)


def shimura_taniyama_check(phi: CMType, profile: SplittingProfile,
                           variety_slope: dict[str, Fraction] | None = None) -> bool:
    counts, _ = induced_place_partition(phi, profile)
    for w in profile.places:
        target = HALF if variety_slope is None else variety_slope[w.label]
        if Fraction(counts[w.label], w.e * w.f) != target:
            return False
    return True


def reflex_residue_check(reflex: ReflexField | int, q: int) -> bool:
    """f' | k where q = p^k (an int argument is taken as f' directly)."""
    pk = prime_power(q)
    if pk is None:
        raise ValueError(f"q = {q} is not a prime power")
    f = reflex if isinstance(reflex, int) else reflex.residue_degree
    return pk[1] % f == 0


@dataclass
class TypeVerdict:
    phi: CMType
    st_ok: bool
    reflex_ok: bool
    reflex: ReflexField

    @property
    def rrc(self) -> bool:
        return self.st_ok and self.reflex_ok

    @property
    def failing(self) -> list[str]:
        out = []
        if not self.st_ok:
            out.append("ST")
        if not self.reflex_ok:
            out.append("reflex-residue")
        return out

    def to_json(self) -> dict:
        return {"phi": self.phi.to_list(), "st_ok": self.st_ok, "reflex_ok": self.reflex_ok,
                "rrc": self.rrc, "failing": self.failing,
                "reflex_minpoly": list(self.reflex.minpoly),
                "reflex_residue_degree": self.reflex.residue_degree}


@dataclass
class RrcVerdict:
    label: str
    q: int
    types: list[TypeVerdict] = field(default_factory=list)

    @property
    def satisfiable(self) -> bool:
        return any(t.rrc for t in self.types)

    @property
    def witnesses(self) -> list[CMType]:
        return [t.phi for t in self.types if t.rrc]

    def to_json(self) -> dict:
        return {"surface": self.label, "q": self.q, "satisfiable": self.satisfiable,
                "witnesses": [w.to_list() for w in self.witnesses],
                "cm_types": [t.to_json() for t in self.types]}


def variety_slopes(surface: CMSurface, profile: SplittingProfile) -> dict[str, Fraction]:
    """ord_w(pi) / ord_w(q) per place."""
    k = prime_power(surface.q)[1]
    return {w.label: Fraction(w.frob_valuation, w.e * k) for w in profile.places}


def rrc_verdict(surface: CMSurface, q: int | None = None,
                analysis: CMTypeAnalysis | None = None) -> RrcVerdict:
    """Per-CM-type and aggregate verdict over F_q (default: the surface's own field)."""
    q = q or surface.q
    pk = prime_power(q)
    if pk is None or pk[0] != surface.p:
        raise ValueError(f"q = {q} is not a power of p = {surface.p}")
    profile = analysis.profile if analysis else profile_of(surface)
    analysis = analysis or CMTypeAnalysis(surface, profile)
    slopes = variety_slopes(surface, profile)
    out = RrcVerdict(surface.label, q)
    for rep in analysis.reports:
        st = shimura_taniyama_check(rep.phi, profile, slopes)
        out.types.append(TypeVerdict(rep.phi, st, reflex_residue_check(rep.reflex, q), rep.reflex))
    return out
