"""Per-CM-type tables for the three worked surfaces.

* sqrt(7) zeta3 over F_7: reflex fields, slopes and partitions of all four CM types.
* 2.5.a_af (sqrt(5) zeta12 over F_5): every CM type induces a good Lie type, but
  the types with reflex field Q(sqrt -3) fail RRC over F_5.
* 2.25.a_az (a conjugate of 5 zeta12 over F_25): the Dieudonne module has Lie
  dimensions (1,0) at both places, which is not good, while RRC holds.

Rows are reported with the place labels w, wbar of places.py; the naming of w
versus wbar is a convention, so comparisons should be made up to swapping them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .catalog import WeilNumberInstance
from .cmtypes import CMTypeAnalysis, CMTypeReport
from .dieudonne import pattern_module
from .lie import good_lie_type, lie_type_from_dims, lie_type_of_cm_type
from .places import SplittingProfile, profile_of
from .rrc import rrc_verdict
from .surface import CMSurface, surface_for, surface_from_weil_polynomial

NOTGOOD_POLY = (625, 0, -25, 0, 1)
NOTGOOD_F_PATTERN = (1, 0)


@dataclass
class CMTypeRow:
    phi: list[str]
    members: dict[str, list[str]]  # CM-type elements lying in each place
    residue_members: dict[str, list[list[str]]]  # ... in each residue component of each place
    slope: dict[str, Fraction]
    partition: dict[str, list[int]]
    reflex: str
    reflex_residue_degree: int
    st_ok: bool
    reflex_ok: bool
    lie_good: bool

    @property
    def rrc(self) -> bool:
        return self.st_ok and self.reflex_ok

    def slope_tuple(self) -> tuple[Fraction, ...]:
        return tuple(self.slope.values())

    def partition_tuple(self) -> tuple[int, ...]:
        return tuple(x for v in self.partition.values() for x in v)

    def to_json(self) -> dict:
        return {"phi": self.phi, "members": self.members, "residue_members": self.residue_members,
                "slope": {k: str(v) for k, v in self.slope.items()},
                "partition": self.partition, "reflex": self.reflex,
                "reflex_residue_degree": self.reflex_residue_degree,
                "st_ok": self.st_ok, "reflex_ok": self.reflex_ok, "rrc": self.rrc,
                "cm_lie_type_good": self.lie_good}


def _row(rep: CMTypeReport, surface: CMSurface, profile: SplittingProfile,
         st_ok: bool, reflex_ok: bool) -> CMTypeRow:
    members = {w.label: [surface.name(i) for i in sorted(rep.phi.elements & w.coset)]
               for w in profile.places}
    residue_members = {w.label: [[surface.name(i) for i in sorted(rep.phi.elements & r)]
                                 for r in w.residue_cosets] for w in profile.places}
    lt = lie_type_of_cm_type(rep.phi, profile)
    good = good_lie_type(lt, surface, profile).good
    return CMTypeRow(rep.phi.to_list(), members, residue_members, dict(rep.slope), dict(rep.residue),
                     rep.reflex.display, rep.reflex.residue_degree, st_ok, reflex_ok, good)


def cm_type_table(surface: CMSurface, q: int | None = None) -> list[CMTypeRow]:
    """One row per CM type: induced places, slopes, partition, reflex field, RRC over F_q."""
    profile = profile_of(surface)
    analysis = CMTypeAnalysis(surface, profile)
    verdict = rrc_verdict(surface, q, analysis)
    return [_row(rep, surface, profile, tv.st_ok, tv.reflex_ok)
            for rep, tv in zip(analysis.reports, verdict.types)]


def sqrt7zeta3_example() -> dict:
    surface = surface_for(WeilNumberInstance(7, "sqrtP_zeta3"))
    rows = cm_type_table(surface)
    return {"surface": surface.label, "q": 7, "rows": rows,
            "witnesses": [r.phi for r in rows if r.rrc]}


def good_lie_without_rrc() -> dict:
    """2.5.a_af: CM types whose induced Lie type is good but which fail RRC over F_5."""
    surface = surface_for(WeilNumberInstance(5, "sqrtP_zeta12"))
    rows = cm_type_table(surface, 5)
    failing = [r.phi for r in rows if r.lie_good and not r.rrc]
    return {"label": "2.5.a_af", "surface": surface.label, "q": 5, "rows": rows,
            "e_w": profile_of(surface).places[0].e,
            "good_but_not_rrc": failing,
            "failing_reflex_fields": sorted({r.reflex for r in rows if r.phi in failing})}


def notgood_surface() -> CMSurface:
    return surface_from_weil_polynomial(NOTGOOD_POLY, 25, "2.25.a_az", sqrt_names=(3, -1))


def notgood_module():
    """The Dieudonne module of 2.25.a_az: F-pattern (1,0) at each of the two places."""
    profile = profile_of(notgood_surface())
    places = [{"e": w.e, "f": w.f, "F_pattern": list(NOTGOOD_F_PATTERN)} for w in profile.places]
    return pattern_module(5, places, level=2, label="2.25.a_az")


def rrc_without_good_lie() -> dict:
    """2.25.a_az: Lie dims (1,0),(1,0) are not good, yet RRC holds over F_25."""
    surface = notgood_surface()
    profile = profile_of(surface)
    module = notgood_module()
    dims = module.lie_dimensions()
    lt = lie_type_from_dims(profile, {w.label: d for w, d in zip(profile.places, dims)})
    verdict = good_lie_type(lt, surface, profile)
    rows = cm_type_table(surface, 25)
    return {"label": "2.25.a_az", "surface": surface.label, "q": 25,
            "lie_dimensions": {w.label: d for w, d in zip(profile.places, dims)},
            "superspecial": module.is_superspecial(),
            "good": verdict.good, "conditions": verdict.conditions, "e_v": verdict.e_v,
            "rows": rows, "rrc_witnesses": [r.phi for r in rows if r.rrc]}
