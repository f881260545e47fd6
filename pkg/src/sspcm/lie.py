"""Lie types from Frobenius valuations, the good-Lie-type test, and the dimension condition.

Over a prime field the Lie type of a superspecial surface at a place w with
f_w = 1 is the valuation ord_w(pi); at a place with f_w = 2 only the sum of
the two residue components (2 ord_w(pi)) is determined by valuations.  Those
sum-constrained places are resolved, if at all, by the Dieudonne oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .catalog import WeilNumberInstance
from .cmtypes import CMType, enumerate_cm_types, induced_place_partition
from .dieudonne import canonical_dims, catalog_module
from .places import SPLIT, SplittingProfile, profile_of, splitting_profile
from .surface import CMSurface, surface_for

VALUATION, SUM_CONSTRAINED, ORACLE, FIXTURE, CM_TYPE = (
    "valuation", "sum-constrained", "oracle-resolved", "fixture", "cm-type")


@dataclass
class LieType:
    exponents: dict[str, list[int] | None]  # per place; None while only the sum is known
    sums: dict[str, int]
    resolution: dict[str, str]

    @property
    def resolved(self) -> bool:
        return all(v is not None for v in self.exponents.values())

    def total(self) -> int:
        return sum(self.sums.values())

    def as_tuples(self) -> list[tuple[int, ...]]:
        return [tuple(v) for v in self.exponents.values() if v is not None]

    def to_json(self) -> dict:
        out = {}
        for label, v in self.exponents.items():
            out[label] = v if v is not None else {"sum": self.sums[label]}
        return out

    def display(self) -> str:
        parts = []
        for label, v in self.exponents.items():
            if v is None:
                parts.append(f"e1+e2={self.sums[label]}")
            else:
                parts.append("(" + ",".join(map(str, v)) + ")")
        return " ".join(parts)


class LieTypeUnavailable(ValueError):
    pass


def lie_type_for_surface(surface: CMSurface, profile: SplittingProfile) -> LieType:
    if surface.q != surface.p:
        raise LieTypeUnavailable("the valuation method needs the prime field (q = p)")
    exps, sums, res = {}, {}, {}
    for w in profile.places:
        v = w.frob_valuation
        if w.f == 1:
            exps[w.label] = [v]
            sums[w.label] = v
            res[w.label] = VALUATION
        elif w.f == 2:
            exps[w.label] = None
            sums[w.label] = 2 * v
            res[w.label] = SUM_CONSTRAINED
        else:
            raise LieTypeUnavailable(f"residue degree {w.f} not supported")
    return LieType(exps, sums, res)


def lie_type(inst: WeilNumberInstance) -> LieType:
    """Valuation-based Lie type of the catalog instance (sum-constrained at inert places)."""
    if inst.p == 3 and inst.family == "sqrtP_zeta3":
        raise LieTypeUnavailable(
            "sqrt(3) zeta3: R_sp has index 3 in O_L, so the valuation method does not "
            "apply; see classify.special_case_sqrt3zeta3")
    return lie_type_for_surface(surface_for(inst), splitting_profile(inst))


def resolve_with_dims(lt: LieType, dims: list[list[int]], source: str = ORACLE) -> LieType:
    """Fill sum-constrained places from per-place dimension lists (any place order)."""
    remaining = [list(d) for d in dims]
    exps = dict(lt.exponents)
    res = dict(lt.resolution)
    for label, v in lt.exponents.items():
        if v is not None:
            match = next((d for d in remaining if canonical_dims([d]) == canonical_dims([v])), None)
            if match is None:
                raise AssertionError(f"oracle dims {dims} disagree with {label}: {v}")
            remaining.remove(match)
    for label, v in lt.exponents.items():
        if v is None:
            match = next((d for d in remaining if sum(d) == lt.sums[label] and len(d) == 2), None)
            if match is None:
                raise AssertionError(f"oracle dims {dims} do not fit the constraint at {label}")
            remaining.remove(match)
            exps[label] = match
            res[label] = source
    return LieType(exps, dict(lt.sums), res)


def oracle_dimensions(inst: WeilNumberInstance) -> list[list[int]]:
    """Lie dimensions of the catalog Dieudonne module (independent of valuations)."""
    surface = surface_for(inst)
    return catalog_module(surface.field, surface.frob, inst.p, level=1).lie_dimensions()


def resolved_lie_type(inst: WeilNumberInstance) -> LieType:
    lt = lie_type(inst)
    if lt.resolved:
        return lt
    return resolve_with_dims(lt, oracle_dimensions(inst))


def lie_type_of_cm_type(phi: CMType, profile: SplittingProfile) -> LieType:
    """The Lie type induced by a CM type: (|Phi_w^i|) per place."""
    _, residue = induced_place_partition(phi, profile)
    return LieType({k: list(v) for k, v in residue.items()},
                   {k: sum(v) for k, v in residue.items()},
                   {k: CM_TYPE for k in residue})


def lie_type_from_dims(profile: SplittingProfile, dims: dict[str, list[int]], source: str = FIXTURE) -> LieType:
    return LieType({k: list(v) for k, v in dims.items()}, {k: sum(v) for k, v in dims.items()},
                   {k: source for k in dims})


# --------------------------------------------------------------------------
# good Lie types

@dataclass
class GoodLieVerdict:
    good: bool
    conditions: list[tuple[str, int]] = field(default_factory=list)  # (description, sum) per constraint
    realizing: list[CMType] = field(default_factory=list)
    e_v: int = 0

    def to_json(self) -> dict:
        return {"good": self.good, "e_v": self.e_v,
                "conditions": [{"terms": d, "sum": s} for d, s in self.conditions],
                "realizing_cm_types": [phi.to_list() for phi in self.realizing]}


def _exponent_by_coset(lt: LieType, profile: SplittingProfile) -> dict[frozenset[int], int]:
    out = {}
    for w in profile.places:
        vals = lt.exponents[w.label]
        if vals is None:
            raise ValueError(f"Lie type at {w.label} is only sum-constrained; resolve it first")
        if len(vals) != len(w.residue_cosets):
            raise ValueError(f"Lie type at {w.label} has {len(vals)} entries, expected {w.f}")
        for r, x in zip(w.residue_cosets, vals):
            out[r] = x
    return out


def _coset_name(profile: SplittingProfile, r: frozenset[int]) -> str:
    for label, i, coset in profile.residue_cosets():
        if coset == r:
            return f"e_{label}^{i}"
    raise KeyError(r)


def good_lie_type(lt: LieType, surface: CMSurface, profile: SplittingProfile) -> GoodLieVerdict:
    """Every residue component paired with its complex conjugate must sum to e_v.

    Split v: e_w^i + e_wbar^i = e_v; inert v: e_w^1 + e_w^2 = e_v; ramified v:
    e_w^1 = e_v (the component is its own conjugate).  e_v is the ramification
    index of v over p in L0.
    """
    g, c = surface.group, surface.c
    exp = _exponent_by_coset(lt, profile)
    e_v = profile.e_v
    good = True
    conds = []
    seen = set()
    for r, x in exp.items():
        if r in seen:
            continue
        cr = frozenset(g.mul(c, s) for s in r)
        seen.update({r, cr})
        if cr == r:
            total, desc = x, _coset_name(profile, r)
        else:
            total = x + exp[cr]
            desc = f"{_coset_name(profile, r)} + {_coset_name(profile, cr)}"
        conds.append((desc, total))
        good &= total == e_v
    return GoodLieVerdict(good, conds, realizing_cm_types(lt, surface, profile), e_v)


def realizing_cm_types(lt: LieType, surface: CMSurface, profile: SplittingProfile) -> list[CMType]:
    """CM types whose residue partition equals the Lie type, up to swapping w and wbar."""
    exp = _exponent_by_coset(lt, profile)
    out = []
    for phi in enumerate_cm_types(surface):
        for cand in (phi, phi.conjugate(surface)):
            if all(len(cand.elements & r) == x for r, x in exp.items()):
                out.append(phi)
                break
    return out


def dimension_condition(lt: LieType, profile: SplittingProfile, slope: Fraction = Fraction(1, 2)) -> bool:
    """At split v: sum_i e_w^i = slope * [L0_v : Q_p] for each place (vacuous otherwise)."""
    if profile.behavior != SPLIT:
        return True
    local_degree = profile.e_v * profile.f_v
    for w in profile.places:
        vals = lt.exponents[w.label]
        total = sum(vals) if vals is not None else lt.sums[w.label]
        if total != slope * local_degree:
            return False
    return True


def lie_report(inst: WeilNumberInstance) -> dict:
    """JSON summary: resolved Lie type, good verdict, realizing CM types, dimension condition."""
    surface = surface_for(inst)
    profile = splitting_profile(inst)
    lt = resolved_lie_type(inst)
    verdict = good_lie_type(lt, surface, profile)
    return {"lie_type": lt.to_json(), "resolution": lt.resolution, "good": verdict.good,
            "realizing_cm_types": [phi.to_list() for phi in verdict.realizing],
            "dimension_condition": dimension_condition(lt, profile)}


def surface_lie_report(surface: CMSurface, lt: LieType) -> dict:
    profile = profile_of(surface)
    verdict = good_lie_type(lt, surface, profile)
    return {"lie_type": lt.to_json(), "resolution": lt.resolution, "good": verdict.good,
            "realizing_cm_types": [phi.to_list() for phi in verdict.realizing],
            "dimension_condition": dimension_condition(lt, profile)}
