"""How p decomposes through Q < L0 < L, and the valuation of Frobenius at each place.

L is abelian over Q in every case handled here, so a place w above p is a coset
of the decomposition group D, and the residue "indices" inside w are the cosets
of the inertia group I contained in it.  The place labelled "w" is the coset
containing the identity and "wbar" is its image under complex conjugation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .arith import factor_squarefree_quartic_mod_p, fundamental_discriminant, kronecker, valuation
from .catalog import WeilNumberInstance
from .numfield import NumberField, maximal_order
from .surface import CMSurface, surface_for

SPLIT, INERT, RAMIFIED = "Split", "Inert", "Ramified"


@dataclass(frozen=True)
class PlaceData:
    label: str
    e: int
    f: int
    coset: frozenset[int]  # automorphisms inducing this place
    decomposition: frozenset[int]
    inertia: frozenset[int]
    residue_cosets: tuple[frozenset[int], ...]  # I-cosets inside the place, index 1 first
    frob_valuation: int | None = None

    def to_json(self) -> dict:
        return {"label": self.label, "e": self.e, "f": self.f, "frob_valuation": self.frob_valuation}


@dataclass
class SplittingProfile:
    p: int
    e_v: int
    f_v: int
    behavior: str  # of v in L/L0
    places: list[PlaceData]
    decomposition: frozenset[int]
    inertia: frozenset[int]
    governing: tuple[int, int] | None = None  # (delta, symbol)
    notes: list[str] = field(default_factory=list)

    def place(self, label: str) -> PlaceData:
        return next(w for w in self.places if w.label == label)

    @property
    def labels(self) -> list[str]:
        return [w.label for w in self.places]

    def residue_cosets(self) -> list[tuple[str, int, frozenset[int]]]:
        """(place label, 1-based residue index, coset) for every residue index."""
        return [(w.label, i + 1, r) for w in self.places for i, r in enumerate(w.residue_cosets)]

    def to_json(self) -> dict:
        return {"v": {"e": self.e_v, "f": self.f_v}, "L_over_L0": self.behavior,
                "places": [w.to_json() for w in self.places]}


# --------------------------------------------------------------------------
# decomposition data in an abelian quartic field

def quadratic_behavior(d: int, p: int) -> str:
    """'split', 'inert' or 'ramified' for p in Q(sqrt d), d squarefree."""
    s = kronecker(fundamental_discriminant(d), p)
    return {1: "split", -1: "inert", 0: "ramified"}[s]


def _profile_from_groups(surface: CMSurface, d_grp: frozenset[int], i_grp: frozenset[int],
                         governing: tuple[int, int] | None = None) -> SplittingProfile:
    g = surface.group
    c = surface.c
    n = len(g)
    e = len(i_grp)
    f = len(d_grp) // e
    # cosets of D: w contains the identity, wbar = c * w
    cosets: list[frozenset[int]] = []
    reps: list[int] = []
    for start in [0, c] + list(range(n)):
        cs = frozenset(g.mul(start, h) for h in d_grp)
        if cs not in cosets:
            cosets.append(cs)
            reps.append(start)
    labels = ["w", "wbar"] + [f"w{k}" for k in range(3, len(cosets) + 1)]
    if len(cosets) == 1:
        labels = ["w"]
    places = []
    for label, rep, cs in zip(labels, reps, cosets):
        residue = []
        for start in [rep] + sorted(cs):
            r = frozenset(g.mul(start, h) for h in i_grp)
            if r not in residue:
                residue.append(r)
        places.append(PlaceData(label, e, f, cs, d_grp, i_grp, tuple(residue)))
    e_v, f_v = real_subfield_data(surface)
    g_v = 2 // (e_v * f_v)
    places_per_v = len(cosets) // g_v
    if e == 2 * e_v:
        behavior = RAMIFIED
    elif f == 2 * f_v:
        behavior = INERT
    else:
        behavior = SPLIT
    assert (behavior == SPLIT) == (places_per_v == 2)
    profile = SplittingProfile(surface.p, e_v, f_v, behavior, places, d_grp, i_grp, governing)
    _attach_valuations(surface, profile)
    return profile


def real_subfield_data(surface: CMSurface) -> tuple[int, int]:
    """(e_v, f_v) of p in L0 = Q(sqrt d0)."""
    d0 = surface.real_subfield.squarefree
    b = quadratic_behavior(d0, surface.p)
    return {"split": (1, 1), "inert": (1, 2), "ramified": (2, 1)}[b]


def generic_profile(surface: CMSurface) -> SplittingProfile:
    """Decomposition from quadratic subfields (biquadratic L) or Dedekind (cyclic L)."""
    g = surface.group
    p = surface.p
    if g.structure() == "C2xC2":
        split_subs, unram_subs = [], []
        for h, sub in surface.quadratic_subfields:
            b = quadratic_behavior(sub.squarefree, p)
            if b == "split":
                split_subs.append(h)
            if b != "ramified":
                unram_subs.append(h)
        d_grp = _subgroup_fixing_all(g, split_subs)
        i_grp = _subgroup_fixing_all(g, unram_subs)
        return _profile_from_groups(surface, d_grp, i_grp)
    if g.structure() == "C4":
        e, f, _ = _dedekind_efg(surface)
        by_order = {len(s): s for s in [frozenset([0])] + g.subgroups_of_order(2) + [frozenset(range(4))]}
        return _profile_from_groups(surface, by_order[e * f], by_order[e])
    raise ValueError(f"unsupported Galois group {g.structure()}")


def _subgroup_fixing_all(group, subgroups: list[frozenset[int]]) -> frozenset[int]:
    """Intersection of the given subgroups (whole group if none)."""
    out = frozenset(range(len(group)))
    for h in subgroups:
        out &= h
    return out


def _dedekind_efg(surface: CMSurface) -> tuple[int, int, int]:
    """(e, f, g) of p in L from factoring the minimal polynomial of an O_L generator mod p."""
    p = surface.p
    ok = maximal_order(surface.field)
    basis = ok.basis
    for coeffs in itertools.product(range(-2, 3), repeat=len(basis) - 1):
        theta = sum((c * b for c, b in zip(coeffs, basis[1:])), surface.field.zero)
        mp = theta.minpoly()
        if len(mp) != 5 or any(c.denominator != 1 for c in mp):
            continue
        sub_disc = NumberField(mp).poly_discriminant
        index_sq = sub_disc / ok.discriminant
        if index_sq.denominator != 1 or valuation(index_sq, p) != 0:
            continue
        facs = factor_squarefree_quartic_mod_p([int(c) for c in mp], p)
        es = {m for _, m in facs}
        fs = {len(fc) - 1 for fc, _ in facs}
        assert len(es) == 1 and len(fs) == 1
        return es.pop(), fs.pop(), len(facs)
    raise AssertionError("no generator of O_L with index prime to p found")


# --------------------------------------------------------------------------
# the family rule used for catalog instances

def governing_delta(inst: WeilNumberInstance) -> int | None:
    """Quadratic subfield Q(sqrt delta) deciding split/inert of v in L/L0 (None: ramified)."""
    p, fam = inst.p, inst.family
    if fam.startswith("sqrt5"):
        return None
    if p == 2:
        return -3
    if fam in ("sqrtP", "sqrtP_zeta3"):
        return -1 if p == 3 else -3
    if fam == "sqrtP_zeta8":
        return -1
    if fam == "sqrtP_zeta12":
        return -3
    raise ValueError(f"no governing subfield for {fam} at p = {p}")


def catalog_profile(inst: WeilNumberInstance) -> SplittingProfile:
    surface = surface_for(inst)
    e_v, f_v = real_subfield_data(surface)
    if (e_v, f_v) != (2, 1):
        raise AssertionError(f"v is not ramified in L0 for {inst}")
    delta = governing_delta(inst)
    if delta is None:
        whole = frozenset(range(4))
        return _profile_from_groups(surface, whole, whole)
    sym = kronecker(delta, inst.p)
    h = surface.subgroup_fixing_sqrt(delta)
    if sym == 1:
        return _profile_from_groups(surface, h, h, (delta, sym))
    if sym == -1:
        prof = _profile_from_groups(surface, frozenset(range(4)), h, (delta, sym))
        if inst.p == 2:
            prof.notes.append("2 is inert in Q(sqrt(-3)) since -3 = 5 mod 8, "
                              "so v is inert (not split) in L")
        return prof
    raise AssertionError(f"governing delta {delta} is not a unit at {inst.p}")


@lru_cache(maxsize=8192)
def splitting_profile(inst: WeilNumberInstance) -> SplittingProfile:
    """Splitting profile of p for a catalog instance (the real family uses Q(sqrt(p) zeta3))."""
    return catalog_profile(inst)


def profile_of(surface: CMSurface) -> SplittingProfile:
    if surface.instance is not None:
        return splitting_profile(surface.instance)
    return generic_profile(surface)


# --------------------------------------------------------------------------
# valuations

def _attach_valuations(surface: CMSurface, profile: SplittingProfile) -> None:
    vals = frobenius_valuations(surface, profile)
    profile.places = [PlaceData(w.label, w.e, w.f, w.coset, w.decomposition, w.inertia,
                                w.residue_cosets, vals[w.label]) for w in profile.places]


def frobenius_valuations(surface: CMSurface, profile: SplittingProfile) -> dict[str, int]:
    """ord_w(pi) from sum_w f_w ord_w(pi) = ord_p N(pi) and ord_w(pi) = ord_wbar(pi)."""
    n_pi = surface.frob.norm()
    total = valuation(n_pi, surface.p)
    if len(profile.places) > 2:
        raise ValueError("valuation symmetry argument needs at most two places")
    denom = sum(w.f for w in profile.places)
    val = Fraction(total, denom)
    if val.denominator != 1:
        raise ValueError(f"ord_w(pi) = {val} is not an integer")
    return {w.label: int(val) for w in profile.places}


def frobenius_valuation(inst: WeilNumberInstance, place: PlaceData | str) -> int:
    prof = splitting_profile(inst)
    label = place if isinstance(place, str) else place.label
    return prof.place(label).frob_valuation


def decomposition_group(inst: WeilNumberInstance, place: PlaceData | str | None = None) -> frozenset[int]:
    return splitting_profile(inst).decomposition


def inertia_group(inst: WeilNumberInstance, place: PlaceData | str | None = None) -> frozenset[int]:
    return splitting_profile(inst).inertia
