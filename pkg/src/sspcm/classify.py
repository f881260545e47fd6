"""Strong-CM-lifting verdicts per catalog instance, checked against computed data.

The base field over which a strong CM lifting exists is looked up from the
classification theorems (dispatch on p, family and congruence class).  Each
verdict is then recomputed from hypotheses that are computable here:

* RRC must be satisfiable over the stated base (some CM type passes both the
  Shimura-Taniyama slope test and the reflex residue test), and
* for the Lie-type arguments, the residue fields of the places above p must
  lie in the base, so the Lie type is defined there (f_w | k).

The two special arguments (p = 2, and sqrt(3) zeta3) rely only on RRC at the
base; the Lie-type requirement is not part of their proof.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from .cmtypes import CMTypeAnalysis
from .catalog import WeilNumberInstance, enumerate_catalog
from .lie import LieTypeUnavailable, resolved_lie_type
from .orders import frobenius_orders
from .places import splitting_profile
from .rrc import rrc_verdict
from .surface import surface_for

TAGS = ("surfacesCML-1", "surfacesCML-2", "p2", "sqrt3zeta3", "real-1", "real-2", "real-3")
RRC_ONLY_TAGS = ("p2", "sqrt3zeta3", "real-3")


def field_name(p: int, k: int) -> str:
    return f"F_{p ** k}"


def theorem_base(inst: WeilNumberInstance) -> tuple[int, str]:
    """(k, tag): the classification theorems give a lifting over F_{p^k}."""
    p, fam = inst.p, inst.family
    if not inst.concern:
        if p == 2:
            return 1, "real-3"
        if p == 3 or p % 12 in (5, 11):
            return 2, "real-2"
        return 1, "real-1"
    if p == 2:
        return 1, "p2"
    if p == 3 and fam == "sqrtP_zeta3":
        return 1, "sqrt3zeta3"
    if (fam == "sqrtP_zeta8" and p % 4 == 3) or \
            (fam in ("sqrtP_zeta3", "sqrtP_zeta12") and p % 12 in (5, 11)):
        return 2, "surfacesCML-1"
    return 1, "surfacesCML-2"


@dataclass
class ClassificationVerdict:
    inst: WeilNumberInstance
    k: int
    tag: str
    computed_k: int
    witnesses: list[list[str]]
    lie_type: str | None
    order_index: int | None
    residue_degree: int
    notes: list[str] = field(default_factory=list)

    @property
    def base(self) -> str:
        return field_name(self.inst.p, self.k)

    @property
    def q(self) -> int:
        return self.inst.p ** self.k

    @property
    def consistent(self) -> bool:
        return self.k == self.computed_k and bool(self.witnesses)

    def to_json(self) -> dict:
        return {"p": self.inst.p, "family": self.inst.family, "base": self.base, "q": self.q,
                "theorem": self.tag, "computed_base": field_name(self.inst.p, self.computed_k),
                "consistent": self.consistent, "rrc_witnesses": self.witnesses,
                "lie_type": self.lie_type, "order_index": self.order_index, "notes": self.notes}

    def row(self) -> list[str]:
        wit = " ; ".join("{" + ",".join(w) + "}" for w in self.witnesses)
        return [str(self.inst.p), self.inst.family, self.base, self.tag, wit,
                self.lie_type or "-", "-" if self.order_index is None else str(self.order_index)]


ROW_HEADERS = ["p", "family", "base", "theorem", "rrc_witnesses", "lie_type", "order_index"]


@lru_cache(maxsize=8192)
def classify(inst: WeilNumberInstance) -> ClassificationVerdict:
    k, tag = theorem_base(inst)
    surface = surface_for(inst)
    profile = splitting_profile(inst)
    f_lcm = math.lcm(*(w.f for w in profile.places))
    analysis = CMTypeAnalysis(surface, profile)
    verdicts = {j: rrc_verdict(surface, inst.p ** j, analysis) for j in (1, 2)}
    computed = None
    for j in (1, 2):
        if not verdicts[j].satisfiable:
            continue
        if tag not in RRC_ONLY_TAGS and j % f_lcm:
            continue
        computed = j
        break
    notes = list(profile.notes)
    lie = None
    try:
        lie = resolved_lie_type(inst).display()
    except LieTypeUnavailable as exc:
        notes.append(str(exc))
    index = frobenius_orders(inst).index_sp if inst.concern else None
    witnesses = [w.to_list() for w in verdicts[k].witnesses]
    return ClassificationVerdict(inst, k, tag, computed if computed is not None else 0,
                                 witnesses, lie, index, f_lcm, notes)


def thread_cap() -> int:
    """Worker count from SSP_CM_THREADS (default 1)."""
    raw = os.environ.get("SSP_CM_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"SSP_CM_THREADS must be an integer, got {raw!r}") from None
    return max(1, n)


def classify_all(primes, threads: int | None = None) -> list[ClassificationVerdict]:
    """Verdicts ordered by p, then family; the order does not depend on the thread count."""
    insts = [inst for p in sorted(primes) for inst in enumerate_catalog(p)]
    n = thread_cap() if threads is None else threads
    if n <= 1:
        return [classify(inst) for inst in insts]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(classify, insts))


def discrepancies(verdicts) -> list[ClassificationVerdict]:
    return [v for v in verdicts if not v.consistent]


def special_case_sqrt3zeta3() -> dict:
    """Report for sqrt(3) zeta3 over F_3: the non-maximal orders and the RRC witnesses."""
    inst = WeilNumberInstance(3, "sqrtP_zeta3")
    orders = frobenius_orders(inst)
    surface = surface_for(inst)
    verdict = rrc_verdict(surface, 3)
    wit = verdict.witnesses
    reflexes = sorted({t.reflex.display for t in verdict.types if t.rrc})
    return {
        "index_O_L_R_sp": orders.index_sp,
        "index_R_sp_R_ss": orders.index_ss_in_sp,
        "local_index_O_Lw_R_ss": orders.local_index_ss(3),
        "rrc_witnesses": [w.to_list() for w in wit],
        "witness_reflex_fields": reflexes,
        "base": "F_3",
        "lie_type": None,
        "note": "R_ss is not maximal at 3, so the Lie type is not computed by the valuation method",
    }
