"""Walk through sqrt(7) zeta3 over F_7: field, places, CM types, RRC, Lie type, verdict.

Run: python3 demos/01_sqrt7zeta3.py
"""

from sspcm.catalog import WeilNumberInstance, closed_form_conjugates
from sspcm.classify import classify
from sspcm.cmtypes import CMTypeAnalysis
from sspcm.lie import lie_report
from sspcm.orders import frobenius_orders
from sspcm.places import splitting_profile
from sspcm.rrc import rrc_verdict
from sspcm.surface import surface_for

inst = WeilNumberInstance(7, "sqrtP_zeta3")
surface = surface_for(inst)
print(f"pi = {inst.symbol}, minimal polynomial (ascending) {inst.minpoly}")
print(f"Galois group of L = Q(pi): {surface.group.structure()}")
print("conjugates of pi:", ", ".join(str(c) for c in closed_form_conjugates(inst)))

# 7 = 1 mod 3, so 7 splits in Q(sqrt -3) and v splits into w, wbar
prof = splitting_profile(inst)
print(f"\nv over 7 in L0: e = {prof.e_v}, f = {prof.f_v}; in L/L0: {prof.behavior}")
for w in prof.places:
    print(f"  {w.label:5s} e = {w.e}  f = {w.f}  ord_w(pi) = {w.frob_valuation}")

print("\nCM types")
analysis = CMTypeAnalysis(surface, prof)
for r in analysis.reports:
    slope = ", ".join(f"{k} {v}" for k, v in r.slope.items())
    print(f"  {{{', '.join(r.phi.names)}}}: slopes {slope}; reflex {r.reflex.display}")

verdict = rrc_verdict(surface, 7, analysis)
print("\nRRC over F_7 holds for:", "; ".join("{" + ", ".join(w.names) + "}" for w in verdict.witnesses))

rep = lie_report(inst)
print(f"Lie type {rep['lie_type']} (good: {rep['good']})")
print(f"[O_L : Z[pi, 7/pi, pi^2/7]] = {frobenius_orders(inst).index_sp}")

v = classify(inst)
print(f"\nstrong CM lifting over {v.base} ({v.tag}); consistent with the computed data: {v.consistent}")
