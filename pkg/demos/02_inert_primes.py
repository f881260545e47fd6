"""Why inert primes need F_{p^2}: the reflex residue field of half the CM types is F_{p^2}.

Run: python3 demos/02_inert_primes.py
"""

from sspcm.catalog import WeilNumberInstance
from sspcm.classify import classify
from sspcm.lie import lie_type, oracle_dimensions
from sspcm.places import splitting_profile
from sspcm.rrc import rrc_verdict
from sspcm.surface import surface_for

for p, fam in [(5, "sqrtP_zeta3"), (11, "sqrtP_zeta8"), (7, "sqrtP_zeta12"), (11, "sqrtP_zeta12")]:
    inst = WeilNumberInstance(p, fam)
    prof = splitting_profile(inst)
    print(f"== {inst.symbol}: v is {prof.behavior.lower()} in L, places {[(w.e, w.f) for w in prof.places]}")
    surface = surface_for(inst)
    for q in (p, p * p):
        v = rrc_verdict(surface, q)
        fails = [("{" + ",".join(t.phi.names) + "}", t.reflex.display) for t in v.types if not t.rrc]
        print(f"   over F_{q}: satisfiable {v.satisfiable}; failing types {fails or 'none'}")
    lt = lie_type(inst)
    print(f"   Lie type from valuations: {lt.display()}", end="")
    if not lt.resolved:
        # valuations only fix e1 + e2; the Dieudonne module of O_L settles the split
        print(f"  -> Dieudonne oracle: {oracle_dimensions(inst)}", end="")
    print(f"\n   verdict: {classify(inst).base}\n")
