"""Good Lie type and RRC are independent: one surface has the first without the second, one the reverse.

Run: python3 demos/03_counterexamples.py
"""

from sspcm.worked import good_lie_without_rrc, rrc_without_good_lie


def show(rows, q):
    for r in rows:
        print(f"   {{{', '.join(r.phi)}}}  partition {r.partition}  reflex {r.reflex}"
              f"  good Lie type {'yes' if r.lie_good else 'no'}  RRC/F_{q} {'yes' if r.rrc else 'no'}")


d = good_lie_without_rrc()
print(f"{d['label']}  ({d['surface']})")
show(d["rows"], d["q"])
print(f"   -> good but RRC fails for reflex fields {d['failing_reflex_fields']}\n")

d = rrc_without_good_lie()
print(f"{d['label']}  over F_{d['q']}")
print(f"   Dieudonne module: superspecial {d['superspecial']}, Lie dims {d['lie_dimensions']}")
for desc, total in d["conditions"]:
    print(f"   {desc} = {total}  (good needs {d['e_v']})")
show(d["rows"], d["q"])
print(f"   -> Lie type not good, yet RRC holds via {d['rrc_witnesses']}")
