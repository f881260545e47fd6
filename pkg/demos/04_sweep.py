"""Classify every catalog member for p < 1000 and tally base fields by theorem tag.

Run: python3 demos/04_sweep.py   (SSP_CM_THREADS=4 to use a thread pool)
"""

import collections
import time

from sspcm.arith import primes_below
from sspcm.classify import classify_all, discrepancies

t0 = time.perf_counter()
verdicts = classify_all(primes_below(1000))
print(f"{len(verdicts)} surfaces classified in {time.perf_counter() - t0:.1f}s")

tally = collections.Counter((v.tag, "F_p" if v.k == 1 else "F_p^2") for v in verdicts)
for (tag, base), n in sorted(tally.items()):
    print(f"  {tag:14s} {base:6s} {n:4d}")

bad = discrepancies(verdicts)
print(f"discrepancies between the theorem bases and the computed RRC/residue data: {len(bad)}")
