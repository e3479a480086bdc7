"""Decide a few codes, then rebuild the six-pentagon cap step by step.

    python demos/decide_and_witness.py [out.svg]
"""

import sys

from penthex import SolverConfig, decide
from penthex.patch_graph import inner_faces
from penthex.serialize import to_svg

for text in ("22222", "222222", "2222222", "322232222", "2222322223"):
    ans = decide(text, SolverConfig(want_witness=False))
    print(f"{text:>12}  f5={ans.stats['f5']}  {'yes' if ans.exists else 'no':3}  nodes={ans.stats['nodes']}")

# (2,3)^5 has f5 = 6, outside the proven range, so it needs conjecture mode.
ans = decide("2323232323", SolverConfig(conjecture_mode=True))
print("\n(2,3)^5:", "yes (conditional)" if ans.exists else "no")
for line in ans.trace.lines():
    print("   ", line)
(cap,) = ans.witness
print("inner face sizes:", sorted(len(f) for f in inner_faces(cap)))

if len(sys.argv) > 1:
    with open(sys.argv[1], "w") as fh:
        fh.write(to_svg([cap]))
    print("drawing written to", sys.argv[1])
