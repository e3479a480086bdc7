"""Compare the solver's solution counts with brute force on short codes."""

import itertools

from penthex.boundary_code import BoundaryCode, canonical_rotation
from penthex.oracle import count_distinct
from penthex.solver import count_solutions

seen = set()
for n in range(5, 12):
    for digits in itertools.product((2, 3), repeat=n):
        code = canonical_rotation(BoundaryCode(digits))
        if code in seen or not 0 <= code.f5 <= 5:
            continue
        seen.add(code)
        ours = count_solutions(code, 50)
        if ours:
            theirs = count_distinct(code, 50)
            flag = "" if ours == theirs else "  <-- disagree"
            print(f"{''.join(map(str, code)):>15}  f5={code.f5}  {ours:>2} solution(s){flag}")
