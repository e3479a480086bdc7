"""Solver nodes and time against the brute-force oracle, per (n, f5).

A table to look at, not a test. At these lengths the oracle's lower-bound
pruning makes it faster than the solver. The costly solver rows are f5 = 5,
where most codes have no solution and the search must exhaust its options.
Takes a couple of minutes.
"""

from penthex.cli import bench_table

rows = bench_table(range(6, 13))
print(f"{'n':>3} {'f5':>3} {'codes':>6} {'yes':>4} {'avg nodes':>10} {'solver ms':>10} {'oracle ms':>10}")
for r in rows:
    print(f"{r['n']:>3} {r['f5']:>3} {r['codes']:>6} {r['yes']:>4} {r['nodes'] / r['codes']:>10.1f} "
          f"{r['solver_ms']:>10.1f} {r['oracle_ms']:>10.1f}")
