"""Acceptance gate: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
Criteria 1, 4 and 7 share one exhaustive sweep, and 5 and 6 share one
exhaustive patch generation; both are computed once per session.
"""

import itertools
import random
import sys
import time
from collections import deque

import pytest

from conftest import record_criterion
from penthex import solver as solver_mod
from penthex.boundary_code import BoundaryCode, SequenceList, canonical_rotation, f5_of
from penthex.oracle import SearchConfig, count_distinct, fill_search, grow_patches
from penthex.patch_graph import (
    _check_one_bend,
    boundary_code_of,
    canonical_form,
    cut,
    dist_to_boundary,
    f5_patch,
    inner_faces,
    one_bend_paths,
    reverse_cut,
    validate_patch,
)
from penthex.sequence_ops import apply, apply_traced, enumerate_ops
from penthex.solver import SolverConfig, build_witness, count_solutions, decide

pytestmark = pytest.mark.slow

SWEEP_MAX_N = 12
SWEEP_SECONDS = 600
ROUND_TRIP_FACES = 8
RANDOM_PAIRS = 10_000


def rotation_classes(n):
    seen = set()
    for digits in itertools.product((2, 3), repeat=n):
        code = BoundaryCode(digits)
        if 0 <= code.f5 <= 5:
            seen.add(canonical_rotation(code))
    return sorted(seen)


def d3_of(lst):
    return sum(c.d3 for c in lst)


class BoundLog:
    """Checks |enumerate_ops(list, d)| < d3^2 + d^2 d3 on each distinct enumeration."""

    def __init__(self):
        self.checked = set()
        self.violations = []

    def check(self, lst, d, ops=None):
        lst = SequenceList(lst)
        key = (tuple(sorted(canonical_rotation(c) for c in lst)), d)
        if key in self.checked:
            return
        self.checked.add(key)
        if ops is None:
            ops = enumerate_ops(lst, d)
        d3 = d3_of(lst)
        # with no 3 in the list there is nothing to enumerate and the bound reads 0 < 0
        if ops and not len(ops) < d3 ** 2 + d ** 2 * d3:
            self.violations.append((lst, d, len(ops)))


BOUNDS = BoundLog()


@pytest.fixture(scope="module")
def sweep():
    """Criterion-1 run: decide vs fill_search on every code with n <= 12."""
    real_ops_for = solver_mod._Search.ops_for

    def ops_for(self, lst, idx, reach, budget=float("inf")):
        BOUNDS.check(lst, self.d)
        return real_ops_for(self, lst, idx, reach, budget)

    mp = pytest.MonkeyPatch()
    mp.setattr(solver_mod._Search, "ops_for", ops_for)
    solver_mod.clear_caches()
    out = dict(codes=0, mismatches=[], deep=[], solver_s=0.0, oracle_s=0.0)
    t0 = time.perf_counter()
    try:
        for n in range(1, SWEEP_MAX_N + 1):
            for code in rotation_classes(n):
                t = time.perf_counter()
                ans = decide(code, SolverConfig(want_witness=False))
                out["solver_s"] += time.perf_counter() - t
                t = time.perf_counter()
                truth = bool(fill_search(code, SearchConfig(witness_cap=1)))
                out["oracle_s"] += time.perf_counter() - t
                out["codes"] += 1
                if ans.exists != truth:
                    out["mismatches"].append(code)
                if ans.stats["max_depth"] > code.f5:
                    out["deep"].append((code, ans.stats["max_depth"]))
    finally:
        mp.undo()
    out["wall_s"] = time.perf_counter() - t0
    return out


def test_criterion_1_exhaustive_agreement(sweep):
    ok = not sweep["mismatches"] and sweep["wall_s"] < SWEEP_SECONDS
    record_criterion(1, ok, f"{sweep['codes']} codes with n <= {SWEEP_MAX_N}, "
                            f"{len(sweep['mismatches'])} mismatches, {sweep['wall_s']:.0f}s "
                            f"(solver {sweep['solver_s']:.0f}s, oracle {sweep['oracle_s']:.0f}s)")
    assert not sweep["mismatches"], sweep["mismatches"][:10]
    assert sweep["wall_s"] < SWEEP_SECONDS


def test_criterion_2_six_pentagons():
    ans = decide("2323232323", SolverConfig(conjecture_mode=True))
    faces = [len(f) for p in ans.witness for f in inner_faces(validate_patch(p))] if ans.exists else []
    rebuilt = build_witness(ans.trace, [])
    ok = ans.exists and faces == [5] * 6 and [p.code for p in rebuilt] == [p.code for p in ans.witness]
    record_criterion(2, ok, f"answer {'yes' if ans.exists else 'no'}, inner face sizes {faces}")
    assert ok


def random_list(rng):
    return SequenceList(BoundaryCode(rng.choice((2, 3)) for _ in range(rng.randint(4, 18)))
                        for _ in range(rng.choice((1, 1, 2, 3))))


def test_criterion_3_f5_drops_by_one():
    rng = random.Random(20261017)
    pairs = violations = 0
    while pairs < RANDOM_PAIRS:
        lst = random_list(rng)
        d = rng.randint(1, 8)
        ops = enumerate_ops(lst, d)
        BOUNDS.check(lst, d, ops)
        if not ops:
            continue
        op = rng.choice(ops)
        pairs += 1
        if f5_of(apply(lst, op)) != f5_of(lst) - 1:
            violations += 1
    record_criterion(3, violations == 0, f"{pairs} random (list, op) pairs, {violations} violations")
    assert violations == 0


def test_criterion_4_enumeration_bound(sweep):
    # criterion 3 feeds BOUNDS too when it runs first; make sure it has
    if len(BOUNDS.checked) < 100:
        test_criterion_3_f5_drops_by_one()
    v = BOUNDS.violations
    record_criterion(4, not v, f"{len(BOUNDS.checked)} distinct enumerations, {len(v)} violations")
    assert not v, v[:5]


@pytest.fixture(scope="module")
def patches():
    levels = grow_patches(ROUND_TRIP_FACES)
    return [validate_patch(p) for level in levels for p in level]


def test_criterion_5_round_trip(patches):
    cuts = bad = 0
    t0 = time.perf_counter()
    for p in patches:
        form = canonical_form(p)
        for face in inner_faces(p):
            if len(face) != 5:
                continue
            for path in one_bend_paths(p, face):
                ps, op = cut(p, face, path)
                _, anchors = apply_traced(SequenceList([p.code]), op)
                (q,) = reverse_cut(ps, op, anchors)
                cuts += 1
                if q.code != p.code or canonical_form(q) != form:
                    bad += 1
    record_criterion(5, bad == 0 and cuts > 0,
                     f"{len(patches)} patches with <= {ROUND_TRIP_FACES} faces, {cuts} cuts, {bad} violations, "
                     f"{time.perf_counter() - t0:.0f}s")
    assert cuts > 0 and bad == 0


def bfs_to_face(p, face):
    """Edge distance from the boundary cycle to the nearest vertex of ``face``."""
    dist = {v: 0 for v in p.boundary}
    queue = deque(p.boundary)
    targets = set(face)
    while queue:
        v = queue.popleft()
        if v in targets:
            return dist[v]
        for u in p.rot[v]:
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return None


def test_criterion_6_structure(patches):
    f5_bad = dist_bad = path_bad = 0
    faces_seen = 0
    for p in patches:
        code = boundary_code_of(p)
        k = f5_patch(p)
        if k != f5_of([code]):
            f5_bad += 1
        if k <= 5 and dist_to_boundary(p) > len(code) - 3:
            dist_bad += 1
        for face in inner_faces(p):
            faces_seen += 1
            want = bfs_to_face(p, face)
            paths = one_bend_paths(p, face)
            good = bool(paths)
            for path in paths:
                try:
                    _check_one_bend(p, path)
                except Exception:
                    good = False
                good = good and path.l == want and path.vertices[-1] in face
            path_bad += not good
    ok = f5_bad == dist_bad == path_bad == 0
    record_criterion(6, ok, f"{len(patches)} patches, {faces_seen} faces; violations: "
                            f"f5 count {f5_bad}, dist bound {dist_bad}, 1-bend {path_bad}")
    assert ok


def test_criterion_7_recursion_depth(sweep):
    record_criterion(7, not sweep["deep"], f"{sweep['codes']} runs, {len(sweep['deep'])} deeper than f5")
    assert not sweep["deep"], sweep["deep"][:5]


def test_criterion_8_counting():
    codes = mismatches = nonzero = 0
    for n in range(1, 11):
        for code in rotation_classes(n):
            a, b = count_solutions(code, 50), count_distinct(code, 50)
            codes += 1
            nonzero += a > 0
            mismatches += a != b
    record_criterion(8, mismatches == 0, f"{codes} codes with n <= 10 ({nonzero} realizable), "
                                         f"{mismatches} mismatches")
    assert mismatches == 0


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-p", "no:cacheprovider"]))
