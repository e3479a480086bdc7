"""Decide, witness and count via sequence operations.

A list of codes has a solution exactly when every member has one, and a
solution of one member can always be cut at one of its own 5-faces. The
search therefore works member by member: a member with ``f5 = 0`` goes to
the hexagonal test, a pentagon is removed by a type IV step, and any other
member is rewritten by each type I/II/III operation until one rewrite leaves
only solvable members.

Type I lengths are capped by ``reach``: an upper bound on how far any 5-face
of a solution can be from the boundary. It starts at ``d`` and only shrinks,
because cutting never moves a vertex further from the boundary and because
members with ``f5 <= 5`` carry their own bound (see :func:`path_bound`).
A second cap is the face budget: every cut removes exactly one face, so a
member's children share one face fewer than the member may use. Each
member's answer is memoized per rotation class and reach, as the interval
of budgets known to fail or succeed.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from .boundary_code import PENTAGON, BoundaryCode, SequenceList, canonical_rotation
from .errors import AnchorMismatch, Unsupported
from .oracle import exists_hex, hex_solutions, lattice_walk
from .patch_graph import Patch, canonical_form, pentagon, reverse_cut
from .sequence_ops import (
    OpTrace,
    TypeI,
    TypeII,
    TypeIII,
    apply_traced,
    enumerate_ops,
    iv_closure_traced,
    type_i_block,
    _three_runs,
)

__all__ = [
    "SolverConfig",
    "Answer",
    "decide",
    "test_recurse",
    "build_witness",
    "count_solutions",
    "choose_d",
    "path_bound",
    "plausible",
    "clear_caches",
]


@dataclass(frozen=True)
class SolverConfig:
    d_override: Optional[int] = None
    conjecture_mode: bool = False
    want_witness: bool = True
    count_cap: Optional[int] = None

    def __post_init__(self):
        if self.d_override is not None and self.d_override < 1:
            raise ValueError("d_override must be at least 1")
        if self.count_cap is not None and self.count_cap < 1:
            raise ValueError("count_cap must be positive")


@dataclass
class Answer:
    exists: bool
    witness: Optional[list] = None
    trace: Optional[OpTrace] = None
    stats: dict = field(default_factory=dict)


# (canonical code, reach) -> solvable
_MEMO: dict = {}


def clear_caches() -> None:
    _MEMO.clear()


def path_bound(code: BoundaryCode) -> Optional[int]:
    """Largest possible distance from the boundary to a 5-face, over all solutions.

    Only known for ``1 <= f5 <= 5`` (else ``None``). A vertex on the boundary
    left after peeling off the faces that touch the boundary is within two
    edges of the old boundary, so a 5-face in peel layer ``j`` is within
    ``2 j``; :func:`_deepest_layer` bounds ``j``.
    """
    f5 = code.f5
    if not 1 <= f5 <= 5:
        return None
    return 2 * max(_deepest_layer(len(code), f5), 0)


def _narrow(reach: int, code: BoundaryCode) -> int:
    bound = path_bound(code)
    return reach if bound is None else min(reach, bound)


@lru_cache(maxsize=None)
def _size_feasible(n: int, k: int) -> bool:
    """Necessary condition for a patch with boundary length ``n`` and ``k <= 5`` pentagons.

    The faces touching the boundary number at most ``d3`` and hold at most
    that many pentagons. With ``f`` of them, what is left has total boundary
    length at most ``3 f - d2`` and is again a set of patches, each of
    boundary length at least 5.
    """
    if (n + k) % 2 or n < 5:
        return False
    d3 = (n + k - 6) // 2
    d2 = n - d3
    if d3 < 0:
        return False
    if d3 == 0:
        return (n, k) in ((5, 1), (6, 0))
    if d3 == 1:
        return False
    for f in range(1, d3 + 1):
        if k <= f:
            return True  # every face may touch the boundary
        rest = 3 * f - d2
        if any(_set_feasible(rest, k - p) for p in range(0, min(k, f) + 1)):
            return True
    return False


@lru_cache(maxsize=None)
def _set_feasible(budget: int, k: int) -> bool:
    """Whether one or more patches with ``k`` pentagons in total fit in boundary ``budget``."""
    for n1 in range(5, budget + 1):
        for k1 in range(0, k + 1):
            if _size_feasible(n1, k1) and (k1 == k or _set_feasible(budget - n1, k - k1)):
                return True
    return False


@lru_cache(maxsize=None)
def _deepest_layer(n: int, k: int) -> int:
    """Upper bound on the peel layer holding a pentagon (0: touches the boundary); -1 if none."""
    if k < 1 or not _size_feasible(n, k):
        return -1
    d3 = (n + k - 6) // 2
    d2 = n - d3
    deepest = 0
    for f in range(1, d3 + 1):
        rest = 3 * f - d2
        for p in range(0, min(k, f) + 1):
            if p < k and _set_feasible(rest, k - p):
                deepest = max(deepest, 1 + _deepest_within(rest, k - p))
    return deepest


@lru_cache(maxsize=None)
def _deepest_within(budget: int, k: int) -> int:
    """Largest :func:`_deepest_layer` over single patches fitting in ``budget`` with at most ``k`` pentagons."""
    return max((_deepest_layer(n1, k1) for n1 in range(5, budget + 1) for k1 in range(1, k + 1)),
               default=-1)


@lru_cache(maxsize=None)
def max_faces(n: int, k: int) -> float:
    """Upper bound on the inner faces of a patch with boundary ``n`` and ``k <= 5`` pentagons.

    Uses the same peeling as :func:`_size_feasible`: ``f`` boundary faces
    plus whatever fits inside. ``-inf`` when no such patch can exist.
    """
    if k > 5:
        return math.inf
    if not _size_feasible(n, k):
        return -math.inf
    d3 = (n + k - 6) // 2
    d2 = n - d3
    if d3 == 0:
        return 1
    best = -math.inf
    for f in range(1, d3 + 1):
        for p in range(0, min(k, f) + 1):
            best = max(best, f + _set_max_faces(3 * f - d2, k - p))
    return best


@lru_cache(maxsize=None)
def _set_max_faces(budget: int, k: int) -> float:
    best = 0 if k == 0 else -math.inf
    for n1 in range(5, budget + 1):
        for k1 in range(0, k + 1):
            best = max(best, max_faces(n1, k1) + _set_max_faces(budget - n1, k - k1))
    return best


def min_faces_bound(code: BoundaryCode) -> float:
    """Lower bound on the inner faces of any solution; exact when ``f5 = 0``.

    Euler's formula for a cubic patch gives ``F = 1 + (d3 + i) / 2`` with
    ``i`` inner vertices.
    """
    if code.f5 == 0:
        closed, area = lattice_walk(tuple(code))
        return area if closed and area >= 1 else math.inf
    return max(code.f5, 1 + (code.d3 + 1) // 2)


def plausible(code: BoundaryCode) -> bool:
    """Cheap necessary conditions for a single code to have a solution."""
    n = len(code)
    f5 = code.f5
    if f5 < 0 or (f5 <= 6 and n < 5):
        return False
    if f5 <= 5 and not _size_feasible(n, f5):
        return False
    threes = [i for i, v in enumerate(code) if v == 3]
    if not threes:
        return n in (5, 6)
    if len(threes) == 1:
        return False
    # the boundary edges between consecutive 3s lie on one face
    return max(b - a for a, b in zip(threes, threes[1:] + [threes[0] + n])) <= 5


# Hexagonal-lattice turtle moves as (turn, dx, dy) in the basis (1, w),
# w = exp(i pi / 3). An entry 3 turns left, 2 turns right, then steps.
_DIRS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))


def _rotation(k: int) -> tuple[int, int, int, int]:
    # columns are the images of the two basis vectors
    (a, c), (b, d) = _DIRS[k], _DIRS[(k + 1) % 6]
    return a, b, c, d


_ROT = tuple(_rotation(k) for k in range(6))
_IDENT = (0, 0, 0)
_STEP = {3: (1,) + _DIRS[1], 2: (5,) + _DIRS[5]}


def _mul(g, h):
    r, x, y = g
    a, b, c, d = _ROT[r]
    return (r + h[0]) % 6, x + a * h[1] + b * h[2], y + c * h[1] + d * h[2]


def _inv(g):
    r = -g[0] % 6
    a, b, c, d = _ROT[r]
    return r, -(a * g[1] + b * g[2]), -(c * g[1] + d * g[2])


@lru_cache(maxsize=None)
def _word(seq: tuple) -> tuple:
    g = _IDENT
    for v in seq:
        g = _mul(g, _STEP[v])
    return g


class _Closure:
    """Constant-time test of whether a rewritten ``f5 = 0`` code closes in the lattice.

    A hexagonal solution exists only if the boundary walk closes, so ops on
    an ``f5 = 1`` member whose results fail this test need not be built.
    """

    def __init__(self, code):
        self.n = len(code)
        prefix = [_IDENT]
        for v in tuple(code) * 2:
            prefix.append(_mul(prefix[-1], _STEP[v]))
        self.prefix = prefix

    def segment(self, start: int, length: int):
        start %= self.n
        return _mul(_inv(self.prefix[start]), self.prefix[start + length])

    def closes(self, op) -> bool:
        n = self.n
        if isinstance(op, TypeIII):
            b, c = op.bc
            off = (op.pos2 - op.pos1) % n
            y = self.segment(op.pos1 + op.a + 2, off - op.a - 2)
            z = self.segment(op.pos2 + 2, n - off - 2)
            return (_mul(_word((2,) + (3,) * b + (2,)), y) == _IDENT
                    and _mul(_word((2,) + (3,) * c + (2,)), z) == _IDENT)
        if isinstance(op, TypeII):
            old, block = op.x + 1, (2,) + (3,) * (4 - op.x) + (2,)
        else:
            old, block = 1, type_i_block(op.l, op.b)
        return _mul(_word(block), self.segment(op.pos + old, n - old)) == _IDENT

    def closing_ops(self, code, seq: int, top: int) -> list:
        """The ops of ``enumerate_ops`` (type I up to ``top``) that pass :meth:`closes`."""
        n = self.n
        runs = _three_runs(tuple(code))
        out = [TypeII(seq, t, x) for t, x in runs if x <= 4 and self.closes(TypeII(seq, t, x))]
        is_pair = {t for t, x in runs if x == 1}
        where: dict = {}
        for i, g in enumerate(self.prefix):
            where.setdefault(g, []).append(i)
        # the first new code closes iff prefix[p2] == prefix[end of 3,(2)^a,3] * inverse(its new head)
        for a, sides, lo in ((1, (None,), 3), (0, ("b", "c"), 2)):
            for p1 in (t for t, x in runs if x == a + 1):
                for side in sides:
                    head = (2,) + (3,) * (side == "b") + (2,)
                    target = _mul(self.prefix[p1 + a + 2], _inv(_word(head)))
                    for j in where.get(target, ()):
                        off = j - p1
                        # an unordered pair (a = 0) is listed once, from its smaller position
                        if not lo <= off <= n - 2 or j % n not in is_pair or (a == 0 and j >= n):
                            continue
                        op = TypeIII(seq, p1, a, j % n, side)
                        if self.closes(op):
                            out.append(op)
        ones = []
        table = _block_table(top)
        for t, _ in runs:
            for l, b in table.get(_inv(self.segment(t + 1, n - 1)), ()):
                ones.append(TypeI(seq, t, l, b))
        ones.sort(key=lambda op: op.l)
        return out + ones


@lru_cache(maxsize=None)
def _block_table(top: int) -> dict:
    """Lattice word of each type I block with length up to ``top`` -> [(l, b), ...]."""
    table: dict = {}
    for l in range(1, top + 1):
        for b in range(0, l + 1, 2):
            table.setdefault(_word(type_i_block(l, b)), []).append((l, b))
    return table


def _result_slots(op, idx: int) -> range:
    """List positions taken by the members an op on member ``idx`` produced."""
    return range(idx, idx + (2 if isinstance(op, TypeIII) else 1))


class _Search:
    def __init__(self, d: int):
        self.d = d
        self.memo = _MEMO
        self.nodes = 0
        self.base_calls = 0
        self.max_depth = 0
        self.max_fanout = 0

    def ops_for(self, lst: SequenceList, idx: int, reach: int, budget: float = math.inf) -> list:
        code = lst[idx]
        # a type I child has d3 + l + 2 entries 3 and needs 1 + ceil(d3' / 2) <= budget - 1 faces
        if budget < math.inf:
            reach = min(reach, int(2 * budget) - 6 - code.d3)
        if code.f5 == 1:
            return _Closure(code).closing_ops(code, idx, max(min(self.d, reach), 0))
        return enumerate_ops(lst, self.d, members=[idx], max_l=max(reach, 0))

    @staticmethod
    def split(members, total: float, reach: int) -> Optional[list]:
        """Reach and face budget for each member sharing ``total`` faces; ``None`` if hopeless."""
        # Cheap checks on every member first: a member with f5 < 0 beside a
        # sibling of larger f5 would otherwise send the search up, not down.
        if not all(plausible(m) for m in members):
            return None
        lbs = [min_faces_bound(m) for m in members]
        spare = total - sum(lbs)
        if spare < 0:
            return None
        return [(m, _narrow(reach, m), lb + spare) for m, lb in zip(members, lbs)]

    def all_ok(self, members, reach: int, total: float = math.inf, depth: int = 0) -> bool:
        kids = self.split(members, total, reach)
        return kids is not None and all(self.member_ok(m, r, b, depth) for m, r, b in kids)

    def member_ok(self, code: BoundaryCode, reach: int, budget: float = math.inf, depth: int = 0) -> bool:
        self.nodes += 1
        if code == PENTAGON:
            self.max_depth = max(self.max_depth, depth + 1)
            return budget >= 1
        if code.f5 == 0:
            # exists_hex caches on its own and rejects most codes in linear time
            self.base_calls += 1
            self.max_depth = max(self.max_depth, depth)
            return min_faces_bound(code) <= budget and exists_hex(tuple(code))
        if not plausible(code):
            return False
        budget = min(budget, max_faces(len(code), code.f5))
        if budget < min_faces_bound(code):
            return False
        canon = canonical_rotation(code)
        # solvable within (reach, budget) is monotone in budget
        entry = self.memo.setdefault((canon, reach), [-math.inf, math.inf])
        if budget <= entry[0]:
            return False
        if budget >= entry[1]:
            return True
        start = SequenceList([canon])
        ops = self.ops_for(start, 0, reach, budget)
        self.max_fanout = max(self.max_fanout, len(ops))
        ok = False
        for op in ops:
            result, _ = apply_traced(start, op)
            if self.all_ok(result, reach, budget - 1, depth + 1):
                ok = True
                break
        if ok:
            entry[1] = min(entry[1], budget)
        else:
            entry[0] = max(entry[0], budget)
        return ok

    def plan(self, lst: SequenceList, reach: int) -> OpTrace:
        """Operation sequence taking a solvable list down to hexagonal members."""
        trace = OpTrace(SequenceList(lst))
        cur = trace.final
        params = [(r, b) for _, r, b in self.split(cur, math.inf, reach)]
        while True:
            cur, ivs = iv_closure_traced(cur)
            for op in ivs:
                trace.push(op)
                del params[op.seq]
            idx = next((i for i, m in enumerate(cur) if m.f5 != 0), None)
            if idx is None:
                return trace
            r, b = params[idx]
            b = min(b, max_faces(len(cur[idx]), cur[idx].f5))
            for op in self.ops_for(cur, idx, r, b):
                result, _ = apply_traced(cur, op)
                slots = _result_slots(op, idx)
                kids = self.split([result[i] for i in slots], b - 1, r)
                if kids is not None and all(self.member_ok(*k) for k in kids):
                    cur = trace.push(op)
                    params[idx:idx + 1] = [(kr, kb) for _, kr, kb in kids]
                    break
            else:
                raise AnchorMismatch(f"no viable operation on {cur}; memo is inconsistent")

    def stats(self, t0: float) -> dict:
        return {
            "d": self.d,
            "nodes": self.nodes,
            "base_calls": self.base_calls,
            "max_depth": self.max_depth,
            "max_fanout": self.max_fanout,
            "time_ms": round((time.perf_counter() - t0) * 1000, 3),
        }


def _as_code(code) -> BoundaryCode:
    if isinstance(code, BoundaryCode):
        return code
    if isinstance(code, str):
        from .boundary_code import parse

        items = parse(code)
        if len(items) != 1:
            raise ValueError("expected a single boundary code")
        return items[0]
    return BoundaryCode(code)


def choose_d(code: BoundaryCode, cfg: SolverConfig) -> int:
    n = len(code)
    if cfg.d_override is not None:
        return cfg.d_override
    if cfg.conjecture_mode:
        return max(n - 3, 10)
    return max(n - 3, 1)


def build_witness(trace: OpTrace, base: Optional[Sequence[Patch]] = None) -> list[Patch]:
    """Replay reverse cuts from a solution of ``trace.final`` back to ``trace.initial``."""
    if base is None:
        base = []
        for member in trace.final:
            sols = hex_solutions(member, cap=1)
            if not sols:
                raise AnchorMismatch(f"no hexagonal base patch for {member}")
            base.append(sols[0])
    ps = list(base)
    if [p.code for p in ps] != list(trace.final):
        raise AnchorMismatch("base patch set does not realize the final list")
    for step in reversed(trace.steps):
        ps = reverse_cut(ps, step.op, step.anchors)
    return ps


def test_recurse(lst, d: int, cfg: SolverConfig = SolverConfig()) -> Answer:
    """Whether a code list has a solution whose 5-faces lie within ``d`` of the boundary."""
    t0 = time.perf_counter()
    lst = SequenceList(lst)
    search = _Search(d)
    ok = search.all_ok(lst, d)
    ans = Answer(ok)
    if ok and cfg.want_witness:
        ans.trace = search.plan(lst, d)
        ans.witness = build_witness(ans.trace)
    ans.stats = search.stats(t0)
    return ans


def decide(code, cfg: SolverConfig = SolverConfig()) -> Answer:
    code = _as_code(code)
    f5 = code.f5
    if f5 > 5 and not cfg.conjecture_mode:
        raise Unsupported(f"f5 = {f5} > 5 needs conjecture mode")
    t0 = time.perf_counter()
    d = choose_d(code, cfg)
    if len(code) < 5:
        ans = Answer(False, stats={"d": d, "nodes": 0, "base_calls": 0, "max_depth": 0, "max_fanout": 0})
    else:
        ans = test_recurse(SequenceList([code]), d, cfg)
    ans.stats["time_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    ans.stats["conditional"] = bool(cfg.conjecture_mode and f5 > 5)
    ans.stats["f5"] = f5
    ans.stats["n"] = len(code)
    return ans


def count_solutions(code, cap: Optional[int] = None, cfg: SolverConfig = SolverConfig()) -> int:
    """Distinct fixed-boundary solutions, saturating at ``cap``."""
    code = _as_code(code)
    cap = cap if cap is not None else cfg.count_cap
    if cap is None or cap < 1:
        raise ValueError("cap must be positive")
    if code.f5 > 5 and not cfg.conjecture_mode:
        raise Unsupported(f"f5 = {code.f5} > 5")
    if len(code) < 5 or not plausible(code):
        return 0
    d = choose_d(code, cfg)
    search = _Search(d)
    cache: dict = {}

    def solutions(member: BoundaryCode, reach: int, budget: float) -> list[Patch]:
        if member != PENTAGON and member.f5 != 0:
            budget = min(budget, max_faces(len(member), member.f5))
        key = (tuple(member), reach, budget)
        if key in cache:
            return cache[key]
        out: dict[str, Patch] = {}
        if member == PENTAGON:
            out["p"] = pentagon()
        elif member.f5 == 0:
            for p in hex_solutions(member, cap):
                out[canonical_form(p)] = p
        elif search.member_ok(member, reach, budget):
            start = SequenceList([member])
            for op in search.ops_for(start, 0, reach, budget):
                result, anchors = apply_traced(start, op)
                kids = search.split(result, budget - 1, reach)
                if kids is None or not all(search.member_ok(*k) for k in kids):
                    continue
                for combo in itertools.product(*(solutions(*k) for k in kids)):
                    (p,) = reverse_cut(list(combo), op, anchors)
                    out.setdefault(canonical_form(p), p)
                    if len(out) >= cap:
                        break
                if len(out) >= cap:
                    break
        cache[key] = list(out.values())
        return cache[key]

    return min(cap, len(solutions(code, _narrow(d, code), math.inf)))
