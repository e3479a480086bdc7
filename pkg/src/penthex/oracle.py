"""Exhaustive patch search, independent of the sequence-operation solver.

The search fills a boundary face by face. The region still to be filled is
a list of *holes*: clockwise cycles of ``(vertex, degree-in-region)`` pairs.
Each step takes the hole's longest run ``3, (2)^(x-1), 3`` (the inner face on
that run is forced), guesses the face length and which other runs of the
hole the face also touches, and replaces the hole by the pieces left over.

Two facts keep the search small:

* a hole whose degrees give ``f5 = 0`` can only be filled with hexagons, and
  then its boundary walk in the hexagonal lattice must close; the enclosed
  lattice area is the exact number of hexagons needed;
* holes are independent, so the least number of faces that fills a given
  hole is memoized per rotation class and used to prune every branch whose
  holes cannot all be filled within the face budget.
"""

from __future__ import annotations

import itertools
import math
import sys
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .boundary_code import BoundaryCode, canonical_rotation
from .errors import Inconsistent
from .patch_graph import Patch, canonical_form, from_faces, inner_faces, relabel_boundary, validate_patch

__all__ = [
    "SearchConfig",
    "lattice_walk",
    "fill_search",
    "exists_hex",
    "count_distinct",
    "hex_solutions",
    "min_faces",
    "clear_caches",
    "grow_patches",
    "rotation_free_form",
]

# unit steps in the basis (1, w), w = exp(i*pi/3)
_DIRS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))
_INF = math.inf


@dataclass(frozen=True)
class SearchConfig:
    allow_pentagons: bool = True
    face_budget: Optional[int] = None  # default: n ** 2
    collect_witnesses: bool = True
    witness_cap: int = 1000

    def __post_init__(self):
        if self.face_budget is not None and self.face_budget < 1:
            raise ValueError("face_budget must be positive")
        if self.witness_cap < 1:
            raise ValueError("witness_cap must be positive")


def lattice_walk(code: Sequence[int]) -> tuple[bool, int]:
    """Trace the boundary in the hexagonal lattice.

    Degree 2 turns right, degree 3 turns left. Returns ``(closed, hexagons)``
    where ``closed`` says position and heading return to the start and
    ``hexagons`` is the enclosed area in hexagons (meaningful only if closed).
    """
    x = y = 0
    h = 0
    twice_area = 0
    n = len(code)
    for i in range(n):
        dx, dy = _DIRS[h]
        nx, ny = x + dx, y + dy
        twice_area += x * ny - nx * y
        x, y = nx, ny
        h = (h + (1 if code[(i + 1) % n] == 3 else -1)) % 6
    closed = x == 0 and y == 0 and h == 0
    # a unit hexagon is three basis parallelograms; shoelace gives twice the area
    return closed, -twice_area // 6 if closed else 0


def _f5(code: Sequence[int]) -> int:
    d3 = sum(1 for v in code if v == 3)
    return 6 - (len(code) - d3) + d3


@lru_cache(maxsize=None)
def _lower_bound(code: tuple, allow: bool) -> float:
    f5 = _f5(code)
    if f5 < 0:
        return _INF
    if len(code) < 3 or (f5 <= 6 and len(code) < 5):
        return _INF
    if f5 == 0:
        closed, area = lattice_walk(code)
        return area if closed and area >= 1 else _INF
    if not allow:
        return _INF
    return max(1, f5)


def _expansions(hole: tuple, allow: bool, next_id: int) -> Iterator[tuple[list, list, int]]:
    """Ways to place the forced face of ``hole``.

    Yields ``(face, children, next_id)``: the new face (anticlockwise vertex
    list), the holes left over, and the next unused vertex id.
    """
    N = len(hole)
    verts = [h[0] for h in hole]
    needs = [h[1] for h in hole]
    threes = [i for i, v in enumerate(needs) if v == 3]
    lengths = (5, 6) if allow else (6,)
    if not threes:
        if N in lengths:
            yield verts[::-1], [], next_id
        return
    m = len(threes)
    if m == 1:
        return
    runs = [(threes[k], (threes[(k + 1) % m] - threes[k]) % N) for k in range(m)]
    c = max(range(m), key=lambda k: (runs[k][1], -k))
    if runs[c][1] > 5:
        return
    others = [(c + j) % m for j in range(2, m - 1)]  # non-adjacent to the chosen run
    for extra in range(0, 3):
        for combo in itertools.combinations(others, extra):
            sel = [c] + list(combo)
            if any((sel[i + 1] - sel[i]) % m < 2 for i in range(1, len(sel) - 1)):
                continue
            edges = sum(runs[k][1] for k in sel)
            j = len(sel)
            for k_len in lengths:
                spare = k_len - edges
                if spare < j:
                    continue
                for cut_pts in itertools.combinations(range(1, spare), j - 1):
                    parts = [b - a for a, b in zip((0,) + cut_pts, cut_pts + (spare,))]
                    yield _build(verts, needs, runs, sel, parts, next_id)


def _build(verts, needs, runs, sel, parts, next_id):
    N = len(verts)
    j = len(sel)
    starts = [runs[k][0] for k in sel]
    ends = [(runs[k][0] + runs[k][1]) % N for k in sel]
    connectors = []
    for i in range(j):
        count = parts[i] - 1
        connectors.append(list(range(next_id, next_id + count)))
        next_id += count
    children = []
    for i in range(j):
        e = ends[i]
        s = starts[(i + 1) % j]
        arc_len = (s - e) % N
        hole = [(verts[e], 2)]
        hole += [(verts[(e + t) % N], needs[(e + t) % N]) for t in range(1, arc_len)]
        hole.append((verts[s], 2))
        hole += [(v, 3) for v in connectors[i]]
        children.append(tuple(hole))
    face = []
    for i in [0] + list(range(j - 1, 0, -1)):
        s, x = runs[sel[i]]
        face += [verts[(s + x - t) % N] for t in range(x)]  # e .. (exclusive of s)
        face.append(verts[s])
        gap = (i - 1) % j  # connector from s of this run to e of its clockwise predecessor
        face += connectors[gap]
    return face, children, next_id


_MIN_MEMO: dict = {}


def min_faces(code: Sequence[int], budget: float, allow: bool = True) -> Optional[int]:
    """Fewest faces filling a boundary with this code, if at most ``budget``; else ``None``."""
    code = tuple(code)
    lb = _lower_bound(code, allow)
    if lb > budget:
        return None
    key = (tuple(canonical_rotation(BoundaryCode(code))), allow)
    entry = _MIN_MEMO.get(key)
    if entry is not None:
        exact, failed = entry
        if exact is not None:
            return exact if exact <= budget else None
        if failed >= budget:
            return None
    canon = key[0]
    hole = tuple((i, v) for i, v in enumerate(canon))
    best = None
    limit = budget
    for _, children, _ in _expansions(hole, allow, len(canon)):
        codes = [tuple(v for _, v in ch) for ch in children]
        lbs = [_lower_bound(cc, allow) for cc in codes]
        if 1 + sum(lbs) > limit:
            continue
        total = 1
        for idx, cc in enumerate(codes):
            got = min_faces(cc, limit - total - sum(lbs[idx + 1:]), allow)
            if got is None:
                break
            total += got
        else:
            best = total
            limit = total - 1
            if best == lb:
                break
    prev_failed = entry[1] if entry else -1
    _MIN_MEMO[key] = (best, max(prev_failed, budget) if best is None else prev_failed)
    return best


def clear_caches() -> None:
    _MIN_MEMO.clear()
    _lower_bound.cache_clear()
    exists_hex.cache_clear()


def _fill(holes: tuple, faces: list, placed: int, budget: int, allow: bool, next_id: int):
    if not holes:
        yield faces
        return
    first, rest = holes[0], holes[1:]
    for face, children, nid in _expansions(first, allow, next_id):
        new_holes = tuple(children) + rest
        codes = [tuple(v for _, v in h) for h in new_holes]
        avail = budget - placed - 1
        lbs = [_lower_bound(cc, allow) for cc in codes]
        if sum(lbs) > avail:
            continue
        used = 0
        for idx, cc in enumerate(codes):
            got = min_faces(cc, avail - used - sum(lbs[idx + 1:]), allow)
            if got is None:
                break
            used += got
        else:
            yield from _fill(new_holes, faces + [face], placed + 1, budget, allow, nid)


def fill_search(code: Sequence[int], cfg: SearchConfig = SearchConfig()) -> list[Patch]:
    """All patches with boundary code ``code`` (fixed labeling), deduplicated.

    Boundary vertex ``i`` of every returned patch has degree ``code[i]``.
    """
    code = BoundaryCode(code)
    n = len(code)
    if not cfg.allow_pentagons and code.f5 != 0:
        raise Inconsistent(f"hexagon-only search on a code with f5 = {code.f5}")
    budget = cfg.face_budget if cfg.face_budget is not None else n * n
    if _lower_bound(tuple(code), cfg.allow_pentagons) > budget:
        return []
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 20 * budget + 1000))
    try:
        if min_faces(code, budget, cfg.allow_pentagons) is None:
            return []
        found: dict[str, Patch] = {}
        start = tuple((i, v) for i, v in enumerate(code))
        for faces in _fill((start,), [], 0, budget, cfg.allow_pentagons, n):
            p = validate_patch(from_faces(faces, range(n)))
            found.setdefault(canonical_form(p), p)
            if len(found) >= cfg.witness_cap or not cfg.collect_witnesses:
                break
        return list(found.values())
    finally:
        sys.setrecursionlimit(limit)


@lru_cache(maxsize=None)
def _exists_hex_canon(canon: tuple) -> bool:
    return bool(fill_search(canon, SearchConfig(allow_pentagons=False, witness_cap=1)))


@lru_cache(maxsize=None)
def exists_hex(code: Sequence[int]) -> bool:
    """Whether a hexagonal patch has this boundary code."""
    code = tuple(code)
    if not code or _f5(code) != 0 or len(code) % 2:
        return False
    closed, area = lattice_walk(code)
    if not closed or area < 1:
        return False
    return _exists_hex_canon(tuple(canonical_rotation(BoundaryCode(code))))


def hex_solutions(code: Sequence[int], cap: int = 1000) -> list[Patch]:
    """Hexagonal patches for ``code`` with the labeling fixed by position."""
    code = BoundaryCode(code)
    if code.f5 != 0 or not exists_hex(tuple(code)):
        return []
    return fill_search(code, SearchConfig(allow_pentagons=False, witness_cap=cap))


def count_distinct(code: Sequence[int], cap: int, cfg: Optional[SearchConfig] = None) -> int:
    """Number of fixed-boundary solution classes, saturating at ``cap``."""
    if cap < 1:
        raise ValueError("cap must be positive")
    base = cfg or SearchConfig()
    cfg = SearchConfig(base.allow_pentagons, base.face_budget, True, cap)
    return min(cap, len(fill_search(code, cfg)))


def rotation_free_form(p: Patch) -> str:
    """Canonical form that ignores where the boundary starts."""
    code = tuple(p.code)
    n = len(code)
    best = min(code[k:] + code[:k] for k in range(n))
    return min(canonical_form(relabel_boundary(p, k)) for k in range(n) if code[k:] + code[:k] == best)


def _glue(p: Patch) -> Iterator[Patch]:
    """Patches with one more face, glued along a boundary path from a 2 to a 2 over 3s.

    The rotation system is edited in place of a rebuild: the two path ends
    gain one neighbour each, on the outer side.
    """
    bnd = p.boundary
    N = len(bnd)
    deg = p.code
    fresh = p.n_vertices
    for s in range(N):
        if deg[s] != 2:
            continue
        for j in range(1, min(N, 6)):
            if deg[(s + j) % N] == 2:
                break
        else:
            continue
        if j >= N - 1:
            continue  # the two ends are already adjacent the other way round
        v, w = bnd[s], bnd[(s + j) % N]
        for k in (5, 6):
            extra = list(range(fresh, fresh + k - j - 1))
            chain = [v] + extra + [w]
            rot = list(p.rot)
            rot[v] = (bnd[s - 1], chain[1], bnd[(s + 1) % N])
            rot[w] = (chain[-2], bnd[(s + j + 1) % N], bnd[(s + j - 1) % N])
            rot += [(chain[i], chain[i + 2]) for i in range(len(extra))]
            boundary = tuple(chain[:-1]) + tuple(bnd[(s + j + t) % N] for t in range(N - j))
            yield Patch(tuple(rot), boundary)


def grow_patches(max_faces: int) -> list[list[Patch]]:
    """Every patch with at most ``max_faces`` faces, up to isomorphism; ``out[k]`` has ``k + 1`` faces.

    A patch with two or more faces has a boundary face meeting the
    boundary in one path whose removal leaves a patch, so gluing faces one
    at a time reaches all of them.
    """
    level = {}
    for k in (5, 6):
        p = Patch(tuple(((i - 1) % k, (i + 1) % k) for i in range(k)), tuple(range(k)))
        level[rotation_free_form(p)] = p
    out = [list(level.values())]
    for _ in range(max_faces - 1):
        nxt: dict = {}
        for p in out[-1]:
            for q in _glue(p):
                nxt.setdefault(rotation_free_form(q), q)
        out.append(list(nxt.values()))
    return out
