"""Plane graphs given by rotation systems, fullerene patches, and cutting.

A plane graph is stored as ``rot[v]``: the neighbours of ``v`` in clockwise
order. Faces are traced with the left-turn rule: after the half-edge
``u -> v`` comes ``v -> w`` with ``w`` the clockwise successor of ``u``
around ``v``. Inner faces come out anticlockwise and the outer face
clockwise, so a patch's boundary (stored clockwise) is itself a facial walk.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .boundary_code import BoundaryCode
from .errors import (
    AnchorMismatch,
    BadDegree,
    BadFaceLength,
    InconsistentRotation,
    InvalidPatch,
    NotFiveFace,
    NotOneBend,
    NotTwoConnected,
    PathNotIncident,
)
from .sequence_ops import (
    SeqOp,
    TypeI,
    TypeII,
    TypeIII,
    TypeIV,
    _splice,
    type_i_block,
)

__all__ = [
    "PlaneGraph",
    "Patch",
    "OneBendPath",
    "trace_faces",
    "validate_patch",
    "from_faces",
    "inner_faces",
    "boundary_code_of",
    "f5_patch",
    "dist_to_boundary",
    "face_distance",
    "one_bend_paths",
    "find_1bend_path",
    "cut",
    "cut_set",
    "reverse_cut",
    "canonical_form",
    "equivalent",
    "pentagon",
    "relabel_boundary",
]


@dataclass(frozen=True)
class PlaneGraph:
    rot: tuple  # rot[v] = clockwise tuple of neighbours
    boundary: tuple  # outer facial walk, clockwise, starting at the start vertex

    @property
    def n_vertices(self) -> int:
        return len(self.rot)

    @property
    def n_edges(self) -> int:
        return sum(len(r) for r in self.rot) // 2

    def degree(self, v: int) -> int:
        return len(self.rot[v])

    def succ(self, v: int, u: int) -> int:
        """Clockwise successor of ``u`` around ``v``."""
        r = self.rot[v]
        return r[(r.index(u) + 1) % len(r)]

    def pred(self, v: int, u: int) -> int:
        r = self.rot[v]
        return r[(r.index(u) - 1) % len(r)]

    @property
    def code(self) -> BoundaryCode:
        return BoundaryCode(len(self.rot[v]) for v in self.boundary)

    def edges(self) -> Iterator[tuple[int, int]]:
        for v, r in enumerate(self.rot):
            for u in r:
                if v < u:
                    yield v, u


class Patch(PlaneGraph):
    """A :class:`PlaneGraph` that passed :func:`validate_patch`."""


def _check_rotation(g: PlaneGraph) -> dict:
    """Validate symmetry; return the successor map ``(v, u) -> succ(v, u)``."""
    n = len(g.rot)
    nxt = {}
    for v, r in enumerate(g.rot):
        m = len(r)
        if len(set(r)) != m or v in r:
            raise InconsistentRotation(f"vertex {v} has a loop or repeated neighbour")
        for i, u in enumerate(r):
            nxt[v, u] = r[(i + 1) % m]
    for v, u in nxt:
        if not 0 <= u < n or (u, v) not in nxt:
            raise InconsistentRotation(f"edge {v}-{u} is not symmetric")
    return nxt


def trace_faces(g: PlaneGraph) -> list[tuple[int, ...]]:
    """All facial walks; each half-edge lies in exactly one."""
    nxt = _check_rotation(g)
    seen = set()
    faces = []
    for start in nxt:
        if start in seen:
            continue
        walk = []
        a, b = start
        while (a, b) not in seen:
            seen.add((a, b))
            walk.append(a)
            a, b = b, nxt[b, a]
        if (a, b) != start:
            raise InconsistentRotation("face tracing did not close")
        faces.append(tuple(walk))
    return faces


def _same_cycle(walk: Sequence[int], cycle: Sequence[int]) -> bool:
    if len(walk) != len(cycle) or not cycle:
        return False
    try:
        k = list(walk).index(cycle[0])
    except ValueError:
        return False
    return tuple(walk[k:]) + tuple(walk[:k]) == tuple(cycle)


def _outer_index(faces, g: PlaneGraph) -> Optional[int]:
    if len(g.boundary) < 2:
        return None
    b0, b1 = g.boundary[0], g.boundary[1]
    for k, f in enumerate(faces):
        m = len(f)
        for i in range(m):
            if f[i] == b0 and f[(i + 1) % m] == b1:
                return k
    return None


def validate_patch(g: PlaneGraph) -> Patch:
    """Check every patch invariant; raise an :class:`InvalidPatch` subclass otherwise."""
    if g.n_vertices == 0:
        raise NotTwoConnected("empty graph")
    faces = trace_faces(g)
    # connectivity
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in g.rot[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    if len(seen) != g.n_vertices:
        raise NotTwoConnected("graph is disconnected")
    for f in faces:
        if len(set(f)) != len(f):
            raise NotTwoConnected(f"facial walk {list(f)} is not a cycle")
    k = _outer_index(faces, g)
    if k is None or not _same_cycle(faces[k], g.boundary):
        raise InvalidPatch("stored boundary is not the outer facial cycle")
    if g.n_vertices - g.n_edges + len(faces) != 2:
        raise InvalidPatch("Euler characteristic is not 2")
    for i, f in enumerate(faces):
        if i != k and len(f) not in (5, 6):
            raise BadFaceLength(f)
    on_boundary = set(g.boundary)
    for v, r in enumerate(g.rot):
        if v in on_boundary:
            if len(r) not in (2, 3):
                raise BadDegree(v, len(r))
        elif len(r) != 3:
            raise BadDegree(v, len(r))
    return Patch(g.rot, g.boundary)


def inner_faces(g: PlaneGraph) -> list[tuple[int, ...]]:
    faces = trace_faces(g)
    k = _outer_index(faces, g)
    return [f for i, f in enumerate(faces) if i != k]


def _rotation_from_succ(succ: dict, order: Sequence) -> tuple:
    """Turn per-vertex successor maps into clockwise rotation tuples."""
    index = {v: i for i, v in enumerate(order)}
    rot = []
    for v in order:
        s = succ[v]
        start = min(s, key=lambda u: index[u])
        cyc = [start]
        u = s[start]
        while u != start:
            cyc.append(u)
            if len(cyc) > len(s):
                break
            u = s[u]
        if len(cyc) != len(s):
            raise InconsistentRotation(f"faces around vertex {v} do not form one disc")
        rot.append(tuple(index[u] for u in cyc))
    return tuple(rot)


def from_faces(faces: Iterable[Sequence], boundary: Sequence) -> PlaneGraph:
    """Build a plane graph from anticlockwise inner faces and the clockwise boundary.

    Vertices are renumbered: boundary vertices get ``0..n-1`` in boundary
    order, the rest follow in order of first appearance.
    """
    faces = [list(f) for f in faces]
    order = list(boundary)
    known = set(order)
    for f in faces:
        for v in f:
            if v not in known:
                known.add(v)
                order.append(v)
    succ: dict = {v: {} for v in order}
    for walk in faces + [list(boundary)]:
        m = len(walk)
        for i in range(m):
            u, v, w = walk[i - 1], walk[i], walk[(i + 1) % m]
            if u in succ[v]:
                raise InconsistentRotation(f"half-edge {u}->{v} used twice")
            succ[v][u] = w
    rot = _rotation_from_succ(succ, order)
    return PlaneGraph(rot, tuple(range(len(boundary))))


def _compact(rot: dict, boundary: Sequence) -> PlaneGraph:
    """Renumber a dict-based rotation system, keeping only vertices reachable from the boundary."""
    order = list(boundary)
    index = {v: i for i, v in enumerate(order)}
    queue = deque(order)
    while queue:
        v = queue.popleft()
        for u in rot[v]:
            if u not in index:
                index[u] = len(order)
                order.append(u)
                queue.append(u)
    new_rot = tuple(tuple(index[u] for u in rot[v]) for v in order)
    return PlaneGraph(new_rot, tuple(range(len(boundary))))


def relabel_boundary(p: Patch, shift: int) -> Patch:
    """Same patch with the boundary start moved forward by ``shift``."""
    b = p.boundary
    k = shift % len(b)
    return Patch(p.rot, b[k:] + b[:k])


def pentagon() -> Patch:
    return Patch(tuple(((i - 1) % 5, (i + 1) % 5) for i in range(5)), tuple(range(5)))


def boundary_code_of(p: PlaneGraph) -> BoundaryCode:
    return p.code


def f5_patch(p: PlaneGraph) -> int:
    return sum(1 for f in inner_faces(p) if len(f) == 5)


def _boundary_distances(p: PlaneGraph) -> list[int]:
    dist = [-1] * p.n_vertices
    queue = deque()
    for v in p.boundary:
        dist[v] = 0
        queue.append(v)
    while queue:
        v = queue.popleft()
        for u in p.rot[v]:
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def dist_to_boundary(ps) -> int:
    """Maximum distance to the boundary over all vertices (of all members)."""
    members = [ps] if isinstance(ps, PlaneGraph) else list(ps)
    return max((max(_boundary_distances(p)) for p in members), default=0)


def face_distance(p: PlaneGraph, face: Sequence[int]) -> int:
    """Plain breadth-first distance from the boundary to the nearest vertex of ``face``."""
    dist = _boundary_distances(p)
    return min(dist[v] for v in face)


@dataclass(frozen=True)
class OneBendPath:
    vertices: tuple  # u_0 .. u_l
    b: int

    @property
    def l(self) -> int:
        return len(self.vertices) - 1

    @property
    def start(self) -> int:
        return self.vertices[0]

    def turns_left(self, i: int) -> bool:
        """Prescribed turn at ``1 <= i <= l - 1``."""
        return (i <= self.b and i % 2 == 1) or (i > self.b and i % 2 == 0)

    def turn_potential(self) -> tuple[int, ...]:
        """Right turns minus left turns made up to each index (0 at index 0)."""
        t = [0]
        for i in range(1, self.l):
            t.append(t[-1] + (-1 if self.turns_left(i) else 1))
        return tuple(t)


def _walk_one_bend(p: PlaneGraph, u0: int, u1: int, l: int, b: int, on_boundary: set, face: frozenset):
    path = [u0, u1]
    for i in range(1, l):
        prev, cur = path[-2], path[-1]
        if cur in on_boundary or cur in face:
            return None
        left = (i <= b and i % 2 == 1) or (i > b and i % 2 == 0)
        path.append(p.succ(cur, prev) if left else p.pred(cur, prev))
    if path[-1] in on_boundary or path[-1] not in face:
        return None
    if len(set(path)) != len(path):
        return None
    return tuple(path)


def _interior_neighbour(p: PlaneGraph, i: int) -> Optional[int]:
    b = p.boundary
    n = len(b)
    v = b[i]
    if len(p.rot[v]) != 3:
        return None
    for u in p.rot[v]:
        if u != b[i - 1] and u != b[(i + 1) % n]:
            return u
    return None


def one_bend_paths(p: PlaneGraph, face: Sequence[int]) -> list[OneBendPath]:
    """All shortest 1-bend paths from the boundary to ``face``."""
    face_set = frozenset(face)
    on_boundary = set(p.boundary)
    touching = [v for v in p.boundary if v in face_set]
    if touching:
        return [OneBendPath((v,), 0) for v in touching]
    l = face_distance(p, face)
    found = []
    for i, u0 in enumerate(p.boundary):
        u1 = _interior_neighbour(p, i)
        if u1 is None or u1 in on_boundary:
            continue
        for b in range(0, l + 1, 2):
            path = _walk_one_bend(p, u0, u1, l, b, on_boundary, face_set)
            if path is not None:
                found.append(OneBendPath(path, b))
    return found


def find_1bend_path(p: PlaneGraph, face: Sequence[int]) -> OneBendPath:
    paths = one_bend_paths(p, face)
    if not paths:
        raise NotOneBend(f"no shortest 1-bend path to face {list(face)}")
    return paths[0]


def _face_walk_from(face: Sequence[int], v: int) -> list[int]:
    k = list(face).index(v)
    return list(face[k:]) + list(face[:k])


def _check_one_bend(p: PlaneGraph, path: OneBendPath) -> None:
    verts = path.vertices
    on_boundary = set(p.boundary)
    if verts[0] not in on_boundary or any(v in on_boundary for v in verts[1:]):
        raise NotOneBend("path must touch the boundary exactly at its start")
    if path.b % 2 or not 0 <= path.b <= path.l:
        raise NotOneBend(f"bad bend {path.b}")
    for i in range(1, path.l):
        expect = p.succ(verts[i], verts[i - 1]) if path.turns_left(i) else p.pred(verts[i], verts[i - 1])
        if expect != verts[i + 1]:
            raise NotOneBend(f"turn at index {i} does not follow the bend rule")


def cut(p: Patch, face: Sequence[int], path: OneBendPath) -> tuple[list[Patch], SeqOp]:
    """Cut ``p`` along 5-face ``face`` and ``path``.

    Returns the resulting patches (0, 1 or 2) and the induced sequence
    operation (with ``seq=0``). The new boundaries are laid out so that their
    codes equal ``apply([p.code], op)`` index-wise.
    """
    face = tuple(face)
    if len(face) != 5:
        raise NotFiveFace(f"face has length {len(face)}")
    fset = set(face)
    if path.vertices[-1] not in fset:
        raise PathNotIncident("path does not end on the face")
    bnd = list(p.boundary)
    n = len(bnd)
    pos_of = {v: i for i, v in enumerate(bnd)}
    rot = {v: list(r) for v, r in enumerate(p.rot)}

    if path.l >= 1:
        _check_one_bend(p, path)
        if any(v in pos_of for v in face):
            raise PathNotIncident("face touches the boundary; use a length-0 path")
        P = path.vertices
        l = path.l
        pos = pos_of[P[0]]
        a, c = bnd[pos - 1], bnd[(pos + 1) % n]
        fwalk = _face_walk_from(face, P[-1])  # u_l, q, f2, f3, p
        q, pp = fwalk[1], fwalk[4]
        nxt_id = p.n_vertices
        vcopy = list(range(nxt_id, nxt_id + l + 1))
        wcopy = list(range(nxt_id + l + 1, nxt_id + 2 * l + 2))
        sides = []
        for i, u in enumerate(P):
            if i == 0:
                A, B = [c], [a]
            elif i == l:
                A, B = [pp], [q]
            else:
                r = p.rot[u]
                k = r.index(P[i - 1])
                r1, r2 = r[(k + 1) % 3], r[(k + 2) % 3]
                A, B = ([], [r2]) if r1 == P[i + 1] else ([r1], [])
            sides.append((A, B))
        for i, u in enumerate(P):
            A, B = sides[i]
            rot[vcopy[i]] = ([vcopy[i - 1]] if i > 0 else []) + A + ([vcopy[i + 1]] if i < l else [])
            rot[wcopy[i]] = ([wcopy[i + 1]] if i < l else []) + B + ([wcopy[i - 1]] if i > 0 else [])
            for x in A:
                rot[x] = [vcopy[i] if y == u else y for y in rot[x]]
            for x in B:
                rot[x] = [wcopy[i] if y == u else y for y in rot[x]]
        for u in P:
            del rot[u]
        block = wcopy + fwalk[1:] + vcopy[::-1]
        new_bnd, _ = _splice(tuple(bnd), pos, 1, tuple(block))
        out = validate_patch(_compact(rot, new_bnd))
        return [out], TypeI(0, pos, l, path.b)

    # length zero: the face carries boundary edges
    fw = list(face)
    half = {(fw[i], fw[(i + 1) % 5]) for i in range(5)}
    on_f = [i for i in range(n) if (bnd[(i + 1) % n], bnd[i]) in half]
    if not on_f:
        raise PathNotIncident("face has no boundary edge")
    if len(on_f) == n:
        return [], TypeIV(0)
    on_set = set(on_f)
    starts = [i for i in on_f if (i - 1) % n not in on_set]
    runs = []
    for s in starts:
        x = 0
        while (s + x) % n in on_set:
            x += 1
        runs.append((s, x))

    def drop_run(s: int, x: int) -> None:
        verts = [bnd[(s + j) % n] for j in range(x + 1)]
        for j in range(x):
            u, v = verts[j], verts[j + 1]
            rot[u] = [y for y in rot[u] if y != v]
            rot[v] = [y for y in rot[v] if y != u]
        for v in verts[1:-1]:
            del rot[v]

    def f_path(u: int, v: int) -> list[int]:
        w = _face_walk_from(face, u)
        return w[1: w.index(v)]

    if len(runs) == 1:
        s, x = runs[0]
        sv, ev = bnd[s], bnd[(s + x) % n]
        block = [sv] + f_path(sv, ev) + [ev]
        drop_run(s, x)
        new_bnd, _ = _splice(tuple(bnd), s, x + 1, tuple(block))
        return [validate_patch(_compact(rot, new_bnd))], TypeII(0, s, x)

    if len(runs) != 2:
        raise InvalidPatch("a 5-face cannot meet the boundary in more than two runs")
    (sa, xa), (sb, xb) = sorted(runs)
    if xa == 2 and xb == 1:
        pos1, a, pos2 = sa, 1, sb
    elif xa == 1 and xb == 2:
        pos1, a, pos2 = sb, 1, sa
    elif xa == 1 and xb == 1:
        pos1, a, pos2 = sa, 0, sb
    else:
        raise InvalidPatch(f"unexpected boundary runs {runs}")
    s1, e1 = bnd[pos1], bnd[(pos1 + a + 1) % n]
    s2, e2 = bnd[pos2], bnd[(pos2 + 1) % n]
    conn_a = f_path(s2, e1)
    conn_b = f_path(s1, e2)
    off = (pos2 - pos1) % n
    y = [bnd[(pos1 + a + 2 + j) % n] for j in range(off - a - 2)]
    z = [bnd[(pos2 + 2 + j) % n] for j in range(n - off - 2)]
    drop_run(pos1, a + 1)
    drop_run(pos2, 1)
    side = None if a == 1 else ("b" if len(conn_a) == 1 else "c")
    first = validate_patch(_compact(rot, [s2] + conn_a + [e1] + y))
    second = validate_patch(_compact(rot, [s1] + conn_b + [e2] + z))
    return [first, second], TypeIII(0, pos1, a, pos2, side)


def _reseq(op: SeqOp, seq: int) -> SeqOp:
    from dataclasses import replace

    return replace(op, seq=seq)


def cut_set(ps: Sequence[Patch], member: int, face, path: OneBendPath) -> tuple[list[Patch], SeqOp]:
    """Cut one member of a patch set; members are replaced in place."""
    parts, op = cut(ps[member], face, path)
    return list(ps[:member]) + parts + list(ps[member + 1:]), _reseq(op, member)


def _expect(codes: Sequence[int], want: Sequence[int]) -> None:
    if list(codes) != list(want):
        raise AnchorMismatch(f"degrees {list(codes)} at anchor, expected {list(want)}")


def _laid_out(seq: list, pos: int) -> list:
    m = len(seq)
    return [seq[(i - pos) % m] for i in range(m)]


def reverse_cut(ps: Sequence[Patch], op: SeqOp, anchors: Sequence = ()) -> list[Patch]:
    """Undo a cutting operation: rebuild the patch set whose code is the pre-image of ``op``.

    ``anchors`` are ``(member, block_start)`` pairs as produced by
    :func:`penthex.sequence_ops.apply_traced`.
    """
    ps = list(ps)
    if isinstance(op, TypeIV):
        return ps[: op.seq] + [pentagon()] + ps[op.seq:]
    if isinstance(op, TypeIII):
        return _reverse_iii(ps, op)
    member = ps[op.seq]
    anchor = dict(anchors).get(op.seq, op.pos) if anchors else op.pos
    B = list(member.boundary)
    N = len(B)
    deg = member.code
    faces = [list(f) for f in inner_faces(member)]
    if isinstance(op, TypeI):
        L = 2 * op.l + 6
        block = [B[(anchor + j) % N] for j in range(L)]
        _expect([deg[(anchor + j) % N] for j in range(L)], type_i_block(op.l, op.b))
        l = op.l
        ident = {block[l + 5 + i]: block[l - i] for i in range(l + 1)}
        faces = [[ident.get(v, v) for v in f] for f in faces]
        faces.append(block[l: l + 5])
        rest = [B[(anchor + L + j) % N] for j in range(N - L)]
        seq = [block[0]] + rest
    elif isinstance(op, TypeII):
        x = op.x
        L = 6 - x
        block = [B[(anchor + j) % N] for j in range(L)]
        _expect([deg[(anchor + j) % N] for j in range(L)], (2,) + (3,) * (4 - x) + (2,))
        base = member.n_vertices
        mids = list(range(base, base + x - 1))
        faces.append(block + mids[::-1])
        rest = [B[(anchor + L + j) % N] for j in range(N - L)]
        seq = [block[0]] + mids + [block[-1]] + rest
    else:
        raise TypeError(f"not a sequence operation: {op!r}")
    new = from_faces(faces, _laid_out(seq, op.pos))
    return ps[: op.seq] + [validate_patch(new)] + ps[op.seq + 1:]


def _reverse_iii(ps: list, op: TypeIII) -> list[Patch]:
    if op.seq + 1 >= len(ps):
        raise AnchorMismatch("type III needs two consecutive members")
    first, second = ps[op.seq], ps[op.seq + 1]
    b, c = op.bc
    _expect(first.code[: b + 2], (2,) + (3,) * b + (2,))
    _expect(second.code[: c + 2], (2,) + (3,) * c + (2,))
    shift = first.n_vertices
    fa = [list(f) for f in inner_faces(first)]
    fb = [[v + shift for v in f] for f in inner_faces(second)]
    A = list(first.boundary)
    Bv = [v + shift for v in second.boundary]
    s2, conn_a, e1, y = A[0], A[1: b + 1], A[b + 1], A[b + 2:]
    s1, conn_b, e2, z = Bv[0], Bv[1: c + 1], Bv[c + 1], Bv[c + 2:]
    base = shift + second.n_vertices
    run = list(range(base, base + op.a))
    face = [e1] + run[::-1] + [s1] + conn_b + [e2, s2] + conn_a
    seq = [s1] + run + [e1] + y + [s2, e2] + z
    new = from_faces(fa + fb + [face], _laid_out(seq, op.pos1))
    return ps[: op.seq] + [validate_patch(new)] + ps[op.seq + 2:]


def canonical_form(p: PlaneGraph) -> str:
    """Deterministic string for ``p`` with its labeled boundary.

    Vertices are numbered by first visit in a breadth-first traversal that
    starts at the boundary start vertex; each vertex lists its neighbours
    clockwise, starting from the one it was discovered from (the start
    vertex starts from its boundary successor).
    """
    b = p.boundary
    if not b:
        return "empty"
    rot = p.rot
    number = {b[0]: 0}
    ref = {b[0]: b[1] if len(b) > 1 else None}
    order = [b[0]]
    rows = []
    for v in order:  # grows while we walk it
        r = rot[v]
        m = len(r)
        start = r.index(ref[v]) if ref[v] is not None else 0
        row = []
        for j in range(start, start + m):
            u = r[j % m]
            if u not in number:
                number[u] = len(order)
                ref[u] = v
                order.append(u)
            row.append(number[u])
        rows.append(",".join(map(str, row)))
    return f"{len(b)}:" + ";".join(rows)


def equivalent(p: PlaneGraph, q: PlaneGraph) -> bool:
    """Isomorphic with the labeled boundaries matched index by index."""
    return p.code == q.code and canonical_form(p) == canonical_form(q)
