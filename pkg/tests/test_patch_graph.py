import pytest

from penthex.boundary_code import BoundaryCode, SequenceList, is_rotation
from penthex.errors import (
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
from penthex.oracle import fill_search
from penthex.patch_graph import (
    OneBendPath,
    PlaneGraph,
    boundary_code_of,
    canonical_form,
    cut,
    cut_set,
    dist_to_boundary,
    equivalent,
    f5_patch,
    face_distance,
    find_1bend_path,
    from_faces,
    inner_faces,
    one_bend_paths,
    pentagon,
    relabel_boundary,
    reverse_cut,
    trace_faces,
    validate_patch,
)
from penthex.sequence_ops import TypeI, TypeII, TypeIV, apply, apply_traced


def code(s):
    return BoundaryCode(int(c) for c in s)


def central(hemi):
    return next(f for f in inner_faces(hemi) if not set(f) & set(hemi.boundary))


def test_trace_five_cycle(pent):
    assert sorted(len(w) for w in trace_faces(pent)) == [5, 5]


def test_trace_fused(fused):
    assert sorted(len(w) for w in trace_faces(fused)) == [5, 6, 9]
    assert fused.n_vertices - fused.n_edges + 3 == 2


def test_trace_single_edge():
    assert [len(w) for w in trace_faces(PlaneGraph(((1,), (0,)), (0, 1)))] == [2]


def test_trace_rejects_asymmetric_rotation():
    with pytest.raises(InconsistentRotation):
        trace_faces(PlaneGraph(((1,), ()), (0, 1)))


def test_validate_cycles(pent):
    assert pent.code == code("22222")
    with pytest.raises(BadFaceLength):
        validate_patch(from_faces([list(range(7))[::-1]], range(7)))


def test_validate_rejects_wrong_boundary(fused):
    # the hexagon's cycle is a facial walk but not the outer one
    with pytest.raises(InvalidPatch):
        validate_patch(PlaneGraph(fused.rot, (4, 5, 6, 7, 8, 0)))


def test_validate_rejects_cut_vertex():
    # two pentagons sharing only vertex 0
    rot = ((4, 1, 8, 5), (0, 2), (1, 3), (2, 4), (3, 0), (0, 6), (5, 7), (6, 8), (7, 0))
    with pytest.raises((NotTwoConnected, BadDegree, InvalidPatch)):
        validate_patch(PlaneGraph(rot, (0, 1, 2, 3, 4, 0, 5, 6, 7, 8)))


def test_validate_rejects_degree_two_inside():
    g = from_faces([[4, 3, 2, 1, 0]], range(5))
    # subdivide nothing, just claim a shorter boundary
    with pytest.raises(InvalidPatch):
        validate_patch(PlaneGraph(g.rot, (0, 1, 2, 3)))


def test_hemi(hemi):
    assert is_rotation(boundary_code_of(hemi), code("2323232323"))
    assert f5_patch(hemi) == 6
    assert dist_to_boundary(hemi) == 1


def test_codes(pent, hexagon, fused):
    assert boundary_code_of(pent) == code("22222")
    assert is_rotation(boundary_code_of(fused), code("322232222"))
    assert f5_patch(pent) == 1 and f5_patch(hexagon) == 0 and f5_patch(fused) == 1
    assert dist_to_boundary(pent) == 0
    assert dist_to_boundary([pent, hexagon]) == 0
    assert dist_to_boundary([]) == 0


def test_one_bend_boundary_face(fused):
    for f in inner_faces(fused):
        path = find_1bend_path(fused, f)
        assert path.l == 0 and path.start in f


def test_one_bend_hemi_center(hemi):
    f = central(hemi)
    paths = one_bend_paths(hemi, f)
    assert paths and all(p.l == 1 for p in paths)
    assert face_distance(hemi, f) == 1


def test_turn_record():
    path = OneBendPath(tuple(range(6)), 2)
    assert [path.turns_left(i) for i in range(1, 5)] == [True, False, False, True]
    assert set(path.turn_potential()) <= {-1, 0, 1}


def test_cut_pentagon_alone(pent):
    f = inner_faces(pent)[0]
    ps, op = cut(pent, f, find_1bend_path(pent, f))
    assert ps == [] and op == TypeIV(0)


def test_cut_fused(fused):
    f = next(f for f in inner_faces(fused) if len(f) == 5)
    ps, op = cut(fused, f, find_1bend_path(fused, f))
    assert isinstance(op, TypeII) and op.x == 4
    assert [p.code for p in ps] == [code("222222")]
    assert SequenceList(p.code for p in ps) == apply(SequenceList([fused.code]), op)


def test_cut_hemi_center(hemi):
    f = central(hemi)
    path = find_1bend_path(hemi, f)
    ps, op = cut(hemi, f, path)
    assert isinstance(op, TypeI) and (op.l, op.b) == (1, 0)
    assert SequenceList(p.code for p in ps) == apply(SequenceList([hemi.code]), op)


def test_cut_rejects(hexagon, hemi, fused):
    with pytest.raises(NotFiveFace):
        cut(hexagon, inner_faces(hexagon)[0], OneBendPath((0,), 0))
    ring = next(f for f in inner_faces(hemi) if set(f) & set(hemi.boundary))
    far = OneBendPath((hemi.boundary[0], central(hemi)[0]), 0)
    with pytest.raises((PathNotIncident, NotOneBend)):
        cut(hemi, central(hemi), OneBendPath((0,), 0))
    with pytest.raises((PathNotIncident, NotOneBend)):
        cut(hemi, ring, far)


def test_cut_set_keeps_other_members(pent, fused):
    f = next(f for f in inner_faces(fused) if len(f) == 5)
    ps, op = cut_set([pent, fused], 1, f, find_1bend_path(fused, f))
    assert op.seq == 1 and ps[0] is pent and len(ps) == 2


def test_reverse_iv():
    (p,) = reverse_cut([], TypeIV(0))
    assert equivalent(p, pentagon())


def test_reverse_ii(hexagon, fused):
    op = TypeII(0, 0, 4)
    _, anchors = apply_traced(SequenceList([fused.code]), op)
    (p,) = reverse_cut([hexagon], op, anchors)
    assert equivalent(p, fused)


def test_reverse_anchor_mismatch(hexagon):
    with pytest.raises(AnchorMismatch):
        reverse_cut([hexagon], TypeI(0, 0, 1, 0), ((0, 0),))


def test_round_trip_hemi(hemi):
    for f in inner_faces(hemi):
        for path in one_bend_paths(hemi, f):
            ps, op = cut(hemi, f, path)
            _, anchors = apply_traced(SequenceList([hemi.code]), op)
            (q,) = reverse_cut(ps, op, anchors)
            assert equivalent(q, hemi)


def test_equivalence(pent, hexagon, fused):
    assert equivalent(fused, fused)
    assert not equivalent(pent, hexagon)
    # same patch, boundary start moved: the labelled boundaries differ
    moved = relabel_boundary(fused, 1)
    assert canonical_form(moved) != canonical_form(fused) or moved.code != fused.code


def test_canonical_form_ignores_interior_labels(hemi):
    n = hemi.n_vertices
    perm = list(range(10)) + list(range(n - 1, 9, -1))
    rot = [None] * n
    for v, r in enumerate(hemi.rot):
        rot[perm[v]] = tuple(perm[u] for u in r)
    other = validate_patch(PlaneGraph(tuple(rot), hemi.boundary))
    assert canonical_form(other) == canonical_form(hemi)


def test_distinct_solutions_one_code():
    ps = fill_search(code("223223223223"))
    assert len(ps) == 2
    assert ps[0].code == ps[1].code
    assert not equivalent(ps[0], ps[1])
