from hypothesis import assume, given, settings
from hypothesis import strategies as st

from penthex.boundary_code import (
    BoundaryCode,
    SequenceList,
    canonical_rotation,
    complement,
    f5_of,
    format_list,
    is_rotation,
    parse,
)
from penthex.oracle import grow_patches
from penthex.patch_graph import canonical_form, cut, inner_faces, one_bend_paths, reverse_cut, validate_patch
from penthex.sequence_ops import apply, apply_traced, enumerate_ops, parse_op
from penthex.solver import SolverConfig, decide

codes = st.lists(st.sampled_from((2, 3)), min_size=1, max_size=24).map(BoundaryCode)
code_lists = st.lists(codes, min_size=1, max_size=3).map(SequenceList)

_SMALL = [validate_patch(p) for level in grow_patches(5) for p in level]


@given(codes)
def test_complement_is_an_involution(c):
    assert complement(complement(c)) == c
    assert complement(c).f5 == 12 - c.f5


@given(codes, st.integers(0, 50))
def test_canonical_rotation(c, k):
    r = canonical_rotation(c)
    assert is_rotation(r, c)
    assert canonical_rotation(c.rotate(k)) == r
    assert canonical_rotation(r) == r


@given(code_lists)
def test_parse_format_round_trip(lst):
    assert parse(format_list(lst)) == lst


@given(code_lists, st.integers(1, 6), st.data())
def test_every_op_drops_f5_by_one(lst, d, data):
    ops = enumerate_ops(lst, d)
    assume(ops)
    op = data.draw(st.sampled_from(ops))
    assert f5_of(apply(lst, op)) == f5_of(lst) - 1
    assert parse_op(str(op)) == op


@given(codes, st.integers(0, 30))
@settings(max_examples=60, deadline=None)
def test_decide_is_rotation_invariant(c, k):
    assume(len(c) <= 12 and 0 <= c.f5 <= 5)
    cfg = SolverConfig(want_witness=False)
    assert decide(c, cfg).exists == decide(c.rotate(k), cfg).exists


@given(st.sampled_from(_SMALL), st.data())
@settings(max_examples=150, deadline=None)
def test_cut_round_trip(p, data):
    fives = [f for f in inner_faces(p) if len(f) == 5]
    assume(fives)
    face = data.draw(st.sampled_from(fives))
    path = data.draw(st.sampled_from(one_bend_paths(p, face)))
    ps, op = cut(p, face, path)
    assert f5_of([q.code for q in ps]) == f5_of([p.code]) - 1
    _, anchors = apply_traced(SequenceList([p.code]), op)
    (q,) = reverse_cut(ps, op, anchors)
    assert q.code == p.code and canonical_form(q) == canonical_form(p)


@given(st.sampled_from(_SMALL))
@settings(max_examples=100, deadline=None)
def test_decide_accepts_generated_boundaries(p):
    assume(p.code.f5 <= 5)
    ans = decide(p.code)
    assert ans.exists
    assert validate_patch(ans.witness[0]).code == p.code
