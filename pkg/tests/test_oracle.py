import pytest

from penthex.boundary_code import BoundaryCode
from penthex.errors import Inconsistent
from penthex.oracle import (
    SearchConfig,
    count_distinct,
    exists_hex,
    fill_search,
    grow_patches,
    hex_solutions,
    lattice_walk,
    min_faces,
    rotation_free_form,
)
from penthex.patch_graph import f5_patch, inner_faces


def code(s):
    return BoundaryCode(int(c) for c in s)


@pytest.mark.parametrize("s,closed,area", [
    ("222222", True, 1),
    ("2222322223", True, 2),
    ("222322232223", True, 3),  # three hexagons round a vertex
    ("22223223222233", True, 3),  # three in a row
    ("22232232223223", True, 4),
    ("2222222", False, 0),
    ("2222322232", False, 0),
])
def test_lattice_walk(s, closed, area):
    assert lattice_walk(code(s)) == (closed, area)


def test_lattice_area_matches_face_count():
    for s in ("222222", "2222322223", "222322232223", "2222332223222323"):
        (p,) = fill_search(code(s))
        assert lattice_walk(code(s)) == (True, len(inner_faces(p)))


def test_exists_hex():
    assert exists_hex(code("222222"))
    assert exists_hex(code("2222322223"))
    assert not exists_hex(code("22222"))
    assert not exists_hex(code("2222222"))
    assert not exists_hex(code("23232323232323232323"[:12]))


def test_fill_search_small():
    assert len(fill_search(code("22222"))) == 1
    assert len(fill_search(code("222222"))) == 1
    assert fill_search(code("2222222")) == []
    (p,) = fill_search(code("322232222"))
    assert sorted(len(f) for f in inner_faces(p)) == [5, 6]


def test_fill_search_keeps_labels():
    c = code("232222322")  # a rotation of the fused pentagon-hexagon code
    (p,) = fill_search(c)
    assert p.code == c


def test_hexagon_only_config():
    with pytest.raises(Inconsistent):
        fill_search(code("22222"), SearchConfig(allow_pentagons=False))
    assert len(hex_solutions(code("222222"))) == 1
    assert hex_solutions(code("22222")) == []


def test_budget_limits():
    assert fill_search(code("2222322223"), SearchConfig(face_budget=1)) == []
    assert len(fill_search(code("2222322223"), SearchConfig(face_budget=2))) == 1
    assert min_faces(code("2222322223"), 10) == 2
    assert min_faces(code("2222322223"), 1) is None


def test_count_distinct():
    assert count_distinct(code("222222"), 10) == 1
    assert count_distinct(code("223223223223"), 10) == 2
    assert count_distinct(code("223223223223"), 1) == 1
    with pytest.raises(ValueError):
        count_distinct(code("222222"), 0)


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(face_budget=0)
    with pytest.raises(ValueError):
        SearchConfig(witness_cap=0)


def test_dodecahedron_cap():
    # f5 = 11: the pentagon boundary of a dodecahedron minus a face; search is capped by budget
    found = fill_search(code("33333"), SearchConfig(face_budget=11))
    assert len(found) == 1 and f5_patch(found[0]) == 11


def test_grow_patches_small_levels():
    levels = grow_patches(3)
    assert [len(x) for x in levels] == [2, 3, 15]
    # both mirror images of a chiral patch are kept
    forms = [rotation_free_form(p) for p in levels[2]]
    assert len(set(forms)) == len(forms)


def test_grow_matches_oracle_two_faces():
    got = {rotation_free_form(p) for p in grow_patches(2)[1]}
    want = set()
    for s in ("22232223", "322232222", "2222322223"):
        for p in fill_search(code(s), SearchConfig(face_budget=2)):
            want.add(rotation_free_form(p))
    assert got == want
