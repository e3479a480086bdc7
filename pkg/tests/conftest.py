import pytest

from penthex.patch_graph import from_faces, validate_patch

# Hand-built patches. Boundaries are clockwise from vertex 0, inner faces anticlockwise.


def cycle(k):
    return validate_patch(from_faces([list(range(k))[::-1]], list(range(k))))


@pytest.fixture
def pent():
    return cycle(5)


@pytest.fixture
def hexagon():
    return cycle(6)


@pytest.fixture
def fused():
    """A pentagon and a hexagon sharing the edge 0-4."""
    return validate_patch(from_faces([[4, 3, 2, 1, 0], [0, 8, 7, 6, 5, 4]], range(9)))


@pytest.fixture
def hemi():
    """Half a dodecahedron: a central pentagon ringed by five more."""
    faces = [(0, 9, 10, 11, 1), (1, 11, 14, 3, 2), (3, 14, 13, 5, 4), (5, 13, 12, 7, 6),
             (7, 12, 10, 9, 8), (10, 12, 13, 14, 11)]
    return validate_patch(from_faces(faces, range(10)))


_acceptance = []


def record_criterion(number: int, ok: bool, detail: str) -> None:
    _acceptance.append(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")


def pytest_terminal_summary(terminalreporter):
    if _acceptance:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance:
            terminalreporter.write_line(line)
