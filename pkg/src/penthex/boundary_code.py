"""Boundary codes (cyclic sequences of 2s and 3s) and lists of them."""

from __future__ import annotations

import re
from typing import Iterable

from .errors import BadDigit, EmptyCode

__all__ = [
    "BoundaryCode",
    "SequenceList",
    "parse",
    "format_list",
    "f5_of",
    "complement",
    "canonical_rotation",
    "is_rotation",
    "PENTAGON",
]


class BoundaryCode(tuple):
    """Cyclic degree sequence. Equality is literal (index-wise)."""

    def __new__(cls, degrees: Iterable[int] = ()):
        items = tuple(int(x) for x in degrees)
        if not items:
            raise EmptyCode("boundary code must have at least one entry")
        for x in items:
            if x not in (2, 3):
                raise BadDigit(f"degree {x} is not 2 or 3")
        return super().__new__(cls, items)

    @property
    def n(self) -> int:
        return len(self)

    @property
    def d2(self) -> int:
        return self.count(2)

    @property
    def d3(self) -> int:
        return self.count(3)

    @property
    def f5(self) -> int:
        return 6 - self.d2 + self.d3

    def rotate(self, k: int) -> "BoundaryCode":
        """Code starting at index ``k``."""
        k %= len(self)
        return BoundaryCode(self[k:] + self[:k])

    def __repr__(self):
        return f"BoundaryCode({''.join(map(str, self))})"

    def __str__(self):
        return ",".join(map(str, self))


class SequenceList(tuple):
    """Ordered list of boundary codes; may be empty."""

    def __new__(cls, items: Iterable = ()):
        return super().__new__(cls, (c if isinstance(c, BoundaryCode) else BoundaryCode(c) for c in items))

    @property
    def f5(self) -> int:
        return sum(c.f5 for c in self)

    @property
    def d2(self) -> int:
        return sum(c.d2 for c in self)

    @property
    def d3(self) -> int:
        return sum(c.d3 for c in self)

    def canonical_key(self) -> tuple:
        """Order- and rotation-insensitive key."""
        return tuple(sorted(tuple(canonical_rotation(c)) for c in self))

    def __repr__(self):
        return f"SequenceList({format_list(self)!r})"

    def __str__(self):
        return format_list(self)


PENTAGON = BoundaryCode((2,) * 5)

_TOKEN = re.compile(r"[23]")


def _parse_code(segment: str) -> BoundaryCode:
    body = segment.strip()
    if not body:
        raise EmptyCode(f"empty code segment in {segment!r}")
    digits = []
    if "," in body:
        for tok in body.split(","):
            tok = tok.strip()
            if not tok:
                raise EmptyCode(f"empty token in {segment!r}")
            if tok not in ("2", "3"):
                raise BadDigit(f"bad token {tok!r}")
            digits.append(int(tok))
    else:
        for ch in body:
            if ch.isspace():
                continue
            if not _TOKEN.fullmatch(ch):
                raise BadDigit(f"bad character {ch!r}")
            digits.append(int(ch))
    if not digits:
        raise EmptyCode(f"no digits in {segment!r}")
    return BoundaryCode(digits)


def parse(text: str) -> SequenceList:
    """Parse ``"2,2,3|2323"``-style text into a :class:`SequenceList`."""
    if not text or not text.strip():
        raise EmptyCode("input is empty")
    return SequenceList(_parse_code(seg) for seg in text.split("|"))


def format_list(items: SequenceList) -> str:
    return " | ".join(",".join(map(str, c)) for c in items)


def f5_of(items) -> int:
    """Pentagon count implied by the boundary: sum of ``6 - d2 + d3``.

    Accepts a single code or a list of codes.
    """
    if isinstance(items, BoundaryCode):
        return items.f5
    return sum(BoundaryCode(c).f5 for c in items)


def complement(code: BoundaryCode) -> BoundaryCode:
    return BoundaryCode(5 - x for x in code)


def canonical_rotation(code: BoundaryCode) -> BoundaryCode:
    """Lexicographically smallest rotation (2 < 3)."""
    t = tuple(code)
    return BoundaryCode(min(t[k:] + t[:k] for k in range(len(t))))


def is_rotation(a: BoundaryCode, b: BoundaryCode) -> bool:
    return len(a) == len(b) and canonical_rotation(a) == canonical_rotation(b)
