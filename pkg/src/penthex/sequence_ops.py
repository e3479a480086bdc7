"""The four sequence operations on boundary-code lists.

Every operation records *where* its rewritten block landed (the anchor), so
that the matching reverse graph operation can be replayed without search.
Layout convention for a rewrite of a block of ``L`` entries starting at
``pos`` in a code of length ``n``:

* if the block does not wrap (``pos + L <= n``) the new block is written in
  place and all other entries keep their indices;
* otherwise the result starts with the new block, followed by the untouched
  entries in cyclic order.

Type III results always start with their new block.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from .boundary_code import PENTAGON, BoundaryCode, SequenceList
from .errors import BadBend, NotApplicable, OverlappingBlocks, ParseError

__all__ = [
    "TypeI",
    "TypeII",
    "TypeIII",
    "TypeIV",
    "SeqOp",
    "TraceStep",
    "OpTrace",
    "sigma_pattern",
    "apply",
    "apply_traced",
    "enumerate_ops",
    "iv_closure",
    "iv_closure_traced",
    "parse_op",
    "type_i_block",
]


@dataclass(frozen=True)
class TypeI:
    seq: int
    pos: int
    l: int
    b: int

    def __post_init__(self):
        if self.l < 1 or self.b < 0 or self.b > self.l or self.b % 2:
            raise BadBend(f"invalid type I parameters l={self.l} b={self.b}")

    def __str__(self):
        return f"I seq={self.seq} pos={self.pos} l={self.l} b={self.b}"


@dataclass(frozen=True)
class TypeII:
    seq: int
    pos: int
    x: int

    def __post_init__(self):
        if not 1 <= self.x <= 4:
            raise ValueError(f"type II needs 1 <= x <= 4, got {self.x}")

    def __str__(self):
        return f"II seq={self.seq} pos={self.pos} x={self.x}"


@dataclass(frozen=True)
class TypeIII:
    seq: int
    pos1: int
    a: int
    pos2: int
    side: Optional[str] = None  # 'b' or 'c' when a == 0

    def __post_init__(self):
        if self.a not in (0, 1):
            raise ValueError(f"type III needs a in {{0, 1}}, got {self.a}")
        if self.a == 0 and self.side not in ("b", "c"):
            raise ValueError("type III with a = 0 needs side 'b' or 'c'")
        if self.a == 1 and self.side is not None:
            raise ValueError("type III with a = 1 takes no side")

    @property
    def bc(self) -> tuple[int, int]:
        if self.a == 1:
            return 0, 0
        return (1, 0) if self.side == "b" else (0, 1)

    def __str__(self):
        return f"III seq={self.seq} pos1={self.pos1} a={self.a} pos2={self.pos2} side={self.side or '-'}"


@dataclass(frozen=True)
class TypeIV:
    seq: int

    def __str__(self):
        return f"IV seq={self.seq}"


SeqOp = Union[TypeI, TypeII, TypeIII, TypeIV]

_OP_RE = re.compile(r"^(IV|III|II|I)((?:\s+\w+=\S+)*)\s*$")


def parse_op(text: str) -> SeqOp:
    """Inverse of ``str(op)``."""
    m = _OP_RE.match(text.strip())
    if not m:
        raise ParseError(f"cannot parse operation {text!r}")
    kind = m.group(1)
    kv = dict(tok.split("=", 1) for tok in m.group(2).split())
    try:
        if kind == "I":
            return TypeI(int(kv["seq"]), int(kv["pos"]), int(kv["l"]), int(kv["b"]))
        if kind == "II":
            return TypeII(int(kv["seq"]), int(kv["pos"]), int(kv["x"]))
        if kind == "III":
            side = kv.get("side", "-")
            return TypeIII(int(kv["seq"]), int(kv["pos1"]), int(kv["a"]), int(kv["pos2"]),
                           None if side == "-" else side)
        return TypeIV(int(kv["seq"]))
    except KeyError as exc:
        raise ParseError(f"missing field {exc} in {text!r}") from None


def sigma_pattern(l: int, b: int) -> tuple[int, ...]:
    """Degrees along one side of a cut 1-bend path of length ``l`` with bend ``b``."""
    if l < 1 or b < 0 or b > l or b % 2:
        raise BadBend(f"invalid bend b={b} for l={l}")
    return tuple(3 if (i <= b and i % 2 == 1) or (i > b and i % 2 == 0) else 2 for i in range(1, l))


def type_i_block(l: int, b: int) -> tuple[int, ...]:
    sigma = sigma_pattern(l, b)
    tail = tuple(5 - s for s in reversed(sigma))
    return (2,) + sigma + (2, 3, 3, 3, 3, 2) + tail + (2,)


def _splice(code: tuple, pos: int, old_len: int, block: tuple) -> tuple[tuple, int]:
    n = len(code)
    rest = tuple(code[(pos + old_len + i) % n] for i in range(n - old_len))
    seq = tuple(block) + rest
    m = len(seq)
    anchor = pos if pos + old_len <= n else 0
    return tuple(seq[(i - anchor) % m] for i in range(m)), anchor


def _member(lst: SequenceList, seq: int) -> BoundaryCode:
    if not 0 <= seq < len(lst):
        raise NotApplicable(f"no list member {seq}")
    return lst[seq]


def _type_iii_parts(code: tuple, op: TypeIII) -> tuple[tuple, tuple]:
    """Return the context runs (y, z) of a type III op, validating the blocks."""
    n = len(code)
    a = op.a
    p1, p2 = op.pos1 % n, op.pos2 % n
    if op.pos1 != p1 or op.pos2 != p2:
        raise NotApplicable("positions out of range")
    block1 = [code[(p1 + i) % n] for i in range(a + 2)]
    if block1 != [3] + [2] * a + [3]:
        raise NotApplicable(f"no 3,(2)^{a},3 block at {p1}")
    if (code[p2], code[(p2 + 1) % n]) != (3, 3):
        raise NotApplicable(f"no 3,3 block at {p2}")
    off = (p2 - p1) % n
    if not a + 2 <= off <= n - 2:
        raise OverlappingBlocks(f"blocks at {p1} and {p2} overlap")
    y = tuple(code[(p1 + a + 2 + i) % n] for i in range(off - a - 2))
    z = tuple(code[(p2 + 2 + i) % n] for i in range(n - off - 2))
    return y, z


def apply_traced(lst: SequenceList, op: SeqOp) -> tuple[SequenceList, tuple]:
    """Apply ``op``; also return anchors ``((member, block_start), ...)``."""
    lst = SequenceList(lst)
    code = tuple(_member(lst, op.seq))
    n = len(code)
    before, after = lst[: op.seq], lst[op.seq + 1:]
    if isinstance(op, TypeI):
        if not 0 <= op.pos < n or code[op.pos] != 3:
            raise NotApplicable(f"no 3 at position {op.pos}")
        new, anchor = _splice(code, op.pos, 1, type_i_block(op.l, op.b))
        return SequenceList(before + (new,) + after), ((op.seq, anchor),)
    if isinstance(op, TypeII):
        x = op.x
        if not 0 <= op.pos < n or x >= n:
            raise NotApplicable(f"type II x={x} does not fit a code of length {n}")
        pattern = [code[(op.pos + i) % n] for i in range(x + 1)]
        if pattern != [3] + [2] * (x - 1) + [3]:
            raise NotApplicable(f"no 3,(2)^{x - 1},3 block at {op.pos}")
        new, anchor = _splice(code, op.pos, x + 1, (2,) + (3,) * (4 - x) + (2,))
        return SequenceList(before + (new,) + after), ((op.seq, anchor),)
    if isinstance(op, TypeIII):
        y, z = _type_iii_parts(code, op)
        b, c = op.bc
        first = (2,) + (3,) * b + (2,) + y
        second = (2,) + (3,) * c + (2,) + z
        return (SequenceList(before + (first, second) + after),
                ((op.seq, 0), (op.seq + 1, 0)))
    if isinstance(op, TypeIV):
        if lst[op.seq] != PENTAGON:
            raise NotApplicable("type IV needs a 2,2,2,2,2 member")
        return SequenceList(before + after), ()
    raise TypeError(f"not a sequence operation: {op!r}")


def apply(lst: SequenceList, op: SeqOp) -> SequenceList:
    return apply_traced(lst, op)[0]


def _three_runs(code: tuple) -> list[tuple[int, int]]:
    """(position of a 3, edge count to the next distinct 3)."""
    n = len(code)
    threes = [i for i, v in enumerate(code) if v == 3]
    if len(threes) < 2:
        return []
    return [(t, (threes[(k + 1) % len(threes)] - t) % n) for k, t in enumerate(threes)]


def enumerate_ops(lst: SequenceList, d: int, members=None, max_l: Optional[int] = None) -> list[SeqOp]:
    """All applicable type I (length <= d), II and III operations.

    Order: type II, then III, then I by increasing length. ``members``
    optionally restricts the scan to some list indices; ``max_l`` further
    caps the type I length (0 leaves type I out).
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    top = d if max_l is None else min(d, max_l)
    lst = SequenceList(lst)
    idx = range(len(lst)) if members is None else members
    ops2: list[SeqOp] = []
    ops3: list[SeqOp] = []
    ops1: list[tuple[int, SeqOp]] = []
    for s in idx:
        code = tuple(lst[s])
        n = len(code)
        runs = _three_runs(code)
        for t, x in runs:
            if x <= 4:
                ops2.append(TypeII(s, t, x))
        pairs = [t for t, x in runs if x == 1]
        triples = [t for t, x in runs if x == 2]
        for p1 in triples:
            for p2 in pairs:
                if 3 <= (p2 - p1) % n <= n - 2:
                    ops3.append(TypeIII(s, p1, 1, p2))
        for i, p1 in enumerate(pairs):
            for p2 in pairs[i + 1:]:
                if 2 <= (p2 - p1) % n <= n - 2:
                    ops3.append(TypeIII(s, p1, 0, p2, "b"))
                    ops3.append(TypeIII(s, p1, 0, p2, "c"))
        for t in (i for i, v in enumerate(code) if v == 3):
            for l in range(1, top + 1):
                for b in range(0, l + 1, 2):
                    ops1.append((l, TypeI(s, t, l, b)))
    ops1.sort(key=lambda item: item[0])
    return ops2 + ops3 + [op for _, op in ops1]


def iv_closure_traced(lst: SequenceList) -> tuple[SequenceList, list[SeqOp]]:
    lst = SequenceList(lst)
    ops = []
    while PENTAGON in lst:
        i = lst.index(PENTAGON)
        ops.append(TypeIV(i))
        lst = SequenceList(lst[:i] + lst[i + 1:])
    return lst, ops


def iv_closure(lst: SequenceList) -> SequenceList:
    """Remove every 2,2,2,2,2 member."""
    return iv_closure_traced(lst)[0]


@dataclass(frozen=True)
class TraceStep:
    op: SeqOp
    anchors: tuple
    result: SequenceList


@dataclass
class OpTrace:
    """Applied operations, each with the list it produced."""

    initial: SequenceList
    steps: list[TraceStep] = field(default_factory=list)

    @property
    def final(self) -> SequenceList:
        return self.steps[-1].result if self.steps else self.initial

    def push(self, op: SeqOp) -> SequenceList:
        result, anchors = apply_traced(self.final, op)
        self.steps.append(TraceStep(op, anchors, result))
        return result

    def __len__(self):
        return len(self.steps)

    def __iter__(self) -> Iterator[TraceStep]:
        return iter(self.steps)

    def lines(self) -> list[str]:
        return [str(step.op) for step in self.steps]
