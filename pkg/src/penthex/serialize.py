"""Patch records, DOT text and SVG drawings.

The record is plain JSON. The drawing uses a Tutte layout: boundary
vertices are pinned to a circle and every inner vertex sits at the mean of
its neighbours, which for a 3-connected-ish patch gives a crossing-free
picture. The layout is cosmetic only.
"""

from __future__ import annotations

import json
import math
from typing import Sequence

import numpy as np

from .errors import ParseError
from .patch_graph import PlaneGraph, Patch, inner_faces, validate_patch

__all__ = [
    "RECORD_VERSION",
    "patch_to_record",
    "patch_from_record",
    "dumps_patches",
    "loads_patches",
    "to_dot",
    "tutte_layout",
    "to_svg",
]

RECORD_VERSION = 1


def patch_to_record(p: PlaneGraph) -> dict:
    return {
        "version": RECORD_VERSION,
        "vertices": p.n_vertices,
        "rotation": [list(r) for r in p.rot],
        "boundary_start": p.boundary[0],
        "boundary": list(p.boundary),
    }


def patch_from_record(rec: dict) -> Patch:
    """Rebuild and validate a patch from :func:`patch_to_record` output."""
    try:
        if rec["version"] != RECORD_VERSION:
            raise ParseError(f"unknown record version {rec['version']!r}")
        rot = tuple(tuple(int(u) for u in r) for r in rec["rotation"])
        boundary = tuple(int(v) for v in rec["boundary"])
        if len(rot) != rec["vertices"] or boundary[0] != rec["boundary_start"]:
            raise ParseError("record fields disagree")
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError(f"malformed patch record: {exc}") from None
    return validate_patch(PlaneGraph(rot, boundary))


def dumps_patches(ps: Sequence[PlaneGraph]) -> str:
    return json.dumps([patch_to_record(p) for p in ps], separators=(",", ":"))


def loads_patches(text: str) -> list[Patch]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc)) from None
    if not isinstance(data, list):
        raise ParseError("expected a list of patch records")
    return [patch_from_record(r) for r in data]


def to_dot(ps: Sequence[PlaneGraph], name: str = "patches") -> str:
    lines = [f"graph {name} {{", "  node [shape=circle, width=0.2, label=\"\"];"]
    for k, p in enumerate(ps):
        on_boundary = set(p.boundary)
        lines.append(f"  subgraph cluster_{k} {{")
        for v in range(p.n_vertices):
            style = "filled" if v in on_boundary else "solid"
            lines.append(f"    p{k}_{v} [style={style}];")
        for u, v in p.edges():
            lines.append(f"    p{k}_{u} -- p{k}_{v};")
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def tutte_layout(p: PlaneGraph) -> np.ndarray:
    """Vertex positions: boundary on the unit circle, inner vertices barycentric."""
    n = p.n_vertices
    pos = np.zeros((n, 2))
    m = len(p.boundary)
    # clockwise boundary, drawn clockwise on screen (y grows downwards)
    angles = 2 * math.pi * np.arange(m) / m
    pos[list(p.boundary)] = np.column_stack([np.cos(angles), np.sin(angles)])
    inner = [v for v in range(n) if v not in set(p.boundary)]
    if inner:
        index = {v: i for i, v in enumerate(inner)}
        lap = np.zeros((len(inner), len(inner)))
        rhs = np.zeros((len(inner), 2))
        for v in inner:
            i = index[v]
            lap[i, i] = len(p.rot[v])
            for u in p.rot[v]:
                if u in index:
                    lap[i, index[u]] -= 1
                else:
                    rhs[i] += pos[u]
        pos[inner] = np.linalg.solve(lap, rhs)
    return pos


_FILL = {5: "#f4a259", 6: "#8cb369"}


def to_svg(ps: Sequence[PlaneGraph], size: int = 240) -> str:
    """Side-by-side drawings, pentagons and hexagons shaded differently."""
    pad = 12
    width = len(ps) * (size + pad) + pad
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{size + 2 * pad}">']
    for k, p in enumerate(ps):
        ox = pad + k * (size + pad) + size / 2
        oy = pad + size / 2
        xy = tutte_layout(p) * (size / 2 - 4) + [ox, oy]

        def pt(v):
            return f"{xy[v, 0]:.2f},{xy[v, 1]:.2f}"

        for face in inner_faces(p):
            fill = _FILL.get(len(face), "#cccccc")
            out.append(f'  <polygon points="{" ".join(pt(v) for v in face)}" fill="{fill}" stroke="none"/>')
        for u, v in p.edges():
            out.append(f'  <line x1="{xy[u, 0]:.2f}" y1="{xy[u, 1]:.2f}" x2="{xy[v, 0]:.2f}" '
                       f'y2="{xy[v, 1]:.2f}" stroke="black" stroke-width="1.2"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
