"""Generalized rectangular diagrams in canonical coordinates.

A generalized rectangular diagram is a finite point set in the plane.
Vertices sharing a vertical (horizontal) line are joined by an edge spanning
their extreme points, and at every edge intersection the vertical strand
crosses over.  Diagrams related by monotone coordinate changes in x and y are
combinatorially the same; we keep each diagram in *canonical* form, replacing
coordinates by their ranks, so combinatorial equivalence is literal equality
of vertex sets.

Conventions used throughout the package:

* a vertex is a pair ``(col, row)`` of nonnegative integers;
* canonical form: every column index ``0..C-1`` and row index ``0..R-1``
  occurs in at least one vertex (the empty diagram is canonical);
* edges with a single vertex are allowed, so a lone column index is both a
  degenerate vertical edge and part of some horizontal edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InvalidInput

Vertex = tuple[int, int]

__all__ = [
    "Vertex",
    "GridDiagram",
    "Edge",
    "Crossing",
    "canonicalize",
    "edges",
    "crossings",
    "crossing_points",
    "reflect",
]


def _rank_maps(pairs: Sequence[tuple]) -> tuple[dict, dict]:
    xs = sorted({p[0] for p in pairs})
    ys = sorted({p[1] for p in pairs})
    return {x: i for i, x in enumerate(xs)}, {y: i for i, y in enumerate(ys)}


@dataclass(frozen=True)
class GridDiagram:
    """Canonical generalized rectangular diagram.

    ``vertices`` is a lexicographically sorted tuple of ``(col, row)`` pairs.
    Instances are immutable and hashable; all operations on diagrams are pure.
    """

    vertices: tuple[Vertex, ...]

    def __post_init__(self):
        vs = self.vertices
        if list(vs) != sorted(set(vs)):
            raise InvalidInput("vertices must be sorted and duplicate-free")
        if vs:
            cols = {c for c, _ in vs}
            rows = {r for _, r in vs}
            if cols != set(range(len(cols))) or rows != set(range(len(rows))):
                raise InvalidInput("diagram is not in canonical coordinates")
            if min(cols) < 0 or min(rows) < 0:
                raise InvalidInput("negative coordinates")

    # -- basic queries ----------------------------------------------------

    @property
    def n_cols(self) -> int:
        return 1 + max(c for c, _ in self.vertices) if self.vertices else 0

    @property
    def n_rows(self) -> int:
        return 1 + max(r for _, r in self.vertices) if self.vertices else 0

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __contains__(self, v: Vertex) -> bool:
        return v in set(self.vertices)

    def columns(self) -> dict[int, tuple[int, ...]]:
        """Map each occupied column to the sorted rows of its vertices."""
        out: dict[int, list[int]] = {}
        for c, r in self.vertices:
            out.setdefault(c, []).append(r)
        return {c: tuple(sorted(rs)) for c, rs in out.items()}

    def rows(self) -> dict[int, tuple[int, ...]]:
        """Map each occupied row to the sorted columns of its vertices."""
        out: dict[int, list[int]] = {}
        for c, r in self.vertices:
            out.setdefault(r, []).append(c)
        return {r: tuple(sorted(cs)) for r, cs in out.items()}


def canonicalize(raw: Iterable[tuple]) -> GridDiagram:
    """Replace coordinates of a finite point set by their ranks.

    Accepts any points with totally ordered coordinates (ints, floats,
    fractions).  Idempotent on canonical diagrams and order-preserving in
    both axes.  Duplicate points are rejected.
    """
    pts = list(raw)
    if len(pts) != len(set(pts)):
        raise InvalidInput("duplicate points")
    xmap, ymap = _rank_maps(pts)
    vs = tuple(sorted((xmap[x], ymap[y]) for x, y in pts))
    if len(vs) != len(pts):
        raise InvalidInput("points collide after coordinate comparison")
    return GridDiagram(vs)


def grid(*pts: tuple) -> GridDiagram:
    """Shorthand constructor: ``grid((0,0), (1,1))``."""
    return canonicalize(pts)


@dataclass(frozen=True)
class Edge:
    """Maximal set of vertices on one line, with its spanning segment.

    ``positions`` are the vertex coordinates along the line (rows of a
    vertical edge, columns of a horizontal one), sorted.  A singleton edge is
    allowed and has zero-length span.
    """

    orientation: str  # "vertical" | "horizontal"
    line: int
    positions: tuple[int, ...]

    @property
    def span(self) -> tuple[int, int]:
        return self.positions[0], self.positions[-1]

    def __len__(self) -> int:
        return len(self.positions)


@dataclass(frozen=True)
class Crossing:
    """Transverse intersection of a vertical and a horizontal edge.

    By convention the vertical edge is the over-strand.  The crossing point
    is interior to both spans and is not a vertex of the diagram.
    """

    point: Vertex
    vertical: Edge
    horizontal: Edge


def edges(diagram: GridDiagram) -> tuple[list[Edge], list[Edge]]:
    """All vertical and horizontal edges, by increasing line index."""
    vert = [Edge("vertical", c, rs) for c, rs in sorted(diagram.columns().items())]
    horiz = [Edge("horizontal", r, cs) for r, cs in sorted(diagram.rows().items())]
    return vert, horiz


def crossing_points(diagram: GridDiagram) -> list[Vertex]:
    """Lexicographically sorted crossing points (col, row)."""
    cols = diagram.columns()
    rows = diagram.rows()
    vset = set(diagram.vertices)
    out = []
    for c, rs in cols.items():
        lo, hi = rs[0], rs[-1]
        for r, cs in rows.items():
            if lo < r < hi and cs[0] < c < cs[-1] and (c, r) not in vset:
                out.append((c, r))
    return sorted(out)


def crossings(diagram: GridDiagram) -> list[Crossing]:
    """All crossings, sorted lexicographically by point."""
    cols = diagram.columns()
    rows = diagram.rows()
    return [
        Crossing((c, r), Edge("vertical", c, cols[c]), Edge("horizontal", r, rows[r]))
        for c, r in crossing_points(diagram)
    ]


def reflect(diagram: GridDiagram, axis: str) -> GridDiagram:
    """Reflect a canonical diagram.

    ``horizontal`` flips rows (mirror across a horizontal line),
    ``vertical`` flips columns, ``transpose`` reflects in the diagonal
    ``x = y``.  Each variant is an involution and returns a canonical
    diagram directly.
    """
    c_max = diagram.n_cols - 1
    r_max = diagram.n_rows - 1
    if axis == "horizontal":
        vs = [(c, r_max - r) for c, r in diagram.vertices]
    elif axis == "vertical":
        vs = [(c_max - c, r) for c, r in diagram.vertices]
    elif axis == "transpose":
        vs = [(r, c) for c, r in diagram.vertices]
    else:
        raise InvalidInput(f"unknown reflection axis {axis!r}")
    return GridDiagram(tuple(sorted(vs)))


# Small diagrams used in many tests and docstrings.
EMPTY = GridDiagram(())
SQUARE = GridDiagram(((0, 0), (0, 1), (1, 0), (1, 1)))
THETA = GridDiagram(((0, 0), (0, 2), (1, 0), (1, 1), (1, 2), (2, 1)))
