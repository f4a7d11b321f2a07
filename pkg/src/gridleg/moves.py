"""Elementary and compound moves of generalized rectangular diagrams.

Moves come in two families: type L moves generate the equivalence matching
Legendrian isotopy plus edge contraction, type N moves the mirror family.
Stabilizations and destabilizations at NE/SW corners, end shifts removing the
lower vertex while shifting right (or the upper while shifting left), and the
L-tagged edge breakings and flypes are of type L; the mirrored variants are of
type N.  Cyclic permutations, commutations and vertex additions/removals are
neutral and belong to both families.

Every move knows its exact formal inverse (``invert``); for an end shift the
inverse is not itself an elementary move and is represented by
:class:`EndShiftInverse`.  ``mirror`` conjugates a move by the horizontal
reflection, exchanging the L and N families.

All ``apply_move`` implementations are pure: they validate the precondition,
build the new vertex set (fresh lines are inserted at half-integer slots) and
re-canonicalize.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .core import GridDiagram, Vertex, canonicalize, reflect
from .errors import PreconditionViolated

__all__ = [
    "Move",
    "CyclicPermutation",
    "Commutation",
    "Stabilization",
    "Destabilization",
    "EndShift",
    "EndShiftInverse",
    "VertexAddition",
    "VertexRemoval",
    "EdgeBreaking",
    "EdgeJointing",
    "Flype",
    "ELEMENTARY_KINDS",
    "move_type",
    "apply_move",
    "invert_move",
    "mirror_move",
    "enumerate_moves",
    "is_applicable",
]

VERTICAL = "vertical"
HORIZONTAL = "horizontal"


def _fail(kind: str, reason: str):
    raise PreconditionViolated(kind, reason)


def cyclically_separated(a: Sequence[int], b: Sequence[int]) -> bool:
    """True if the disjoint sets ``a`` and ``b`` occupy disjoint cyclic arcs.

    Equivalent to the paper's non-interleaving condition: in the cyclic order
    all elements of one set are smaller than all of the other.
    """
    if not a or not b:
        return True
    labeled = sorted([(x, 0) for x in a] + [(x, 1) for x in b])
    blocks = 1
    for (_, s), (_, t) in zip(labeled, labeled[1:]):
        if s != t:
            blocks += 1
    if labeled[0][1] == labeled[-1][1]:
        blocks -= 1  # circular wrap joins the first and last block
    return blocks <= 2


# ---------------------------------------------------------------------------
# move dataclasses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CyclicPermutation:
    """Move the extreme edge named by ``side`` to the opposite side."""

    side: str  # top | bottom | left | right
    kind = "cyclic_permutation"


@dataclass(frozen=True)
class Commutation:
    """Swap adjacent lines ``index`` and ``index + 1``.

    ``orientation`` names the edges being swapped: a vertical commutation
    exchanges two neighboring columns whose row sets are disjoint and
    cyclically separated.
    """

    orientation: str
    index: int
    kind = "commutation"


@dataclass(frozen=True)
class Stabilization:
    """Replace ``vertex`` by the other three corners of a fresh small square.

    ``corner`` names the quadrant the square occupies relative to the vertex;
    NE and SW stabilizations are of type L, NW and SE of type N.
    """

    vertex: Vertex
    corner: str  # NE | SW | NW | SE
    kind = "stabilization"


@dataclass(frozen=True)
class Destabilization:
    """Inverse stabilization.

    ``square`` is the bottom-left vertex position of the 2x2 block of lines
    ``{c, c+1} x {r, r+1}`` carrying the pattern; ``corner`` matches the
    stabilization being undone.
    """

    square: Vertex
    corner: str
    kind = "destabilization"


@dataclass(frozen=True)
class EndShift:
    """Shift an adjacent vertex pair of an edge onto a fresh parallel line.

    The pair sits on line ``line`` at positions ``lo < hi`` (consecutive on
    that line).  Copies of both are added on a fresh line on the ``pos``
    (right of a vertical edge, above a horizontal one) or ``neg`` side, and
    one original is removed: ``remove_hi`` selects which.  Type L is
    (pos, remove lo) or (neg, remove hi); the other two combinations are the
    type N end shifts.
    """

    orientation: str
    line: int
    lo: int
    hi: int
    side: str  # pos | neg
    remove_hi: bool
    kind = "end_shift"


@dataclass(frozen=True)
class EndShiftInverse:
    """Formal inverse of an end shift.

    ``pair_line`` is the 2-vertex line created by the forward move, holding
    exactly positions ``lo`` and ``hi``; the source line sits on the opposite
    side of the insertion direction.  Applying removes the pair line and
    restores the deleted vertex on the source line.
    """

    orientation: str
    pair_line: int
    lo: int
    hi: int
    side: str  # side the forward shift used; pos means source is at pair_line - 1
    restore_hi: bool
    kind = "end_shift_inverse"


@dataclass(frozen=True)
class VertexAddition:
    """Add a vertex on occupied line ``line`` in a fresh perpendicular slot.

    ``orientation`` is that of the anchor line (``vertical`` adds onto a
    column, in a fresh row inserted at ``slot``; integer slot ``k`` means
    between lines ``k - 1`` and ``k``).
    """

    orientation: str
    line: int
    slot: int
    kind = "vertex_addition"


@dataclass(frozen=True)
class VertexRemoval:
    """Exact inverse of a vertex addition: remove ``vertex``.

    Applicable when the vertex is alone on one of its lines while the other
    line keeps at least one more vertex.
    """

    vertex: Vertex
    kind = "vertex_removal"


@dataclass(frozen=True)
class EdgeBreaking:
    """Split an edge into two neighboring commuting edges plus a short edge.

    The edge on ``line`` is partitioned into ``part1`` and ``part2`` (both
    nonempty, cyclically separated).  For a horizontal edge ``part1`` lands on
    the lower of two fresh adjacent rows replacing the line and ``part2`` on
    the upper; for a vertical edge they land left / right.  The fresh
    perpendicular short edge is inserted at ``short_slot`` which must lie in
    the cyclic gap after ``part2`` and before ``part1`` for type L (the
    mirrored gap for type N).
    """

    orientation: str
    line: int
    part1: tuple[int, ...]
    part2: tuple[int, ...]
    short_slot: int
    variant: str  # L | N
    kind = "edge_breaking"


@dataclass(frozen=True)
class EdgeJointing:
    """Inverse edge breaking, identified by its short edge.

    ``short_line`` is the 2-vertex line perpendicular to the joined edges
    (a column when joining two rows).  The two lines it meets must be
    adjacent and their remaining vertex sets a valid breaking configuration.
    """

    orientation: str  # orientation of the edges being joined
    short_line: int
    kind = "edge_jointing"


@dataclass(frozen=True)
class Flype:
    """Rectangular relocation move governed by four frame regions.

    ``x_cuts`` and ``y_cuts`` are slot triples (integer slot ``k`` = between
    lines ``k-1`` and ``k``) with x0 < x1 < x2 and y0 < y1 < y2, bounding the
    open regions r00, r01, r10, r11.  A type L forward flype requires r11
    empty, r01 and r10 strictly staircase-monotone, and partners v01 (same
    column, in r01) and v10 (same row, in r10) for every r00 vertex; each
    such vertex moves to the fourth corner of its partner rectangle.  The
    inverse direction moves r11 back into r00; type N is the conjugate by a
    horizontal reflection.
    """

    x_cuts: tuple[int, int, int]
    y_cuts: tuple[int, int, int]
    variant: str  # L | N
    direction: str  # fwd | inv
    kind = "flype"


Move = Union[
    CyclicPermutation,
    Commutation,
    Stabilization,
    Destabilization,
    EndShift,
    EndShiftInverse,
    VertexAddition,
    VertexRemoval,
    EdgeBreaking,
    EdgeJointing,
    Flype,
]

ELEMENTARY_KINDS = (
    "cyclic_permutation",
    "commutation",
    "stabilization",
    "destabilization",
    "end_shift",
    "vertex_addition",
    "vertex_removal",
)


def move_type(m: Move) -> str:
    """Type of a move: ``"L"``, ``"N"`` or ``"neutral"``."""
    k = m.kind
    if k in ("cyclic_permutation", "commutation", "vertex_addition", "vertex_removal"):
        return "neutral"
    if k in ("stabilization", "destabilization"):
        return "L" if m.corner in ("NE", "SW") else "N"
    if k == "end_shift":
        pos = m.side == "pos"
        return "L" if pos != m.remove_hi else "N"
    if k == "end_shift_inverse":
        pos = m.side == "pos"
        return "L" if pos != m.restore_hi else "N"
    if k in ("edge_breaking", "flype"):
        return m.variant
    if k == "edge_jointing":
        return "L"  # refined by context; see jointing_variant
    raise ValueError(f"unknown move kind {k}")


def _type_matches(t: str, want: str) -> bool:
    return want == "all" or t == "neutral" or t == want


# ---------------------------------------------------------------------------
# application
# ---------------------------------------------------------------------------


def _scaled(diagram: GridDiagram) -> list[tuple[int, int]]:
    # Scale by 4 so fresh lines fit at slot positions 4k - 2 (and 4k - 3 /
    # 4k - 1 for double inserts) without collisions.
    return [(4 * c, 4 * r) for c, r in diagram.vertices]


def _apply_cyclic(diagram: GridDiagram, m: CyclicPermutation) -> GridDiagram:
    if not diagram.vertices:
        _fail(m.kind, "empty diagram has no extreme edge")
    c_last = diagram.n_cols - 1
    r_last = diagram.n_rows - 1
    maps = {
        "left": lambda c, r: (c_last + 1 if c == 0 else c, r),
        "right": lambda c, r: (-1 if c == c_last else c, r),
        "bottom": lambda c, r: (c, r_last + 1 if r == 0 else r),
        "top": lambda c, r: (c, -1 if r == r_last else r),
    }
    if m.side not in maps:
        _fail(m.kind, f"unknown side {m.side!r}")
    f = maps[m.side]
    return canonicalize([f(c, r) for c, r in diagram.vertices])


def _apply_commutation(diagram: GridDiagram, m: Commutation) -> GridDiagram:
    lines = diagram.columns() if m.orientation == VERTICAL else diagram.rows()
    i = m.index
    if i < 0 or i + 1 not in lines or i not in lines:
        _fail(m.kind, f"lines {i}, {i + 1} not both present")
    a, b = lines[i], lines[i + 1]
    if set(a) & set(b):
        _fail(m.kind, "edges share a coordinate")
    if not cyclically_separated(a, b):
        _fail(m.kind, "edges interleave")

    def swap(x: int) -> int:
        return i + 1 if x == i else i if x == i + 1 else x

    if m.orientation == VERTICAL:
        vs = [(swap(c), r) for c, r in diagram.vertices]
    else:
        vs = [(c, swap(r)) for c, r in diagram.vertices]
    return GridDiagram(tuple(sorted(vs)))


_CORNERS = ("NE", "SW", "NW", "SE")


def _apply_stabilization(diagram: GridDiagram, m: Stabilization) -> GridDiagram:
    if m.vertex not in set(diagram.vertices):
        _fail(m.kind, f"{m.vertex} is not a vertex")
    if m.corner not in _CORNERS:
        _fail(m.kind, f"unknown corner {m.corner!r}")
    c, r = m.vertex
    fc = 4 * c + (2 if "E" in m.corner else -2)
    fr = 4 * r + (2 if "N" in m.corner else -2)
    pts = [(x, y) for x, y in _scaled(diagram) if (x, y) != (4 * c, 4 * r)]
    pts += [(4 * c, fr), (fc, 4 * r), (fc, fr)]
    return canonicalize(pts)


# For each destabilization corner: offsets (within the 2x2 square, bottom-left
# (c, r)) of the three present corners, the absent/restored corner, and which
# square lines must be short edges (exactly the square's two vertices).
_DESTAB = {
    "NE": (((0, 1), (1, 0), (1, 1)), (0, 0), (1,), (1,)),
    "SW": (((0, 0), (0, 1), (1, 0)), (1, 1), (0,), (0,)),
    "NW": (((0, 0), (0, 1), (1, 1)), (1, 0), (0,), (1,)),
    "SE": (((0, 0), (1, 0), (1, 1)), (0, 1), (1,), (0,)),
}


def _apply_destabilization(diagram: GridDiagram, m: Destabilization) -> GridDiagram:
    if m.corner not in _DESTAB:
        _fail(m.kind, f"unknown corner {m.corner!r}")
    c, r = m.square
    present, absent, (sc,), (sr,) = _DESTAB[m.corner]
    vset = set(diagram.vertices)
    kept = [(c + dc, r + dr) for dc, dr in present]
    if any(v not in vset for v in kept):
        _fail(m.kind, "square pattern vertices missing")
    restored = (c + absent[0], r + absent[1])
    if restored in vset:
        _fail(m.kind, "fourth corner already occupied")
    cols = diagram.columns()
    rows = diagram.rows()
    if cols.get(c + sc) != (r, r + 1):
        _fail(m.kind, f"column {c + sc} is not the short edge")
    if rows.get(r + sr) != (c, c + 1):
        _fail(m.kind, f"row {r + sr} is not the short edge")
    pts = [v for v in diagram.vertices if v not in set(kept)]
    pts.append(restored)
    return canonicalize(pts)


def _pair_on_line(lines: dict, line: int, lo: int, hi: int, kind: str):
    if line not in lines:
        _fail(kind, f"line {line} not occupied")
    ps = lines[line]
    if lo not in ps or hi not in ps:
        _fail(kind, "pair positions not on the line")
    if not lo < hi:
        _fail(kind, "pair positions must satisfy lo < hi")
    if any(lo < p < hi for p in ps):
        _fail(kind, "pair is not adjacent on its edge")


def _apply_end_shift(diagram: GridDiagram, m: EndShift) -> GridDiagram:
    vertical = m.orientation == VERTICAL
    lines = diagram.columns() if vertical else diagram.rows()
    _pair_on_line(lines, m.line, m.lo, m.hi, m.kind)
    if m.side not in ("pos", "neg"):
        _fail(m.kind, f"unknown side {m.side!r}")
    fresh = 4 * m.line + (2 if m.side == "pos" else -2)
    removed_pos = m.hi if m.remove_hi else m.lo
    rm = (4 * m.line, 4 * removed_pos) if vertical else (4 * removed_pos, 4 * m.line)
    pts = [p for p in _scaled(diagram) if p != rm]
    if vertical:
        pts += [(fresh, 4 * m.lo), (fresh, 4 * m.hi)]
    else:
        pts += [(4 * m.lo, fresh), (4 * m.hi, fresh)]
    return canonicalize(pts)


def _apply_end_shift_inverse(diagram: GridDiagram, m: EndShiftInverse) -> GridDiagram:
    vertical = m.orientation == VERTICAL
    lines = diagram.columns() if vertical else diagram.rows()
    if lines.get(m.pair_line) != (m.lo, m.hi):
        _fail(m.kind, f"line {m.pair_line} does not hold exactly the pair")
    src = m.pair_line + (-1 if m.side == "pos" else 1)
    if src not in lines:
        _fail(m.kind, "source line missing")
    restored_pos = m.hi if m.restore_hi else m.lo
    kept_pos = m.lo if m.restore_hi else m.hi
    sp = lines[src]
    if kept_pos not in sp:
        _fail(m.kind, "source line lost the kept vertex")
    if restored_pos in sp:
        _fail(m.kind, "restored position already occupied on source line")
    if any(m.lo < p < m.hi for p in sp):
        _fail(m.kind, "source line has vertices between the pair positions")
    if vertical:
        drop = {(m.pair_line, m.lo), (m.pair_line, m.hi)}
        add = (src, restored_pos)
    else:
        drop = {(m.lo, m.pair_line), (m.hi, m.pair_line)}
        add = (restored_pos, src)
    pts = [v for v in diagram.vertices if v not in drop]
    pts.append(add)
    return canonicalize(pts)


def _apply_vertex_addition(diagram: GridDiagram, m: VertexAddition) -> GridDiagram:
    vertical = m.orientation == VERTICAL
    lines = diagram.columns() if vertical else diagram.rows()
    if m.line not in lines:
        _fail(m.kind, f"line {m.line} not occupied")
    extent = diagram.n_rows if vertical else diagram.n_cols
    if not 0 <= m.slot <= extent:
        _fail(m.kind, f"slot {m.slot} out of range")
    pts = _scaled(diagram)
    f = 4 * m.slot - 2
    pts.append((4 * m.line, f) if vertical else (f, 4 * m.line))
    return canonicalize(pts)


def _removal_flavor(diagram: GridDiagram, v: Vertex) -> str:
    """Which vertex-addition a removal of ``v`` undoes; raises otherwise."""
    if v not in set(diagram.vertices):
        _fail("vertex_removal", f"{v} is not a vertex")
    c, r = v
    col = diagram.columns()[c]
    row = diagram.rows()[r]
    if row == (c,) and len(col) >= 2:
        return VERTICAL  # alone on its row: undoes an addition onto column c
    if col == (r,) and len(row) >= 2:
        return HORIZONTAL
    _fail("vertex_removal", f"{v} is not removable")


def _apply_vertex_removal(diagram: GridDiagram, m: VertexRemoval) -> GridDiagram:
    _removal_flavor(diagram, m.vertex)
    return canonicalize([v for v in diagram.vertices if v != m.vertex])


def _gap_ok(part1, part2, pos: float, variant: str) -> bool:
    """Is a perpendicular line at ``pos`` in the admissible cyclic gap?

    For type L the short edge must sit cyclically after the part2 arc and
    before the part1 arc; type N mirrors the roles.  ``pos`` is a real
    position on the line axis (``slot - 1/2`` for a fresh insertion).
    """
    a, b = (part1, part2) if variant == "L" else (part2, part1)
    if max(b) < min(a):
        return max(b) < pos < min(a)
    if max(a) < min(b):
        return pos > max(b) or pos < min(a)
    return False


def _apply_edge_breaking(diagram: GridDiagram, m: EdgeBreaking) -> GridDiagram:
    vertical = m.orientation == VERTICAL
    lines = diagram.columns() if vertical else diagram.rows()
    if m.line not in lines:
        _fail(m.kind, f"line {m.line} not occupied")
    p1, p2 = tuple(sorted(m.part1)), tuple(sorted(m.part2))
    if not p1 or not p2:
        _fail(m.kind, "both parts must be nonempty")
    if set(p1) & set(p2) or tuple(sorted(p1 + p2)) != lines[m.line]:
        _fail(m.kind, "parts must partition the edge's vertices")
    if not cyclically_separated(p1, p2):
        _fail(m.kind, "parts interleave")
    if m.variant not in ("L", "N"):
        _fail(m.kind, f"unknown variant {m.variant!r}")
    perp_extent = diagram.n_rows if vertical else diagram.n_cols
    if not 0 <= m.short_slot <= perp_extent:
        _fail(m.kind, f"short slot {m.short_slot} out of range")
    if not _gap_ok(p1, p2, m.short_slot - 0.5, m.variant):
        _fail(m.kind, "short edge not in the admissible cyclic gap")
    line4 = 4 * m.line
    lo4, hi4 = line4 - 1, line4 + 1
    s4 = 4 * m.short_slot - 2
    if vertical:
        # part1 to the left fresh column, part2 to the right
        pts = [p for p in _scaled(diagram) if p[0] != line4]
        pts += [(lo4, 4 * q) for q in p1]
        pts += [(hi4, 4 * q) for q in p2]
        pts += [(lo4, s4), (hi4, s4)]
    else:
        pts = [p for p in _scaled(diagram) if p[1] != line4]
        pts += [(4 * q, lo4) for q in p1]
        pts += [(4 * q, hi4) for q in p2]
        pts += [(s4, lo4), (s4, hi4)]
    return canonicalize(pts)


def _jointing_config(diagram: GridDiagram, m: EdgeJointing):
    """Validate a jointing and return (lower_line, upper_line, part1, part2, variant)."""
    vertical = m.orientation == VERTICAL  # orientation of the edges being joined
    perp = diagram.rows() if vertical else diagram.columns()
    lines = diagram.columns() if vertical else diagram.rows()
    if m.short_line not in perp:
        _fail(m.kind, "short line not occupied")
    short = perp[m.short_line]
    if len(short) != 2:
        _fail(m.kind, "short edge must have exactly two vertices")
    a, b = short
    if b != a + 1:
        _fail(m.kind, "joined lines must be adjacent")
    p1 = tuple(q for q in lines[a] if q != m.short_line)
    p2 = tuple(q for q in lines[b] if q != m.short_line)
    if m.short_line not in lines[a] or m.short_line not in lines[b]:
        _fail(m.kind, "short edge does not meet both lines")
    if not p1 or not p2:
        _fail(m.kind, "joined edges must keep at least one vertex each")
    if set(p1) & set(p2):
        _fail(m.kind, "joined edges share a coordinate")
    if not cyclically_separated(p1, p2):
        _fail(m.kind, "joined edges interleave")
    if _gap_ok(p1, p2, m.short_line, "L"):
        variant = "L"
    elif _gap_ok(p1, p2, m.short_line, "N"):
        variant = "N"
    else:
        _fail(m.kind, "short edge not in an admissible cyclic gap")
    return a, b, p1, p2, variant


def jointing_variant(diagram: GridDiagram, m: EdgeJointing) -> str:
    """L/N type of a jointing move in its context."""
    return _jointing_config(diagram, m)[4]


def _apply_edge_jointing(diagram: GridDiagram, m: EdgeJointing) -> GridDiagram:
    vertical = m.orientation == VERTICAL
    a, b, p1, p2, _ = _jointing_config(diagram, m)
    out = []
    for c, r in diagram.vertices:
        perp_c, line_c = (r, c) if vertical else (c, r)
        if perp_c == m.short_line and line_c in (a, b):
            continue
        if line_c == b:
            line_c = a
        out.append((line_c, perp_c) if vertical else (perp_c, line_c))
    return canonicalize(out)


def _flype_regions(diagram: GridDiagram, m: Flype):
    x0, x1, x2 = (s - 0.5 for s in m.x_cuts)
    y0, y1, y2 = (s - 0.5 for s in m.y_cuts)
    reg = {"00": [], "01": [], "10": [], "11": []}
    for c, r in diagram.vertices:
        if x0 < c < x2 and y0 < r < y2:
            key = ("1" if c > x1 else "0") + ("1" if r > y1 else "0")
            reg[key].append((c, r))
    return reg


def _staircase(vs: list[Vertex], kind: str, which: str):
    vs = sorted(vs)
    for (c1, r1), (c2, r2) in zip(vs, vs[1:]):
        if c1 == c2 or r2 <= r1:
            _fail(kind, f"region {which} is not strictly staircase-monotone")


def _apply_flype(diagram: GridDiagram, m: Flype) -> GridDiagram:
    if m.variant == "N":
        conj = mirror_move(m, diagram)
        return reflect(_apply_flype(reflect(diagram, "horizontal"), conj), "horizontal")
    if m.variant != "L":
        _fail(m.kind, f"unknown variant {m.variant!r}")
    if m.direction not in ("fwd", "inv"):
        _fail(m.kind, f"unknown direction {m.direction!r}")
    if not (m.x_cuts[0] < m.x_cuts[1] < m.x_cuts[2]) or not (m.y_cuts[0] < m.y_cuts[1] < m.y_cuts[2]):
        _fail(m.kind, "cuts must be strictly increasing")
    reg = _flype_regions(diagram, m)
    _staircase(reg["01"], m.kind, "r01")
    _staircase(reg["10"], m.kind, "r10")
    if m.direction == "fwd":
        if reg["11"]:
            _fail(m.kind, "region r11 must be empty")
        moving, col_partners, row_partners = reg["00"], reg["01"], reg["10"]
    else:
        if reg["00"]:
            _fail(m.kind, "region r00 must be empty")
        moving, col_partners, row_partners = reg["11"], reg["10"], reg["01"]
    by_col = {c: r for c, r in col_partners}
    by_row = {r: c for c, r in row_partners}
    mapping = {}
    for c, r in moving:
        if c not in by_col:
            _fail(m.kind, f"vertex ({c}, {r}) lacks a same-column partner")
        if r not in by_row:
            _fail(m.kind, f"vertex ({c}, {r}) lacks a same-row partner")
        mapping[(c, r)] = (by_row[r], by_col[c])
    targets = list(mapping.values())
    if len(set(targets)) != len(targets):
        _fail(m.kind, "flype images collide")
    pts = [mapping.get(v, v) for v in diagram.vertices]
    if len(set(pts)) != len(pts):
        _fail(m.kind, "flype image collides with a fixed vertex")
    return GridDiagram(tuple(sorted(pts)))


_APPLY = {
    "cyclic_permutation": _apply_cyclic,
    "commutation": _apply_commutation,
    "stabilization": _apply_stabilization,
    "destabilization": _apply_destabilization,
    "end_shift": _apply_end_shift,
    "end_shift_inverse": _apply_end_shift_inverse,
    "vertex_addition": _apply_vertex_addition,
    "vertex_removal": _apply_vertex_removal,
    "edge_breaking": _apply_edge_breaking,
    "edge_jointing": _apply_edge_jointing,
    "flype": _apply_flype,
}


def apply_move(diagram: GridDiagram, m: Move) -> GridDiagram:
    """Apply ``m`` to a canonical diagram, checking its precondition."""
    return _APPLY[m.kind](diagram, m)


def is_applicable(diagram: GridDiagram, m: Move) -> bool:
    try:
        apply_move(diagram, m)
        return True
    except PreconditionViolated:
        return False


# ---------------------------------------------------------------------------
# formal inverses
# ---------------------------------------------------------------------------

_OPPOSITE_SIDE = {"left": "right", "right": "left", "top": "bottom", "bottom": "top"}


def invert_move(m: Move, diagram: GridDiagram) -> Move:
    """Formal inverse of ``m``, valid on ``apply_move(diagram, m)``.

    Satisfies ``apply_move(apply_move(D, m), invert_move(m, D)) == D`` exactly.
    """
    k = m.kind
    if k == "cyclic_permutation":
        return CyclicPermutation(_OPPOSITE_SIDE[m.side])
    if k == "commutation":
        return m
    if k == "stabilization":
        apply_move(diagram, m)  # validate context
        return Destabilization(m.vertex, m.corner)
    if k == "destabilization":
        apply_move(diagram, m)
        return Stabilization(m.square, m.corner)
    if k == "end_shift":
        apply_move(diagram, m)
        pair_line = m.line + 1 if m.side == "pos" else m.line
        return EndShiftInverse(m.orientation, pair_line, m.lo, m.hi, m.side, m.remove_hi)
    if k == "end_shift_inverse":
        apply_move(diagram, m)
        src = m.pair_line - 1 if m.side == "pos" else m.pair_line
        return EndShift(m.orientation, src, m.lo, m.hi, m.side, m.restore_hi)
    if k == "vertex_addition":
        apply_move(diagram, m)
        if m.orientation == VERTICAL:
            return VertexRemoval((m.line, m.slot))
        return VertexRemoval((m.slot, m.line))
    if k == "vertex_removal":
        flavor = _removal_flavor(diagram, m.vertex)
        c, r = m.vertex
        if flavor == VERTICAL:
            return VertexAddition(VERTICAL, c, r)
        return VertexAddition(HORIZONTAL, r, c)
    if k == "edge_breaking":
        apply_move(diagram, m)
        return EdgeJointing(m.orientation, m.short_slot)
    if k == "edge_jointing":
        a, b, p1, p2, variant = _jointing_config(diagram, m)
        s = m.short_line
        shift = lambda q: q - 1 if q > s else q
        return EdgeBreaking(
            m.orientation,
            a,
            tuple(shift(q) for q in p1),
            tuple(shift(q) for q in p2),
            s,
            variant,
        )
    if k == "flype":
        apply_move(diagram, m)
        return Flype(m.x_cuts, m.y_cuts, m.variant, "inv" if m.direction == "fwd" else "fwd")
    raise ValueError(f"unknown move kind {k}")


# ---------------------------------------------------------------------------
# mirror conjugation by the horizontal reflection
# ---------------------------------------------------------------------------


def mirror_move(m: Move, diagram: GridDiagram) -> Move:
    """Conjugate of ``m`` under the horizontal reflection of ``diagram``.

    Satisfies ``apply(mirror(m), reflect_h(D)) == reflect_h(apply(D, m))``;
    type L moves become type N and vice versa, neutral moves stay neutral.
    """
    n_rows = diagram.n_rows
    flip = lambda r: n_rows - 1 - r
    flip_slot = lambda s: n_rows - s
    k = m.kind
    if k == "cyclic_permutation":
        side = {"top": "bottom", "bottom": "top"}.get(m.side, m.side)
        return CyclicPermutation(side)
    if k == "commutation":
        if m.orientation == VERTICAL:
            return m
        return Commutation(HORIZONTAL, n_rows - 2 - m.index)
    if k == "stabilization":
        corner = m.corner.translate(str.maketrans("NS", "SN"))
        return Stabilization((m.vertex[0], flip(m.vertex[1])), corner)
    if k == "destabilization":
        corner = m.corner.translate(str.maketrans("NS", "SN"))
        return Destabilization((m.square[0], n_rows - 2 - m.square[1]), corner)
    if k == "end_shift":
        if m.orientation == VERTICAL:
            return EndShift(VERTICAL, m.line, flip(m.hi), flip(m.lo), m.side, not m.remove_hi)
        side = "neg" if m.side == "pos" else "pos"
        return EndShift(HORIZONTAL, flip(m.line), m.lo, m.hi, side, m.remove_hi)
    if k == "end_shift_inverse":
        if m.orientation == VERTICAL:
            return EndShiftInverse(VERTICAL, m.pair_line, flip(m.hi), flip(m.lo), m.side, not m.restore_hi)
        side = "neg" if m.side == "pos" else "pos"
        return EndShiftInverse(HORIZONTAL, flip(m.pair_line), m.lo, m.hi, side, m.restore_hi)
    if k == "vertex_addition":
        if m.orientation == VERTICAL:
            return VertexAddition(VERTICAL, m.line, flip_slot(m.slot))
        return VertexAddition(HORIZONTAL, flip(m.line), m.slot)
    if k == "vertex_removal":
        return VertexRemoval((m.vertex[0], flip(m.vertex[1])))
    if k == "edge_breaking":
        variant = "N" if m.variant == "L" else "L"
        if m.orientation == VERTICAL:
            return EdgeBreaking(VERTICAL, m.line, tuple(sorted(flip(q) for q in m.part1)),
                                tuple(sorted(flip(q) for q in m.part2)), flip_slot(m.short_slot), variant)
        return EdgeBreaking(HORIZONTAL, flip(m.line), m.part2, m.part1, m.short_slot, variant)
    if k == "edge_jointing":
        if m.orientation == VERTICAL:
            return EdgeJointing(VERTICAL, flip(m.short_line))
        return m
    if k == "flype":
        y0, y1, y2 = m.y_cuts
        cuts = (flip_slot(y2), flip_slot(y1), flip_slot(y0))
        variant = "N" if m.variant == "L" else "L"
        return Flype(m.x_cuts, cuts, variant, m.direction)
    raise ValueError(f"unknown move kind {k}")


_T_SIDE = {"left": "bottom", "bottom": "left", "right": "top", "top": "right"}
_T_CORNER = {"NE": "NE", "SW": "SW", "NW": "SE", "SE": "NW"}


def _transpose_move(m: Move) -> Move:
    """Conjugate of ``m`` under reflection in the diagonal x = y.

    Type-preserving: L moves stay L.  Satisfies
    ``apply(transpose(m), reflect_t(D)) == reflect_t(apply(D, m))``.
    """
    swap = lambda o: HORIZONTAL if o == VERTICAL else VERTICAL
    k = m.kind
    if k == "cyclic_permutation":
        return CyclicPermutation(_T_SIDE[m.side])
    if k == "commutation":
        return Commutation(swap(m.orientation), m.index)
    if k == "stabilization":
        return Stabilization((m.vertex[1], m.vertex[0]), _T_CORNER[m.corner])
    if k == "destabilization":
        return Destabilization((m.square[1], m.square[0]), _T_CORNER[m.corner])
    if k == "end_shift":
        return EndShift(swap(m.orientation), m.line, m.lo, m.hi, m.side, m.remove_hi)
    if k == "end_shift_inverse":
        return EndShiftInverse(swap(m.orientation), m.pair_line, m.lo, m.hi, m.side, m.restore_hi)
    if k == "vertex_addition":
        return VertexAddition(swap(m.orientation), m.line, m.slot)
    if k == "vertex_removal":
        return VertexRemoval((m.vertex[1], m.vertex[0]))
    if k == "edge_breaking":
        return EdgeBreaking(swap(m.orientation), m.line, m.part1, m.part2, m.short_slot, m.variant)
    if k == "edge_jointing":
        return EdgeJointing(swap(m.orientation), m.short_line)
    if k == "flype":
        if m.variant == "N":
            # the N-flype's defining reflection does not commute with the
            # diagonal flip; conjugating it flips the direction
            direction = "inv" if m.direction == "fwd" else "fwd"
            return Flype(m.y_cuts, m.x_cuts, "N", direction)
        return Flype(m.y_cuts, m.x_cuts, m.variant, m.direction)
    raise ValueError(f"unknown move kind {k}")


def conjugate_move(m: Move, diagram: GridDiagram, axis: str) -> Move:
    """Conjugate ``m`` by a reflection of ``diagram``.

    ``axis`` is ``horizontal`` (row flip, exchanges L and N), ``transpose``
    (diagonal flip, type-preserving) or ``vertical`` (column flip, exchanges
    L and N, realized as transpose . horizontal . transpose).
    """
    if axis == "horizontal":
        return mirror_move(m, diagram)
    if axis == "transpose":
        return _transpose_move(m)
    if axis == "vertical":
        d1 = reflect(diagram, "transpose")
        m1 = mirror_move(_transpose_move(m), d1)
        return _transpose_move(m1)
    raise ValueError(f"unknown axis {axis!r}")


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def _enum_cyclic(diagram: GridDiagram):
    if diagram.vertices:
        for side in ("bottom", "left", "right", "top"):
            yield CyclicPermutation(side)


def _enum_commutations(diagram: GridDiagram):
    for orientation, lines in ((HORIZONTAL, diagram.rows()), (VERTICAL, diagram.columns())):
        n = len(lines)
        for i in range(n - 1):
            a, b = lines[i], lines[i + 1]
            if not (set(a) & set(b)) and cyclically_separated(a, b):
                yield Commutation(orientation, i)


def _enum_stabilizations(diagram: GridDiagram, want: str):
    corners = {"L": ("NE", "SW"), "N": ("NW", "SE"), "all": _CORNERS}[want]
    for v in diagram.vertices:
        for corner in sorted(corners):
            yield Stabilization(v, corner)


def _enum_destabilizations(diagram: GridDiagram, want: str):
    corners = {"L": ("NE", "SW"), "N": ("NW", "SE"), "all": _CORNERS}[want]
    cols = diagram.columns()
    rows = diagram.rows()
    vset = set(diagram.vertices)
    for c in range(diagram.n_cols - 1):
        for r in range(diagram.n_rows - 1):
            for corner in sorted(corners):
                present, absent, (sc,), (sr,) = _DESTAB[corner]
                if (c + absent[0], r + absent[1]) in vset:
                    continue
                if any((c + dc, r + dr) not in vset for dc, dr in present):
                    continue
                if cols.get(c + sc) != (r, r + 1) or rows.get(r + sr) != (c, c + 1):
                    continue
                yield Destabilization((c, r), corner)


def _enum_end_shifts(diagram: GridDiagram, want: str):
    for orientation, lines in ((HORIZONTAL, diagram.rows()), (VERTICAL, diagram.columns())):
        for line in sorted(lines):
            ps = lines[line]
            for lo, hi in zip(ps, ps[1:]):
                for side, remove_hi in (("neg", False), ("neg", True), ("pos", False), ("pos", True)):
                    m = EndShift(orientation, line, lo, hi, side, remove_hi)
                    if _type_matches(move_type(m), want):
                        yield m


def _enum_vertex_additions(diagram: GridDiagram):
    for c in range(diagram.n_cols):
        for slot in range(diagram.n_rows + 1):
            yield VertexAddition(VERTICAL, c, slot)
    for r in range(diagram.n_rows):
        for slot in range(diagram.n_cols + 1):
            yield VertexAddition(HORIZONTAL, r, slot)


def _enum_vertex_removals(diagram: GridDiagram):
    cols = diagram.columns()
    rows = diagram.rows()
    for v in diagram.vertices:
        c, r = v
        if (rows[r] == (c,) and len(cols[c]) >= 2) or (cols[c] == (r,) and len(rows[r]) >= 2):
            yield VertexRemoval(v)


def _enum_edge_breakings(diagram: GridDiagram, want: str):
    variants = {"L": ("L",), "N": ("N",), "all": ("L", "N")}[want]
    for orientation, lines in ((HORIZONTAL, diagram.rows()), (VERTICAL, diagram.columns())):
        perp_extent = diagram.n_cols if orientation == HORIZONTAL else diagram.n_rows
        for line in sorted(lines):
            ps = lines[line]
            m = len(ps)
            if m < 2:
                continue
            seen = set()
            for i in range(m):
                for j in range(i + 1, m + 1):
                    if 0 < j - i < m:
                        arc = ps[i:j]
                        rest = ps[:i] + ps[j:]
                        for p1, p2 in ((arc, rest), (rest, arc)):
                            if (p1, p2) in seen:
                                continue
                            seen.add((p1, p2))
                            for variant in variants:
                                for slot in range(perp_extent + 1):
                                    if _gap_ok(p1, p2, slot - 0.5, variant):
                                        yield EdgeBreaking(orientation, line, p1, p2, slot, variant)


def _enum_edge_jointings(diagram: GridDiagram, want: str):
    for orientation in (HORIZONTAL, VERTICAL):
        perp = diagram.columns() if orientation == HORIZONTAL else diagram.rows()
        for line in sorted(perp):
            m = EdgeJointing(orientation, line)
            try:
                variant = jointing_variant(diagram, m)
            except PreconditionViolated:
                continue
            if _type_matches(variant, want):
                yield m


def _enum_flypes(diagram: GridDiagram, want: str):
    from itertools import combinations

    variants = {"L": ("L",), "N": ("N",), "all": ("L", "N")}[want]
    ncols, nrows = diagram.n_cols, diagram.n_rows
    for xc in combinations(range(ncols + 1), 3):
        for yc in combinations(range(nrows + 1), 3):
            for variant in variants:
                for direction in ("fwd", "inv"):
                    m = Flype(xc, yc, variant, direction)
                    if is_applicable(diagram, m):
                        yield m


def enumerate_moves(
    diagram: GridDiagram,
    kinds: Iterable[str] | None = None,
    type_filter: str = "all",
) -> list[Move]:
    """All applicable moves of the requested kinds, in deterministic order.

    ``type_filter`` is ``"L"``, ``"N"`` or ``"all"``; neutral moves pass every
    filter.  Moves are ordered by kind name then by parameters.  Every
    returned move satisfies its own precondition.
    """
    wanted = tuple(kinds) if kinds is not None else (ELEMENTARY_KINDS + ("edge_breaking", "edge_jointing", "flype"))
    gens = {
        "cyclic_permutation": lambda: _enum_cyclic(diagram),
        "commutation": lambda: _enum_commutations(diagram),
        "destabilization": lambda: _enum_destabilizations(diagram, type_filter),
        "edge_breaking": lambda: _enum_edge_breakings(diagram, type_filter),
        "edge_jointing": lambda: _enum_edge_jointings(diagram, type_filter),
        "end_shift": lambda: _enum_end_shifts(diagram, type_filter),
        "flype": lambda: _enum_flypes(diagram, type_filter),
        "stabilization": lambda: _enum_stabilizations(diagram, type_filter),
        "vertex_addition": lambda: _enum_vertex_additions(diagram),
        "vertex_removal": lambda: _enum_vertex_removals(diagram),
    }
    out: list[Move] = []
    for kind in sorted(set(wanted)):
        if kind not in gens:
            raise ValueError(f"unknown move kind {kind!r}")
        ms = list(gens[kind]())
        ms.sort(key=_param_key)
        out.extend(ms)
    return out


def _param_key(m: Move):
    vals = []
    for f in m.__dataclass_fields__:
        v = getattr(m, f)
        vals.append(v if isinstance(v, tuple) else (v,))
    return tuple(vals)
