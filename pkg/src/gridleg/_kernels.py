"""Successor-state generation kernels for the move-graph search.

Breadth-first exploration of the move graph spends essentially all of its
time generating canonical successor diagrams.  The hot kernel here is
compiled with numba ``@njit``; a pure-Python path with identical semantics is
selected when numba is unavailable or when the environment variable
``GRIDLEG_BACKEND=python`` is set.  Both backends return the same sorted,
duplicate-free successor array for a state (this is asserted by the test
suite and exercised by ``benchmarks/bench_backends.py``).

States are encoded as flat ``int64`` arrays ``[c0, r0, c1, r1, ...]`` in
canonical lexicographic order.  Move kinds are selected by a bitmask so the
same kernel serves both the elementary move set of the equivalence search
and the generating set used by the decomposition fallback.
"""

from __future__ import annotations

import os

import numpy as np

K_CYCLIC = 1
K_COMMUTATION = 2
K_STABILIZATION = 4
K_DESTABILIZATION = 8
K_END_SHIFT = 16
K_END_SHIFT_INVERSE = 32
K_VERTEX_ADDITION = 64
K_VERTEX_REMOVAL = 128

ELEMENTARY_MASK = (
    K_CYCLIC
    | K_COMMUTATION
    | K_STABILIZATION
    | K_DESTABILIZATION
    | K_END_SHIFT
    | K_VERTEX_ADDITION
    | K_VERTEX_REMOVAL
)
BASIS_MASK = (
    K_COMMUTATION | K_END_SHIFT | K_END_SHIFT_INVERSE | K_VERTEX_ADDITION | K_VERTEX_REMOVAL
)

FILT_L = 0
FILT_N = 1
FILT_ALL = 2


def backend_name() -> str:
    """Active backend: ``"numba"`` or ``"python"``."""
    return _BACKEND


# ---------------------------------------------------------------------------
# pure-Python reference backend
# ---------------------------------------------------------------------------


def _py_successors(state: np.ndarray, filt: int, mask: int, max_vertices: int) -> np.ndarray:
    from .core import GridDiagram
    from .errors import PreconditionViolated
    from .moves import EndShiftInverse, apply_move, enumerate_moves, is_applicable, move_type

    n = state.size // 2
    verts = tuple((int(state[2 * i]), int(state[2 * i + 1])) for i in range(n))
    diagram = GridDiagram(verts)
    want = ("L", "N", "all")[filt]
    kinds = []
    if mask & K_CYCLIC:
        kinds.append("cyclic_permutation")
    if mask & K_COMMUTATION:
        kinds.append("commutation")
    if mask & K_STABILIZATION:
        kinds.append("stabilization")
    if mask & K_DESTABILIZATION:
        kinds.append("destabilization")
    if mask & K_END_SHIFT:
        kinds.append("end_shift")
    if mask & K_VERTEX_ADDITION:
        kinds.append("vertex_addition")
    if mask & K_VERTEX_REMOVAL:
        kinds.append("vertex_removal")
    moves = list(enumerate_moves(diagram, kinds, want)) if kinds else []
    if mask & K_END_SHIFT_INVERSE:
        for orientation, lines in (("horizontal", diagram.rows()), ("vertical", diagram.columns())):
            for line, ps in sorted(lines.items()):
                if len(ps) != 2:
                    continue
                lo, hi = ps
                for side in ("pos", "neg"):
                    for restore_hi in (False, True):
                        m = EndShiftInverse(orientation, line, lo, hi, side, restore_hi)
                        t = move_type(m)
                        if want != "all" and t != want:
                            continue
                        if is_applicable(diagram, m):
                            moves.append(m)
    succs = set()
    for m in moves:
        try:
            out = apply_move(diagram, m)
        except PreconditionViolated:
            continue
        if len(out) > max_vertices:
            continue
        succs.add(out.vertices)
    rows = []
    width = 2 * (max_vertices + 2)
    for vs in sorted(succs):
        row = np.full(width, -1, dtype=np.int64)
        for i, (c, r) in enumerate(vs):
            row[2 * i] = c
            row[2 * i + 1] = r
        rows.append(row)
    if not rows:
        return np.empty((0, width), dtype=np.int64)
    return np.stack(rows)


# ---------------------------------------------------------------------------
# numba backend
# ---------------------------------------------------------------------------

try:  # pragma: no cover - import guard
    if os.environ.get("GRIDLEG_BACKEND", "numba") == "numba":
        from numba import njit

        _HAVE_NUMBA = True
    else:
        _HAVE_NUMBA = False
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False


if _HAVE_NUMBA:

    @njit(cache=True)
    def _canon_store(pts, n, out, row):
        """Rank-compress scaled points and store them lexsorted into out[row]."""
        xs = np.empty(n, dtype=np.int64)
        ys = np.empty(n, dtype=np.int64)
        for i in range(n):
            xs[i] = pts[i, 0]
            ys[i] = pts[i, 1]
        xs.sort()
        ys.sort()
        keys = np.empty(n, dtype=np.int64)
        for i in range(n):
            # rank among distinct values
            x = pts[i, 0]
            y = pts[i, 1]
            rx = 0
            prev = -(1 << 60)
            for j in range(n):
                if xs[j] != prev:
                    if xs[j] == x:
                        break
                    rx += 1
                    prev = xs[j]
            ry = 0
            prev = -(1 << 60)
            for j in range(n):
                if ys[j] != prev:
                    if ys[j] == y:
                        break
                    ry += 1
                    prev = ys[j]
            keys[i] = rx * 1024 + ry
        keys.sort()
        for i in range(n):
            out[row, 2 * i] = keys[i] // 1024
            out[row, 2 * i + 1] = keys[i] % 1024
        for i in range(2 * n, out.shape[1]):
            out[row, i] = -1

    @njit(cache=True)
    def _separated(a, na, b, nb):
        """Cyclic-arc separation of two disjoint sorted int sets."""
        total = na + nb
        blocks = 1
        ia = 0
        ib = 0
        first = -1
        last = -1
        prev_lab = -1
        for _ in range(total):
            if ia < na and (ib >= nb or a[ia] < b[ib]):
                lab = 0
                ia += 1
            else:
                lab = 1
                ib += 1
            if first == -1:
                first = lab
            else:
                if lab != prev_lab:
                    blocks += 1
            prev_lab = lab
            last = lab
        if first == last:
            blocks -= 1
        return blocks <= 2

    @njit(cache=True)
    def _successors_numba(state, n, filt, mask, max_v, out):
        """Write raw canonical successors into ``out``; return the count."""
        cnt = 0
        if n == 0:
            return 0
        width_cap = out.shape[0]
        verts = np.empty((n, 2), dtype=np.int64)
        for i in range(n):
            verts[i, 0] = state[2 * i]
            verts[i, 1] = state[2 * i + 1]
        ncols = 0
        nrows = 0
        for i in range(n):
            if verts[i, 0] + 1 > ncols:
                ncols = verts[i, 0] + 1
            if verts[i, 1] + 1 > nrows:
                nrows = verts[i, 1] + 1
        pts = np.empty((n + 2, 2), dtype=np.int64)

        # --- cyclic permutations -----------------------------------------
        if mask & 1:
            for side in range(4):
                for i in range(n):
                    c = verts[i, 0]
                    r = verts[i, 1]
                    if side == 0 and r == 0:  # bottom -> top
                        r = nrows
                    elif side == 1 and c == 0:  # left -> right
                        c = ncols
                    elif side == 2 and c == ncols - 1:  # right -> left
                        c = -1
                    elif side == 3 and r == nrows - 1:  # top -> bottom
                        r = -1
                    pts[i, 0] = 4 * c
                    pts[i, 1] = 4 * r
                if cnt < width_cap:
                    _canon_store(pts, n, out, cnt)
                    cnt += 1

        # --- commutations --------------------------------------------------
        if mask & 2:
            for axis in range(2):
                nlines = ncols if axis == 0 else nrows
                for idx in range(nlines - 1):
                    a = np.empty(n, dtype=np.int64)
                    b = np.empty(n, dtype=np.int64)
                    na = 0
                    nb = 0
                    shared = False
                    for i in range(n):
                        line = verts[i, axis]
                        perp = verts[i, 1 - axis]
                        if line == idx:
                            a[na] = perp
                            na += 1
                        elif line == idx + 1:
                            b[nb] = perp
                            nb += 1
                    a2 = np.sort(a[:na])
                    b2 = np.sort(b[:nb])
                    ia = 0
                    ib = 0
                    while ia < na and ib < nb:
                        if a2[ia] == b2[ib]:
                            shared = True
                            break
                        if a2[ia] < b2[ib]:
                            ia += 1
                        else:
                            ib += 1
                    if shared or not _separated(a2, na, b2, nb):
                        continue
                    for i in range(n):
                        line = verts[i, axis]
                        if line == idx:
                            line = idx + 1
                        elif line == idx + 1:
                            line = idx
                        pts[i, axis] = 4 * line
                        pts[i, 1 - axis] = 4 * verts[i, 1 - axis]
                    if cnt < width_cap:
                        _canon_store(pts, n, out, cnt)
                        cnt += 1

        # --- stabilizations -------------------------------------------------
        if mask & 4 and n + 2 <= max_v:
            for i in range(n):
                for corner in range(4):
                    # corner: 0=NE 1=SW 2=NW 3=SE ; L = NE,SW
                    is_l = corner < 2
                    if filt == 0 and not is_l:
                        continue
                    if filt == 1 and is_l:
                        continue
                    c = verts[i, 0]
                    r = verts[i, 1]
                    east = corner == 0 or corner == 3
                    north = corner == 0 or corner == 2
                    fc = 4 * c + (2 if east else -2)
                    fr = 4 * r + (2 if north else -2)
                    k = 0
                    for j in range(n):
                        if j == i:
                            continue
                        pts[k, 0] = 4 * verts[j, 0]
                        pts[k, 1] = 4 * verts[j, 1]
                        k += 1
                    pts[k, 0] = 4 * c
                    pts[k, 1] = fr
                    pts[k + 1, 0] = fc
                    pts[k + 1, 1] = 4 * r
                    pts[k + 2, 0] = fc
                    pts[k + 2, 1] = fr
                    if cnt < width_cap:
                        _canon_store(pts, n + 2, out, cnt)
                        cnt += 1

        # --- destabilizations ----------------------------------------------
        if mask & 8:
            for c in range(ncols - 1):
                for r in range(nrows - 1):
                    # occupancy of the 2x2 square
                    occ00 = False
                    occ01 = False
                    occ10 = False
                    occ11 = False
                    colc = 0
                    colc1 = 0
                    rowr = 0
                    rowr1 = 0
                    col_ok_c = True
                    col_ok_c1 = True
                    row_ok_r = True
                    row_ok_r1 = True
                    for i in range(n):
                        vc = verts[i, 0]
                        vr = verts[i, 1]
                        if vc == c and vr == r:
                            occ00 = True
                        if vc == c and vr == r + 1:
                            occ01 = True
                        if vc == c + 1 and vr == r:
                            occ10 = True
                        if vc == c + 1 and vr == r + 1:
                            occ11 = True
                        if vc == c:
                            colc += 1
                            if vr != r and vr != r + 1:
                                col_ok_c = False
                        if vc == c + 1:
                            colc1 += 1
                            if vr != r and vr != r + 1:
                                col_ok_c1 = False
                        if vr == r:
                            rowr += 1
                            if vc != c and vc != c + 1:
                                row_ok_r = False
                        if vr == r + 1:
                            rowr1 += 1
                            if vc != c and vc != c + 1:
                                row_ok_r1 = False
                    for corner in range(4):
                        is_l = corner < 2
                        if filt == 0 and not is_l:
                            continue
                        if filt == 1 and is_l:
                            continue
                        # patterns: present corners, restored corner, short col, short row
                        if corner == 0:  # NE
                            ok = occ01 and occ10 and occ11 and not occ00
                            short_col_ok = col_ok_c1 and colc1 == 2 and occ10 and occ11
                            short_row_ok = row_ok_r1 and rowr1 == 2 and occ01 and occ11
                            rc = c
                            rr = r
                        elif corner == 1:  # SW
                            ok = occ00 and occ01 and occ10 and not occ11
                            short_col_ok = col_ok_c and colc == 2 and occ00 and occ01
                            short_row_ok = row_ok_r and rowr == 2 and occ00 and occ10
                            rc = c + 1
                            rr = r + 1
                        elif corner == 2:  # NW
                            ok = occ00 and occ01 and occ11 and not occ10
                            short_col_ok = col_ok_c and colc == 2 and occ00 and occ01
                            short_row_ok = row_ok_r1 and rowr1 == 2 and occ01 and occ11
                            rc = c + 1
                            rr = r
                        else:  # SE
                            ok = occ00 and occ10 and occ11 and not occ01
                            short_col_ok = col_ok_c1 and colc1 == 2 and occ10 and occ11
                            short_row_ok = row_ok_r and rowr == 2 and occ00 and occ10
                            rc = c
                            rr = r + 1
                        if not (ok and short_col_ok and short_row_ok):
                            continue
                        k = 0
                        for i in range(n):
                            vc = verts[i, 0]
                            vr = verts[i, 1]
                            inside = (vc == c or vc == c + 1) and (vr == r or vr == r + 1)
                            if inside:
                                continue
                            pts[k, 0] = 4 * vc
                            pts[k, 1] = 4 * vr
                            k += 1
                        pts[k, 0] = 4 * rc
                        pts[k, 1] = 4 * rr
                        if cnt < width_cap:
                            _canon_store(pts, k + 1, out, cnt)
                            cnt += 1

        # --- end shifts ------------------------------------------------------
        if mask & 16 and n + 1 <= max_v:
            for axis in range(2):
                nlines = ncols if axis == 0 else nrows
                for line in range(nlines):
                    perp = np.empty(n, dtype=np.int64)
                    k = 0
                    for i in range(n):
                        if verts[i, axis] == line:
                            perp[k] = verts[i, 1 - axis]
                            k += 1
                    if k < 2:
                        continue
                    sp = np.sort(perp[:k])
                    for j in range(k - 1):
                        lo = sp[j]
                        hi = sp[j + 1]
                        for var in range(4):
                            # var: 0=(pos,rm lo) L  1=(neg,rm hi) L  2=(pos,rm hi) N  3=(neg,rm lo) N
                            is_l = var < 2
                            if filt == 0 and not is_l:
                                continue
                            if filt == 1 and is_l:
                                continue
                            pos = var == 0 or var == 2
                            rm_hi = var == 1 or var == 2
                            fresh = 4 * line + (2 if pos else -2)
                            rmv = hi if rm_hi else lo
                            t = 0
                            for i in range(n):
                                if verts[i, axis] == line and verts[i, 1 - axis] == rmv:
                                    continue
                                pts[t, axis] = 4 * verts[i, axis]
                                pts[t, 1 - axis] = 4 * verts[i, 1 - axis]
                                t += 1
                            pts[t, axis] = fresh
                            pts[t, 1 - axis] = 4 * lo
                            pts[t + 1, axis] = fresh
                            pts[t + 1, 1 - axis] = 4 * hi
                            if cnt < width_cap:
                                _canon_store(pts, t + 2, out, cnt)
                                cnt += 1

        # --- end shift inverses ----------------------------------------------
        if mask & 32:
            for axis in range(2):
                nlines = ncols if axis == 0 else nrows
                for pline in range(nlines):
                    k = 0
                    lo = -1
                    hi = -1
                    for i in range(n):
                        if verts[i, axis] == pline:
                            if k == 0:
                                lo = verts[i, 1 - axis]
                            else:
                                hi = verts[i, 1 - axis]
                            k += 1
                            if k > 2:
                                break
                    if k != 2:
                        continue
                    if lo > hi:
                        lo, hi = hi, lo
                    for var in range(4):
                        is_l = var < 2
                        if filt == 0 and not is_l:
                            continue
                        if filt == 1 and is_l:
                            continue
                        # var: 0=(pos,restore lo) 1=(neg,restore hi) L; 2=(pos,restore hi) 3=(neg,restore lo) N
                        pos = var == 0 or var == 2
                        restore_hi = var == 1 or var == 2
                        src = pline - 1 if pos else pline + 1
                        if src < 0 or src >= nlines:
                            continue
                        restored = hi if restore_hi else lo
                        kept = lo if restore_hi else hi
                        ok_kept = False
                        bad = False
                        for i in range(n):
                            if verts[i, axis] == src:
                                p = verts[i, 1 - axis]
                                if p == kept:
                                    ok_kept = True
                                elif p == restored:
                                    bad = True
                                elif lo < p < hi:
                                    bad = True
                        if not ok_kept or bad:
                            continue
                        t = 0
                        for i in range(n):
                            if verts[i, axis] == pline:
                                continue
                            pts[t, axis] = 4 * verts[i, axis]
                            pts[t, 1 - axis] = 4 * verts[i, 1 - axis]
                            t += 1
                        pts[t, axis] = 4 * src
                        pts[t, 1 - axis] = 4 * restored
                        if cnt < width_cap:
                            _canon_store(pts, t + 1, out, cnt)
                            cnt += 1

        # --- vertex additions --------------------------------------------------
        if mask & 64 and n + 1 <= max_v:
            for axis in range(2):
                nlines = ncols if axis == 0 else nrows
                nperp = nrows if axis == 0 else ncols
                for line in range(nlines):
                    for slot in range(nperp + 1):
                        for i in range(n):
                            pts[i, 0] = 4 * verts[i, 0]
                            pts[i, 1] = 4 * verts[i, 1]
                        pts[n, axis] = 4 * line
                        pts[n, 1 - axis] = 4 * slot - 2
                        if cnt < width_cap:
                            _canon_store(pts, n + 1, out, cnt)
                            cnt += 1

        # --- vertex removals ----------------------------------------------------
        if mask & 128:
            for i in range(n):
                c = verts[i, 0]
                r = verts[i, 1]
                col_cnt = 0
                row_cnt = 0
                for j in range(n):
                    if verts[j, 0] == c:
                        col_cnt += 1
                    if verts[j, 1] == r:
                        row_cnt += 1
                if not ((row_cnt == 1 and col_cnt >= 2) or (col_cnt == 1 and row_cnt >= 2)):
                    continue
                t = 0
                for j in range(n):
                    if j == i:
                        continue
                    pts[t, 0] = 4 * verts[j, 0]
                    pts[t, 1] = 4 * verts[j, 1]
                    t += 1
                if cnt < width_cap:
                    _canon_store(pts, t, out, cnt)
                    cnt += 1

        return cnt

    def _numba_successors(state: np.ndarray, filt: int, mask: int, max_vertices: int) -> np.ndarray:
        n = state.size // 2
        width = 2 * (max_vertices + 2)
        # generous upper bound on the number of generated successors
        cap = 16 + 8 * n + 4 * (n + 2) * (n + 3)
        out = np.empty((cap, width), dtype=np.int64)
        cnt = _successors_numba(state.astype(np.int64), n, filt, mask, max_vertices, out)
        raw = out[:cnt]
        if cnt == 0:
            return raw
        # drop successors exceeding the vertex cap, then sort + dedup
        sizes = (raw >= 0).sum(axis=1) // 2
        raw = raw[sizes <= max_vertices]
        if raw.shape[0] == 0:
            return raw
        return np.unique(raw, axis=0)

    _BACKEND = "numba"
    successors = _numba_successors
else:  # pragma: no cover - depends on environment
    _BACKEND = "python"

    def successors(state: np.ndarray, filt: int, mask: int, max_vertices: int) -> np.ndarray:
        return _py_successors(state, filt, mask, max_vertices)


def successors_python(state: np.ndarray, filt: int, mask: int, max_vertices: int) -> np.ndarray:
    """Pure-Python reference implementation (always available)."""
    return _py_successors(state, filt, mask, max_vertices)
