"""Free space of two curves and budgeted monotone reachability.

Cell ``(i, j)`` (zero-based) pairs edge ``i`` of the first curve with edge
``j`` of the second.  Inside a cell we use local coordinates in ``[0, 1]^2``;
the free space there is convex (an ellipse slice), so the reachable part of
a cell's right/top boundary only depends on the reachable parts of its
left/bottom boundary.

Empty intervals are ``None`` throughout; non-empty ones are ``(lo, hi)``
tuples (:class:`Interval` where it helps readability).
"""

from __future__ import annotations

import math
from heapq import heappop, heappush
from typing import NamedTuple, Optional

from .errors import UsageError
from .geometry import TAU, segment_ball_interval

__all__ = [
    "CellRecord",
    "ExplorationResult",
    "Interval",
    "bounded_reachability",
    "free_interval_on_horizontal_edge",
    "free_interval_on_vertical_edge",
    "propagate_cell",
    "single_vertex_reachable",
    "witness_path",
]


class Interval(NamedTuple):
    lo: float
    hi: float


class CellRecord(NamedTuple):
    coord: tuple
    #: reachable y-range on the cell's left edge
    reach_left: Optional[Interval]
    #: reachable x-range on the cell's bottom edge
    reach_bottom: Optional[Interval]


class ExplorationResult(NamedTuple):
    goal_reached: bool
    budget_exceeded: bool
    cells_explored: int
    #: explored cells keyed by coordinate, only when requested
    cells: Optional[dict] = None


def _edge_interval(vertex, edge, delta):
    p, q = (tuple(map(float, x)) for x in edge)
    vertex = tuple(map(float, vertex))
    if not (len(p) == len(q) == len(vertex)):
        raise UsageError("dimension mismatch between vertex and edge")
    if delta < 0:
        raise UsageError(f"delta must be nonnegative, got {delta}")
    u = tuple(b - a for a, b in zip(p, q))
    uu = sum(x * x for x in u)
    if uu == 0.0:
        raise UsageError("degenerate edge")
    iv = segment_ball_interval(vertex, p, u, uu, float(delta))
    return None if iv is None else Interval(*iv)


def free_interval_on_vertical_edge(vertex, edge, delta):
    """Free part of the cell boundary ``x = i``: vertex ``p_i`` against an edge of Q.

    Returns the local edge parameters ``s`` with ``|vertex - edge(s)| <= delta``.
    """
    return _edge_interval(vertex, edge, delta)


def free_interval_on_horizontal_edge(vertex, edge, delta):
    """Free part of the cell boundary ``y = j``: vertex ``q_j`` against an edge of P."""
    return _edge_interval(vertex, edge, delta)


def _propagate(left, bottom, free_right, free_top):
    if bottom is not None:
        right = free_right
    elif left is not None and free_right is not None:
        lo = left[0]
        r_lo, r_hi = free_right
        if lo <= r_lo:
            right = free_right
        elif lo <= r_hi:
            right = (lo, r_hi)
        elif lo - r_hi <= TAU:
            right = (r_hi, r_hi)
        else:
            right = None
    else:
        right = None

    if left is not None:
        top = free_top
    elif bottom is not None and free_top is not None:
        lo = bottom[0]
        t_lo, t_hi = free_top
        if lo <= t_lo:
            top = free_top
        elif lo <= t_hi:
            top = (lo, t_hi)
        elif lo - t_hi <= TAU:
            top = (t_hi, t_hi)
        else:
            top = None
    else:
        top = None
    return right, top


def propagate_cell(record, free_right, free_top):
    """Reachable parts of a cell's right and top edges.

    A boundary point is reachable when it is free and some reachable entry
    point lies weakly below and to the left of it; convexity of the free
    space inside the cell makes the straight segment between them free.
    """
    right, top = _propagate(record.reach_left, record.reach_bottom, free_right, free_top)
    return (
        None if right is None else Interval(*right),
        None if top is None else Interval(*top),
    )


def single_vertex_reachable(a, b, delta):
    """Decision for curves where one side has a single vertex.

    The distance from a fixed point to a segment is convex along the
    segment, so it suffices to check the vertices of the other curve.
    """
    if len(a) == 1:
        p, others = a.vertices[0], b.vertices
    else:
        p, others = b.vertices[0], a.vertices
    dist = math.dist
    return all(dist(p, q) <= delta for q in others)


_START = (0.0, 0.0)


def bounded_reachability(a, b, delta, budget=None, *, keep_cells=False):
    """Explore the ``delta``-reachable cells of the parameter space of ``a`` and ``b``.

    Only cells that contain a reachable point are ever touched; they are
    stored sparsely by coordinate.  Cells are popped in row-major order from
    a heap, so both predecessors of a cell are final before it is expanded.
    The ``(budget + 1)``-th explored cell still counts towards reaching the
    goal; if work remains after it, the exploration stops with
    ``budget_exceeded``.  ``budget=None`` means unlimited, in which case
    ``goal_reached`` decides ``d_F(a, b) <= delta``.
    """
    if delta < 0:
        raise UsageError(f"delta must be nonnegative, got {delta}")
    if budget is not None and budget < 0:
        raise UsageError("budget must be nonnegative")
    va, vb = a.vertices, b.vertices
    if len(va[0]) != len(vb[0]):
        raise UsageError(f"dimension mismatch: {len(va[0])} vs {len(vb[0])}")
    delta = float(delta)
    if math.dist(va[0], vb[0]) > delta:
        return ExplorationResult(False, False, 0, {} if keep_cells else None)
    if len(va) == 1 or len(vb) == 1:
        ok = single_vertex_reachable(a, b, delta)
        return ExplorationResult(ok, False, 0, {} if keep_cells else None)

    ua, uua = a.edge_vectors, a.edge_sq_lengths
    ub, uub = b.edge_vectors, b.edge_sq_lengths
    last_i, last_j = len(va) - 2, len(vb) - 2
    limit = math.inf if budget is None else budget
    free = segment_ball_interval

    entries = {(0, 0): [_START, _START]}
    heap = [(0, 0)]
    cells = {} if keep_cells else None
    explored = 0
    while heap:
        j, i = heappop(heap)
        left, bottom = entries.pop((i, j))
        assert left is not None or bottom is not None
        explored += 1
        if cells is not None:
            cells[(i, j)] = CellRecord(
                (i, j),
                None if left is None else Interval(*left),
                None if bottom is None else Interval(*bottom),
            )
        free_right = free(va[i + 1], vb[j], ub[j], uub[j], delta)
        free_top = free(vb[j + 1], va[i], ua[i], uua[i], delta)
        right, top = _propagate(left, bottom, free_right, free_top)

        if i == last_i and j == last_j:
            if (right is not None and right[1] >= 1.0 - TAU) or (
                top is not None and top[1] >= 1.0 - TAU
            ):
                return ExplorationResult(True, False, explored, cells)
        if right is not None and i < last_i:
            key = (i + 1, j)
            slot = entries.get(key)
            if slot is None:
                entries[key] = [right, None]
                heappush(heap, (j, i + 1))
            else:
                slot[0] = right
        if top is not None and j < last_j:
            key = (i, j + 1)
            slot = entries.get(key)
            if slot is None:
                entries[key] = [None, top]
                heappush(heap, (j + 1, i))
            else:
                slot[1] = top
        if explored > limit and heap:
            return ExplorationResult(False, True, explored, cells)
    return ExplorationResult(False, False, explored, cells)


def witness_path(result, a, b):
    """Monotone parameter-space path certifying ``result.goal_reached``.

    Needs a result produced with ``keep_cells=True``.  Points are global
    parameters ``(x, y)`` in ``[1, n] x [1, m]``, in path order; consecutive
    points lie in a common cell, so straight segments between them stay
    inside the free space.
    """
    if not result.goal_reached:
        raise UsageError("no witness: the goal was not reached")
    if result.cells is None:
        raise UsageError("witness extraction needs keep_cells=True")
    n, m = len(a), len(b)
    if n == 1 or m == 1:
        return [(1.0, 1.0), (float(n), float(m))]
    cells = result.cells
    i, j = n - 2, m - 2
    tx = ty = 1.0
    path = []
    while True:
        path.append((i + 1 + tx, j + 1 + ty))
        if (i, j) == (0, 0):
            path.append((1.0, 1.0))
            break
        rec = cells[(i, j)]
        bottom, left = rec.reach_bottom, rec.reach_left
        if bottom is not None and bottom[0] <= tx + TAU:
            tx, ty = min(tx, bottom[1]), 1.0
            j -= 1
        elif left is not None and left[0] <= ty + TAU:
            tx, ty = 1.0, min(ty, left[1])
            i -= 1
        else:
            raise AssertionError(f"cell {(i, j)} has no entry below its exit")
    path.reverse()
    return path
