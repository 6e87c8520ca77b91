"""Exact ground truth for small instances.

``exact_decide`` is the classical dense sweep over every cell of the
parameter space, row by row, keeping only the previous row of reachable
top intervals.  It shares the per-cell propagation rule with the sparse
explorer but not its traversal, which is what the cross-checks rely on.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import UsageError
from .freespace import _propagate, single_vertex_reachable
from .geometry import TAU

__all__ = ["DistanceBracket", "bisect_frechet", "discrete_frechet", "exact_decide"]

_START = (0.0, 0.0)


class DistanceBracket(NamedTuple):
    lo: float
    hi: float


def _intervals(centers, start, direction, sq_length, delta):
    """Free intervals of many centers against one edge, as a list of tuples/None.

    Mirrors :func:`packfrechet.geometry.segment_ball_interval` operation by
    operation so both produce bit-identical endpoints.
    """
    dims = centers.shape[1]
    diff = centers - start
    dot = diff[:, 0] * direction[0]
    for k in range(1, dims):
        dot = dot + diff[:, k] * direction[k]
    s0 = dot / sq_length
    r = s0 * direction[0] - diff[:, 0]
    h2 = r * r
    for k in range(1, dims):
        r = s0 * direction[k] - diff[:, k]
        h2 = h2 + r * r
    disc = delta * delta - h2
    with np.errstate(invalid="ignore"):
        w = np.sqrt(disc / sq_length)
    lo = np.maximum(s0 - w, 0.0)
    hi = np.minimum(s0 + w, 1.0)
    out = []
    for d_, l, h in zip(disc.tolist(), lo.tolist(), hi.tolist()):
        if d_ < 0.0:
            out.append(None)
        elif l > h:
            if l - h > TAU:
                out.append(None)
            else:
                v = 0.0 if h < 0.5 else 1.0
                out.append((v, v))
        else:
            out.append((l, h))
    return out


def exact_decide(p, q, delta):
    """Whether ``d_F(p, q) <= delta``, by a full O(nm) sweep."""
    if delta < 0:
        raise UsageError(f"delta must be nonnegative, got {delta}")
    if p.dim != q.dim:
        raise UsageError(f"dimension mismatch: {p.dim} vs {q.dim}")
    delta = float(delta)
    if math.dist(p.vertices[0], q.vertices[0]) > delta:
        return False
    if len(p) == 1 or len(q) == 1:
        return single_vertex_reachable(p, q, delta)

    pts_p = p.points
    pts_q = q.points
    vec_p = np.asarray(p.edge_vectors)
    vec_q = np.asarray(q.edge_vectors)
    sq_p = p.edge_sq_lengths
    sq_q = q.edge_sq_lengths
    edge_starts_p = pts_p[:-1]
    cols = len(p) - 1
    rows = len(q) - 1

    tops = [None] * cols
    tops[0] = _START
    right = top = None
    for j in range(rows):
        # right boundaries of row j: vertices p_1..p_{n-1} against edge q_j
        free_rights = _intervals(pts_p[1:], pts_q[j], vec_q[j], sq_q[j], delta)
        # top boundaries of row j: vertex q_{j+1} against every edge of p
        free_tops = _intervals_one_center(pts_q[j + 1], edge_starts_p, vec_p, sq_p, delta)
        new_tops = [None] * cols
        left = _START if j == 0 else None
        for i in range(cols):
            bottom = tops[i]
            if left is None and bottom is None:
                right = top = None
            else:
                right, top = _propagate(left, bottom, free_rights[i], free_tops[i])
            new_tops[i] = top
            left = right
        tops = new_tops
    return (right is not None and right[1] >= 1.0 - TAU) or (
        top is not None and top[1] >= 1.0 - TAU
    )


def _intervals_one_center(center, starts, directions, sq_lengths, delta):
    """Free intervals of one center against many edges (see :func:`_intervals`)."""
    dims = starts.shape[1]
    diff = center[None, :] - starts
    dot = diff[:, 0] * directions[:, 0]
    for k in range(1, dims):
        dot = dot + diff[:, k] * directions[:, k]
    sq = np.asarray(sq_lengths)
    s0 = dot / sq
    r = s0 * directions[:, 0] - diff[:, 0]
    h2 = r * r
    for k in range(1, dims):
        r = s0 * directions[:, k] - diff[:, k]
        h2 = h2 + r * r
    disc = delta * delta - h2
    with np.errstate(invalid="ignore"):
        w = np.sqrt(disc / sq)
    lo = np.maximum(s0 - w, 0.0)
    hi = np.minimum(s0 + w, 1.0)
    out = []
    for d_, l, h in zip(disc.tolist(), lo.tolist(), hi.tolist()):
        if d_ < 0.0:
            out.append(None)
        elif l > h:
            if l - h > TAU:
                out.append(None)
            else:
                v = 0.0 if h < 0.5 else 1.0
                out.append((v, v))
        else:
            out.append((l, h))
    return out


def bisect_frechet(p, q, rel_tol=1e-9):
    """Bracket ``d_F(p, q)`` by geometric bisection on :func:`exact_decide`.

    The returned ``lo`` is 0, a value the decider rejects, or just below the
    endpoint distance (a hard lower bound); ``hi`` is accepted, and ``hi <= lo * (1 + rel_tol)`` unless ``lo == 0``.
    """
    from .search import exponential_approx

    if not rel_tol > 0:
        raise UsageError("rel_tol must be positive")
    lo = max(
        math.dist(p.vertices[0], q.vertices[0]),
        math.dist(p.vertices[-1], q.vertices[-1]),
    )
    if exact_decide(p, q, lo):
        if lo == 0.0:
            return DistanceBracket(0.0, 0.0)
        # the endpoint distance is a hard lower bound, so it is the distance
        # (the decider's slack may still accept slightly smaller thresholds)
        return DistanceBracket(lo / (1.0 + rel_tol), lo)

    hi = max(exponential_approx(p, q), lo)
    while not exact_decide(p, q, hi):
        hi = 2.0 * hi if hi > 0 else 1.0
    if lo == 0.0:
        lo = hi
        while lo > 0.0 and exact_decide(p, q, lo):
            lo *= 0.5
        if lo == 0.0:
            return DistanceBracket(0.0, hi)
        hi = min(hi, 2.0 * lo)

    while hi > lo * (1.0 + rel_tol):
        mid = math.sqrt(lo * hi)
        if not lo < mid < hi:
            break
        if exact_decide(p, q, mid):
            hi = mid
        else:
            lo = mid
    return DistanceBracket(lo, hi)


def discrete_frechet(p, q):
    """Discrete Fréchet distance over vertex couplings (an upper bound on ``d_F``)."""
    if p.dim != q.dim:
        raise UsageError(f"dimension mismatch: {p.dim} vs {q.dim}")
    diff = p.points[:, None, :] - q.points[None, :, :]
    dist = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff)).tolist()
    prev = None
    for i, row in enumerate(dist):
        cur = [0.0] * len(row)
        for j, d in enumerate(row):
            if i == 0 and j == 0:
                best = d
            elif i == 0:
                best = max(cur[j - 1], d)
            elif j == 0:
                best = max(prev[0], d)
            else:
                best = max(min(prev[j], cur[j - 1], prev[j - 1]), d)
            cur[j] = best
        prev = cur
    return prev[-1]
