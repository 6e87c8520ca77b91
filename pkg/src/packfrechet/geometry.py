"""Polygonal curves in R^d and the few metric primitives built on them.

A curve with vertices ``p_1, ..., p_n`` is parameterized over ``[1, n]``;
``P(t) = p_i + (t - i) (p_{i+1} - p_i)`` for ``t`` in ``[i, i + 1]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from operator import mul

import numpy as np

from ._rng import SplitMix64
from .errors import DomainError, UsageError

__all__ = [
    "TAU",
    "Ball",
    "Curve",
    "arc_length_in_ball",
    "distance",
    "packedness_lower_bound",
    "point_at",
    "segment_ball_interval",
]

#: Absolute tolerance on curve parameters and local cell coordinates.
TAU = 1e-9


class Curve:
    """Immutable polygonal curve.

    Consecutive duplicate vertices are collapsed on construction, so every
    edge has positive length.  A one-dimensional input sequence is read as
    ``n`` points on the real line.

    Parameters
    ----------
    points : array_like
        ``(n, d)`` vertex coordinates, ``n >= 1``.
    """

    def __init__(self, points):
        arr = np.array(points, dtype=float)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        if arr.ndim != 2:
            raise UsageError(f"expected an (n, d) array of vertices, got shape {arr.shape}")
        if arr.shape[0] == 0:
            raise UsageError("a curve needs at least one vertex")
        if arr.shape[1] == 0:
            raise UsageError("vertices must have at least one coordinate")
        if not np.all(np.isfinite(arr)):
            raise UsageError("vertex coordinates must be finite")
        if arr.shape[0] > 1:
            keep = np.ones(arr.shape[0], dtype=bool)
            keep[1:] = np.any(arr[1:] != arr[:-1], axis=1)
            arr = arr[keep]
        arr.setflags(write=False)
        self.points = arr

    def __len__(self):
        return self.points.shape[0]

    def __repr__(self):
        return f"Curve(n={len(self)}, d={self.dim})"

    def __eq__(self, other):
        if not isinstance(other, Curve):
            return NotImplemented
        return self.points.shape == other.points.shape and bool(
            np.all(self.points == other.points)
        )

    def __hash__(self):
        return hash(self.points.tobytes())

    @property
    def dim(self):
        return self.points.shape[1]

    @property
    def n_edges(self):
        return len(self) - 1

    @cached_property
    def vertices(self):
        """Vertices as a tuple of float tuples (fast scalar access)."""
        return tuple(tuple(map(float, p)) for p in self.points)

    @cached_property
    def edge_vectors(self):
        v = self.vertices
        return tuple(tuple(b - a for a, b in zip(p, q)) for p, q in zip(v, v[1:]))

    @cached_property
    def edge_sq_lengths(self):
        return tuple(sum(map(mul, u, u)) for u in self.edge_vectors)

    @cached_property
    def edge_lengths(self):
        return np.sqrt(np.asarray(self.edge_sq_lengths, dtype=float))

    @cached_property
    def length(self):
        return float(self.edge_lengths.sum())

    def subcurve(self, indices):
        """Curve through the vertices at the given zero-based indices."""
        return Curve(self.points[list(indices)])


@dataclass(frozen=True)
class Ball:
    center: tuple
    radius: float

    def __post_init__(self):
        if not self.radius >= 0:
            raise UsageError(f"ball radius must be nonnegative, got {self.radius}")


def point_at(curve, t):
    """Evaluate ``curve`` at parameter ``t`` in ``[1, n]``.

    Values within ``TAU`` of the domain are clamped; anything further out
    raises :class:`DomainError`.
    """
    n = len(curve)
    if not (1.0 - TAU <= t <= n + TAU):
        raise DomainError(f"parameter {t} outside [1, {n}]")
    t = min(max(float(t), 1.0), float(n))
    i = int(math.floor(t))
    if i >= n:
        return np.array(curve.points[n - 1])
    frac = t - i
    p = curve.points[i - 1]
    if frac == 0.0:
        return np.array(p)
    return p + frac * (curve.points[i] - p)


def distance(a, b):
    """Euclidean distance between two points of equal dimension."""
    a = tuple(map(float, np.atleast_1d(a)))
    b = tuple(map(float, np.atleast_1d(b)))
    if len(a) != len(b):
        raise UsageError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return math.dist(a, b)


def segment_ball_interval(center, start, direction, sq_length, radius):
    """Local parameters ``s`` in ``[0, 1]`` with ``|start + s*direction - center| <= radius``.

    Returns ``(lo, hi)`` or ``None`` when the segment misses the ball.  The
    interval is computed around the foot of the perpendicular, which avoids
    the cancellation of the textbook quadratic formula.  An interval that is
    empty only by less than ``TAU`` after clamping collapses to a point.
    """
    diff = [c - s for c, s in zip(center, start)]
    s0 = sum(map(mul, diff, direction)) / sq_length
    h2 = 0.0
    for u, dv in zip(direction, diff):
        r = s0 * u - dv
        h2 += r * r
    disc = radius * radius - h2
    if disc < 0.0:
        return None
    w = math.sqrt(disc / sq_length)
    lo = s0 - w
    hi = s0 + w
    if lo < 0.0:
        lo = 0.0
    if hi > 1.0:
        hi = 1.0
    if lo > hi:
        if lo - hi > TAU:
            return None
        # touching a cell corner from outside by less than TAU
        lo = hi = 0.0 if hi < 0.5 else 1.0
    return lo, hi


def _check_dim(curve, point):
    if len(point) != curve.dim:
        raise UsageError(f"dimension mismatch: curve is {curve.dim}-d, point is {len(point)}-d")


def arc_length_in_ball(curve, ball):
    """Total length of ``curve`` inside ``ball`` (closed)."""
    center = tuple(map(float, ball.center))
    _check_dim(curve, center)
    if curve.n_edges == 0:
        return 0.0
    total = 0.0
    for a, u, uu, length in zip(
        curve.vertices, curve.edge_vectors, curve.edge_sq_lengths, curve.edge_lengths
    ):
        iv = segment_ball_interval(center, a, u, uu, ball.radius)
        if iv is not None:
            total += (iv[1] - iv[0]) * float(length)
    return total


def _chords(points, edge_start, edge_vec, edge_sq, radius):
    """Chord lengths of every edge inside balls of one radius around many centers.

    Vectorized counterpart of :func:`segment_ball_interval`; returns a
    ``(centers, edges)`` array.
    """
    diff = points[:, None, :] - edge_start[None, :, :]
    s0 = np.einsum("cek,ek->ce", diff, edge_vec) / edge_sq
    foot = s0[..., None] * edge_vec[None, :, :] - diff
    h2 = np.einsum("cek,cek->ce", foot, foot)
    disc = radius * radius - h2
    w = np.sqrt(np.clip(disc, 0.0, None) / edge_sq)
    lo = np.clip(s0 - w, 0.0, 1.0)
    hi = np.clip(s0 + w, 0.0, 1.0)
    frac = np.where(disc >= 0.0, np.clip(hi - lo, 0.0, None), 0.0)
    return frac * np.sqrt(edge_sq)


def packedness_lower_bound(curve, trials=16, seed=0):
    """Heuristic lower bound on the smallest ``c`` for which ``curve`` is c-packed.

    Balls are centered at every vertex and every edge midpoint; radii come
    from ``trials`` pseudo-randomly sampled vertex pairs plus the distance
    from the first vertex to the farthest one.  Every ball gives a valid
    witness ``length_inside / radius``, so the maximum never overestimates.
    """
    if trials < 1:
        raise UsageError("trials must be >= 1")
    n = len(curve)
    if n < 2:
        return 0.0
    pts = curve.points
    starts = pts[:-1]
    vecs = np.diff(pts, axis=0)
    sq = np.einsum("ek,ek->e", vecs, vecs)
    centers = np.vstack([pts, starts + 0.5 * vecs])

    rng = SplitMix64(seed)
    radii = {float(np.max(np.linalg.norm(pts - pts[0], axis=1)))}
    for _ in range(trials):
        a, b = rng.below(n), rng.below(n)
        r = float(np.linalg.norm(pts[a] - pts[b]))
        if r > 0.0:
            radii.add(r)
    best = 0.0
    # chunk the centers so memory stays O(chunk * n * d)
    chunk = max(1, 200_000 // max(1, n * curve.dim))
    for r in sorted(radii):
        if r <= 0.0:
            continue
        for k in range(0, len(centers), chunk):
            inside = _chords(centers[k : k + chunk], starts, vecs, sq, r).sum(axis=1)
            best = max(best, float(inside.max()) / r)
    return best
