"""Greedy mu-simplification.

Starting from the first vertex, keep the first later vertex at distance at
least ``mu`` from the last kept one, and repeat.  The last vertex of the
input is not forced into the output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import UsageError
from .geometry import Curve

__all__ = ["Simplification", "greedy_simplify"]


@dataclass(frozen=True)
class Simplification:
    curve: Curve
    #: zero-based indices of the kept vertices in the source curve
    source_indices: tuple
    mu: float


def greedy_simplify(curve, mu):
    """Greedy ``mu``-simplification of ``curve`` in one linear pass."""
    if not mu >= 0:
        raise UsageError(f"mu must be nonnegative, got {mu}")
    if mu == 0:
        return Simplification(curve, tuple(range(len(curve))), 0.0)
    verts = curve.vertices
    dist = math.dist
    kept = [0]
    anchor = verts[0]
    for k in range(1, len(verts)):
        p = verts[k]
        if dist(p, anchor) >= mu:
            kept.append(k)
            anchor = p
    if len(kept) == len(verts):
        return Simplification(curve, tuple(kept), float(mu))
    return Simplification(curve.subcurve(kept), tuple(kept), float(mu))
