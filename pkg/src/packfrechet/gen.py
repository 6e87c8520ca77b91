"""Seeded instance generators.

Every random draw goes through :class:`~packfrechet._rng.SplitMix64`, so a
given :class:`GenSpec` yields the same coordinates on every platform.

Families
--------
random_walk
    Steps uniform in ``[-step, step]^d``.  Params: ``step`` (1.0).
straight_line
    Monotone points along the first axis with gaps uniform in
    ``[0.5, 1.5] * spacing``; 2-packed.  Params: ``spacing`` (1.0).
zigzag
    Points ``(i * spacing, +-amplitude)`` with small jitter.  Params:
    ``spacing`` (1.0), ``amplitude`` (1.0), ``jitter`` (0.1).
spiral
    Archimedean spiral ``r = growth * theta``.  Params: ``growth`` (0.1),
    ``step`` (0.3, angle increment in radians).
k_star
    Near-diameters of one disk cycling through ``k`` directions.  Every
    edge passes close to the hub, so the ball of twice the radius around
    it already certifies packedness close to ``n - 1``.  Params: ``k``
    (8), ``radius`` (1.0).
perturbed_copy
    Moves every vertex of a base curve by at most ``sigma``, so the Fréchet
    distance to the base is at most ``sigma``.  Params: ``sigma`` (0.1).
    Without an explicit base, a ``random_walk`` with the same ``n``, ``d``
    and ``seed`` is used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._rng import SplitMix64
from .errors import UsageError
from .geometry import Curve

__all__ = ["FAMILIES", "GenSpec", "generate", "k_star_adversary", "perturb"]

FAMILIES = ("random_walk", "straight_line", "zigzag", "spiral", "k_star", "perturbed_copy")


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int
    d: int = 2
    seed: int = 0
    params: dict = field(default_factory=dict)


def _random_walk(rng, n, d, step=1.0):
    pts = np.zeros((n, d))
    for i in range(1, n):
        for k in range(d):
            pts[i, k] = pts[i - 1, k] + rng.uniform(-step, step)
    return pts


def _straight_line(rng, n, d, spacing=1.0):
    pts = np.zeros((n, d))
    for i in range(1, n):
        pts[i, 0] = pts[i - 1, 0] + spacing * rng.uniform(0.5, 1.5)
    return pts


def _zigzag(rng, n, d, spacing=1.0, amplitude=1.0, jitter=0.1):
    if d < 2:
        raise UsageError("zigzag needs d >= 2")
    pts = np.zeros((n, d))
    for i in range(n):
        pts[i, 0] = i * spacing + rng.uniform(-jitter, jitter)
        pts[i, 1] = amplitude * (1 if i % 2 == 0 else -1) + rng.uniform(-jitter, jitter)
    return pts


def _spiral(rng, n, d, growth=0.1, step=0.3):
    if d < 2:
        raise UsageError("spiral needs d >= 2")
    pts = np.zeros((n, d))
    theta = 0.0
    for i in range(n):
        theta += step * rng.uniform(0.8, 1.2)
        r = growth * theta
        pts[i, 0] = r * math.cos(theta)
        pts[i, 1] = r * math.sin(theta)
    return pts


def _k_star(rng, n, d, k=8, radius=1.0):
    if d < 2:
        raise UsageError("k_star needs d >= 2")
    k = int(k)
    if k < 1:
        raise UsageError("k_star needs k >= 1")
    pts = np.zeros((n, d))
    for i in range(n):
        a = math.pi * (i % k) / k
        sign = 1.0 if i % 2 == 0 else -1.0
        pts[i, 0] = sign * radius * math.cos(a)
        pts[i, 1] = sign * radius * math.sin(a)
    return pts


def perturb(curve, sigma, seed=0):
    """Copy of ``curve`` with every vertex moved by at most ``sigma``."""
    if sigma < 0:
        raise UsageError("sigma must be nonnegative")
    rng = SplitMix64(seed)
    d = curve.dim
    half = sigma / math.sqrt(d)
    pts = np.array(curve.points, dtype=float)
    for i in range(len(pts)):
        for k in range(d):
            pts[i, k] += rng.uniform(-half, half)
    return Curve(pts)


_BUILDERS = {
    "random_walk": _random_walk,
    "straight_line": _straight_line,
    "zigzag": _zigzag,
    "spiral": _spiral,
    "k_star": _k_star,
}


def generate(spec, base=None):
    """Build the curve described by ``spec``."""
    if spec.family not in FAMILIES:
        raise UsageError(f"unknown family {spec.family!r}; choose from {', '.join(FAMILIES)}")
    if spec.n < 1 or spec.d < 1:
        raise UsageError("n and d must be positive")
    params = dict(spec.params)
    if spec.family == "perturbed_copy":
        sigma = float(params.pop("sigma", 0.1))
        if params:
            raise UsageError(f"unexpected params for perturbed_copy: {sorted(params)}")
        if base is None:
            base = generate(GenSpec("random_walk", spec.n, spec.d, spec.seed))
        # distinct stream from the one that built the base
        return perturb(base, sigma, seed=spec.seed ^ 0x5DEECE66D)
    rng = SplitMix64(spec.seed)
    try:
        pts = _BUILDERS[spec.family](rng, spec.n, spec.d, **params)
    except TypeError as exc:
        raise UsageError(f"bad params for {spec.family}: {exc}") from None
    return Curve(pts)


def k_star_adversary(k=200, n=1200, m=1200, radius=0.5, tail=100.0, d=2):
    """Pair of dense hub curves whose reachable free space is nearly the full grid.

    Both curves are ``k_star`` tangles of the given ``radius``; the first
    one ends with an extra far vertex at distance ``tail``.  At threshold
    ``delta >= 2 * radius`` every cell of the tangle block is free and
    reachable, while the far vertex keeps ``d_F`` near ``tail``.
    """
    p = _k_star(None, n, d, k=k, radius=radius)
    q = _k_star(None, m, d, k=k, radius=radius * 0.999)
    far = np.zeros((1, d))
    far[0, 0] = tail
    return Curve(np.vstack([p, far])), Curve(q)
