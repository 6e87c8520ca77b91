"""Instance builders shared by the test modules."""

import math

import numpy as np

from packfrechet._rng import SplitMix64
from packfrechet.gen import GenSpec, generate
from packfrechet.geometry import Curve


def parallel_segments(gap=3.0, length=10.0, d=2):
    """Two parallel segments at distance ``gap``; their Fréchet distance is ``gap``."""
    a = np.zeros((2, d))
    b = np.zeros((2, d))
    a[1, 0] = b[1, 0] = length
    b[:, 1] = gap
    return Curve(a), Curve(b)


def random_walk_pair(seed, lo=20, hi=40, d=2):
    rng = SplitMix64(seed)
    n = lo + rng.below(hi - lo + 1)
    m = lo + rng.below(hi - lo + 1)
    p = generate(GenSpec("random_walk", n, d, seed * 2 + 1))
    q = generate(GenSpec("random_walk", m, d, seed * 2 + 2))
    return p, q


def path_is_free(path, p, q, delta, samples=8, rel=1e-7):
    """Check a parameter-space polyline: monotone and every sample within delta."""
    from packfrechet.geometry import point_at

    slack = delta * (1 + rel) + rel
    for (x0, y0), (x1, y1) in zip(path, path[1:]):
        if x1 < x0 - 1e-12 or y1 < y0 - 1e-12:
            return False
        for k in range(samples + 1):
            t = k / samples
            x = x0 + t * (x1 - x0)
            y = y0 + t * (y1 - y0)
            if math.dist(point_at(p, x), point_at(q, y)) > slack:
                return False
    return True
