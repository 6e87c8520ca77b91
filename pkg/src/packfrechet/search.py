"""Top-level (1 + eps)-approximation drivers.

Two drivers share one pattern: shrink an over-estimate geometrically until
the decider stops saying Yes, then binary-search the resulting index range
for an adjacent (Yes, not-Yes) pair.  The deciders are not monotone inside
their gray zone, but any such pair brackets the distance.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

from .decide import Verdict, approx_decider, budget_K, fallible_decider
from .errors import ContractError, UsageError
from .freespace import bounded_reachability

__all__ = [
    "EPS_SPLIT",
    "ApproxReport",
    "approx_frechet",
    "approx_with_estimate",
    "exponential_approx",
    "refine_upper_bound",
]

#: The inner searches run at eps / EPS_SPLIT so that two factors compose
#: to at most (1 + eps).
EPS_SPLIT = 3


@dataclass
class ApproxReport:
    value: float
    decider_calls: int = 0
    total_cells: int = 0
    final_c_prime: Optional[float] = None
    over_estimate_used: float = 0.0

    def as_dict(self):
        return asdict(self)


def _at(verts, t):
    """Point at zero-based parameter ``t``."""
    k = int(t)
    if k >= len(verts) - 1:
        return verts[-1]
    f = t - k
    if f == 0.0:
        return verts[k]
    a, b = verts[k], verts[k + 1]
    return tuple(x + f * (y - x) for x, y in zip(a, b))


def _closest_param(verts, t0, t1, target):
    """Parameter in ``[t0, t1]`` (same edge) closest to ``target``."""
    a = _at(verts, t0)
    b = _at(verts, t1)
    u = [y - x for x, y in zip(a, b)]
    uu = sum(x * x for x in u)
    if uu == 0.0:
        return t0
    s = sum((c - x) * y for c, x, y in zip(target, a, u)) / uu
    if s <= 0.0:
        return t0
    if s >= 1.0:
        return t1
    return t0 + s * (t1 - t0)


def exponential_approx(p, q):
    """Greedy upper bound on ``d_F(p, q)``.

    Walks both curves from their starts; each step moves one curve to its
    next vertex and the other to the closest point on its current edge,
    whichever pairing is closer.  Every step is a straight segment inside
    one cell, so the largest distance seen bounds ``d_F`` from above.
    """
    if p.dim != q.dim:
        raise UsageError(f"dimension mismatch: {p.dim} vs {q.dim}")
    vp, vq = p.vertices, q.vertices
    last_x, last_y = len(vp) - 1, len(vq) - 1
    x = y = 0
    d = math.dist(vp[0], vq[0])
    while x != last_x or y != last_y:
        nx = int(x) + 1 if x < last_x else last_x
        ny = int(y) + 1 if y < last_y else last_y
        if x == last_x or y == last_y:
            x, y = nx, ny
        else:
            q_next = vq[ny]
            p_next = vp[nx]
            xs = _closest_param(vp, x, nx, q_next)
            ys = _closest_param(vq, y, ny, p_next)
            if math.dist(_at(vp, xs), q_next) <= math.dist(p_next, _at(vq, ys)):
                x, y = xs, ny
            else:
                x, y = nx, ys
        d = max(d, math.dist(_at(vp, x), _at(vq, y)))
    return d


class _Probe:
    """Memoized decider calls along one geometric sequence of thresholds."""

    def __init__(self, decide, report):
        self.decide = decide
        self.report = report
        self.cache = {}

    def __call__(self, key, delta):
        if key not in self.cache:
            dec = self.decide(delta)
            self.report.decider_calls += 1
            self.report.total_cells += dec.cells_explored
            self.cache[key] = dec.verdict
        return self.cache[key]


def _flip_search(probe, deltas, lo, hi):
    """Adjacent pair ``(i - 1, i)`` with Yes at ``i - 1`` and not-Yes at ``i``.

    Requires Yes at ``lo`` and not-Yes at ``hi``; ``deltas(i)`` maps an
    index to its threshold.
    """
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if probe(mid, deltas(mid)) is Verdict.YES:
            lo = mid
        else:
            hi = mid
    assert probe(lo, deltas(lo)) is Verdict.YES
    assert probe(hi, deltas(hi)) is not Verdict.YES
    return hi


def approx_with_estimate(p, q, delta_plus, eps):
    """(1 + eps)-approximation from a caller-supplied over-estimate ``delta_plus``.

    Halves ``delta_plus`` until the approximate decider (at ``eps / 3``)
    stops saying Yes, then binary-searches the factor-two range in steps of
    ``1 + eps / 3``.  Only ever calls the decider at thresholds above
    ``d_F / (2 (1 + eps / 3))``, which keeps each call near-linear.
    """
    if not 0 < eps <= 1:
        raise UsageError(f"eps must lie in (0, 1], got {eps}")
    if not delta_plus > 0:
        raise UsageError("delta_plus must be positive")
    eps_i = eps / EPS_SPLIT
    report = ApproxReport(0.0, over_estimate_used=float(delta_plus))
    halving = _Probe(lambda d: approx_decider(p, q, d, eps_i), report)
    if halving(0, delta_plus) is not Verdict.YES:
        raise ContractError(f"delta_plus={delta_plus} is below the Fréchet distance")
    b = 1
    while halving(b, delta_plus / 2**b) is Verdict.YES:
        b += 1
    top = delta_plus / 2 ** (b - 1)
    steps = math.ceil(math.log(2) / math.log1p(eps_i))
    # index `steps` is the known No at top / 2; all earlier thresholds are larger
    def deltas(i):
        return top / 2 if i == steps else top / (1 + eps_i) ** i

    fine = _Probe(lambda d: approx_decider(p, q, d, eps_i), report)
    fine.cache[0] = Verdict.YES
    fine.cache[steps] = halving.cache[b]
    i = _flip_search(fine, deltas, 0, steps)
    report.value = (1 + eps_i) * deltas(i - 1)
    return report


def refine_upper_bound(p, q, delta_plus, eps):
    """Search ``d_F`` below ``delta_plus`` while estimating packedness.

    Uses the fallible decider with a packedness guess ``c'`` that starts at
    1 and doubles whenever a Timeout makes the current bracket unusable.
    The result satisfies ``d_F <= value < (1 + eps)^2 d_F``.
    """
    if not 0 < eps <= 1:
        raise UsageError(f"eps must lie in (0, 1], got {eps}")
    if not delta_plus > 0:
        raise UsageError("delta_plus must be positive")
    n, m = len(p), len(q)
    # a budget this large cannot be exceeded: there are fewer cells than that
    saturated = n * m
    report = ApproxReport(0.0, over_estimate_used=float(delta_plus))

    def deltas(i):
        return delta_plus / (1 + eps) ** i

    c_prime = 1.0
    while True:
        report.final_c_prime = c_prime
        probe = _Probe(lambda d, c=c_prime: fallible_decider(p, q, d, eps, c), report)
        start = probe(0, delta_plus)
        if start is Verdict.NO:
            raise ContractError(f"delta_plus={delta_plus} is below the Fréchet distance")
        if start is Verdict.YES:
            b = 0
            while True:
                d_b = deltas(2**b)
                if d_b == 0.0:
                    # distance indistinguishable from zero in floating point
                    report.value = (1 + eps) * deltas(2 ** (b - 1) if b else 0)
                    return report
                if probe(2**b, d_b) is not Verdict.YES:
                    break
                b += 1
            lo = 2 ** (b - 1) if b > 0 else 0
            i = _flip_search(probe, deltas, lo, 2**b)
            if probe(i, deltas(i)) is Verdict.NO:
                report.value = (1 + eps) * deltas(i - 1)
                return report
        if budget_K(c_prime, eps, n, m) >= saturated:
            raise AssertionError("fallible decider timed out with a saturated budget")
        c_prime *= 2


def approx_frechet(p, q, eps, delta_plus=None):
    """(1 + eps)-approximation of the Fréchet distance.

    Without ``delta_plus`` the over-estimate comes from
    :func:`exponential_approx` and the packedness-adaptive search runs at
    ``eps / 3``.  With ``delta_plus`` the halving search of
    :func:`approx_with_estimate` is used instead.
    """
    if not 0 < eps <= 1:
        raise UsageError(f"eps must lie in (0, 1], got {eps}")
    if p.dim != q.dim:
        raise UsageError(f"dimension mismatch: {p.dim} vs {q.dim}")
    if delta_plus is None:
        over = exponential_approx(p, q)
        if over == 0.0:
            return ApproxReport(0.0, over_estimate_used=0.0)
        return refine_upper_bound(p, q, over, eps / EPS_SPLIT)
    if delta_plus < 0:
        raise UsageError("delta_plus must be nonnegative")
    if delta_plus == 0:
        if not bounded_reachability(p, q, 0.0).goal_reached:
            raise ContractError("delta_plus=0 is below the Fréchet distance")
        return ApproxReport(0.0, over_estimate_used=0.0)
    return approx_with_estimate(p, q, delta_plus, eps)
