"""Approximate deciders on top of simplification and budgeted reachability.

Both deciders simplify the inputs greedily with ``mu = eps * delta / 4`` and
explore the free space of the simplifications at ``(1 + eps / 2) * delta``.
By the triangle inequality a reachable goal means
``d_F(P, Q) <= (1 + eps) * delta`` and an unreachable one means
``d_F(P, Q) > delta``.
"""

from __future__ import annotations

import enum
import math
import sys
from typing import NamedTuple, Optional

from .errors import UsageError
from .freespace import bounded_reachability
from .simplify import greedy_simplify

__all__ = [
    "Decision",
    "Verdict",
    "K_c_delta",
    "approx_decider",
    "budget_K",
    "fallible_decider",
]

MAX_COUNT = sys.maxsize


class Verdict(enum.Enum):
    YES = "Yes"
    NO = "No"
    TIMEOUT = "Timeout"

    def __str__(self):
        return self.value


class Decision(NamedTuple):
    verdict: Verdict
    cells_explored: int
    #: cell budget, ``None`` for the unbudgeted decider
    budget: Optional[int]
    simplified_sizes: tuple

    def as_dict(self):
        return {
            "verdict": self.verdict.value,
            "cells_explored": self.cells_explored,
            "budget": self.budget,
            "simplified_sizes": list(self.simplified_sizes),
        }


def _ceil_count(x):
    if not math.isfinite(x) or x >= MAX_COUNT:
        return MAX_COUNT
    return int(math.ceil(x))


def _check_eps(eps):
    if not 0 < eps <= 1:
        raise UsageError(f"eps must lie in (0, 1], got {eps}")


def budget_K(c_prime, eps, n, m):
    """Cell budget ``ceil((1+eps)^2 (27 c' + 96 c' / eps) (n + m))``, saturating."""
    if not c_prime > 0:
        raise UsageError(f"c_prime must be positive, got {c_prime}")
    _check_eps(eps)
    if n < 1 or m < 1:
        raise UsageError("curve sizes must be >= 1")
    return _ceil_count((1 + eps) ** 2 * (27 * c_prime + 96 * c_prime / eps) * (n + m))


def K_c_delta(c, eps, alpha, n, m):
    """Free-space cell bound ``ceil((27 c + 48 c (1 + alpha) / eps) (n + m))``."""
    if c < 0 or alpha < 0:
        raise UsageError("c and alpha must be nonnegative")
    _check_eps(eps)
    return _ceil_count((27 * c + 48 * c * (1 + alpha) / eps) * (n + m))


def _decide(p, q, delta, eps, budget):
    if not delta > 0:
        raise UsageError(f"delta must be positive, got {delta}")
    _check_eps(eps)
    mu = eps * delta / 4
    sp = greedy_simplify(p, mu).curve
    sq = greedy_simplify(q, mu).curve
    res = bounded_reachability(sp, sq, (1 + eps / 2) * delta, budget)
    if res.goal_reached:
        verdict = Verdict.YES
    elif res.budget_exceeded:
        verdict = Verdict.TIMEOUT
    else:
        verdict = Verdict.NO
    return Decision(verdict, res.cells_explored, budget, (len(sp), len(sq)))


def approx_decider(p, q, delta, eps):
    """Unbudgeted approximate decider: Yes or No, never Timeout.

    Its running time is only controlled when ``delta`` is not much smaller
    than ``d_F(p, q)``; callers are expected to respect that.
    """
    return _decide(p, q, delta, eps, None)


def fallible_decider(p, q, delta, eps, c_prime):
    """Approximate decider that gives up after ``budget_K(c_prime, eps, n, m)`` cells.

    Timeout means that neither curve is ``c_prime``-packed or that
    ``d_F(p, q) > delta``.
    """
    budget = budget_K(c_prime, eps, len(p), len(q))
    return _decide(p, q, delta, eps, budget)
