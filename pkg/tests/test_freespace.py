import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from packfrechet._rng import SplitMix64
from packfrechet.errors import UsageError
from packfrechet.freespace import (
    CellRecord,
    Interval,
    bounded_reachability,
    free_interval_on_horizontal_edge,
    free_interval_on_vertical_edge,
    propagate_cell,
    witness_path,
)
from packfrechet.gen import GenSpec, generate
from packfrechet.geometry import TAU, Curve
from packfrechet.oracle import bisect_frechet, exact_decide

from helpers import parallel_segments, path_is_free, random_walk_pair


def test_free_interval_examples():
    edge = ((0, -1), (0, 1))
    iv = free_interval_on_vertical_edge((0, 0), edge, 0.5)
    assert iv == pytest.approx((0.25, 0.75))
    assert free_interval_on_vertical_edge((10, 0), edge, 1) is None
    assert free_interval_on_horizontal_edge((0, 0), ((0, 0), (1, 0)), 0) == (0, 0)


def test_free_interval_rejects_bad_input():
    with pytest.raises(UsageError):
        free_interval_on_vertical_edge((0, 0), ((0, 0), (1, 0)), -1)
    with pytest.raises(UsageError):
        free_interval_on_vertical_edge((0, 0, 0), ((0, 0), (1, 0)), 1)


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.floats(-5, 5), min_size=6, max_size=6),
    st.floats(0, 6),
)
def test_free_interval_matches_sampling(coords, delta):
    v = np.array(coords[:2])
    a = np.array(coords[2:4])
    b = np.array(coords[4:])
    if np.linalg.norm(b - a) < 1e-3:
        b = a + 1.0
    iv = free_interval_on_vertical_edge(v, (a, b), delta)
    s = np.linspace(0, 1, 401)
    d = np.linalg.norm(a + s[:, None] * (b - a) - v, axis=1)
    free = d <= delta
    if iv is None:
        assert not free.any() or (d[free] >= delta - 1e-6).all()
        return
    lo, hi = iv
    assert 0 <= lo <= hi <= 1
    inside = (s >= lo) & (s <= hi)
    # samples strictly inside are free, samples clearly outside are not
    assert (d[inside] <= delta + 1e-7).all()
    far = (s < lo - 1e-6) | (s > hi + 1e-6)
    assert (d[far] > delta - 1e-7).all()


def test_propagate_no_entry_no_exit():
    rec = CellRecord((0, 0), None, None)
    assert propagate_cell(rec, Interval(0, 1), Interval(0, 1)) == (None, None)


def test_propagate_full_bottom_dominates():
    rec = CellRecord((0, 0), None, Interval(0.0, 1.0))
    _, top = propagate_cell(rec, None, Interval(0.3, 0.7))
    assert top == (0.3, 0.7)


def test_propagate_left_entry_reaches_whole_free_top():
    # any top point lies weakly above and right of any left-edge point
    rec = CellRecord((0, 0), Interval(0.6, 0.8), None)
    right, top = propagate_cell(rec, None, Interval(0.2, 0.5))
    assert right is None
    assert top == (0.2, 0.5)


def test_propagate_bottom_entry_clips_top():
    rec = CellRecord((0, 0), None, Interval(0.6, 0.8))
    _, top = propagate_cell(rec, None, Interval(0.2, 0.5))
    assert top is None
    _, top = propagate_cell(rec, None, Interval(0.2, 0.7))
    assert top == (0.6, 0.7)


def _raster_reach(pa, pb, qa, qb, delta, left, bottom, g=200):
    """Grid reachability inside one cell; returns reachable flags on top and right edges."""
    t = np.linspace(0.0, 1.0, g + 1)
    P = pa + t[:, None] * (pb - pa)
    Q = qa + t[:, None] * (qb - qa)
    free = np.linalg.norm(P[:, None, :] - Q[None, :, :], axis=2) <= delta
    reach = np.zeros_like(free)
    for x in range(g + 1):
        for y in range(g + 1):
            if not free[x, y]:
                continue
            seed = (x == 0 and left is not None and left[0] <= t[y] <= left[1]) or (
                y == 0 and bottom is not None and bottom[0] <= t[x] <= bottom[1]
            )
            prev = (x > 0 and reach[x - 1, y]) or (y > 0 and reach[x, y - 1]) or (
                x > 0 and y > 0 and reach[x - 1, y - 1]
            )
            reach[x, y] = seed or prev
    return t, reach[:, g], reach[g, :]


def _sub_interval(rng, iv):
    if iv is None or rng.uniform() < 0.25:
        return None
    a, b = sorted((rng.uniform(iv.lo, iv.hi), rng.uniform(iv.lo, iv.hi)))
    return Interval(a, b)


def test_propagate_against_raster():
    rng = SplitMix64(2024)
    margin = 4 / 200
    checked = 0
    for _ in range(400):
        pa, pb, qa, qb = (np.array([rng.uniform(-2, 2), rng.uniform(-2, 2)]) for _ in range(4))
        delta = rng.uniform(0.3, 2.5)
        free_left = free_interval_on_vertical_edge(pa, (qa, qb), delta)
        free_bottom = free_interval_on_horizontal_edge(qa, (pa, pb), delta)
        left = _sub_interval(rng, free_left)
        bottom = _sub_interval(rng, free_bottom)
        if left is None and bottom is None:
            continue
        if (left and left.hi - left.lo < 3 * margin) or (bottom and bottom.hi - bottom.lo < 3 * margin):
            continue
        free_right = free_interval_on_vertical_edge(pb, (qa, qb), delta)
        free_top = free_interval_on_horizontal_edge(qb, (pa, pb), delta)
        right, top = propagate_cell(CellRecord((0, 0), left, bottom), free_right, free_top)
        t, top_r, right_r = _raster_reach(pa, pb, qa, qb, delta, left, bottom)
        for exit_iv, flags in ((top, top_r), (right, right_r)):
            # no raster point clearly outside the computed exit is reachable
            for k, s in enumerate(t):
                if exit_iv is None or s < exit_iv.lo - margin or s > exit_iv.hi + margin:
                    assert not flags[k], (pa, pb, qa, qb, delta, left, bottom, s)
            # the raster can miss thin slivers, so only the midpoint of wide exits is checked
            if exit_iv is not None and exit_iv.hi - exit_iv.lo > 6 * margin:
                assert flags[int(round((exit_iv.lo + exit_iv.hi) / 2 * 200))]
        checked += 1
    assert checked > 100


def test_identical_curves_reach_goal():
    c = generate(GenSpec("random_walk", 30, 2, 3))
    for delta in (0.0, 0.1, 1.0):
        assert bounded_reachability(c, c, delta).goal_reached


def test_parallel_unit_segments_half_delta_unreachable():
    a, b = parallel_segments(1.0)
    res = bounded_reachability(a, b, 0.5)
    assert not res.goal_reached and not res.budget_exceeded


@pytest.mark.parametrize("seed", range(40))
def test_matches_exact_decide(seed):
    p, q = random_walk_pair(seed, 5, 25)
    br = bisect_frechet(p, q, 1e-6)
    for f in (0.7, 0.97, 1.03, 1.5):
        delta = f * br.hi
        assert bounded_reachability(p, q, delta).goal_reached == exact_decide(p, q, delta)


@pytest.mark.parametrize("seed", range(20))
def test_witness_path_is_monotone_and_free(seed):
    p, q = random_walk_pair(seed, 5, 20)
    delta = bisect_frechet(p, q, 1e-6).hi * 1.01
    res = bounded_reachability(p, q, delta, keep_cells=True)
    assert res.goal_reached
    path = witness_path(res, p, q)
    assert path[0] == (1.0, 1.0)
    assert path[-1] == pytest.approx((len(p), len(q)))
    assert path_is_free(path, p, q, delta)


def test_witness_requires_success_and_cells():
    a, b = parallel_segments(1.0)
    with pytest.raises(UsageError):
        witness_path(bounded_reachability(a, b, 0.5, keep_cells=True), a, b)
    with pytest.raises(UsageError):
        witness_path(bounded_reachability(a, b, 2.0), a, b)


@pytest.mark.parametrize("budget", [0, 1, 5, 50])
def test_budget_respected(budget):
    c = generate(GenSpec("zigzag", 40, 2, 1))
    res = bounded_reachability(c, c, 50.0, budget)
    assert res.cells_explored <= budget + 1
    assert res.budget_exceeded
    assert not res.goal_reached


def test_unlimited_budget_never_times_out():
    p, q = random_walk_pair(9)
    res = bounded_reachability(p, q, 100.0)
    assert res.goal_reached and not res.budget_exceeded
    assert res.cells_explored <= (len(p) - 1) * (len(q) - 1)


def test_budget_large_enough_same_answer():
    p, q = random_walk_pair(4)
    delta = bisect_frechet(p, q, 1e-6).hi * 1.2
    full = bounded_reachability(p, q, delta)
    capped = bounded_reachability(p, q, delta, full.cells_explored)
    assert capped.goal_reached == full.goal_reached
    assert capped.cells_explored == full.cells_explored


def test_single_vertex_sides():
    pt = Curve([[0, 0]])
    seg = Curve([[-1, 0], [1, 0]])
    assert bounded_reachability(pt, seg, 1.0).goal_reached
    assert not bounded_reachability(pt, seg, 0.99).goal_reached
    assert bounded_reachability(seg, pt, 1.0).goal_reached


def test_start_not_free():
    a = Curve([[0, 0], [1, 0]])
    b = Curve([[0, 5], [1, 0]])
    res = bounded_reachability(a, b, 1.0)
    assert not res.goal_reached and res.cells_explored == 0


def test_only_reachable_cells_are_explored():
    p, q = random_walk_pair(12)
    delta = bisect_frechet(p, q, 1e-6).hi * 1.1
    res = bounded_reachability(p, q, delta, keep_cells=True)
    for rec in res.cells.values():
        assert rec.reach_left is not None or rec.reach_bottom is not None
        for iv in (rec.reach_left, rec.reach_bottom):
            if iv is not None:
                assert -TAU <= iv.lo <= iv.hi <= 1 + TAU
    assert res.cells_explored == len(res.cells)


def test_dimension_mismatch():
    with pytest.raises(UsageError):
        bounded_reachability(Curve([[0, 0], [1, 0]]), Curve([[0, 0, 0], [1, 0, 0]]), 1)
