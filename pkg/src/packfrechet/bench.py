"""Benchmark harness and the JSON run reports shared with the CLI.

A suite is a JSON object::

    {"seed": 1,
     "instances": [
        {"name": "lines", "family": "straight_line", "n": [1000, 2000],
         "partner": "perturbed_copy", "sigma": 0.1, "eps": [0.2],
         "mode": "approx"},
        {"name": "hub", "family": "k_star_adversary", "k": 200, "n": [1200],
         "eps": [1.0], "mode": "decide", "c_prime": 1, "delta": 1.0}
     ]}

``mode`` is ``approx`` (self-contained driver), ``decide`` (fallible
decider with ``c_prime``) or ``approx_decide`` (unbudgeted decider).
Thresholds are absolute (``delta``) or relative to the greedy over-estimate
(``delta_factor``).  ``partner`` picks the second curve: ``perturbed_copy``
(default), ``random_walk`` or ``same_family`` (same family, next seed).
``oracle: true`` adds exact bisection brackets and sandwich checks.
"""

from __future__ import annotations

import os
import statistics
import time
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .decide import approx_decider, fallible_decider
from .errors import UsageError
from .freespace import bounded_reachability
from .gen import GenSpec, generate, k_star_adversary, perturb
from .oracle import bisect_frechet
from .search import EPS_SPLIT, approx_frechet, exponential_approx
from .simplify import greedy_simplify
from .svg import render_exploration

__all__ = ["expand_suite", "run_bench", "run_report", "summarize"]


def run_report(command, inputs, result, stats):
    """Assemble the single JSON object every subcommand prints."""
    return {
        "command": command,
        "inputs": inputs,
        "result": result,
        "stats": stats,
        "version": __version__,
    }


def _as_list(x):
    return list(x) if isinstance(x, (list, tuple)) else [x]


def expand_suite(suite, seed=None):
    """Flatten a suite into one job dict per (entry, n, eps, repeat)."""
    base_seed = int(seed if seed is not None else suite.get("seed", 0))
    jobs = []
    for idx, entry in enumerate(suite.get("instances", [])):
        if "family" not in entry:
            raise UsageError(f"suite entry {idx} has no family")
        mode = entry.get("mode", "approx")
        if mode not in ("approx", "decide", "approx_decide"):
            raise UsageError(f"unknown bench mode {mode!r}")
        for n in _as_list(entry.get("n", 100)):
            for eps in _as_list(entry.get("eps", 0.2)):
                for rep in range(int(entry.get("repeats", 1))):
                    job = dict(entry)
                    job.update(
                        name=entry.get("name", f"entry{idx}"),
                        n=int(n),
                        eps=float(eps),
                        mode=mode,
                        seed=base_seed + 1000 * idx + rep,
                    )
                    jobs.append(job)
    return jobs


def _build_pair(job):
    family, n, d, seed = job["family"], job["n"], int(job.get("d", 2)), job["seed"]
    if family == "k_star_adversary":
        return k_star_adversary(
            k=int(job.get("k", 200)),
            n=n,
            m=int(job.get("m", n)),
            radius=float(job.get("radius", 0.5)),
            tail=float(job.get("tail", 100.0)),
            d=d,
        )
    p = generate(GenSpec(family, n, d, seed, dict(job.get("params", {}))))
    partner = job.get("partner", "perturbed_copy")
    m = int(job.get("m", n))
    if partner == "perturbed_copy":
        q = perturb(p, float(job.get("sigma", 0.1)), seed=seed + 1)
    elif partner == "random_walk":
        q = generate(GenSpec("random_walk", m, d, seed + 1))
    elif partner == "same_family":
        q = generate(GenSpec(family, m, d, seed + 1, dict(job.get("params", {}))))
    else:
        raise UsageError(f"unknown partner {partner!r}")
    return p, q


def _threshold(job, p, q):
    if "delta" in job:
        return float(job["delta"])
    return float(job.get("delta_factor", 1.0)) * exponential_approx(p, q)


def _run_job(job, svg_dir=None):
    p, q = _build_pair(job)
    eps = job["eps"]
    inputs = {
        "suite": job["name"],
        "family": job["family"],
        "n": len(p),
        "m": len(q),
        "d": p.dim,
        "seed": job["seed"],
        "eps": eps,
        "mode": job["mode"],
    }
    t0 = time.perf_counter()
    if job["mode"] == "approx":
        rep = approx_frechet(p, q, eps)
        result = {"value": rep.value, "final_c_prime": rep.final_c_prime,
                  "over_estimate_used": rep.over_estimate_used}
        stats = {"cells_explored": rep.total_cells, "decider_calls": rep.decider_calls}
        svg_delta, svg_eps, svg_budget = rep.value / (1 + eps / EPS_SPLIT), eps / EPS_SPLIT, None
    else:
        delta = _threshold(job, p, q)
        if job["mode"] == "decide":
            c_prime = float(job.get("c_prime", 1.0))
            dec = fallible_decider(p, q, delta, eps, c_prime)
            inputs["c_prime"] = c_prime
        else:
            dec = approx_decider(p, q, delta, eps)
        inputs["delta"] = delta
        result = dec.as_dict()
        stats = {"cells_explored": dec.cells_explored, "decider_calls": 1}
        svg_delta, svg_eps, svg_budget = delta, eps, dec.budget
    stats["wall_time_ms"] = 1000.0 * (time.perf_counter() - t0)

    if job.get("oracle"):
        br = bisect_frechet(p, q)
        result["oracle"] = {"lo": br.lo, "hi": br.hi}
        if "value" in result:
            result["sandwich_ok"] = bool(
                br.lo * (1 - 1e-6) <= result["value"] <= (1 + eps) * br.hi * (1 + 1e-6)
            )

    if svg_dir is not None and svg_delta > 0:
        mu = svg_eps * svg_delta / 4
        sp = greedy_simplify(p, mu).curve
        sq = greedy_simplify(q, mu).curve
        res = bounded_reachability(sp, sq, (1 + svg_eps / 2) * svg_delta, svg_budget, keep_cells=True)
        fname = f"{job['name']}_n{job['n']}_eps{eps:g}_s{job['seed']}.svg"
        with open(os.path.join(svg_dir, fname), "w", encoding="utf-8") as fh:
            fh.write(render_exploration(res, max(1, len(sp) - 1), max(1, len(sq) - 1), fname))
        stats["svg"] = fname
    return run_report("bench", inputs, result, stats)


def _run_job_star(args):
    return _run_job(*args)


def run_bench(suite, seed=None, svg_dir=None, workers=1):
    """Yield one run report per expanded job, in suite order."""
    jobs = expand_suite(suite, seed)
    if svg_dir is not None:
        os.makedirs(svg_dir, exist_ok=True)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            yield from pool.map(_run_job_star, [(job, svg_dir) for job in jobs])
    else:
        for job in jobs:
            yield _run_job(job, svg_dir)


def summarize(reports):
    """Per-suite-entry aggregates: cells per (n + m), verdicts, scaling ratios."""
    groups = {}
    for r in reports:
        groups.setdefault(r["inputs"]["suite"], []).append(r)
    out = {}
    for name, rs in groups.items():
        per_size = {}
        verdicts = {}
        for r in rs:
            size = r["inputs"]["n"] + r["inputs"]["m"]
            per_size.setdefault(r["inputs"]["n"], []).append(
                (r["stats"]["cells_explored"], r["stats"]["wall_time_ms"], size)
            )
            v = r["result"].get("verdict")
            if v is not None:
                verdicts[v] = verdicts.get(v, 0) + 1
        sizes = sorted(per_size)
        rows = []
        for n in sizes:
            cells = statistics.median(c for c, _, _ in per_size[n])
            wall = statistics.median(w for _, w, _ in per_size[n])
            nm = statistics.median(s for _, _, s in per_size[n])
            rows.append({"n": n, "median_cells": cells, "median_wall_ms": wall,
                         "cells_per_size": cells / nm})
        for prev, cur in zip(rows, rows[1:]):
            cur["cells_ratio"] = cur["median_cells"] / prev["median_cells"] if prev["median_cells"] else None
            cur["time_ratio"] = cur["median_wall_ms"] / prev["median_wall_ms"] if prev["median_wall_ms"] else None
        checked = [r for r in rs if "sandwich_ok" in r["result"]]
        out[name] = {
            "instances": len(rs),
            "median_cells_per_size": statistics.median(
                r["stats"]["cells_explored"] / (r["inputs"]["n"] + r["inputs"]["m"]) for r in rs
            ),
            "verdicts": verdicts,
            "sandwich_checked": len(checked),
            "sandwich_violations": sum(1 for r in checked if not r["result"]["sandwich_ok"]),
            "by_size": rows,
        }
    return out
