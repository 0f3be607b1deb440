"""
Derivative-free maximisation over a few bounded parameters.

A coarse tensor grid locates the best sample; each axis is then refined with
golden-section search on the bracket of neighbouring grid points through the
current best point. Ties go to the lowest parameter values (the first sample
in grid order wins).
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .core import ValidationError

__all__ = ["OptimizeResult", "golden_section", "grid_then_golden"]

INV_PHI = (math.sqrt(5) - 1) / 2


@dataclass
class OptimizeResult:
    x: tuple
    value: float
    trace: list = field(default_factory=list)  # (phase, step, x, value)


def golden_section(fn: Callable[[float], float], lo: float, hi: float, tol: float = 1e-6, max_iter: int = 200):
    """Maximise a unimodal ``fn`` on ``[lo, hi]``; returns ``(x, f(x), evaluations)``.

    Both end points are compared against the interior optimum, so monotone
    objectives return the bound.
    """
    evals = []

    def f(x):
        v = fn(x)
        evals.append((x, v))
        return v

    if hi == lo:
        return lo, f(lo), evals
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    mid = 0.5 * (a + b)
    candidates = [(lo, f(lo)), (mid, f(mid)), (hi, f(hi))]
    best = candidates[0]
    for x, v in candidates[1:]:
        if v > best[1]:
            best = (x, v)
    return best[0], best[1], evals


def _map(fn, items, threads: int):
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def grid_then_golden(
    fn: Callable[[Sequence[float]], float],
    bounds: Sequence[tuple],
    points: int = 33,
    tol: float = 1e-6,
    threads: int = 1,
) -> OptimizeResult:
    """Maximise ``fn`` over a box of 1 to 3 parameters."""
    if not 1 <= len(bounds) <= 3:
        raise ValidationError("optimise over 1 to 3 free parameters")
    for lo, hi in bounds:
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValidationError("every free parameter needs finite bounds")
        if hi < lo:
            raise ValidationError("lower bound exceeds upper bound")
    if points < 2:
        raise ValidationError("need at least 2 grid points per axis")

    axes = [np.linspace(lo, hi, points) if hi > lo else np.array([lo]) for lo, hi in bounds]
    samples = [tuple(float(v) for v in p) for p in itertools.product(*axes)]
    values = _map(lambda p: float(fn(p)), samples, threads)

    trace = []
    best_i = 0
    for i, (p, v) in enumerate(zip(samples, values)):
        trace.append(("grid", i, p, v))
        if v > values[best_i]:
            best_i = i
    best_x, best_v = list(samples[best_i]), values[best_i]

    step = 0
    for axis, (lo, hi) in enumerate(bounds):
        if hi == lo:
            continue
        h = (hi - lo) / (points - 1)
        a, b = max(lo, best_x[axis] - h), min(hi, best_x[axis] + h)

        def line(x, axis=axis):
            p = list(best_x)
            p[axis] = x
            return float(fn(tuple(p)))

        x, v, evals = golden_section(line, a, b, tol=tol * max(1.0, hi - lo))
        for ex, ev in evals:
            p = list(best_x)
            p[axis] = ex
            trace.append(("golden", step, tuple(p), ev))
            step += 1
        if v > best_v:
            best_x[axis], best_v = x, v

    return OptimizeResult(tuple(best_x), best_v, trace)
