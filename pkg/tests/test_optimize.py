import math

import pytest
from hypothesis import given, settings, strategies as st

from wqed.core import ValidationError
from wqed.optimize import golden_section, grid_then_golden


def test_golden_parabola():
    x, v, evals = golden_section(lambda x: -(x - 0.3) ** 2, -1.0, 2.0, tol=1e-9)
    assert abs(x - 0.3) < 1e-8 and len(evals) > 10


def test_golden_monotone_hits_bound():
    assert golden_section(lambda x: x, 0.0, 10.0)[0] == 10.0
    assert golden_section(lambda x: -x, 0.0, 10.0)[0] == 0.0


def test_golden_degenerate():
    x, v, _ = golden_section(lambda x: x * x, 2.0, 2.0)
    assert (x, v) == (2.0, 4.0)


def test_grid_then_golden_two_axes():
    res = grid_then_golden(lambda p: -((p[0] - 0.37) ** 2) - 2 * (p[1] + 1.21) ** 2, [(-2, 2), (-3, 3)])
    assert abs(res.x[0] - 0.37) < 1e-5 and abs(res.x[1] + 1.21) < 1e-5
    assert [t[0] for t in res.trace[:33 * 33]] == ["grid"] * (33 * 33)


def test_degenerate_bounds_return_point():
    res = grid_then_golden(lambda p: p[0] + p[1], [(1.5, 1.5), (0.0, 1.0)])
    assert res.x == (1.5, 1.0)
    res = grid_then_golden(lambda p: 7.0, [(2.0, 2.0)])
    assert res.x == (2.0,) and res.value == 7.0


def test_ties_prefer_low_values():
    res = grid_then_golden(lambda p: 1.0, [(0.0, 1.0), (-1.0, 1.0)], points=5)
    assert res.x == (0.0, -1.0)


@pytest.mark.parametrize(
    "bounds, points",
    [([], 33), ([(0, 1)] * 4, 33), ([(0, math.inf)], 33), ([(1, 0)], 33), ([(0, 1)], 1)],
)
def test_rejects(bounds, points):
    with pytest.raises(ValidationError):
        grid_then_golden(lambda p: 0.0, bounds, points=points)


def test_threads_do_not_change_result():
    fn = lambda p: math.sin(3 * p[0]) * math.cos(2 * p[1])  # noqa: E731
    a = grid_then_golden(fn, [(0, 2), (0, 2)], points=17, threads=1)
    b = grid_then_golden(fn, [(0, 2), (0, 2)], points=17, threads=4)
    assert a.x == b.x and a.value == b.value and a.trace == b.trace


@settings(max_examples=30, deadline=None)
@given(st.floats(-5, 5), st.floats(0.1, 5))
def test_never_worse_than_grid(c, w):
    fn = lambda p: -abs(p[0] - c) + math.cos(p[0] / w)  # noqa: E731
    res = grid_then_golden(fn, [(-6.0, 6.0)], points=9)
    assert res.value >= max(v for phase, _, _, v in res.trace if phase == "grid")
