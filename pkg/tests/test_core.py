import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from wqed.core import (
    CavityParams,
    CrwParams,
    EmitterWaveguideParams,
    FrequencyGrid,
    SpectralResponse,
    ValidationError,
    absolute_frequencies,
    make_grid,
    validate,
)
from wqed import cavity, continuum, crw


def test_make_grid_three_points():
    g = make_grid(0.0, 5.0, 3)
    assert list(g.points) == [-5.0, 0.0, 5.0]
    assert g.uniform


def test_make_grid_lorentzian_axis():
    g = make_grid(0.0, 10.0, 1001, "detuning-from-emitter")
    assert g.points[0] == -10.0 and g.points[-1] == 10.0
    assert g.points[500] == 0.0
    assert g.frame == "detuning-from-emitter"


def test_make_grid_full_band():
    p = CrwParams(omega_c=3.0, xi=0.5, g=0.1)
    g = make_grid(p.omega_c, 2 * p.xi, 101)
    assert (g.points[0], g.points[-1]) == p.band


@pytest.mark.parametrize(
    "args",
    [(0.0, 1.0, 1), (0.0, 0.0, 5), (math.nan, 1.0, 5), (0.0, math.inf, 5), (0.0, -1.0, 5)],
)
def test_make_grid_rejects(args):
    with pytest.raises(ValidationError):
        make_grid(*args)


def test_grid_rejects_non_monotone_and_short():
    with pytest.raises(ValidationError):
        FrequencyGrid([0.0, 0.0, 1.0])
    with pytest.raises(ValidationError):
        FrequencyGrid([1.0])
    with pytest.raises(ValidationError):
        FrequencyGrid([0.0, 1.0], "lab-frame")


def test_grid_is_read_only():
    g = make_grid(0.0, 1.0, 5)
    with pytest.raises(ValueError):
        g.points[0] = 3.0


def test_uniform_flag_matches_data():
    assert not FrequencyGrid([0.0, 1.0, 3.0]).uniform
    assert FrequencyGrid([0.0, 0.5, 1.0]).uniform


def test_validate_ok():
    assert validate(EmitterWaveguideParams(1.0, 1.0, 0.0)) is None


def test_validate_negative_rate():
    v = validate(EmitterWaveguideParams(-1.0, 1.0))
    assert v.field == "gamma_right"
    assert v.message == "gamma_right negative"


def test_validate_xi():
    v = validate(CrwParams(omega_c=0.0, xi=0.0, g=1.0))
    assert v.field == "xi"
    assert v.message == "xi must be positive"


def test_non_finite_rejected_eagerly():
    with pytest.raises(ValidationError):
        EmitterWaveguideParams(math.nan, 1.0)
    with pytest.raises(ValidationError):
        CavityParams(g=math.inf)


def test_cavity_from_q():
    p = CavityParams.from_q(g=0.0, omega_c=1.0, q=0.5)
    assert p.gamma_right == 1.0 and p.gamma_left == 1.0


def test_crw_band():
    assert CrwParams(omega_c=1.0, xi=0.25, g=0.0).band == (0.5, 1.5)


def test_response_flux_bound():
    g = make_grid(0.0, 1.0, 3)
    with pytest.raises(ValidationError):
        SpectralResponse(g, np.ones(3), 0.1 * np.ones(3))


def test_frames():
    p = CavityParams(g=1.0, omega_c=2.0, omega_e=3.0)
    g = make_grid(0.0, 1.0, 3, "detuning-from-cavity")
    assert list(absolute_frequencies(g, p)) == [1.0, 2.0, 3.0]
    g = make_grid(0.0, 1.0, 3, "detuning-from-emitter")
    assert list(absolute_frequencies(g, p)) == [2.0, 3.0, 4.0]
    with pytest.raises(ValidationError):
        absolute_frequencies(make_grid(0, 1, 3, "detuning-from-cavity"), EmitterWaveguideParams(1, 1))


@given(
    st.floats(-1e3, 1e3),
    st.floats(1e-3, 1e3),
    st.integers(2, 500),
)
def test_grid_monotone(center, half_width, n):
    g = make_grid(center, half_width, n)
    assert np.all(np.diff(g.points) > 0)
    assert len(g) == n


@given(st.floats(-5, 5), st.sampled_from(["absolute", "detuning-from-emitter", "detuning-from-cavity"]))
def test_frame_preserved_by_backends(center, frame):
    g = make_grid(center, 1.0, 11, frame)
    if frame != "detuning-from-cavity":
        assert continuum.response(EmitterWaveguideParams(1.0, 0.5), g).grid.frame == frame
    assert cavity.response(CavityParams(g=0.3), g).grid.frame == frame


_rates = st.floats(0.0, 10.0)


@given(_rates, _rates, _rates, st.floats(-50, 50))
def test_response_sanity_continuum(gr, gl, gamma, center):
    g = make_grid(center, 20.0, 101, "detuning-from-emitter")
    resp = continuum.response(EmitterWaveguideParams(gr, gl, gamma), g)
    assert np.all(resp.T + resp.R <= 1 + 1e-12)


@given(_rates, _rates, _rates, _rates, st.floats(0.0, 10.0), st.floats(-3, 3))
def test_response_sanity_cavity(gr, gl, kappa, gamma, gg, we):
    p = CavityParams(g=gg, omega_e=we, gamma_right=gr, gamma_left=gl, kappa=kappa, gamma_loss=gamma)
    resp = cavity.response(p, make_grid(0.0, 20.0, 101))
    assert np.all(resp.T + resp.R <= 1 + 1e-12)


@given(st.floats(0.1, 5.0), st.floats(0.0, 3.0), st.floats(-1.0, 1.0))
def test_response_sanity_crw(xi, gg, we):
    p = CrwParams(omega_c=0.0, xi=xi, g=gg, omega_e=we)
    resp = crw.response(p, make_grid(0.0, 2 * xi, 101))
    assert np.all(resp.T + resp.R <= 1 + 1e-12)
