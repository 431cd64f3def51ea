import numpy as np
import pytest

from chemoshock.cole_hopf import ChemotaxisState, from_v, to_v
from chemoshock.core import Field, GridSpec


def test_constant_concentration_gives_zero_v():
    g = GridSpec(0.0, 10.0, 101)
    v = to_v(Field.constant(g, 3.7), mu=0.8)
    assert np.abs(v.values).max() == 0.0


def test_exponential_concentration_gives_unit_v():
    g = GridSpec(0.0, 5.0, 201)
    mu = 1.3
    c = Field.from_function(g, lambda x: np.exp(-mu * x))
    v = to_v(c, mu)
    assert np.abs(v.values - 1.0).max() < 1e-12


def test_gaussian_concentration_gives_linear_v():
    g = GridSpec(-1.0, 1.0, 401)
    mu = 0.9
    c = Field.from_function(g, lambda x: np.exp(-mu * x**2 / 2.0))
    v = to_v(c, mu)
    assert np.abs(v.values - g.nodes()).max() < 1e-6


def test_to_v_rejects_nonpositive_concentration():
    g = GridSpec(0.0, 1.0, 11)
    vals = np.ones(11)
    vals[7] = 0.0
    with pytest.raises(ValueError, match="node 7"):
        to_v(Field(g, vals), mu=1.0)
    with pytest.raises(ValueError):
        to_v(Field.constant(g, 1.0), mu=-1.0)


def test_chemotaxis_state_requires_positive_c():
    g = GridSpec(0.0, 1.0, 11)
    vals = np.ones(11)
    vals[2] = -0.5
    with pytest.raises(ValueError, match="node 2"):
        ChemotaxisState(Field.constant(g, 1.0), Field(g, vals), 0.0)


def test_from_v_constant_inputs():
    g = GridSpec(0.0, 4.0, 81)
    c = from_v(Field.constant(g, 0.0), mu=1.0, c_ref=2.5, x_ref_index=40)
    assert np.abs(c.values - 2.5).max() == 0.0

    c2 = from_v(Field.constant(g, 1.0), mu=1.0, c_ref=1.0, x_ref_index=0)
    expected = np.exp(-(g.nodes() - g.x_min))
    assert np.abs(c2.values / expected - 1.0).max() < 1e-10


def test_from_v_anchors_exactly_at_reference_node():
    g = GridSpec(0.0, 4.0, 81)
    rng = np.random.default_rng(2)
    v = Field(g, rng.standard_normal(g.n_nodes))
    c = from_v(v, mu=0.7, c_ref=3.25, x_ref_index=17)
    assert c.values[17] == 3.25


def test_round_trip_v_to_c_to_v_near_linear():
    # affine v: the stencil and quadrature are exact, round trip to rounding
    g = GridSpec(0.0, 400.0, 801)
    v = Field.from_function(g, lambda x: 0.3 + 0.002 * x)
    mu = 1.1
    back = to_v(from_v(v, mu, c_ref=1.0, x_ref_index=0), mu)
    assert np.abs(back.values - v.values).max() < 1e-8


def test_round_trip_v_to_c_to_v_generic_smooth():
    # generic smooth v: error is second order in dx
    g = GridSpec(0.0, 400.0, 801)
    v = Field.from_function(g, lambda x: 0.3 * np.sin(2 * np.pi * x / 400.0))
    back = to_v(from_v(v, 1.0, c_ref=1.0, x_ref_index=0), 1.0)
    assert np.abs(back.values - v.values).max() < 1e-5


def test_round_trip_c_to_v_to_c():
    g = GridSpec(-1.0, 1.0, 801)
    mu = 1.3
    c = Field.from_function(g, lambda x: np.exp(-mu * x**2 / 2 + 0.4 * x + 0.1))
    v = to_v(c, mu)
    back = from_v(v, mu, c_ref=float(c.values[400]), x_ref_index=400)
    rel = np.abs(back.values - c.values) / c.values
    assert rel.max() < 1e-8


def test_gauge_invariance():
    g = GridSpec(0.0, 10.0, 501)
    v = Field.from_function(g, lambda x: np.sin(x) * 0.2)
    mu = 0.5
    c1 = from_v(v, mu, c_ref=1.0, x_ref_index=0)
    c2 = from_v(v, mu, c_ref=4.0, x_ref_index=250)
    ratio = c2.values / c1.values
    assert ratio.max() - ratio.min() < 1e-12
    v1 = to_v(c1, mu)
    v2 = to_v(c2, mu)
    assert np.abs(v1.values - v2.values).max() < 1e-12
