import numpy as np
import pytest

from chemoshock.core import (
    ConfigError,
    Field,
    GridSpec,
    ModelParams,
    PositivityError,
    SimState,
    integral,
    lp_norm,
)
from chemoshock.solver import (
    DiagnosticSinks,
    DirichletBoundary,
    SchemeConfig,
    characteristic_speed_bound,
    run,
    step,
)
from chemoshock.waves import TravelingWave

P1 = ModelParams.from_chi(1.0, 1.0)


def constant_state(grid, u_val, v_val):
    return SimState(Field.constant(grid, u_val), Field.constant(grid, v_val), 0.0)


def wave_state(grid, wave, front):
    x = grid.nodes()
    return SimState(
        Field(grid, np.asarray(wave.u_profile(x - front))),
        Field(grid, np.asarray(wave.v_profile(x - front))),
        0.0,
    )


def boundary_of(state):
    return DirichletBoundary(
        u_left=float(state.u.values[0]),
        v_left=float(state.v.values[0]),
        u_right=float(state.u.values[-1]),
        v_right=float(state.v.values[-1]),
    )


def test_scheme_config_validation():
    bc = DirichletBoundary(1, 0, 1, 0)
    with pytest.raises(ConfigError):
        SchemeConfig(t_end=1.0, snapshot_interval=1.0, boundary=bc, cfl=0.0)
    with pytest.raises(ConfigError):
        SchemeConfig(t_end=1.0, snapshot_interval=1.0, boundary=bc, diffusion_theta=0.3)
    with pytest.raises(ConfigError):
        SchemeConfig(t_end=1.0, snapshot_interval=0.0, boundary=bc)


def test_characteristic_speed_known_values():
    g = GridSpec(0.0, 1.0, 11)
    assert characteristic_speed_bound(constant_state(g, 1.0, 0.0), P1) == pytest.approx(1.0)
    assert characteristic_speed_bound(constant_state(g, 2.0, 1.0), P1) == pytest.approx(2.0)
    assert characteristic_speed_bound(constant_state(g, 0.0, 0.0), P1) == 0.0


def test_constant_state_is_fixed_point():
    g = GridSpec(0.0, 100.0, 501)
    state = constant_state(g, 1.3, 0.4)
    cfg = SchemeConfig(t_end=1.0, snapshot_interval=1.0, boundary=boundary_of(state))
    for _ in range(50):
        state = step(state, P1, cfg)
    assert np.abs(state.u.values - 1.3).max() < 1e-12
    assert np.abs(state.v.values - 0.4).max() < 1e-12


def test_step_advances_time_and_counts():
    g = GridSpec(0.0, 100.0, 501)
    state = constant_state(g, 1.0, 0.0)
    cfg = SchemeConfig(t_end=1.0, snapshot_interval=1.0, boundary=boundary_of(state))
    out = step(state, P1, cfg)
    assert out.step_count == 1
    assert out.t == pytest.approx(cfg.cfl * g.dx / 1.0)
    capped = step(state, P1, cfg, dt_cap=1e-4)
    assert capped.t == pytest.approx(1e-4)


def test_step_requires_matching_boundary():
    g = GridSpec(0.0, 100.0, 501)
    state = constant_state(g, 1.0, 0.0)
    bad = DirichletBoundary(1.5, 0.0, 1.0, 0.0)
    cfg = SchemeConfig(t_end=1.0, snapshot_interval=1.0, boundary=bad)
    with pytest.raises(ConfigError, match="does not match"):
        step(state, P1, cfg)


def test_wave_transport_tracks_exact_translation():
    g = GridSpec(0.0, 100.0, 1001)
    w = TravelingWave.from_end_values(2.0, 1.0, 1.0, P1)
    state = wave_state(g, w, 30.0)
    cfg = SchemeConfig(t_end=5.0, snapshot_interval=5.0, boundary=boundary_of(state))
    report = run(state, P1, cfg)
    final = report.final_state
    exact = w.u_profile(g.nodes() - 30.0 - w.s * final.t)
    assert np.abs(final.u.values - exact).max() < 10 * g.dx
    assert report.min_u > 0.9


def test_per_step_v_mass_identity():
    g = GridSpec(0.0, 100.0, 1001)
    w = TravelingWave.from_end_values(2.0, 1.0, 1.0, P1)
    state = wave_state(g, w, 30.0)
    cfg = SchemeConfig(t_end=5.0, snapshot_interval=5.0, boundary=boundary_of(state))
    for _ in range(25):
        prev = state
        state = step(state, P1, cfg)
        dt = state.t - prev.t
        lhs = integral(state.v) - integral(prev.v)
        rhs = dt * (state.u.values[-1] - state.u.values[0])
        assert abs(lhs - rhs) < 1e-10


def test_positivity_violation_raises_flagged_error():
    p = ModelParams.from_chi(1e-6, 40.0)
    g = GridSpec(0.0, 10.0, 201)
    x = g.nodes()
    u0 = np.full(g.n_nodes, 0.02)
    u0[:100] = 1.0
    u0[100] = 0.51
    v0 = np.tanh((x - 5.0) * 4.0)
    state = SimState(Field(g, u0), Field(g, v0), 0.0)
    cfg = SchemeConfig(
        t_end=5.0, snapshot_interval=5.0, boundary=boundary_of(state), cfl=0.9
    )
    with pytest.raises(PositivityError, match="node"):
        for _ in range(200):
            state = step(state, p, cfg)


def test_zero_horizon_run_emits_single_snapshot():
    g = GridSpec(0.0, 100.0, 501)
    state = constant_state(g, 1.0, 0.0)
    cfg = SchemeConfig(t_end=0.0, snapshot_interval=1.0, boundary=boundary_of(state))
    seen = []
    run(state, P1, cfg, DiagnosticSinks(on_snapshot=lambda i, s, prev: seen.append((i, s.t, prev))))
    assert seen == [(0, 0.0, None)]


def test_snapshot_schedule_and_prev_state():
    g = GridSpec(0.0, 100.0, 501)
    state = constant_state(g, 1.0, 0.0)
    cfg = SchemeConfig(t_end=1.0, snapshot_interval=0.25, boundary=boundary_of(state))
    seen = []
    report = run(state, P1, cfg, DiagnosticSinks(on_snapshot=lambda i, s, prev: seen.append((i, s.t, prev is not None))))
    assert [t for _, t, _ in seen] == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert [has_prev for _, _, has_prev in seen] == [False, True, True, True, True]
    assert report.snapshot_count == 5
    assert report.final_state.t == 1.0


def test_boundary_proximity_warning():
    g = GridSpec(0.0, 60.0, 601)
    w = TravelingWave.from_end_values(2.0, 1.0, 1.0, P1)
    state = wave_state(g, w, 30.0)
    cfg = SchemeConfig(t_end=26.0, snapshot_interval=13.0, boundary=boundary_of(state))
    report = run(state, P1, cfg)
    assert report.boundary_warning  # front reaches x = 56, within 10% of 60
    short = run(wave_state(g, w, 30.0), P1,
                SchemeConfig(t_end=2.0, snapshot_interval=2.0, boundary=boundary_of(state)))
    assert not short.boundary_warning


def test_mollified_outputs_stabilize_as_width_shrinks():
    # solutions from data mollified at width d and d/2 get closer as d drops
    from chemoshock.mollifier import MollifierSpec, mollify

    g = GridSpec(0.0, 200.0, 1001)
    x = g.nodes()
    u_raw = np.where(x < 50.0, 2.0, 1.0)
    v_raw = np.where(x < 50.0, 0.0, 1.0)

    def final_u(delta):
        spec = MollifierSpec(delta)
        u0 = mollify(Field(g, u_raw), spec).values
        v0 = mollify(Field(g, v_raw), spec).values
        state = SimState(Field(g, u0), Field(g, v0), 0.0)
        cfg = SchemeConfig(t_end=10.0, snapshot_interval=10.0, boundary=boundary_of(state))
        return run(state, P1, cfg).final_state.u

    def gap(delta):
        a, b = final_u(delta), final_u(delta / 2)
        return lp_norm(Field(g, a.values - b.values), 2)

    assert gap(4.0) > gap(2.0) > gap(1.0)


def test_self_convergence_on_smooth_data():
    w = TravelingWave.from_end_values(2.0, 1.0, 1.0, P1)

    def solve(n):
        g = GridSpec(0.0, 100.0, n)
        x = g.nodes()
        u0 = np.interp(x, [30.0, 50.0], [2.0, 1.0], left=2.0, right=1.0)
        v0 = np.interp(x, [30.0, 50.0], [0.0, 1.0], left=0.0, right=1.0)
        state = SimState(Field(g, u0), Field(g, v0), 0.0)
        cfg = SchemeConfig(t_end=2.0, snapshot_interval=2.0, boundary=boundary_of(state))
        return run(state, P1, cfg).final_state

    coarse, mid, fine = solve(501), solve(1001), solve(2001)
    g_c = coarse.u.grid
    err1 = lp_norm(Field(g_c, coarse.u.values - mid.u.values[::2]), 2)
    err2 = lp_norm(Field(mid.u.grid, mid.u.values - fine.u.values[::2]), 2)
    assert err1 / err2 >= 1.8
