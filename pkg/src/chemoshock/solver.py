"""IMEX time stepping for the coupled system

    u_t - chi*(u*v)_x = D*u_xx,      v_t - u_x = 0

on a uniform grid with Dirichlet far-field boundaries.

Diffusion is treated implicitly (theta-scheme, tridiagonal solve), the
coupling flux chi*(u v)_x explicitly by central differences, and v is updated
pointwise from the freshly computed u so that constant states are exact fixed
points and the discrete v-mass identity holds per step.  The time step is
recomputed every step from the characteristic speed bound, since v drifts.
"""

from __future__ import annotations

import dataclasses
import time
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.linalg import solve_banded

from .core import (
    ConfigError,
    Field,
    ModelParams,
    NumericalError,
    PositivityError,
    SimState,
)

_TINY_SPEED = 1e-14
_BOUNDARY_MATCH_TOL = 1e-8
_TIME_SNAP = 1e-9


@dataclass(frozen=True)
class DirichletBoundary:
    """Pinned (u, v) values at the two ends of the interval."""

    u_left: float
    v_left: float
    u_right: float
    v_right: float


@dataclass(frozen=True)
class SchemeConfig:
    t_end: float
    snapshot_interval: float
    boundary: DirichletBoundary
    cfl: float = 0.4
    diffusion_theta: float = 0.5  # 0.5 = Crank-Nicolson, 1 = backward Euler

    def __post_init__(self) -> None:
        if not 0.0 < self.cfl <= 1.0:
            raise ConfigError(f"cfl must lie in (0, 1] (got {self.cfl})")
        if not 0.5 <= self.diffusion_theta <= 1.0:
            raise ConfigError(
                f"diffusion_theta must lie in [0.5, 1] (got {self.diffusion_theta})"
            )
        if self.t_end < 0:
            raise ConfigError(f"t_end must be nonnegative (got {self.t_end})")
        if self.snapshot_interval <= 0:
            raise ConfigError(
                f"snapshot_interval must be positive (got {self.snapshot_interval})"
            )


def characteristic_speed_bound(state: SimState, params: ModelParams) -> float:
    """Max spectral radius over nodes of the inviscid Jacobian
    [[-chi*v, -chi*u], [-1, 0]]."""
    chi = params.chi
    u = np.maximum(state.u.values, 0.0)  # tolerate roundoff at the positivity floor
    a = chi * np.abs(state.v.values)
    return float((0.5 * (a + np.sqrt(a * a + 4.0 * chi * u))).max())


def _check_boundary_match(state: SimState, bc: DirichletBoundary) -> None:
    errs = (
        abs(state.u.values[0] - bc.u_left),
        abs(state.v.values[0] - bc.v_left),
        abs(state.u.values[-1] - bc.u_right),
        abs(state.v.values[-1] - bc.v_right),
    )
    if max(errs) > _BOUNDARY_MATCH_TOL:
        raise ConfigError(
            f"state does not match Dirichlet boundary values (max mismatch {max(errs):.3e})"
        )


def _theta_system(n: int, a: float) -> np.ndarray:
    """Banded matrix (for scipy.solve_banded) of I - a*Laplacian on interior
    rows, identity rows at both boundaries; a = theta*D*dt/dx^2."""
    ab = np.zeros((3, n))
    ab[0, 2:] = -a
    ab[1, :] = 1.0 + 2.0 * a
    ab[1, 0] = ab[1, -1] = 1.0
    ab[2, : n - 2] = -a
    return ab


def step(
    state: SimState,
    params: ModelParams,
    cfg: SchemeConfig,
    dt_cap: float | None = None,
) -> SimState:
    """Advance one step of size cfl*dx/max(speed, tiny), optionally capped."""
    _check_boundary_match(state, cfg.boundary)
    grid = state.u.grid
    dx = grid.dx
    n = grid.n_nodes
    theta = cfg.diffusion_theta

    dt = cfg.cfl * dx / max(characteristic_speed_bound(state, params), _TINY_SPEED)
    if dt_cap is not None:
        dt = min(dt, dt_cap)

    u = state.u.values
    v = state.v.values
    flux = params.chi * np.gradient(u * v, dx, edge_order=2)

    rhs = u + dt * flux
    if theta < 1.0:
        lap = np.zeros(n)
        lap[1:-1] = (u[2:] - 2.0 * u[1:-1] + u[:-2]) / (dx * dx)
        rhs += dt * (1.0 - theta) * params.D * lap
    rhs[0] = cfg.boundary.u_left
    rhs[-1] = cfg.boundary.u_right

    ab = _theta_system(n, theta * params.D * dt / (dx * dx))
    u_new = solve_banded((1, 1), ab, rhs, check_finite=False)

    if not np.all(np.isfinite(u_new)):
        raise NumericalError(
            f"non-finite u after step {state.step_count + 1} "
            f"(t={state.t:.6g}, dt={dt:.3e})"
        )
    if np.any(u_new <= 0.0):
        i = int(np.argmin(u_new))
        raise PositivityError(
            f"u reached {u_new[i]:.6e} at node {i} (x={grid.nodes()[i]:.6g}) "
            f"on step {state.step_count + 1}, t={state.t + dt:.6g}"
        )

    v_new = v + dt * np.gradient(u_new, dx, edge_order=2)
    v_new[0] = cfg.boundary.v_left
    v_new[-1] = cfg.boundary.v_right

    return SimState(
        u=Field(grid, u_new),
        v=Field(grid, v_new),
        t=state.t + dt,
        step_count=state.step_count + 1,
    )


#: called at every snapshot as on_snapshot(index, state, previous_step_state)
SnapshotCallback = Callable[[int, SimState, Optional[SimState]], None]


@dataclass
class DiagnosticSinks:
    on_snapshot: SnapshotCallback | None = None


@dataclass(frozen=True)
class RunReport:
    final_state: SimState
    step_count: int
    snapshot_count: int
    wall_time_s: float
    min_u: float
    boundary_warning: bool


def _snapshot_times(cfg: SchemeConfig) -> list[float]:
    times = [0.0]
    k = 1
    while k * cfg.snapshot_interval < cfg.t_end - _TIME_SNAP * max(1.0, cfg.t_end):
        times.append(k * cfg.snapshot_interval)
        k += 1
    if cfg.t_end > 0:
        times.append(cfg.t_end)
    return times


def run(
    initial: SimState,
    params: ModelParams,
    cfg: SchemeConfig,
    sinks: DiagnosticSinks | None = None,
) -> RunReport:
    """March to t_end, emitting a snapshot every snapshot_interval (plus the
    initial state and the final time)."""
    from .diagnostics import front_position  # local import, no cycle at module load

    _check_boundary_match(initial, cfg.boundary)
    t0 = time.perf_counter()
    emit = sinks.on_snapshot if sinks is not None and sinks.on_snapshot else None

    bc = cfg.boundary
    track_front = abs(bc.u_left - bc.u_right) > 1e-12
    level = 0.5 * (bc.u_left + bc.u_right)
    grid = initial.u.grid
    margin = 0.1 * grid.length
    warning = False

    def near_boundary(s: SimState) -> bool:
        if not track_front:
            return False
        pos = front_position(s.u, level)
        return pos - grid.x_min < margin or grid.x_max - pos < margin

    state = initial
    min_u = float(state.u.values.min())
    eps = _TIME_SNAP * max(1.0, cfg.t_end)

    if emit:
        emit(0, state, None)
    warning |= near_boundary(state)
    snapshots = 1

    for target in _snapshot_times(cfg)[1:]:
        prev = None
        while state.t < target - eps:
            prev = state
            state = step(state, params, cfg, dt_cap=target - state.t)
            min_u = min(min_u, float(state.u.values.min()))
        if abs(state.t - target) <= eps:
            state = dataclasses.replace(state, t=target)
        if emit:
            emit(snapshots, state, prev)
        warning |= near_boundary(state)
        snapshots += 1

    return RunReport(
        final_state=state,
        step_count=state.step_count,
        snapshot_count=snapshots,
        wall_time_s=time.perf_counter() - t0,
        min_u=min_u,
        boundary_warning=warning,
    )
