"""Numerical laboratory for the 1D parabolic-hyperbolic chemotaxis system

    u_t - chi*(u*v)_x = D*u_xx,      v_t - u_x = 0

with exact traveling-wave algebra, an IMEX evolution engine for rough initial
data, and the stability/regularity diagnostics used to check the long-time
claims about constant states and viscous shock profiles.
"""

from .core import (
    AsymptoticStates,
    ConfigError,
    Field,
    GridSpec,
    ModelParams,
    NumericalError,
    PositivityError,
    SimState,
    cumulative_integral,
    derivative_x,
    integral,
    lp_norm,
)
from .waves import (
    RHResidual,
    TravelingWave,
    complete_states,
    profile_bounds_check,
    rh_residual,
    wave_speed,
)

__all__ = [
    "AsymptoticStates",
    "ConfigError",
    "Field",
    "GridSpec",
    "ModelParams",
    "NumericalError",
    "PositivityError",
    "RHResidual",
    "SimState",
    "TravelingWave",
    "complete_states",
    "cumulative_integral",
    "derivative_x",
    "integral",
    "lp_norm",
    "profile_bounds_check",
    "rh_residual",
    "wave_speed",
]

__version__ = "0.1.0"
