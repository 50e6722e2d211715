"""Independent numerical cross-checks for the closed-form kernels."""

from .checks import equal_time_checks, pde_residual
from .ieps import MODE_EPS_FACTOR, i_eps, i_eps_many, mode_normalization
from .modesum import mode_sum_g
from .smear import (
    QuadratureSpec,
    SmearResult,
    constant_kernel,
    half_space_g_kernel,
    half_space_omega2_kernel,
    smear2,
    symplectic_form,
)
from .testfun import (
    Bump1D,
    HalfBump,
    RadialFactor,
    SeparableFunction,
    TestFunction,
    make_test_function,
)
from .timeslice import SmoothStep, apply_kernel, time_slice_residual

__all__ = [
    "MODE_EPS_FACTOR",
    "QuadratureSpec",
    "SmearResult",
    "SmoothStep",
    "Bump1D",
    "HalfBump",
    "RadialFactor",
    "SeparableFunction",
    "TestFunction",
    "apply_kernel",
    "constant_kernel",
    "equal_time_checks",
    "half_space_g_kernel",
    "half_space_omega2_kernel",
    "i_eps",
    "i_eps_many",
    "make_test_function",
    "mode_normalization",
    "mode_sum_g",
    "pde_residual",
    "smear2",
    "symplectic_form",
    "time_slice_residual",
]
