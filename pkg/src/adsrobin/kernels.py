"""Closed-form causal propagator and ground-state two-point function.

The two-point function on the Poincare patch is

    omega2(u_eps) = N_alpha [ cos(alpha) K_D(u_eps) + sin(alpha) K_N(u_eps) ],

with hypergeometric kernels

    K_{D/N}(u) = Gamma(d/2 +- nu) Gamma(1/2 +- nu)
                 * u^{-d/2 -+ nu} * F(d/2 +- nu, 1/2 +- nu; 1 +- 2 nu; 1/u) / Gamma(1 +- 2 nu)

and the regulated argument u_eps = u + (2 i eps (t-t') + eps^2) / (2 z z').
The Gamma prefactors are required for consistency with the mode-sum
representation and make the Robin family continuous through nu = 1/2
(checked against the elementary massless kernels); published displays of
these kernels omit them.

The causal propagator is the boundary-value difference

    G = (1/i) [ omega2(u_eps) - omega2(u_{-eps}) ] = 2 Im omega2(u_eps),

real-valued, antisymmetric, and normalized so the equal-time pairing
d/dt' G reproduces the identity (canonical commutator).

An equivalent representation decomposes G into a direct and a reflected
hypergeometric term with constant coefficients A_alpha, B_alpha obtained
by inverting the w -> 1/w and w -> 1-w connection formulas on the upper
half-plane (conjugate constants on the lower); the single free sign in
that inversion is the branch constant BRANCH_SIGN below.
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .errors import (
    DomainError,
    GroundStateAbsentError,
    NormalizationSingularityError,
    SingularPointError,
)
from .geometry import SpacetimePoint, separation
from .modes import BoundaryCondition, ModelParams, bound_state_profile
from .specfun import gamma_fn, hyp2f1_reg

#: the single free sign of the construction: (-1)^w is read as
#: exp(BRANCH_SIGN * i pi w).  Flipping it must break the representation
#: equivalence between the closed form and the decomposition.
BRANCH_SIGN = -1.0

#: |nu - 1/2| below which kernels are evaluated by the analytic nu-limit
NU_HALF_TOL = 1e-6

#: step of the nu -> 1/2 limit ladder
NU_HALF_STEP = 1e-3

_ALPHA_SINGULAR_TOL = 1e-12


def neg_one_power(w):
    """(-1)^w under the pinned branch."""
    return np.exp(BRANCH_SIGN * 1j * np.pi * np.asarray(w))


@dataclass(frozen=True)
class RegulatedKernelValue:
    value: complex
    epsilon: float
    ladder: Optional[List[Tuple[float, complex]]] = None


@dataclass(frozen=True)
class KernelCoefficients:
    Nalpha: complex
    Aalpha: complex
    Balpha: complex
    UpsA_plus: complex
    UpsA_minus: complex
    UpsB_plus: complex
    UpsB_minus: complex
    cAlphaNu: complex


def normalization(d: int, bc: BoundaryCondition) -> float:
    """N_alpha; singular exactly where cos(alpha) + sin(alpha) = 0."""
    den = bc.a + bc.b
    if abs(den) < _ALPHA_SINGULAR_TOL:
        raise NormalizationSingularityError(
            "cos(alpha) + sin(alpha) = 0 (alpha = 3 pi / 4): normalization undefined"
        )
    return float(gamma_fn((d - 1) / 2.0)) / (
        2.0 ** (d + 1) * math.pi ** ((d + 1) / 2.0) * den
    )


def u_regulated(x: SpacetimePoint, xp: SpacetimePoint, eps: float):
    """u_eps from the sigma_M shift sigma -> sigma + 2 i eps (t-t') + eps^2."""
    rep = separation(x, xp)
    zz = 2.0 * x.z * xp.z
    return complex(rep.u + (2j * eps * (x.t - xp.t) + eps * eps) / zz)


def _kernel_dn_raw(kind: str, d: int, nu: float, u):
    """Gamma-prefactored D/N kernel at generic nu; vectorized in u."""
    s = nu if kind == "D" else -nu
    a = d / 2.0 + s
    b = 0.5 + s
    c = 1.0 + 2.0 * s
    pref = complex(gamma_fn(a)) * complex(gamma_fn(b))
    u = np.asarray(u, dtype=np.complex128)
    return pref * u ** (-d / 2.0 - s) * hyp2f1_reg(a, b, c, 1.0 / u)


def kernel_dn(kind: str, d: int, nu: float, u):
    """D/N kernel; the nu = 1/2 degeneracy is resolved by a symmetric
    nu-ladder with one Richardson step (the combination Gamma(1/2-nu) *
    regularized F is analytic in nu)."""
    if kind not in ("D", "N"):
        raise DomainError("kind must be 'D' or 'N'")
    u_arr = np.asarray(u, dtype=np.complex128)
    if np.any(u_arr == 0.0):
        raise SingularPointError("kernel requested at u = 0")
    if abs(nu - 0.5) > NU_HALF_TOL:
        out = _kernel_dn_raw(kind, d, nu, u_arr)
    else:
        h = NU_HALF_STEP

        def sym(step):
            return 0.5 * (
                _kernel_dn_raw(kind, d, nu + step, u_arr)
                + _kernel_dn_raw(kind, d, nu - step, u_arr)
            )

        out = (4.0 * sym(h) - sym(2.0 * h)) / 3.0
    return out if np.ndim(u) else complex(out[()] if out.ndim == 0 else out)


def omega2_dn(kind: str, d: int, nu: float, u_eps):
    """Single D or N branch of the two-point function (no N_alpha weight)."""
    return kernel_dn(kind, d, nu, u_eps)


def _omega2_of_u(params: ModelParams, bc: BoundaryCondition, u):
    d, nu = params.d, params.nu
    norm = normalization(d, bc)
    val = np.zeros(np.shape(u) or (), dtype=np.complex128)
    if bc.a != 0.0:
        val = val + bc.a * kernel_dn("D", d, nu, u)
    if bc.b != 0.0:
        val = val + bc.b * kernel_dn("N", d, nu, u)
    return norm * val


def _require_ground_state(params: ModelParams, bc: BoundaryCondition):
    if params.nu == 0.0:
        raise GroundStateAbsentError(
            "nu = 0 always carries a bound state; there is no ground state"
        )
    if not bc.admissible_for_ground_state(params.nu):
        if params.nu >= 1.0:
            raise GroundStateAbsentError("nu >= 1 admits only alpha = pi")
        raise GroundStateAbsentError(
            f"alpha={bc.alpha} lies in the bound-state regime (cot(alpha) > 0): "
            "there is no ground state"
        )


def omega2(
    params: ModelParams,
    bc: BoundaryCondition,
    x: SpacetimePoint,
    xp: SpacetimePoint,
    eps: float,
) -> RegulatedKernelValue:
    """Ground-state two-point function on the Poincare patch.

    Raises:
        GroundStateAbsentError: boundary condition in the bound-state regime.
        NormalizationSingularityError: alpha = 3 pi / 4.
    """
    _require_ground_state(params, bc)
    if eps <= 0.0 and separation(x, xp).classification in ("coincident", "direct-null", "reflected-null"):
        raise DomainError("coincident or null-related points need eps > 0")
    u = u_regulated(x, xp, eps)
    return RegulatedKernelValue(value=complex(_omega2_of_u(params, bc, u)), epsilon=eps)


def causal_propagator_value(params, bc, x, xp, eps) -> complex:
    """G at finite eps: the +-eps difference of the D/N combination over i.

    Schwarz symmetry of the kernels turns the difference into 2 Im, so
    G(x,x';eps) is real and exactly antisymmetric under x <-> x'.
    """
    u = u_regulated(x, xp, eps)
    w = _omega2_of_u(params, bc, u)
    return complex(2.0 * w.imag)


def causal_propagator(
    params: ModelParams,
    bc: BoundaryCondition,
    x: SpacetimePoint,
    xp: SpacetimePoint,
    eps: float,
    include_bound_state: bool = True,
) -> RegulatedKernelValue:
    """Causal propagator on the Poincare patch (PAdS normalization).

    In the bound-state regime (cot(alpha) > 0, nu in (0,1)) the explicit
    K_nu x K_nu contribution is added on top of the analytically
    continued closed form.
    """
    nu = params.nu
    if nu == 0.0:
        raise DomainError("nu = 0 closed form is not available; use the mode sum")
    if nu >= 1.0 and bc.alpha != math.pi:
        raise GroundStateAbsentError("nu >= 1 admits only alpha = pi")
    val = causal_propagator_value(params, bc, x, xp, eps)
    if include_bound_state and bc.has_bound_state(nu):
        val += bound_state_term(params, bc, x, xp, eps).value
    return RegulatedKernelValue(value=val, epsilon=eps)


# -- decomposition into direct + reflected hypergeometric terms ------------


def upsilon_a(d: int, s: float) -> complex:
    """Direct-term inversion coefficient for the Gamma-prefactored kernels."""
    phase = 1j * np.exp(BRANCH_SIGN * 1j * np.pi * d / 2.0)
    return complex(
        phase * gamma_fn(d / 2.0 + s) * gamma_fn(d / 2.0 - s) / gamma_fn((d + 1) / 2.0)
    )


def upsilon_b(d: int, s: float) -> complex:
    """Reflected-term coefficient, tied to upsilon_a by the branch phase."""
    return complex(-np.exp(-BRANCH_SIGN * 1j * np.pi * (d / 2.0 - s)) * upsilon_a(d, s))


def c_alpha_nu(bc: BoundaryCondition, nu: float) -> complex:
    """Image weight i (-1)^{-nu} [cos a + (-1)^{-2 nu} sin a]/[cos a + sin a]."""
    den = bc.a + bc.b
    if abs(den) < _ALPHA_SINGULAR_TOL:
        raise NormalizationSingularityError("cos(alpha) + sin(alpha) = 0")
    p1 = np.exp(BRANCH_SIGN * 1j * np.pi * nu)
    p2 = np.exp(BRANCH_SIGN * 2j * np.pi * nu)
    return complex(1j * p1 * (bc.a + p2 * bc.b) / den)


def coefficients(params: ModelParams, bc: BoundaryCondition) -> KernelCoefficients:
    """All decomposition coefficients under the pinned branch."""
    d, nu = params.d, params.nu
    norm = normalization(d, bc)
    ua_p, ua_m = upsilon_a(d, nu), upsilon_a(d, -nu)
    ub_p, ub_m = upsilon_b(d, nu), upsilon_b(d, -nu)
    return KernelCoefficients(
        Nalpha=norm,
        Aalpha=bc.a * ua_p + bc.b * ua_m,
        Balpha=bc.a * ub_p + bc.b * ub_m,
        UpsA_plus=ua_p,
        UpsA_minus=ua_m,
        UpsB_plus=ub_p,
        UpsB_minus=ub_m,
        cAlphaNu=c_alpha_nu(bc, nu),
    )


def _gtilde(d: int, nu: float, w):
    """F(d/2+nu, d/2-nu; (d+1)/2; w), unregularized."""
    c = (d + 1) / 2.0
    return complex(gamma_fn(c)) * hyp2f1_reg(d / 2.0 + nu, d / 2.0 - nu, c, w)


def kernel_via_decomposition(
    params: ModelParams,
    bc: BoundaryCondition,
    x: SpacetimePoint,
    xp: SpacetimePoint,
    eps: float,
) -> RegulatedKernelValue:
    """G through N_alpha [A_alpha Gtilde(u_eps) + B_alpha Gtilde(1 - u_eps)].

    The coefficients hold on the upper half of the u plane; on the lower
    half their complex conjugates apply (Schwarz reflection), which is
    what the (eps <-> -eps) difference uses.  The reflected argument is
    the exact image identity u(reflect(x), x') = 1 - u(x, x').
    """
    d, nu = params.d, params.nu
    if not 0.0 < nu < 1.0:
        raise DomainError("decomposition path requires nu in (0, 1)")
    coef = coefficients(params, bc)
    u = u_regulated(x, xp, eps)
    if u.imag < 0.0:
        combo = np.conj(coef.Aalpha) * _gtilde(d, nu, u) + np.conj(coef.Balpha) * _gtilde(
            d, nu, 1.0 - u
        )
    else:
        combo = coef.Aalpha * _gtilde(d, nu, u) + coef.Balpha * _gtilde(d, nu, 1.0 - u)
    val = coef.Nalpha * 2.0 * complex(combo).imag
    return RegulatedKernelValue(value=val, epsilon=eps)


def bound_state_term(
    params: ModelParams,
    bc: BoundaryCondition,
    x: SpacetimePoint,
    xp: SpacetimePoint,
    eps: float,
) -> RegulatedKernelValue:
    """Explicit K_nu x K_nu bound-state addition (zero outside its regime).

    Normalized like causal_propagator (PAdS); the frequency integral runs
    through the mode-sum machinery at imaginary radial momentum.
    """
    from .oracle.ieps import MODE_EPS_FACTOR, i_eps, mode_normalization

    nu = params.nu
    profile = bound_state_profile(bc, nu)
    if profile is None or not 0.0 <= nu < 1.0:
        return RegulatedKernelValue(value=0.0, epsilon=eps)
    kappa = profile.q
    dt = x.t - xp.t
    r = float(np.linalg.norm(np.asarray(x.x) - np.asarray(xp.x)))
    ival = i_eps(-kappa, r, dt, MODE_EPS_FACTOR * eps, params.d)
    radial = float(profile(x.z)) * float(profile(xp.z))
    h_value = mode_normalization(params.d) * math.sqrt(x.z * xp.z) * 2.0 * ival * radial
    val = (x.z * xp.z) ** ((params.d - 1) / 2.0) * h_value
    return RegulatedKernelValue(value=val, epsilon=eps)


def rescale(value, x: SpacetimePoint, xp: SpacetimePoint, d: int, direction: str):
    """Convert kernel values between the PAdS and half-space pictures."""
    factor = (x.z * xp.z) ** ((d - 1) / 2.0)
    if direction in ("to_h", "to_half_space"):
        return value / factor
    if direction in ("to_pads", "to_ads"):
        return value * factor
    raise DomainError(f"unknown rescale direction {direction!r}")


def eps_ladder_values(fn, eps_ladder=(1e-2, 1e-3, 1e-4)):
    """Evaluate a kernel callable on a decreasing eps ladder."""
    return [(e, fn(e)) for e in eps_ladder]
