"""Mode-sum representation of the causal propagator (the oracle side).

G_H(x, x') = C_d sqrt(z z') int_0^oo dq I_eps(q, r, t, t') * R_q(z, z'),

with the radial weight per regime

    nu >= 1 (alpha = pi):   R_q = J_nu(qz) J_nu(qz')
    nu in (0,1):            R_q = psi(z) psi(z') / denom  (projective form)
    nu = 0:                 log-branch psi with its own denominator,

plus the explicit K_nu x K_nu bound-state channel where cot(alpha) > 0
(always at nu = 0).  The constant C_d = -(2 pi)^{1 - d/2} relates the raw
integral to the canonically normalized propagator; it is measured against
the closed form by acceptance test A2 and reported by the compare tool.
The damping regulator is twice the closed-form eps (matching t - t' - i
2 eps against the sigma shift 2 i eps (t - t')).
"""

import math

import numpy as np

from ..errors import DomainError, GroundStateAbsentError
from ..geometry import SpacetimePoint
from ..modes import (
    BoundaryCondition,
    ModelParams,
    bound_state_profile,
    norm_denominator,
    norm_denominator_nu0,
    psi,
    psi_nu0,
)
from ..specfun import bessel_j
from .ieps import MODE_EPS_FACTOR, frequency_nodes, i_eps_many, mode_normalization

_Q_CHUNK = 96


def _radial_weight(params: ModelParams, bc: BoundaryCondition, q_nodes, z, zp):
    nu = params.nu
    if nu >= 1.0:
        if bc.alpha != math.pi:
            raise GroundStateAbsentError("nu >= 1 admits only alpha = pi")
        return bessel_j(nu, q_nodes * z) * bessel_j(nu, q_nodes * zp)
    if nu == 0.0:
        num = np.empty_like(q_nodes)
        den = np.empty_like(q_nodes)
        for i, q in enumerate(q_nodes):
            prof = psi_nu0(bc, q)
            num[i] = float(prof(z)) * float(prof(zp))
            den[i] = norm_denominator_nu0(bc, q)
        return num / den
    a, b = bc.a, bc.b
    q2nu = q_nodes ** (2.0 * nu)
    jz_p = bessel_j(nu, q_nodes * z)
    jz_m = bessel_j(-nu, q_nodes * z)
    jp_p = bessel_j(nu, q_nodes * zp)
    jp_m = bessel_j(-nu, q_nodes * zp)
    psi_z = a * jz_p - b * q2nu * jz_m
    psi_zp = a * jp_p - b * q2nu * jp_m
    den = a * a - 2.0 * a * b * q2nu * math.cos(nu * math.pi) + b * b * q2nu * q2nu
    return psi_z * psi_zp / den


def mode_sum_g(
    params: ModelParams,
    bc: BoundaryCondition,
    x: SpacetimePoint,
    xp: SpacetimePoint,
    eps: float,
    budget_scale: float = 1.0,
    representation: str = "h",
    include_bound_state: bool = True,
):
    """Mode-sum causal propagator, independent of the closed form.

    ``representation`` selects the half-space ("h") or Poincare-patch
    ("pads") normalization.  ``budget_scale`` scales all node counts for
    self-convergence studies.
    """
    if eps <= 0:
        raise DomainError("eps must be positive")
    d, nu = params.d, params.nu
    dt = x.t - xp.t
    r = float(np.linalg.norm(np.asarray(x.x) - np.asarray(xp.x)))
    eps_damp = MODE_EPS_FACTOR * eps

    osc = x.z + xp.z + abs(dt)
    q_nodes, q_weights, _, _ = frequency_nodes(eps_damp, osc, budget_scale)

    total = 0.0 + 0.0j
    for start in range(0, q_nodes.size, _Q_CHUNK):
        qs = q_nodes[start : start + _Q_CHUNK]
        ws = q_weights[start : start + _Q_CHUNK]
        ivals = i_eps_many(qs, r, dt, eps_damp, d, budget_scale)
        radial = _radial_weight(params, bc, qs, x.z, xp.z)
        total += np.sum(ws * ivals * radial)

    if include_bound_state:
        prof = bound_state_profile(bc, nu)
        if prof is not None and np.isfinite(prof.q):
            kappa = prof.q
            ival = i_eps_many(np.array([-kappa]), r, dt, eps_damp, d, budget_scale)[0]
            total += 2.0 * ival * float(prof(x.z)) * float(prof(xp.z))

    value = mode_normalization(d) * math.sqrt(x.z * xp.z) * total
    if representation == "pads":
        value = value * (x.z * xp.z) ** ((d - 1) / 2.0)
    return complex(value)
