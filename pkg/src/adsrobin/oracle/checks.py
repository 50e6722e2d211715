"""Pointwise differential and equal-time checks on the kernels."""

import math
from typing import Callable

import numpy as np

from ..errors import StencilError
from ..geometry import SpacetimePoint
from ..modes import BoundaryCondition, ModelParams
from ..numutil import gauss_legendre, graded_panels, richardson_zero
from .smear import half_space_g_kernel

PointKernel = Callable[[SpacetimePoint, SpacetimePoint], complex]


def _shift(p: SpacetimePoint, axis: int, h: float) -> SpacetimePoint:
    coords = p.coords()
    coords[axis] += h
    if coords[-1] <= 0:
        raise StencilError("finite-difference stencil crossed z <= 0")
    return SpacetimePoint(t=coords[0], x=tuple(coords[1:-1]), z=coords[-1])


def pde_residual(kernel: PointKernel, x: SpacetimePoint, xp: SpacetimePoint, h: float, msq: float, slot: str = "first"):
    """Central-difference wave-operator residual (P_eta (x) 1) K or (1 (x) P_eta) K.

    P_eta = -d^2/dt^2 + Lap_x + d^2/dz^2 - msq/z^2 acting on the chosen
    slot; second-order accurate, so residual(h)/residual(h/2) ~ 4 on
    smooth kernels.
    """
    target, other = (x, xp) if slot == "first" else (xp, x)

    def K(p):
        return kernel(p, other) if slot == "first" else kernel(other, p)

    dim = len(target.x) + 2
    center = K(target)
    lap = 0.0
    for axis in range(dim):
        plus = K(_shift(target, axis, h))
        minus = K(_shift(target, axis, -h))
        second = (plus - 2.0 * center + minus) / (h * h)
        lap += -second if axis == 0 else second
    return lap - (msq / target.z**2) * center


def equal_time_checks(
    f_spatial,
    fp_spatial,
    params: ModelParams,
    bc: BoundaryCondition,
    t_bar: float = 0.0,
    h_t: float = 1e-3,
    eps_ladder=(2e-2, 1e-2),
    n_rho: int = 90,
    n_z: int = 24,
    n_zp_local: int = 60,
):
    """Equal-time commutator and time-derivative pairing.

    ``f_spatial``/``fp_spatial`` are spatial profiles: callables
    (xs, z) -> value together with .trans (per-axis Bump1D) and .radial
    attributes from a TestFunction; only their spatial factors are used.

    Returns:
        dict with ``commutator`` (should vanish) and ``pairing`` (should
        reproduce int f f' dx dz up to regulator corrections).  The
        pairing differentiates the kernel in the second time slot, the
        orientation in which the canonical identity carries a plus sign.
    """
    gk = half_space_g_kernel(params, bc)
    d = params.d

    z_lo, z_hi = f_spatial.radial.support
    z_nodes, z_w = gauss_legendre(max(z_lo, 1e-9), z_hi, n_z)
    zp_lo, zp_hi = fp_spatial.radial.support

    # transverse angular weight of the pair at radius rho (same reduction
    # as the smearing engine, restricted to the equal-time slice)
    from .smear import _correlation

    rho_max = 0.0
    for ga, gb in zip(f_spatial.trans, fp_spatial.trans):
        (alo, ahi), (blo, bhi) = ga.support, gb.support
        rho_max += max(abs(ahi - blo), abs(bhi - alo)) ** 2
    rho_max = math.sqrt(rho_max)

    eps_min = min(eps_ladder)
    rho_nodes, rho_w = graded_panels(0.0, rho_max, [0.0], scale=0.3 * eps_min, n_per_panel=8)
    if d == 2:
        ca = _correlation(
            f_spatial.trans[0],
            f_spatial.trans[0].support,
            fp_spatial.trans[0],
            fp_spatial.trans[0].support,
            np.concatenate([rho_nodes, -rho_nodes]),
            64,
        )
        w_ang = ca[: rho_nodes.size] + ca[rho_nodes.size :]
    else:
        theta, wtheta = gauss_legendre(0.0, 2.0 * math.pi, 32)
        d1 = rho_nodes[:, None] * np.cos(theta)[None, :]
        d2 = rho_nodes[:, None] * np.sin(theta)[None, :]
        c1 = _correlation(
            f_spatial.trans[0], f_spatial.trans[0].support, fp_spatial.trans[0], fp_spatial.trans[0].support, d1.ravel(), 64
        ).reshape(d1.shape)
        c2 = _correlation(
            f_spatial.trans[1], f_spatial.trans[1].support, fp_spatial.trans[1], fp_spatial.trans[1].support, d2.ravel(), 64
        ).reshape(d2.shape)
        w_ang = rho_nodes * np.sum(c1 * c2 * wtheta[None, :], axis=1)

    commutator = 0.0
    pairing_by_eps = []
    for eps in eps_ladder:
        acc_pair = 0.0
        acc_comm = 0.0
        for zi, zwi in zip(z_nodes, z_w):
            # z' nodes clustered where the mollified delta lives
            zp_nodes, zp_w = graded_panels(
                max(zp_lo, 1e-9), zp_hi, [zi], scale=0.3 * eps, n_per_panel=8
            )
            hz = float(f_spatial.radial(np.array([zi]))[0])
            hzp = fp_spatial.radial(zp_nodes)
            R, P = np.meshgrid(rho_nodes, zp_nodes, indexing="ij")
            WR, WP = np.meshgrid(rho_w * w_ang, zp_w * hzp, indexing="ij")
            w2 = WR * WP * zwi * hz
            # eps first, then the time derivative (slot 2 => dt = -h)
            k_plus = gk(-h_t * np.ones(R.size), R.ravel(), zi, P.ravel(), eps)
            k_minus = gk(h_t * np.ones(R.size), R.ravel(), zi, P.ravel(), eps)
            dk = (k_plus - k_minus) / (2.0 * h_t)
            acc_pair += float(np.sum(w2.ravel() * np.real(dk)))
            k0 = gk(np.zeros(R.size), R.ravel(), zi, P.ravel(), eps)
            acc_comm += float(np.sum(w2.ravel() * np.real(k0)))
        pairing_by_eps.append(acc_pair)
        commutator = max(commutator, abs(acc_comm))
    pairing = float(np.real(richardson_zero(pairing_by_eps, eps_ladder))) if len(
        eps_ladder
    ) > 1 else pairing_by_eps[0]
    return {"commutator": commutator, "pairing": pairing}
