"""Double smearing of translation-invariant kernels against test functions.

The kernels depend on (t - t', |x_perp - x'_perp|, z, z'), so the full
2(d+1)-dimensional tensor-product Gauss-Legendre quadrature reduces
exactly to four axes: the time lag (with its weight the cross-correlation
of the time bumps), the transverse radius (weighted by the angular
average of the transverse correlations), and the two radial coordinates.
The time-lag axis is integrated with panels graded toward the direct and
reflected light-cone crossings, whose locations are known per
(rho, z, z') tuple; the grading scale follows the kernel regulator.
"""

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from ..errors import DomainError, QuadratureError
from ..numutil import gauss_legendre, graded_panels, richardson_zero
from .testfun import SeparableFunction, TestFunction

Kernel = Callable[..., np.ndarray]  # kernel(dt, rho, z, zp, eps) -> complex array


@dataclass(frozen=True)
class QuadratureSpec:
    """Node counts, support boxes are taken from the functions themselves."""

    n_z: int = 12
    n_rho: int = 14
    n_theta: int = 24
    n_corr: int = 48
    dt_nodes_per_panel: int = 8
    dt_grading: float = 2.2
    eps_ladder: Tuple[float, ...] = (2e-2, 1e-2)

    def doubled(self):
        return replace(
            self,
            n_z=2 * self.n_z,
            n_rho=2 * self.n_rho,
            n_theta=2 * self.n_theta,
            n_corr=2 * self.n_corr,
            dt_nodes_per_panel=2 * self.dt_nodes_per_panel,
        )


@dataclass(frozen=True)
class SmearResult:
    value: complex
    eps_values: Tuple[Tuple[float, complex], ...]
    doubled_value: Optional[complex] = None

    @property
    def self_convergence(self):
        if self.doubled_value is None:
            return None
        return abs(self.value - self.doubled_value)


def _as_separable(f):
    return f.as_separable() if isinstance(f, TestFunction) else f


def _correlation(fa, support_a, fb, support_b, deltas, n_corr):
    """C(delta) = int fa(x) fb(x - delta) dx on shared support overlap."""
    x, w = gauss_legendre(support_a[0], support_a[1], n_corr)
    vals_a = fa(x) * w
    deltas = np.asarray(deltas, dtype=float)
    xb = x[None, :] - deltas[..., None]
    return np.sum(vals_a[None, :] * fb(xb.reshape(-1, x.size)).reshape(xb.shape), axis=-1)


class _ReducedGrid:
    """Shared node layout for one (f, f') pair of separable functions."""

    def __init__(self, F, Fp, spec: QuadratureSpec, eps_scale: float):
        (tA, xA, zA) = F.support_box()
        (tB, xB, zB) = Fp.support_box()
        self.F, self.Fp, self.spec = F, Fp, spec
        d = F.d
        if d != Fp.d:
            raise DomainError("mismatched dimensions between test functions")
        self.d = d

        self.dt_lo = tA[0] - tB[1]
        self.dt_hi = tA[1] - tB[0]
        self.tA, self.tB = tA, tB
        self.xA, self.xB = xA, xB

        rho_hi = 0.0
        rho_lo_sq = 0.0
        for (alo, ahi), (blo, bhi) in zip(xA, xB):
            gap = max(blo - ahi, alo - bhi, 0.0)
            rho_lo_sq += gap * gap
            rho_hi += max(abs(ahi - blo), abs(bhi - alo)) ** 2
        rho_lo = math.sqrt(rho_lo_sq)
        rho_hi = math.sqrt(rho_hi)
        self.z, self.wz = gauss_legendre(zA[0], zA[1], spec.n_z)
        self.zp, self.wzp = gauss_legendre(zB[0], zB[1], spec.n_z)
        self.rho, self.wrho = gauss_legendre(rho_lo, max(rho_hi, rho_lo + 1e-12), spec.n_rho)

        # flattened (rho, z, zp) tuples with per-tuple graded dt panels
        RR, ZZ, PP = np.meshgrid(self.rho, self.z, self.zp, indexing="ij")
        self.tup_rho = RR.ravel()
        self.tup_z = ZZ.ravel()
        self.tup_zp = PP.ravel()
        self.tup_w = (
            self.wrho[:, None, None] * self.wz[None, :, None] * self.wzp[None, None, :]
        ).ravel()

        dts, wdts, owner = [], [], []
        min_w = max(0.35 * eps_scale, 1e-5)
        for i in range(self.tup_rho.size):
            r, zz, pp = self.tup_rho[i], self.tup_z[i], self.tup_zp[i]
            b_dir = math.hypot(r, zz - pp)
            b_ref = math.hypot(r, zz + pp)
            sing = [s for s in (-b_ref, -b_dir, b_dir, b_ref) if self.dt_lo < s < self.dt_hi]
            x, w = graded_panels(
                self.dt_lo,
                self.dt_hi,
                sing,
                scale=min_w,
                n_per_panel=spec.dt_nodes_per_panel,
                grading=spec.dt_grading,
            )
            dts.append(x)
            wdts.append(w)
            owner.append(np.full(x.size, i))
        self.dt = np.concatenate(dts)
        self.wdt = np.concatenate(wdts)
        self.owner = np.concatenate(owner)

        self.rho_flat = self.tup_rho[self.owner]
        self.z_flat = self.tup_z[self.owner]
        self.zp_flat = self.tup_zp[self.owner]
        self.base_w = self.tup_w[self.owner] * self.wdt

    def _term_weights(self, term_a, term_b):
        """Per-node weight: time correlation x transverse angular weight x
        radial factors, for one pair of separable terms."""
        spec = self.spec
        wt = _correlation(
            term_a.time_fn, term_a.time_support, term_b.time_fn, term_b.time_support, self.dt, spec.n_corr
        )
        if self.d == 2:
            ca = _correlation(
                term_a.trans_fns[0],
                term_a.trans_supports[0],
                term_b.trans_fns[0],
                term_b.trans_supports[0],
                np.concatenate([self.rho, -self.rho]),
                spec.n_corr,
            )
            wrho_ang = ca[: self.rho.size] + ca[self.rho.size :]
        else:
            theta, wtheta = gauss_legendre(0.0, 2.0 * math.pi, spec.n_theta)
            grid_r = self.rho[:, None]
            d1 = grid_r * np.cos(theta)[None, :]
            d2 = grid_r * np.sin(theta)[None, :]
            c1 = _correlation(
                term_a.trans_fns[0],
                term_a.trans_supports[0],
                term_b.trans_fns[0],
                term_b.trans_supports[0],
                d1.ravel(),
                spec.n_corr,
            ).reshape(d1.shape)
            c2 = _correlation(
                term_a.trans_fns[1],
                term_a.trans_supports[1],
                term_b.trans_fns[1],
                term_b.trans_supports[1],
                d2.ravel(),
                spec.n_corr,
            ).reshape(d2.shape)
            wrho_ang = self.rho * np.sum(c1 * c2 * wtheta[None, :], axis=1)
        hz = term_a.z_fn(self.z)
        hzp = term_b.z_fn(self.zp)
        per_tuple = (wrho_ang[:, None, None] * hz[None, :, None] * hzp[None, None, :]).ravel()
        return wt * per_tuple[self.owner] * self.base_w

    def total_weights(self):
        """Sum of the term-pair weights; kernel values enter linearly."""
        total = None
        for term_a in self.F.terms:
            for term_b in self.Fp.terms:
                w = self._term_weights(term_a, term_b)
                total = w if total is None else total + w
        return total


def _smear_at_eps(grid: _ReducedGrid, weights, kernel: Kernel, eps: float):
    kvals = kernel(grid.dt, grid.rho_flat, grid.z_flat, grid.zp_flat, eps)
    return complex(np.sum(weights * kvals))


def smear2(
    kernel: Kernel,
    f,
    fp,
    spec: Optional[QuadratureSpec] = None,
    doubled: bool = False,
) -> SmearResult:
    """int int f(x) K(x, x') f'(x') over both supports, extrapolated in eps.

    The tensor-product Gauss-Legendre rule acts in the reduced
    coordinates (dt, rho, z, z'); reduction is exact for the
    translation-invariant kernels used here.  ``doubled=True`` recomputes
    at doubled node counts and attaches the companion value.

    Raises:
        QuadratureError: the doubled-resolution companion disagrees wildly.
    """
    spec = spec or QuadratureSpec()
    F, Fp = _as_separable(f), _as_separable(fp)

    def run(s: QuadratureSpec):
        grid = _ReducedGrid(F, Fp, s, eps_scale=min(s.eps_ladder))
        weights = grid.total_weights()
        vals = [_smear_at_eps(grid, weights, kernel, e) for e in s.eps_ladder]
        if len(vals) == 1:
            return vals[0], tuple(zip(s.eps_ladder, vals))
        return richardson_zero(vals, s.eps_ladder), tuple(zip(s.eps_ladder, vals))

    value, ladder = run(spec)
    doubled_value = None
    if doubled:
        doubled_value, _ = run(spec.doubled())
        scale = max(abs(value), abs(doubled_value), 1e-300)
        if abs(value - doubled_value) > 0.25 * scale:
            raise QuadratureError(
                "smearing quadrature failed node-doubling self-check",
                diagnostics={"value": value, "doubled": doubled_value},
            )
    return SmearResult(value=value, eps_values=ladder, doubled_value=doubled_value)


# -- kernel factories -------------------------------------------------------


def half_space_omega2_kernel(params, bc) -> Kernel:
    """omega2 on the half space as a function of (dt, rho, z, z', eps)."""
    from ..kernels import _omega2_of_u  # shared vectorized core

    d = params.d

    def kernel(dt, rho, z, zp, eps):
        dt = np.asarray(dt, dtype=float)
        sig = 0.5 * (-dt * dt + rho * rho + (z - zp) ** 2)
        u = 1.0 + (sig + 2j * eps * dt + eps * eps) / (2.0 * z * zp)
        vals = _omega2_of_u(params, bc, u)
        return vals * (z * zp) ** (-(d - 1) / 2.0)

    return kernel


def half_space_g_kernel(params, bc) -> Kernel:
    """Causal propagator on the half space (real), same signature."""
    om = half_space_omega2_kernel(params, bc)

    def kernel(dt, rho, z, zp, eps):
        return 2.0 * np.imag(om(dt, rho, z, zp, eps))

    return kernel


def constant_kernel(value=1.0) -> Kernel:
    def kernel(dt, rho, z, zp, eps):
        return np.full(np.shape(dt), value, dtype=np.complex128)

    return kernel


def symplectic_form(f, fp, params, bc, spec: Optional[QuadratureSpec] = None) -> float:
    """sigma(f, f') = int f G(f'); antisymmetric and real."""
    res = smear2(half_space_g_kernel(params, bc), f, fp, spec=spec)
    return float(np.real(res.value))
