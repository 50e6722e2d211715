"""Geometric singularity predicates and numerical singular-support scans.

The commutator's wavefront set pairs points along flat null geodesics,
direct or reflected once at z = 0, with covectors that are flat duals of
the ray tangents and parallel-transported (sign-flipped) at arrival; the
state adds a frequency orientation.  Scans fit |kernel| against the
distance to the cone crossings and extract the singular coefficients.
"""

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import FitError, RegionError
from .geometry import SpacetimePoint, reflect, separation
from .modes import BoundaryCondition, ModelParams


@dataclass(frozen=True)
class CovectorPoint:
    x: SpacetimePoint
    k: np.ndarray  # (k_t, k_x..., k_z)

    def __post_init__(self):
        k = np.asarray(self.k, dtype=float)
        if np.allclose(k, 0.0):
            raise ValueError("covector must be nonzero")
        object.__setattr__(self, "k", k)


def _null_norm(k):
    """eta^{mu nu} k_mu k_nu with mostly-plus metric."""
    return -k[0] ** 2 + float(np.sum(k[1:] ** 2))


def _raise_index(k):
    v = np.array(k, dtype=float)
    v[0] = -v[0]
    return v


def _proportional(vec_a, vec_b, tol):
    na, nb = np.linalg.norm(vec_a), np.linalg.norm(vec_b)
    if na < tol or nb < tol:
        return False
    cross = vec_a / na - np.sign(np.dot(vec_a, vec_b)) * vec_b / nb
    return np.linalg.norm(cross) <= tol


def wf_predicate_commutator(a: CovectorPoint, b: CovectorPoint, tol: float = 1e-9):
    """Direct / reflected membership tests for the commutator wavefront set."""
    k, kp = a.k, b.k
    scale = max(np.linalg.norm(k), 1.0)
    null_k = abs(_null_norm(k)) <= tol * scale**2

    sep = np.asarray(b.x.coords()) - np.asarray(a.x.coords())
    direct = (
        null_k
        and _proportional(sep, _raise_index(k), tol)
        and np.linalg.norm(kp + k) <= tol * scale
    )

    k_mirror = np.array(k, dtype=float)
    k_mirror[-1] = -k_mirror[-1]
    sep_refl = np.asarray(b.x.coords()) - np.asarray(reflect(a.x).coords())
    reflected = (
        null_k
        and _proportional(sep_refl, _raise_index(k_mirror), tol)
        and np.linalg.norm(kp + k_mirror) <= tol * scale
    )
    return {"direct": bool(direct), "reflected": bool(reflected)}


def wf_predicate_state(a: CovectorPoint, b: CovectorPoint, tol: float = 1e-9) -> bool:
    """Commutator predicate plus the frequency orientation k_t > 0.

    The orientation convention is fixed by the sign of Im omega2 near the
    direct singularity for the ground state's positive-frequency modes.
    """
    comm = wf_predicate_commutator(a, b, tol)
    return bool((comm["direct"] or comm["reflected"]) and a.k[0] > 0.0)


@dataclass(frozen=True)
class SingularFit:
    exponent: float
    coefficient: complex
    window: Tuple[float, float]
    quality: float
    crossing: float  # u* in {0, 1}


#: acceptance threshold on the log-log fit residual
FIT_QUALITY_MAX = 0.05


def _fit_window(u_vals, k_vals, u_star, eps_min, w_max, fixed_exponent=None):
    dist = np.abs(u_vals - u_star)
    mask = (dist > 10.0 * eps_min) & (dist < w_max) & (np.abs(k_vals) > 0)
    if mask.sum() < 6:
        raise FitError(f"too few samples in the fit window around u*={u_star}")
    lx = np.log(dist[mask])
    ly = np.log(np.abs(k_vals[mask]))
    A = np.vstack([lx, np.ones_like(lx)]).T
    sol, *_ = np.linalg.lstsq(A, ly, rcond=None)
    slope, intercept = sol
    resid = ly - A @ sol
    quality = float(np.sqrt(np.mean(resid**2)) / max(1.0, np.abs(ly).mean()))
    if fixed_exponent is not None:
        intercept = float(np.mean(ly - fixed_exponent * lx))
        coefficient = math.exp(intercept)
        return float(slope), coefficient, quality
    return float(slope), math.exp(float(intercept)), quality


def singular_scan_and_fit(
    kernel_fn: Callable[[SpacetimePoint, SpacetimePoint, float], complex],
    pairs: Sequence[Tuple[SpacetimePoint, SpacetimePoint]],
    eps_ladder: Sequence[float] = (1e-6,),
    window_max: float = 0.2,
    expected_exponent: Optional[float] = None,
) -> List[SingularFit]:
    """Scan a one-parameter family of pairs and fit each cone crossing.

    The family should cross u = 1 and/or u = 0 transversally.  For every
    crossing present, |kernel| is fitted as |u - u*|^p on a log-log
    window that excludes the 10 eps regulator collar.

    Raises:
        FitError: fit residual above FIT_QUALITY_MAX.
    """
    u_vals = np.array([separation(x, xp).u for (x, xp) in pairs])
    eps = min(eps_ladder)
    k_vals = np.array([kernel_fn(x, xp, eps) for (x, xp) in pairs], dtype=complex)
    fits = []
    for u_star in (1.0, 0.0):
        crossed = np.any(u_vals > u_star) and np.any(u_vals < u_star)
        if not crossed:
            continue
        slope, coeff, quality = _fit_window(
            u_vals, k_vals, u_star, eps, window_max, fixed_exponent=expected_exponent
        )
        if quality > FIT_QUALITY_MAX:
            raise FitError(
                f"singular fit at u*={u_star} rejected: quality {quality:.3f}"
            )
        fits.append(
            SingularFit(
                exponent=slope,
                coefficient=coeff,
                window=(10.0 * eps, window_max),
                quality=quality,
                crossing=u_star,
            )
        )
    return fits


def hadamard_restriction_check(
    params: ModelParams,
    bc: BoundaryCondition,
    pairs: Sequence[Tuple[SpacetimePoint, SpacetimePoint]],
    reference_bc: Optional[BoundaryCondition] = None,
    eps: float = 1e-5,
):
    """Smoothness estimate for omega2(alpha) - omega2(Dirichlet) on a region
    containing no reflected-null pairs.

    Returns the max fourth divided difference along the sample path for
    the difference kernel and for the raw kernel (whose blow-up near the
    direct cone is the comparison scale).

    Raises:
        RegionError: the sample region contains a reflected-null pair.
    """
    from .kernels import causal_propagator_value, omega2, u_regulated, _omega2_of_u

    reference_bc = reference_bc or BoundaryCondition(alpha=math.pi)
    u_min = min(abs(separation(x, xp).u) for (x, xp) in pairs)
    if u_min < 5e-2:
        raise RegionError("region contains (nearly) reflected-null related pairs")

    diff_vals = []
    raw_vals = []
    for x, xp in pairs:
        u = u_regulated(x, xp, eps)
        v_alpha = complex(_omega2_of_u(params, bc, u))
        v_ref = complex(_omega2_of_u(params, reference_bc, u))
        diff_vals.append(v_alpha - v_ref)
        raw_vals.append(v_alpha)

    def max_d4(vals):
        arr = np.asarray(vals)
        if arr.size < 5:
            raise RegionError("need at least five samples along the path")
        d4 = arr[4:] - 4 * arr[3:-1] + 6 * arr[2:-2] - 4 * arr[1:-3] + arr[:-4]
        return float(np.max(np.abs(d4)))

    return {"difference": max_d4(diff_vals), "raw": max_d4(raw_vals)}
