"""Radial Sturm-Liouville problem: L = -d^2/dz^2 + m^2/z^2 on (0, oo).

Fundamental solutions, the projective Robin boundary functional, mode
profiles for the propagator mode sums, and the physics-to-nu map.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import (
    DomainError,
    ExtrapolationError,
    ImaginaryOrderError,
    NotSquareIntegrableError,
)
from .numutil import iterated_shanks
from .specfun import bessel_j, bessel_k, bessel_y

#: magnitude below which the extrapolated boundary functional counts as zero
EPS_ROBIN = 1e-6

#: z-ladder for the boundary-functional limit (geometric, sqrt(10)-spaced)
ROBIN_LADDER = tuple(10.0 ** (-e) for e in (3.0, 3.5, 4.0, 4.5, 5.0))

#: central-difference step for Wronskians
def _wronskian_step(z):
    return 1e-6 * max(1.0, z)


@dataclass(frozen=True)
class ModelParams:
    """Physics configuration: dimension, masses, curvature coupling.

    msq is the half-space potential strength, nu the Bessel order; the
    Ricci scalar is R = -d(d+1) with the AdS radius set to one.
    """

    d: int
    m0sq: float
    xi: float
    msq: float
    nu: float

    @property
    def ricci(self):
        return -self.d * (self.d + 1)


def derive_params(d: int, m0sq: float, xi: float) -> ModelParams:
    """Build ModelParams from the bare mass and curvature coupling.

    Raises:
        ImaginaryOrderError: msq < -1/4 (nu would be imaginary).
    """
    if d < 2:
        raise DomainError("dimension d must be >= 2")
    R = -d * (d + 1)
    msq = m0sq + (xi - (d - 1) / (4.0 * d)) * R
    if msq < -0.25:
        raise ImaginaryOrderError(f"msq={msq} below -1/4; imaginary order not supported")
    nu = 0.5 * math.sqrt(1.0 + 4.0 * msq)
    return ModelParams(d=d, m0sq=m0sq, xi=xi, msq=msq, nu=nu)


def params_from_nu(d: int, nu: float) -> ModelParams:
    """ModelParams with prescribed order; the bare mass is back-solved at xi=0."""
    if d < 2:
        raise DomainError("dimension d must be >= 2")
    if nu < 0:
        raise DomainError("nu must be non-negative")
    msq = nu * nu - 0.25
    m0sq = nu * nu - 0.25 * d * d
    return ModelParams(d=d, m0sq=m0sq, xi=0.0, msq=msq, nu=nu)


@dataclass(frozen=True)
class BoundaryCondition:
    """Robin boundary condition stored as the projective pair (cos a, sin a).

    alpha = pi is Dirichlet, alpha = pi/2 Neumann; the cot-alpha form is
    recovered through c_alpha but never used on code paths where alpha = pi
    would make it singular.
    """

    alpha: float

    def __post_init__(self):
        if not 0.0 < self.alpha <= math.pi:
            raise DomainError(f"alpha must lie in (0, pi], got {self.alpha}")

    @property
    def a(self):
        return math.cos(self.alpha)

    @property
    def b(self):
        # exact zero at the Dirichlet endpoint keeps that path regular
        return 0.0 if self.alpha == math.pi else math.sin(self.alpha)

    @property
    def c_alpha(self):
        if self.b == 0.0:
            return -math.inf
        return self.a / self.b

    def admissible_for_ground_state(self, nu: float) -> bool:
        if 0.0 < nu < 1.0:
            return math.pi / 2 - 1e-12 <= self.alpha <= math.pi
        if nu >= 1.0:
            return self.alpha == math.pi
        return False  # nu = 0 always carries a bound state

    def has_bound_state(self, nu: float) -> bool:
        if nu == 0.0:
            return True
        return 0.0 < nu < 1.0 and self.c_alpha > 0.0


@dataclass(frozen=True)
class RadialProfile:
    """Callable radial profile with the metadata the mode sums need."""

    fn: Callable[[np.ndarray], np.ndarray]
    nu: float
    q: float
    kind: str  # "phi1" | "phi2" | "psi" | "boundK"

    def __call__(self, z):
        return self.fn(np.asarray(z, dtype=float))


def phi1(nu: float, q: float) -> RadialProfile:
    """First fundamental solution sqrt(pi/2) q^-nu sqrt(z) J_nu(qz)."""
    if q <= 0:
        raise DomainError("q must be positive")
    if nu < 0:
        raise DomainError("phi1 requires nu >= 0")
    pref = math.sqrt(math.pi / 2.0) * q ** (-nu)

    def fn(z):
        return pref * np.sqrt(z) * bessel_j(nu, q * z)

    return RadialProfile(fn=fn, nu=nu, q=q, kind="phi1")


def phi2(nu: float, q: float) -> RadialProfile:
    """Second fundamental solution; log branch at nu = 0.

    Raises:
        NotSquareIntegrableError: nu >= 1 (only phi1 exists there).
    """
    if q <= 0:
        raise DomainError("q must be positive")
    if nu >= 1.0:
        raise NotSquareIntegrableError("phi2 does not exist for nu >= 1")
    if nu < 0:
        raise DomainError("phi2 requires nu >= 0")
    pref = math.sqrt(math.pi / 2.0)
    if nu == 0.0:
        logq = math.log(q)

        def fn(z):
            z = np.asarray(z, dtype=float)
            return -pref * np.sqrt(z) * (bessel_y(0.0, q * z) - (2.0 / math.pi) * logq)

    else:
        qnu = q**nu

        def fn(z):
            return -pref * qnu * np.sqrt(z) * bessel_j(-nu, q * z)

    return RadialProfile(fn=fn, nu=nu, q=q, kind="phi2")


def wronskian_at(f, g, z: float, step: Optional[float] = None) -> float:
    """W_z[f,g] = f g' - g f' by central differences."""
    h = step if step is not None else _wronskian_step(z)
    if z - h <= 0:
        h = 0.49 * z
    fp = (f(z + h) - f(z - h)) / (2.0 * h)
    gp = (g(z + h) - g(z - h)) / (2.0 * h)
    return float(f(z) * gp - g(z) * fp)


def robin_functional(profile, bc: BoundaryCondition, nu: float, ladder=ROBIN_LADDER) -> float:
    """z -> 0 limit of cos(a) W_z[psi, phi1] + sin(a) W_z[psi, phi2].

    Evaluated on a geometric z-ladder and accelerated with iterated
    Shanks; a mode satisfies the alpha-condition iff the result is below
    EPS_ROBIN in magnitude.

    Raises:
        ExtrapolationError: the ladder fails to produce a finite limit.
    """
    q = getattr(profile, "q", 1.0) or 1.0
    f1 = phi1(nu, q)
    f2 = phi2(nu, q) if nu < 1.0 else None
    vals = []
    for z in ladder:
        w1 = wronskian_at(profile, f1, z)
        term = bc.a * w1
        if bc.b != 0.0:
            if f2 is None:
                raise DomainError("Robin data with sin(alpha) != 0 needs nu < 1")
            term += bc.b * wronskian_at(profile, f2, z)
        vals.append(term)
    if not all(np.isfinite(vals)):
        raise ExtrapolationError("boundary functional ladder contains non-finite entries")
    return float(np.real(iterated_shanks(vals)))


def psi(bc: BoundaryCondition, nu: float, q: float) -> RadialProfile:
    """Projective Robin mode cos(a) J_nu(qz) - sin(a) q^{2 nu} J_{-nu}(qz).

    Dividing numerator and denominator by sin(a)^2 reproduces the
    cot-alpha form; at sin(a) = 0 it reduces to the pure J_nu mode
    that is the only option for nu >= 1.
    """
    if q <= 0:
        raise DomainError("q must be positive")
    if not 0.0 < nu < 1.0 and bc.b != 0.0:
        raise DomainError("general Robin modes require nu in (0,1); use alpha=pi otherwise")
    a, b = bc.a, bc.b
    q2nu = q ** (2.0 * nu)

    def fn(z):
        out = a * bessel_j(nu, q * z)
        if b != 0.0:
            out = out - b * q2nu * bessel_j(-nu, q * z)
        return out

    return RadialProfile(fn=fn, nu=nu, q=q, kind="psi")


def norm_denominator(bc: BoundaryCondition, nu: float, q: float) -> float:
    """cos^2 - 2 cos sin q^{2nu} cos(nu pi) + sin^2 q^{4nu} (> 0 for ab <= 0)."""
    a, b = bc.a, bc.b
    q2nu = q ** (2.0 * nu)
    return a * a - 2.0 * a * b * q2nu * math.cos(nu * math.pi) + b * b * q2nu * q2nu


def psi_nu0(bc: BoundaryCondition, q: float) -> RadialProfile:
    """nu = 0 log-branch mode (cos a + sin a (2/pi) log q) J_0 - sin a Y_0."""
    if q <= 0:
        raise DomainError("q must be positive")
    a_eff = bc.a + bc.b * (2.0 / math.pi) * math.log(q)
    b = bc.b

    def fn(z):
        return a_eff * bessel_j(0.0, q * z) - b * bessel_y(0.0, q * z)

    return RadialProfile(fn=fn, nu=0.0, q=q, kind="psi")


def norm_denominator_nu0(bc: BoundaryCondition, q: float) -> float:
    a_eff = bc.a + bc.b * (2.0 / math.pi) * math.log(q)
    return a_eff * a_eff + bc.b * bc.b


def bound_state_profile(bc: BoundaryCondition, nu: float) -> Optional[RadialProfile]:
    """Normalizable K_nu bound-state profile, or None when absent.

    Exists for nu in (0,1) with cot(alpha) > 0, and always for nu = 0.
    """
    if nu == 0.0:
        # alpha = pi sends kappa to +inf; K_nu then vanishes identically
        kappa = float(np.exp(-np.pi * bc.c_alpha / 2.0))
    elif 0.0 < nu < 1.0 and bc.c_alpha > 0.0:
        kappa = bc.c_alpha ** (1.0 / (2.0 * nu))
    else:
        return None

    def fn(z):
        return bessel_k(nu, kappa * np.asarray(z, dtype=float))

    return RadialProfile(fn=fn, nu=nu, q=kappa, kind="boundK")
