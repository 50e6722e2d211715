"""Coordinates, separations and null connectivity on the Poincare patch.

Everything is expressed through the flat half-space picture: points carry
Poincare coordinates (t, x_1..x_{d-1}, z>0), the Minkowski world function
sigma_M does the bookkeeping, and the cross-ratio u = 1 + sigma_M/(2 z z')
classifies causal relations.  u = 1 marks direct null separation, u = 0
separation by a ray reflected at z = 0.

The embedding chart stores the ambient R^{d+2} coordinates with signature
(-,+,...,+,-).  The published chart and quadric are mutually inconsistent;
the variant implemented here (time-squared term entering X_d with a plus
sign) satisfies the quadric identically and is cross-validated against
sigma_M by the chordal-distance oracle in the test suite.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DomainError

#: relative tolerance for causal classification, scaled by max(1, |u|)
TAU_CLASS = 1e-9

_COINCIDENT_TOL = 1e-12


@dataclass(frozen=True)
class SpacetimePoint:
    """Poincare-chart point (t, x_1..x_{d-1}, z) with z > 0."""

    t: float
    x: tuple
    z: float

    def __post_init__(self):
        if not self.z > 0:
            raise DomainError(f"z must be strictly positive, got {self.z}")
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))

    @property
    def d(self):
        return len(self.x) + 1

    def coords(self):
        return np.array([self.t, *self.x, self.z], dtype=float)

    def csv_row(self):
        return ",".join(repr(float(v)) for v in self.coords())

    @classmethod
    def from_csv_row(cls, row):
        vals = [float(v) for v in row.strip().split(",")]
        return cls(t=vals[0], x=tuple(vals[1:-1]), z=vals[-1])


@dataclass(frozen=True)
class MirrorPoint:
    """Reflection of a SpacetimePoint through z = 0; deliberately not a
    SpacetimePoint since z < 0 lies outside the chart."""

    t: float
    x: tuple
    z: float

    def coords(self):
        return np.array([self.t, *self.x, self.z], dtype=float)


@dataclass(frozen=True)
class EmbeddingPoint:
    """Ambient R^{d+2} coordinates of a chart point."""

    X: np.ndarray

    def quadric(self):
        """-X0^2 + sum_i X_i^2 - X_{d+1}^2 (should equal -1)."""
        return -self.X[0] ** 2 + np.sum(self.X[1:-1] ** 2) - self.X[-1] ** 2


@dataclass(frozen=True)
class SeparationReport:
    sigmaM: float
    sigmaMReflected: float
    u: float
    classification: str

    def to_dict(self):
        return {
            "sigmaM": self.sigmaM,
            "sigmaMReflected": self.sigmaMReflected,
            "u": self.u,
            "classification": self.classification,
        }


@dataclass(frozen=True)
class NullConnection:
    kind: str  # "direct" | "reflected"
    tangent: np.ndarray  # affine tangent vector at emission
    emission_covector: np.ndarray
    arrival_covector: np.ndarray
    crossing_fraction: Optional[float] = None


def _dim(params):
    return params.d if hasattr(params, "d") else int(params)


def embed(p: SpacetimePoint, params) -> EmbeddingPoint:
    """Map a chart point into the ambient quadric, X_d + X_{d+1} = 1/z."""
    d = _dim(params)
    if len(p.x) != d - 1:
        raise DomainError(f"point has {len(p.x)} transverse coordinates, expected {d - 1}")
    if not p.z > 0:
        raise DomainError("z must be strictly positive")
    t, z = p.t, p.z
    xs = np.asarray(p.x, dtype=float)
    mink = (t * t - np.dot(xs, xs)) / (2.0 * z)
    X = np.empty(d + 2)
    X[0] = t / z
    X[1 : d] = xs / z
    X[d] = (1.0 - z * z) / (2.0 * z) + mink
    X[d + 1] = (1.0 + z * z) / (2.0 * z) - mink
    return EmbeddingPoint(X=X)


def chordal_sigma(x: SpacetimePoint, xp: SpacetimePoint, params) -> float:
    """World function of the ambient flat metric, signature (-,+,...,+,-)."""
    dX = embed(x, params).X - embed(xp, params).X
    eta = np.ones_like(dX)
    eta[0] = -1.0
    eta[-1] = -1.0
    return 0.5 * float(np.dot(eta * dX, dX))


def sigma_minkowski(x, xp) -> float:
    """Flat half-space world function; accepts mirror points as well."""
    dt = x.t - xp.t
    dx = np.asarray(x.x) - np.asarray(xp.x)
    dz = x.z - xp.z
    return 0.5 * (-dt * dt + float(np.dot(dx, dx)) + dz * dz)


def cross_ratio(x: SpacetimePoint, xp: SpacetimePoint) -> float:
    return 1.0 + sigma_minkowski(x, xp) / (2.0 * x.z * xp.z)


def classify(u: float, coincident: bool = False) -> str:
    if coincident:
        return "coincident"
    tol = TAU_CLASS * max(1.0, abs(u))
    if abs(u - 1.0) <= tol:
        return "direct-null"
    if abs(u) <= tol:
        return "reflected-null"
    if u > 1.0:
        return "spacelike"
    if u > 0.0:
        return "timelike"
    return "reflected-timelike-mixed"


def separation(x: SpacetimePoint, xp: SpacetimePoint) -> SeparationReport:
    """Full separation report; sigmaMReflected = sigmaM + 2 z z' exactly."""
    sigM = sigma_minkowski(x, xp)
    sigM_refl = sigM + 2.0 * x.z * xp.z
    u = 1.0 + sigM / (2.0 * x.z * xp.z)
    coincident = (
        abs(x.t - xp.t) <= _COINCIDENT_TOL
        and abs(x.z - xp.z) <= _COINCIDENT_TOL
        and all(abs(a - b) <= _COINCIDENT_TOL for a, b in zip(x.x, xp.x))
    )
    return SeparationReport(
        sigmaM=sigM,
        sigmaMReflected=sigM_refl,
        u=u,
        classification=classify(u, coincident),
    )


def reflect(p) -> MirrorPoint:
    """z -> -z; involutive (reflecting a MirrorPoint restores the sign)."""
    return MirrorPoint(t=p.t, x=tuple(p.x), z=-p.z)


@dataclass(frozen=True)
class GeodesicDistance:
    sigma: complex
    branch: str  # "coincident" | "spacelike" | "timelike" | "mixed"
    reflected_null: bool = False


def geodesic_distance(x: SpacetimePoint, xp: SpacetimePoint) -> GeodesicDistance:
    """AdS world function sigma from cosh^2(sqrt(2 sigma)/2) = u.

    Real positive for spacelike pairs, real negative for timelike ones,
    complex for u < 0 (no real geodesic; the pair is connected only
    through the boundary).  At u = 0 the reflected-null flag is set.
    """
    rep = separation(x, xp)
    u = rep.u
    if rep.classification == "coincident":
        return GeodesicDistance(sigma=0.0 + 0.0j, branch="coincident")
    v = np.emath.arccosh(np.emath.sqrt(complex(u)))
    sigma = 2.0 * v * v
    if abs(sigma.imag) < 1e-12 * max(1.0, abs(sigma.real)):
        sigma = complex(sigma.real, 0.0)
    branch = "spacelike" if u > 1.0 else ("timelike" if u > 0.0 else "mixed")
    return GeodesicDistance(
        sigma=sigma,
        branch=branch,
        reflected_null=abs(u) <= TAU_CLASS * max(1.0, abs(u)),
    )


def _flat_dual(vec):
    """Lower the index with the mostly-plus metric diag(-1, 1, ..., 1)."""
    k = np.array(vec, dtype=float)
    k[0] = -k[0]
    return k


def connect_null(x: SpacetimePoint, xp: SpacetimePoint) -> Optional[NullConnection]:
    """Direct or boundary-reflected null connector between two points.

    Returns None when neither exists.  The reflected connector runs
    straight from the image point (t, x, -z) to x'; its emission covector
    at the physical point x carries the mirrored k_z.
    """
    rep = separation(x, xp)
    tol = TAU_CLASS * max(1.0, abs(rep.u))
    if abs(rep.u - 1.0) <= tol:
        tangent = xp.coords() - x.coords()
        k = _flat_dual(tangent)
        return NullConnection(
            kind="direct",
            tangent=tangent,
            emission_covector=k,
            arrival_covector=-k,
        )
    if abs(rep.u) <= tol:
        image = reflect(x)
        leg = xp.coords() - image.coords()
        k_image = _flat_dual(leg)
        k_emit = k_image.copy()
        k_emit[-1] = -k_emit[-1]
        frac = x.z / (x.z + xp.z)
        if not 0.0 < frac < 1.0:
            return None
        tangent = leg.copy()
        tangent[-1] = -tangent[-1]
        return NullConnection(
            kind="reflected",
            tangent=tangent,
            emission_covector=k_emit,
            arrival_covector=-k_image,
            crossing_fraction=frac,
        )
    return None
