"""Admissible test functions: smooth bumps times the boundary power laws.

A test function is a product f(t, x, z) = g_t(t) * prod_i g_i(x_i) * h(z)
with compactly supported smooth bumps in t and x and the radial factor

    h(z) = cos(alpha) z^{nu+1/2} F1(z) + sin(alpha) z^{-nu+1/2} F2(z),

where F1, F2 are smooth bumps on [0, z_sup) built as functions of z^2 so
the wave operator keeps everything in the same family.  Applying the
half-space wave operator P = -d^2/dt^2 + Lap_x + d^2/dz^2 - m^2/z^2 is
done analytically; the z^{nu +- 1/2} power laws drop out of the singular
potential exactly, leaving bump derivatives only.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import DomainError
from ..modes import BoundaryCondition


def _bump(s):
    """exp(-1/(1-s^2)) on |s|<1, zero outside."""
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    inside = np.abs(s) < 1.0
    si = s[inside]
    out[inside] = np.exp(-1.0 / (1.0 - si * si))
    return out


def _bump_d1(s):
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    inside = np.abs(s) < 1.0
    si = s[inside]
    g = 1.0 - si * si
    out[inside] = np.exp(-1.0 / g) * (-2.0 * si / g**2)
    return out


def _bump_d2(s):
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    inside = np.abs(s) < 1.0
    si = s[inside]
    g = 1.0 - si * si
    b = np.exp(-1.0 / g)
    d1 = -2.0 * si / g**2
    out[inside] = b * (d1 * d1 - 2.0 / g**2 - 8.0 * si * si / g**3)
    return out


@dataclass(frozen=True)
class Bump1D:
    """Scaled mollifier b((x-center)/width), support (center-width, center+width)."""

    center: float
    width: float
    amplitude: float = 1.0

    def __call__(self, x):
        return self.amplitude * _bump((np.asarray(x, dtype=float) - self.center) / self.width)

    def d1(self, x):
        return self.amplitude * _bump_d1((np.asarray(x, dtype=float) - self.center) / self.width) / self.width

    def d2(self, x):
        return (
            self.amplitude
            * _bump_d2((np.asarray(x, dtype=float) - self.center) / self.width)
            / self.width**2
        )

    @property
    def support(self):
        return (self.center - self.width, self.center + self.width)

    def mass(self, n=200):
        from ..numutil import gauss_legendre

        x, w = gauss_legendre(*self.support, n)
        return float(np.sum(w * self(x)))


@dataclass(frozen=True)
class HalfBump:
    """Bump in z^2: B(z) = b((z/width)^2), support [0, width); B'(0) = 0."""

    width: float
    amplitude: float = 1.0

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        return self.amplitude * _bump((z / self.width) ** 2)

    def d1(self, z):
        z = np.asarray(z, dtype=float)
        s = (z / self.width) ** 2
        return self.amplitude * _bump_d1(s) * 2.0 * z / self.width**2

    def d2(self, z):
        z = np.asarray(z, dtype=float)
        s = (z / self.width) ** 2
        return self.amplitude * (
            _bump_d2(s) * (2.0 * z / self.width**2) ** 2 + _bump_d1(s) * 2.0 / self.width**2
        )

    @property
    def support(self):
        return (0.0, self.width)


@dataclass(frozen=True)
class RadialFactor:
    """cos(a) z^{nu+1/2} F1(z) + sin(a) z^{-nu+1/2} F2(z)."""

    alpha: float
    nu: float
    f1: object  # HalfBump or shifted Bump1D
    f2: object

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        a, b = math.cos(self.alpha), math.sin(self.alpha)
        out = np.zeros_like(z)
        pos = z > 0
        zp = z[pos]
        val = a * zp ** (self.nu + 0.5) * self.f1(zp)
        if abs(b) > 0:
            val = val + b * zp ** (-self.nu + 0.5) * self.f2(zp)
        out[pos] = val
        return out

    def wave_part(self, z):
        """h'' - m^2 h / z^2 with m^2 = nu^2 - 1/4; power-law terms cancel."""
        z = np.asarray(z, dtype=float)
        a, b = math.cos(self.alpha), math.sin(self.alpha)
        out = np.zeros_like(z)
        pos = z > 0
        zp = z[pos]
        nu = self.nu
        val = a * (
            2.0 * (nu + 0.5) * zp ** (nu - 0.5) * self.f1.d1(zp)
            + zp ** (nu + 0.5) * self.f1.d2(zp)
        )
        if abs(b) > 0:
            val = val + b * (
                2.0 * (-nu + 0.5) * zp ** (-nu - 0.5) * self.f2.d1(zp)
                + zp ** (-nu + 0.5) * self.f2.d2(zp)
            )
        out[pos] = val
        return out

    @property
    def support(self):
        lo1, hi1 = self.f1.support
        lo2, hi2 = self.f2.support
        if math.sin(self.alpha) == 0.0:
            return (max(lo1, 1e-12), hi1)
        return (max(min(lo1, lo2), 1e-12), max(hi1, hi2))


@dataclass(frozen=True)
class ProductTerm:
    """One separable term g_t(t) * prod g_i(x_i) * h(z)."""

    time_fn: Callable
    trans_fns: Tuple[Callable, ...]
    z_fn: Callable
    time_support: Tuple[float, float]
    trans_supports: Tuple[Tuple[float, float], ...]
    z_support: Tuple[float, float]


@dataclass(frozen=True)
class SeparableFunction:
    """Finite sum of separable terms; closed under the wave operator."""

    terms: Tuple[ProductTerm, ...]

    @property
    def d(self):
        return len(self.terms[0].trans_fns) + 1

    def __call__(self, t, xs, z):
        total = 0.0
        for term in self.terms:
            val = term.time_fn(t)
            for fn, x in zip(term.trans_fns, xs):
                val = val * fn(x)
            val = val * term.z_fn(z)
            total = total + val
        return total

    def support_box(self):
        ts = [term.time_support for term in self.terms]
        t_lo, t_hi = min(s[0] for s in ts), max(s[1] for s in ts)
        n_trans = len(self.terms[0].trans_fns)
        boxes = []
        for i in range(n_trans):
            ss = [term.trans_supports[i] for term in self.terms]
            boxes.append((min(s[0] for s in ss), max(s[1] for s in ss)))
        zs = [term.z_support for term in self.terms]
        z_lo, z_hi = min(s[0] for s in zs), max(s[1] for s in zs)
        return (t_lo, t_hi), tuple(boxes), (z_lo, z_hi)


@dataclass(frozen=True)
class TestFunction:
    """Member of the admissible family: bumps times the radial power laws."""

    time: Bump1D
    trans: Tuple[Bump1D, ...]
    radial: RadialFactor

    @property
    def d(self):
        return len(self.trans) + 1

    @property
    def alpha(self):
        return self.radial.alpha

    @property
    def nu(self):
        return self.radial.nu

    def __call__(self, t, xs, z):
        val = self.time(t)
        for fn, x in zip(self.trans, xs):
            val = val * fn(x)
        return val * self.radial(z)

    def as_separable(self) -> SeparableFunction:
        term = ProductTerm(
            time_fn=self.time,
            trans_fns=tuple(self.trans),
            z_fn=self.radial,
            time_support=self.time.support,
            trans_supports=tuple(g.support for g in self.trans),
            z_support=self.radial.support,
        )
        return SeparableFunction(terms=(term,))

    def p_eta(self) -> SeparableFunction:
        """Analytic wave-operator image -g_t'' g h + g_t Lap_x(g) h + g_t g (h''-m^2 h/z^2)."""
        terms = []
        t_sup = self.time.support
        x_sups = tuple(g.support for g in self.trans)
        z_sup = self.radial.support
        neg_d2 = lambda fn: (lambda x, fn=fn: -fn.d2(x))
        terms.append(
            ProductTerm(
                time_fn=neg_d2(self.time),
                trans_fns=tuple(self.trans),
                z_fn=self.radial,
                time_support=t_sup,
                trans_supports=x_sups,
                z_support=z_sup,
            )
        )
        for i in range(len(self.trans)):
            fns = list(self.trans)
            fns[i] = self.trans[i].d2
            terms.append(
                ProductTerm(
                    time_fn=self.time,
                    trans_fns=tuple(fns),
                    z_fn=self.radial,
                    time_support=t_sup,
                    trans_supports=x_sups,
                    z_support=z_sup,
                )
            )
        terms.append(
            ProductTerm(
                time_fn=self.time,
                trans_fns=tuple(self.trans),
                z_fn=self.radial.wave_part,
                time_support=t_sup,
                trans_supports=x_sups,
                z_support=z_sup,
            )
        )
        return SeparableFunction(terms=tuple(terms))

    def support_box(self):
        return self.as_separable().support_box()

    def mass(self):
        total = self.time.mass()
        for g in self.trans:
            total *= g.mass()
        from ..numutil import gauss_legendre

        z_lo, z_hi = self.radial.support
        z, w = gauss_legendre(z_lo, z_hi, 400)
        return total * float(np.sum(w * self.radial(z)))


def make_test_function(
    bc: BoundaryCondition,
    nu: float,
    d: int,
    t_center: float = 0.0,
    t_width: float = 0.4,
    x_centers: Optional[Sequence[float]] = None,
    x_widths: Optional[Sequence[float]] = None,
    z_width: float = 0.8,
    z_interior: Optional[Tuple[float, float]] = None,
    amplitude: float = 1.0,
) -> TestFunction:
    """Convenience builder; boundary-touching radial bumps by default.

    With ``z_interior = (center, width)`` both radial bumps are shifted
    bulk bumps instead (then f is smooth and compactly supported in the
    open half-space).
    """
    x_centers = list(x_centers) if x_centers is not None else [0.0] * (d - 1)
    x_widths = list(x_widths) if x_widths is not None else [0.5] * (d - 1)
    if len(x_centers) != d - 1 or len(x_widths) != d - 1:
        raise DomainError("transverse centers/widths must have length d-1")
    if z_interior is not None:
        zc, zw = z_interior
        if zc - zw <= 0:
            raise DomainError("interior radial bump must stay inside z > 0")
        f1 = Bump1D(center=zc, width=zw)
        f2 = Bump1D(center=zc, width=zw)
    else:
        f1 = HalfBump(width=z_width)
        f2 = HalfBump(width=z_width)
    return TestFunction(
        time=Bump1D(center=t_center, width=t_width, amplitude=amplitude),
        trans=tuple(Bump1D(center=c, width=w) for c, w in zip(x_centers, x_widths)),
        radial=RadialFactor(alpha=bc.alpha, nu=nu, f1=f1, f2=f2),
    )
