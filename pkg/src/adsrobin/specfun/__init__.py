"""Special functions used by the kernels: Gamma, Bessel J/Y/K, regularized 2F1.

Gamma and the Bessel functions are delegated to scipy behind this module's
contract checks; the complex-argument hypergeometric is implemented here
because cut-side control and the regularization in c are load-bearing for
the propagator kernels.
"""

import numpy as np
from scipy import special as sp

from ..errors import DomainError, PoleError
from ._hyp2f1 import hyp2f1, hyp2f1_reg

__all__ = [
    "gamma_fn",
    "rgamma_fn",
    "digamma_fn",
    "bessel_j",
    "bessel_y",
    "bessel_k",
    "hyp2f1",
    "hyp2f1_reg",
    "NU_MAX",
]

NU_MAX = 25.0


def gamma_fn(w):
    """Gamma function for real or complex argument.

    Raises:
        PoleError: w is a non-positive integer (the pole location is
            attached to the exception).
    """
    wc = np.asarray(w, dtype=np.complex128)
    poles = (np.abs(wc.imag) < 1e-14) & (wc.real <= 0.5) & (np.abs(wc.real - np.round(wc.real)) < 1e-14)
    if np.any(poles):
        loc = np.round(np.atleast_1d(wc.real)[np.atleast_1d(poles)][0])
        raise PoleError(f"gamma pole at {int(loc)}", location=int(loc))
    out = sp.gamma(wc)
    if np.isrealobj(np.asarray(w)) and np.all(np.abs(out.imag) < 1e-300):
        out = out.real
    return out[()] if np.ndim(w) == 0 else out


def rgamma_fn(w):
    """1/Gamma, entire; no pole handling needed."""
    out = sp.rgamma(np.asarray(w, dtype=np.complex128))
    return out[()] if np.ndim(w) == 0 else out


def digamma_fn(w):
    return sp.digamma(w)


def _check_bessel_args(nu, x):
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("Bessel functions here require x > 0")
    if not (-1.0 <= nu <= NU_MAX):
        raise DomainError(f"order nu={nu} outside supported range [-1, {NU_MAX}]")
    return x


def bessel_j(nu, x):
    """J_nu(x) for real order nu in [-1, NU_MAX], x > 0."""
    x = _check_bessel_args(nu, x)
    return sp.jv(nu, x)


def bessel_y(nu, x):
    """Y_nu(x), same domain as bessel_j."""
    x = _check_bessel_args(nu, x)
    return sp.yv(nu, x)


def bessel_k(nu, x):
    """Modified K_nu(x), same domain as bessel_j."""
    x = _check_bessel_args(nu, x)
    return sp.kv(nu, x)
