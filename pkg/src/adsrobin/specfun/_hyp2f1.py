"""Regularized Gauss hypergeometric function of complex argument.

Evaluates F(a,b;c;w)/Gamma(c) for complex w anywhere off the point w=1,
with the principal branch cut along [1, oo).  Strategy:

* power series for |w| <= 0.75 (written so the regularized function is
  entire in c: term_n = (a)_n (b)_n / (n! Gamma(c+n)) needs no 1/Gamma(c)
  prefactor and survives c = 0, -1, -2, ...);
* Pfaff transformation onto the series for |w/(w-1)| <= 0.75;
* w -> 1-w and w -> 1/w connection formulas otherwise, with their
  sub-evaluations dispatched back onto series/Pfaff;
* degenerate parameter combinations (integer c-a-b or b-a, the rule for
  odd spatial dimension) handled by a small-parameter limit of the
  non-degenerate connection formula: symmetric perturbation of size
  ~1e-6 plus Richardson extrapolation in the step squared.

All branches are Schwarz symmetric: F(conj w) = conj F(w) for real
parameters, which the i*eps boundary-value machinery relies on.
"""

import numpy as np
from scipy import special as sp

from ..errors import ConvergenceError, SingularPointError

_RADIUS = 0.75
_MAX_TERMS = 800
_SERIES_TOL = 1e-17
_DEGEN_TOL = 1e-5
_DEGEN_STEP = 1e-6


def _as_complex_array(w):
    arr = np.asarray(w, dtype=np.complex128)
    return arr


def _reg_series(a, b, c, w):
    """Power series of F(a,b;c;w)/Gamma(c), |w| < 1.

    term_n = (a)_n (b)_n / (n! Gamma(c+n)) w^n.  The 1/Gamma(c+n) factor
    is carried explicitly so non-positive-integer c costs nothing: the
    first terms simply vanish.
    """
    w = _as_complex_array(w)
    out = np.zeros_like(w)
    # start index: skip the terms annihilated by 1/Gamma at exact poles
    cr = complex(c)
    n0 = 0
    if abs(cr.imag) < 1e-300 and abs(cr.real - round(cr.real)) < 1e-300 and cr.real <= 0:
        n0 = int(1 - round(cr.real))
    # coefficient at n0
    coef = complex(sp.rgamma(complex(c + n0)))
    for j in range(n0):
        coef *= complex(a + j) * complex(b + j)
    coef /= float(sp.gamma(n0 + 1))
    wn = w**n0
    out = out + coef * wn
    maxmod = np.abs(out)
    n = n0
    while n < _MAX_TERMS:
        coef *= complex(a + n) * complex(b + n) / ((n + 1) * complex(c + n))
        wn = wn * w
        term = coef * wn
        out = out + term
        maxmod = np.maximum(maxmod, np.abs(out))
        n += 1
        if np.all(np.abs(term) <= _SERIES_TOL * (maxmod + 1e-300)):
            break
    else:
        raise ConvergenceError("hypergeometric series did not converge; |w| too close to 1")
    return out


def _pfaff(a, b, c, w):
    """F~(a,b;c;w) = (1-w)^{-a} F~(a, c-b; c; w/(w-1))."""
    w = _as_complex_array(w)
    return (1.0 - w) ** (-complex(a)) * _reg_series(a, c - b, c, w / (w - 1.0))


def _eval_small(a, b, c, w):
    """Series or Pfaff, whichever argument is small enough."""
    w = _as_complex_array(w)
    out = np.empty_like(w)
    aw = np.abs(w)
    ap = np.abs(w / np.where(w == 1.0, np.inf, w - 1.0))
    m_series = aw <= _RADIUS
    m_pfaff = ~m_series & (ap <= _RADIUS)
    bad = ~(m_series | m_pfaff)
    if np.any(bad):
        raise ConvergenceError("hyp2f1 sub-evaluation outside series/Pfaff reach")
    if np.any(m_series):
        out[m_series] = _reg_series(a, b, c, w[m_series])
    if np.any(m_pfaff):
        out[m_pfaff] = _pfaff(a, b, c, w[m_pfaff])
    return out


def _F_small(a, b, c, w):
    """Unregularized F via the small-argument dispatch."""
    return complex(sp.gamma(complex(c))) * _eval_small(a, b, c, w)


def _near_integer(x, tol=_DEGEN_TOL):
    xr = complex(x)
    if abs(xr.imag) > tol:
        return None
    n = round(xr.real)
    if abs(xr.real - n) <= tol:
        return int(n)
    return None


def _conn_one_minus_generic(a, b, c, w):
    """A&S 15.3.6 divided by Gamma(c); requires c-a-b away from integers."""
    s = c - a - b
    omw = 1.0 - w
    t1 = complex(sp.gamma(complex(s)) * sp.rgamma(complex(c - a)) * sp.rgamma(complex(c - b)))
    t2 = complex(sp.gamma(complex(-s)) * sp.rgamma(complex(a)) * sp.rgamma(complex(b)))
    return t1 * _F_small(a, b, a + b - c + 1.0, omw) + t2 * omw ** complex(s) * _F_small(
        c - a, c - b, s + 1.0, omw
    )


def _conn_inverse_generic(a, b, c, w):
    """A&S 15.3.7 divided by Gamma(c); requires b-a away from integers."""
    nw = -w
    t1 = complex(sp.gamma(complex(b - a)) * sp.rgamma(complex(b)) * sp.rgamma(complex(c - a)))
    t2 = complex(sp.gamma(complex(a - b)) * sp.rgamma(complex(a)) * sp.rgamma(complex(c - b)))
    return t1 * nw ** complex(-a) * _F_small(a, a - c + 1.0, a - b + 1.0, 1.0 / w) + t2 * nw ** complex(
        -b
    ) * _F_small(b, b - c + 1.0, b - a + 1.0, 1.0 / w)


def _degenerate_limit(formula, a, b, c, w, perturb):
    """Symmetric small-parameter limit of a connection formula.

    ``perturb`` names the parameter shifted by +-delta; a second symmetric
    average at 2*delta feeds one Richardson step in delta^2.
    """

    def at(delta):
        if perturb == "c":
            return 0.5 * (formula(a, b, c + delta, w) + formula(a, b, c - delta, w))
        return 0.5 * (formula(a, b + delta, c, w) + formula(a, b - delta, c, w))

    m1 = at(_DEGEN_STEP)
    m2 = at(2.0 * _DEGEN_STEP)
    return (4.0 * m1 - m2) / 3.0


def _conn_one_minus(a, b, c, w):
    if _near_integer(c - a - b) is None:
        return _conn_one_minus_generic(a, b, c, w)
    return _degenerate_limit(_conn_one_minus_generic, a, b, c, w, "c")


def _conn_inverse(a, b, c, w):
    if _near_integer(b - a) is None:
        return _conn_inverse_generic(a, b, c, w)
    return _degenerate_limit(_conn_inverse_generic, a, b, c, w, "b")


def hyp2f1_reg(a, b, c, w):
    """F(a,b;c;w)/Gamma(c) for complex w, principal cut along [1, oo).

    Entire in c (finite at c = 0, -1, ...).  Accepts scalars or arrays in
    ``w``; parameters are scalars.  Real w >= 1 is treated as the upper
    boundary value w + i0.

    Raises:
        SingularPointError: w = 1 with Re(c-a-b) <= 0.
        ConvergenceError: argument outside every implemented regime
            (only reachable far from the real axis).
    """
    w = _as_complex_array(w)
    scalar = w.ndim == 0
    w = np.atleast_1d(w).astype(np.complex128)

    if np.any(w == 1.0) and complex(c - a - b).real <= 0:
        raise SingularPointError("hyp2f1 requested at the singular point w=1")

    out = np.empty_like(w)
    aw = np.abs(w)
    a1w = np.abs(1.0 - w)
    safe_w = np.where(w == 0.0, np.inf, w)
    safe_omw = np.where(w == 1.0, np.inf, 1.0 - w)
    r_pf = np.abs(w / np.where(w == 1.0, np.inf, w - 1.0))
    r_inv = np.abs(1.0 / safe_w)
    r_inv2 = np.abs(1.0 / safe_omw)
    r_1m2 = np.abs((w - 1.0) / safe_w)

    m_series = aw <= _RADIUS
    m_pfaff = ~m_series & (r_pf <= _RADIUS)
    done = m_series | m_pfaff
    m_onem = ~done & ((a1w <= _RADIUS) | (r_1m2 <= _RADIUS))
    done = done | m_onem
    m_inv = ~done & ((r_inv <= _RADIUS) | (r_inv2 <= _RADIUS))
    left = ~(done | m_inv)
    if np.any(left):
        raise ConvergenceError(
            "hyp2f1 argument outside all evaluation regimes (near exp(+-i pi/3) corners)"
        )

    if np.any(m_series):
        out[m_series] = _reg_series(a, b, c, w[m_series])
    if np.any(m_pfaff):
        out[m_pfaff] = _pfaff(a, b, c, w[m_pfaff])
    if np.any(m_onem):
        out[m_onem] = _conn_one_minus(a, b, c, w[m_onem])
    if np.any(m_inv):
        out[m_inv] = _conn_inverse(a, b, c, w[m_inv])

    return complex(out[0]) if scalar else out


def hyp2f1(a, b, c, w):
    """Unregularized F(a,b;c;w); c must stay away from non-positive integers."""
    return complex(sp.gamma(complex(c))) * np.asarray(hyp2f1_reg(a, b, c, w))
