"""Small shared numerics: sequence acceleration and quadrature node builders."""

import numpy as np

from .errors import ExtrapolationError


def shanks(seq):
    """One Shanks/Aitken step on a sequence; length shrinks by two."""
    s = np.asarray(seq, dtype=complex)
    num = s[2:] * s[:-2] - s[1:-1] ** 2
    den = s[2:] - 2.0 * s[1:-1] + s[:-2]
    small = np.abs(den) < 1e-300
    den = np.where(small, 1.0, den)
    out = num / den
    return np.where(small, s[1:-1], out)


def iterated_shanks(seq, max_levels=None):
    """Iterate Shanks until the table collapses; returns the apex value."""
    s = np.asarray(seq, dtype=complex)
    if s.size == 0:
        raise ExtrapolationError("empty sequence")
    levels = 0
    while s.size >= 3 and (max_levels is None or levels < max_levels):
        s = shanks(s)
        levels += 1
    val = s[-1]
    if not np.isfinite(val):
        raise ExtrapolationError("sequence acceleration produced a non-finite value")
    return complex(val)


def richardson_zero(values, steps):
    """Extrapolate values(h) -> h=0 assuming a polynomial error in h."""
    v = [complex(x) for x in values]
    h = [float(x) for x in steps]
    if len(v) != len(h) or not v:
        raise ExtrapolationError("mismatched or empty ladder")
    while len(v) > 1:
        v = [
            (h[i] * v[i + 1] - h[i + 1] * v[i]) / (h[i] - h[i + 1])
            for i in range(len(v) - 1)
        ]
        h = h[:-1]
    if not np.isfinite(v[0]):
        raise ExtrapolationError("Richardson ladder diverged")
    return v[0]


def gauss_legendre(a, b, n):
    """Nodes and weights on [a, b]."""
    x, w = np.polynomial.legendre.leggauss(int(n))
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return mid + half * x, half * w


def graded_panels(a, b, singular_points, scale, n_per_panel=12, grading=2.5, min_width=None):
    """Composite Gauss-Legendre nodes on [a, b], refined toward singular points.

    Panels shrink geometrically (factor ``grading``) approaching every
    singular point until their width reaches ``scale``; away from the
    singular set a coarse uniform panelling is used.

    Returns:
        (nodes, weights) arrays.
    """
    if b <= a:
        return np.array([]), np.array([])
    pts = sorted(p for p in singular_points if a < p < b)
    cuts = [a]
    for p in pts:
        cuts.append(p)
    cuts.append(b)
    min_width = min_width if min_width is not None else max(scale, 1e-13 * max(1.0, abs(b - a)))

    edges = []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        sing_lo = lo in pts or (lo == a and a in pts)
        sing_hi = hi in pts or (hi == b and b in pts)
        sing_lo = lo in pts
        sing_hi = hi in pts
        seg = [lo, hi]
        width = hi - lo
        if width <= min_width:
            edges.append((lo, hi))
            continue
        # build geometric ladders from each singular end
        left_edges = []
        if sing_lo:
            w = min_width
            x = lo
            while x + w < lo + 0.5 * width:
                left_edges.append((x, x + w))
                x += w
                w *= grading
            left_stop = x
        else:
            left_stop = lo
        right_edges = []
        if sing_hi:
            w = min_width
            x = hi
            while x - w > hi - 0.5 * width:
                right_edges.append((x - w, x))
                x -= w
                w *= grading
            right_stop = x
        else:
            right_stop = hi
        mid_width = right_stop - left_stop
        n_mid = max(1, int(np.ceil(mid_width / max(0.25 * (b - a), min_width))))
        mids = np.linspace(left_stop, right_stop, n_mid + 1)
        edges.extend(left_edges)
        edges.extend(zip(mids[:-1], mids[1:]))
        edges.extend(sorted(right_edges))

    xs, ws = [], []
    for lo, hi in edges:
        if hi - lo <= 0:
            continue
        x, w = gauss_legendre(lo, hi, n_per_panel)
        xs.append(x)
        ws.append(w)
    return np.concatenate(xs), np.concatenate(ws)
