"""One-dimensional maximization helpers: golden-section search with bracketing."""

import math

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_max(f, lo, hi, tol=1e-8, max_iter=200):
    """Golden-section maximization of f on [lo, hi].

    Assumes f is unimodal on the interval. Returns the abscissa of the
    maximum to within tol.
    """
    a, b = (lo, hi) if lo <= hi else (hi, lo)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if abs(b - a) <= tol:
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def bracket_max_geometric(f, x0=1.0, factor=4.0, hi_limit=1e12, lo_limit=1e-300):
    """Bracket a maximum of f on (0, inf) by geometric expansion from x0.

    Expands upward and downward by `factor` until f decreases on both
    sides of the running best point. Returns (lo, hi, monotone) where
    [lo, hi] brackets the maximum; monotone is True when f was still
    increasing at hi_limit, in which case hi == hi_limit.
    """
    a, b, c = x0 / factor, x0, x0 * factor
    fa, fb, fc = f(a), f(b), f(c)
    while fc >= fb:
        if c >= hi_limit:
            return a, hi_limit, True
        a, fa = b, fb
        b, fb = c, fc
        c = min(c * factor, hi_limit)
        fc = f(c)
    while fa >= fb:
        if a <= lo_limit:
            break
        c, fc = b, fb
        b, fb = a, fa
        a = max(a / factor, lo_limit)
        fa = f(a)
    return a, c, False


def line_max(f, x0, step, lo=None, hi=None, tol=1e-9, grow=2.0, max_expand=200):
    """Maximize f along a line starting from x0 with an expanding bracket.

    Walks uphill from x0 in steps that grow geometrically until the
    function turns over (or a bound is hit), then refines with
    golden-section. lo/hi clamp the search interval when given.
    """

    def clamp(x):
        if lo is not None and x < lo:
            return lo
        if hi is not None and x > hi:
            return hi
        return x

    f0 = f(x0)
    left, right = clamp(x0 - step), clamp(x0 + step)
    fl, fr = f(left), f(right)
    if fl <= f0 and fr <= f0:
        return golden_max(f, left, right, tol=tol)
    if fr > fl:
        a, b, fb = x0, right, fr
        s = step
        for _ in range(max_expand):
            s *= grow
            c = clamp(b + s)
            if c == b:
                break
            fc = f(c)
            if fc < fb:
                return golden_max(f, a, c, tol=tol)
            a, b, fb = b, c, fc
        return golden_max(f, a, b, tol=tol)
    a, b, fb = x0, left, fl
    s = step
    for _ in range(max_expand):
        s *= grow
        c = clamp(b - s)
        if c == b:
            break
        fc = f(c)
        if fc < fb:
            return golden_max(f, c, a, tol=tol)
        a, b, fb = b, c, fc
    return golden_max(f, b, a, tol=tol)
