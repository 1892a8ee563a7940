"""Maximization of scalar functions over a periodic parameter.

Shared by the numerical-radius sweep and the boundary sup-norm routines:
coarse sampling locates candidate local maxima, golden-section refinement
pushes each bracket to near machine accuracy.
"""

import numpy as np

_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0


def golden_max(f, lo, hi, iters=60):
    """Golden-section maximization of a scalar callable on [lo, hi]."""
    a, b = float(lo), float(hi)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
        if b - a < 1e-15 * (1.0 + abs(a)):
            break
    return (c, fc) if fc >= fd else (d, fd)


def periodic_max(f, coarse_values, coarse_params, period, iters=60, top=12):
    """Refined maximum of a periodic scalar function.

    ``coarse_values = f(coarse_params)`` must be precomputed on a uniform
    grid covering one period.  Every local-maximum bracket (capped at the
    ``top`` best by value) is refined with golden section.  Returns
    ``(max_value, argmax_param)``.
    """
    vals = np.asarray(coarse_values, dtype=np.float64)
    params = np.asarray(coarse_params, dtype=np.float64)
    m = vals.size
    left = np.roll(vals, 1)
    right = np.roll(vals, -1)
    idx = np.nonzero((vals >= left) & (vals >= right))[0]
    if idx.size == 0:
        idx = np.array([int(np.argmax(vals))])
    if idx.size > top:
        idx = idx[np.argsort(vals[idx])[-top:]]
    step = period / m
    i0 = int(np.argmax(vals))
    best_v, best_t = float(vals[i0]), float(params[i0])
    for i in idx:
        t, v = golden_max(f, params[i] - step, params[i] + step, iters=iters)
        if v > best_v:
            best_v, best_t = float(v), float(t)
    return best_v, best_t
