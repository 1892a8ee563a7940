"""Numerical range W(T), numerical radius w(T), and containment tests.

The boundary of W(T) is computed by the support-function sweep: for each
angle theta, the largest eigenvalue of Re(e^{-i theta} T) is the support
value of the convex set W(T) in direction e^{i theta}, and the top unit
eigenvector x yields the boundary point <T x, x>.  The numerical radius is
the maximum of the support function over theta, refined by golden section
around every local maximum of a coarse sweep.
"""

from dataclasses import dataclass

import numpy as np

from . import backend
from ._maxutil import periodic_max
from .errors import ArgumentError
from .matcore import as_operator

__all__ = [
    "RangeBoundary", "support_point", "boundary", "numerical_radius",
    "InDomainReport", "range_in_domain", "boundary_csv", "boundary_svg",
]

RADIUS_COARSE = 720


@dataclass(frozen=True)
class RangeBoundary:
    """Boundary polyline of W(T) from a support-function sweep.

    ``points[j] = <T x_j, x_j>`` for the recorded unit vector
    ``vectors[j]``; ``angles`` are the sweep directions and
    ``support_values`` the corresponding support function values.
    """
    operator: np.ndarray
    angles: np.ndarray
    points: np.ndarray
    support_values: np.ndarray
    vectors: np.ndarray

    def recheck_residual(self):
        """max_j |<T x_j, x_j> - points[j]|, recomputed from the vectors."""
        vals = np.einsum("mi,ij,mj->m", self.vectors.conj(), self.operator,
                         self.vectors)
        return float(np.max(np.abs(vals - self.points)))

    def convexity_defect(self):
        """Most negative normalized cross product of consecutive edges.

        The sweep orders points counterclockwise, so a convex polyline has
        all cross products >= 0 (up to rounding).  Degenerate (repeated)
        points contribute zero.
        """
        p = self.points
        e = np.roll(p, -1) - p
        cross = np.imag(np.conj(e) * np.roll(e, -1))
        scale = max(np.max(np.abs(e)) ** 2, np.finfo(float).tiny)
        return float(np.min(cross) / scale)


def support_point(T, theta):
    """Support value and boundary point of W(T) in direction theta.

    Returns ``(support_value, boundary_point)`` where
    ``support_value = lambda_max(Re(e^{-i theta} T))`` and the boundary
    point is <T x, x> for the top unit eigenvector x.
    """
    T = as_operator(T)
    sup, bpt, _ = backend.support_sweep(T, np.array([float(theta)]))
    return float(sup[0]), complex(bpt[0])


def boundary(T, m_samples):
    """Sample the boundary of W(T) at m_samples uniform sweep angles."""
    T = as_operator(T)
    m = int(m_samples)
    if m < 8:
        raise ArgumentError("m_samples must be >= 8")
    thetas = 2.0 * np.pi * np.arange(m) / m
    sup, pts, vecs = backend.support_sweep(T, thetas)
    return RangeBoundary(operator=T, angles=thetas, points=pts,
                         support_values=sup, vectors=vecs)


def numerical_radius(T, coarse=RADIUS_COARSE):
    """Numerical radius w(T) = max_theta lambda_max(Re(e^{-i theta} T)).

    A coarse sweep brackets every local maximum of the support function;
    golden-section refinement brings the result to ~1e-12 relative.
    """
    T = as_operator(T)
    if not T.any():
        return 0.0
    thetas = 2.0 * np.pi * np.arange(coarse) / coarse
    sup, _, _ = backend.support_sweep(T, thetas)

    def f(theta):
        s, _, _ = backend.support_sweep(T, np.array([theta]))
        return float(s[0])

    best, _ = periodic_max(f, sup, thetas, 2.0 * np.pi)
    return best


@dataclass(frozen=True)
class InDomainReport:
    inside: bool
    worst_point: complex
    worst_violation: float
    m_samples: int
    tol: float


def range_in_domain(T, domain, tol=1e-6, m_samples=720):
    """Check W(T) against a closed domain inflated by tol.

    ``domain`` must expose ``violation(z)``: a signed boundary defect,
    <= 0 inside (see confmap.Domain).  Returns an :class:`InDomainReport`
    carrying the most-violating boundary point.
    """
    rb = boundary(T, m_samples)
    v = np.asarray(domain.violation(rb.points), dtype=np.float64)
    j = int(np.argmax(v))
    worst = float(v[j])
    return InDomainReport(inside=bool(worst <= tol),
                          worst_point=complex(rb.points[j]),
                          worst_violation=worst, m_samples=m_samples,
                          tol=float(tol))


def boundary_csv(rb):
    """CSV rows ``theta,re,im,support_value`` (17 significant digits)."""
    lines = ["theta,re,im,support_value"]
    for th, p, s in zip(rb.angles, rb.points, rb.support_values):
        lines.append(f"{th:.17g},{p.real:.17g},{p.imag:.17g},{s:.17g}")
    return "\n".join(lines) + "\n"


def _svg_path(xs, ys, sx, sy, closed=True):
    cmds = [f"{'M' if i == 0 else 'L'} {sx(x):.2f} {sy(y):.2f}"
            for i, (x, y) in enumerate(zip(xs, ys))]
    if closed:
        cmds.append("Z")
    return " ".join(cmds)


def boundary_svg(rb, domain=None):
    """Minimal static SVG of the W(T) polyline, optional domain overlay.

    Fixed 800x800 viewBox; the domain (when given) is drawn in one stroke
    color and W(T) in another.  No scripting.
    """
    pts = [rb.points]
    if domain is not None:
        s = np.linspace(0.0, 2.0 * np.pi, 512, endpoint=False)
        pts.append(np.asarray(domain.boundary_point(s)))
    allp = np.concatenate(pts)
    x0, x1 = float(allp.real.min()), float(allp.real.max())
    y0, y1 = float(allp.imag.min()), float(allp.imag.max())
    span = max(x1 - x0, y1 - y0, 1e-12)
    pad = 0.08 * span
    x0, y0, span = x0 - pad, y0 - pad, span + 2 * pad

    def sx(x):
        return (x - x0) / span * 800.0

    def sy(y):
        return 800.0 - (y - y0) / span * 800.0

    parts = ['<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 800 800">']
    if domain is not None:
        d = _svg_path(pts[1].real, pts[1].imag, sx, sy)
        parts.append(f'<path d="{d}" fill="none" stroke="#d29922" '
                     'stroke-width="2"/>')
    d = _svg_path(rb.points.real, rb.points.imag, sx, sy)
    parts.append(f'<path d="{d}" fill="none" stroke="#1f6feb" '
                 'stroke-width="2"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
