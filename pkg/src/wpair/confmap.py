"""Conformal maps of Jordan domains onto the unit disk.

Supported domains: disks (exact Moebius map), centered ellipses and
centered rectangles with base point 0 (Jacobi elliptic-function formulas).
An atlas packages the Riemann map g with g(z0) = 0 and g'(z0) > 0, its
inverse, the boundary correspondence theta -> g^{-1}(e^{i theta}),
uniform-angle boundary quadrature (which realizes harmonic measure at z0),
the half-plane family h_zeta(z) = (g(zeta) + g(z))/(g(zeta) - g(z)), and
polynomial approximants of g for use in the matrix functional calculus.

Elliptic machinery: the complete integral K comes from the arithmetic-
geometric mean; sn, cn, dn for complex arguments from the descending Landen
recursion.  The ellipse map is

    g(z) = sqrt(k) * sn(2K arcsin(z/c)/pi, k),

with the modulus k fixed by K'/K = (2/pi) log((a+b)/(a-b)); the arcsin
branch cuts along the focal slits [-a,-c] and [c,a] are glued by the
symmetry sn(K+w) = sn(K-w), so the composition is single-valued.  The
rectangle map sends the rectangle onto the fundamental rectangle of sn
(t = K z/hw + i K'/2, with K'/K = 2 hh/hw), applies sn (onto the upper
half-plane), then the Moebius map (v - i/sqrt(k))/(v + i/sqrt(k)) onto the
disk; a final rotation fixes g'(0) > 0.
"""

from dataclasses import dataclass

import numpy as np

from ._maxutil import periodic_max
from .errors import (ArgumentError, ConvergenceError, DegreeTooHighError,
                     PoleProximityError, SpectrumOutsideDomainError)
from .funcalc import Poly, poly_apply
from .matcore import as_operator, gen_eig, solve
from .tolerances import TOL

__all__ = [
    "agm_complete", "jacobi_sn_cn_dn", "elliptic_kernel",
    "Domain", "ConformalAtlas", "build_atlas",
    "BoundaryQuadrature", "quadrature",
    "poly_approx", "PolyApproxInfo", "g_of_matrix", "GMatrixResult",
    "h_family", "halfplane_images", "boundary_sup",
]


# ---------------------------------------------------------------------------
# elliptic functions

def agm_complete(k):
    """Complete elliptic integral K(k) via the arithmetic-geometric mean."""
    k = float(k)
    if not 0.0 < k < 1.0:
        raise ArgumentError(f"modulus k = {k} must lie in (0, 1)")
    a, b = 1.0, np.sqrt(1.0 - k * k)
    for _ in range(80):
        if abs(a - b) <= TOL.elliptic_tol * a:
            break
        a, b = 0.5 * (a + b), np.sqrt(a * b)
    else:
        raise ConvergenceError("AGM failed to converge")
    return float(np.pi / (2.0 * a))


def jacobi_sn_cn_dn(u, k):
    """Jacobi sn, cn, dn at complex argument u and real modulus k in [0, 1).

    Descending Landen recursion: the modulus is driven below 1e-12 (where
    sn = sin, cn = cos, dn = 1), then the triple is lifted back up.
    """
    k = float(k)
    if not 0.0 <= k < 1.0:
        raise ArgumentError(f"modulus k = {k} must lie in [0, 1)")
    u = np.asarray(u, dtype=np.complex128)
    ks = []
    while k > 1e-12:
        kp = np.sqrt(1.0 - k * k)
        k = (1.0 - kp) / (1.0 + kp)
        ks.append(k)
        u = u / (1.0 + k)
        if len(ks) > 32:
            raise ConvergenceError("Landen recursion failed to reduce the modulus")
    s, c, d = np.sin(u), np.cos(u), np.ones_like(u)
    for k1 in reversed(ks):
        den = 1.0 + k1 * s * s
        s, c, d = (1.0 + k1) * s / den, c * d / den, (1.0 - k1 * s * s) / den
    return s, c, d


def elliptic_kernel(k):
    """(K, sn) pair for modulus k: the complete integral and a sn handle."""
    K = agm_complete(k)

    def sn(u):
        return jacobi_sn_cn_dn(u, k)[0]

    return K, sn


def _theta2(q):
    total, n = 0.0, 0
    while True:
        t = q ** ((n + 0.5) ** 2)
        total += t
        n += 1
        if t < 1e-18:
            break
    return 2.0 * total


def _theta3(q):
    total, n = 1.0, 1
    while True:
        t = q ** (n * n)
        total += 2.0 * t
        n += 1
        if t < 1e-18:
            break
    return total


def _modulus_from_nome(q):
    return (_theta2(q) / _theta3(q)) ** 2


# ---------------------------------------------------------------------------
# domains

@dataclass(frozen=True)
class Domain:
    """A Jordan domain with a base point.

    kind is one of ``disk`` (params: center, radius), ``ellipse``
    (params: a, b, semi-axes with a > b > 0, centered at 0) or
    ``rectangle`` (params: half_width, half_height, centered at 0).
    ``violation(z)`` is the signed boundary defect used by containment
    tests: <= 0 inside, and for the ellipse it is the conic residual
    x^2/a^2 + y^2/b^2 - 1 rather than a Euclidean distance.
    """
    kind: str
    params: tuple
    base_point: complex = 0j

    def __post_init__(self):
        if self.kind not in ("disk", "ellipse", "rectangle"):
            raise ArgumentError(f"unsupported domain kind {self.kind!r}")
        object.__setattr__(self, "base_point", complex(self.base_point))
        p = self.params
        if self.kind == "disk":
            if len(p) != 2 or float(p[1]) <= 0:
                raise ArgumentError("disk needs (center, radius) with radius > 0")
            object.__setattr__(self, "params", (complex(p[0]), float(p[1])))
        elif self.kind == "ellipse":
            a, b = float(p[0]), float(p[1])
            if not a > b > 0:
                raise ArgumentError(f"ellipse needs a > b > 0, got a={a}, b={b}")
            object.__setattr__(self, "params", (a, b))
        else:
            hw, hh = float(p[0]), float(p[1])
            if hw <= 0 or hh <= 0:
                raise ArgumentError("rectangle needs positive half-sides")
            object.__setattr__(self, "params", (hw, hh))
        if self.violation(self.base_point) > -TOL.interior_margin:
            raise ArgumentError(
                f"base point {self.base_point} is not strictly interior")

    @staticmethod
    def disk(radius=1.0, center=0j, base_point=None):
        if base_point is None:
            base_point = center
        return Domain("disk", (center, radius), base_point)

    @staticmethod
    def ellipse(a, b, base_point=0j):
        return Domain("ellipse", (a, b), base_point)

    @staticmethod
    def rectangle(half_width, half_height, base_point=0j):
        return Domain("rectangle", (half_width, half_height), base_point)

    @staticmethod
    def square(half_side=1.0, base_point=0j):
        return Domain("rectangle", (half_side, half_side), base_point)

    def violation(self, z):
        """Signed boundary defect, <= 0 inside the closed domain."""
        z = np.asarray(z, dtype=np.complex128)
        if self.kind == "disk":
            center, r = self.params
            out = np.abs(z - center) - r
        elif self.kind == "ellipse":
            a, b = self.params
            out = (z.real / a) ** 2 + (z.imag / b) ** 2 - 1.0
        else:
            hw, hh = self.params
            out = np.maximum(np.abs(z.real) - hw, np.abs(z.imag) - hh)
        return out if out.shape else float(out)

    def contains(self, z, tol=0.0):
        return np.all(np.asarray(self.violation(z)) <= tol)

    def boundary_point(self, s):
        """Geometric boundary parametrization, s in [0, 2 pi), counterclockwise."""
        s = np.asarray(s, dtype=np.float64)
        if self.kind == "disk":
            center, r = self.params
            out = center + r * np.exp(1j * s)
        elif self.kind == "ellipse":
            a, b = self.params
            out = a * np.cos(s) + 1j * b * np.sin(s)
        else:
            hw, hh = self.params
            L = 4.0 * (hw + hh)
            t = (s % (2.0 * np.pi)) / (2.0 * np.pi) * L
            out = np.empty(t.shape, dtype=np.complex128)
            # counterclockwise from the corner (hw, -hh)
            m1 = t < 2 * hh                                   # right edge, up
            m2 = (t >= 2 * hh) & (t < 2 * hh + 2 * hw)        # top edge, leftward
            m3 = (t >= 2 * hh + 2 * hw) & (t < 4 * hh + 2 * hw)  # left edge, down
            m4 = t >= 4 * hh + 2 * hw                         # bottom edge, rightward
            out[m1] = hw + 1j * (t[m1] - hh)
            out[m2] = (hw - (t[m2] - 2 * hh)) + 1j * hh
            out[m3] = -hw + 1j * (hh - (t[m3] - 2 * hh - 2 * hw))
            out[m4] = (t[m4] - 4 * hh - 2 * hw - hw) + 1j * (-hh)
        return out if out.shape else complex(out)


# ---------------------------------------------------------------------------
# atlases

class ConformalAtlas:
    """Riemann map data for a supported domain.

    Attributes: ``domain``; ``forward(z)`` evaluating g; ``inverse(w)``;
    ``boundary_param(theta)`` returning g^{-1}(e^{i theta}) exactly on the
    boundary; ``derivative_at_base`` = g'(z0) > 0.
    """

    def __init__(self, domain):
        self.domain = domain
        z0 = domain.base_point
        if domain.kind == "disk":
            center, r = domain.params
            w0 = (z0 - center) / r
            self._w0 = w0
            self.derivative_at_base = 1.0 / ((1.0 - abs(w0) ** 2) * r)
        elif domain.kind == "ellipse":
            if z0 != 0:
                raise ArgumentError(
                    "ellipse atlases support base point 0 only")
            a, b = domain.params
            self._c = np.sqrt(a * a - b * b)
            q = ((a - b) / (a + b)) ** 2
            self._k = _modulus_from_nome(q)
            self._K = agm_complete(self._k)
            self._Kp = agm_complete(np.sqrt(1.0 - self._k ** 2))
            target = (2.0 / np.pi) * np.log((a + b) / (a - b))
            if abs(self._Kp / self._K - target) > 1e-9:
                raise ConvergenceError(
                    "elliptic modulus inconsistent with the aspect ratio")
            self._sqrtk = np.sqrt(self._k)
            self.derivative_at_base = float(
                self._sqrtk * (2.0 * self._K / np.pi) / self._c)
        else:
            if z0 != 0:
                raise ArgumentError(
                    "rectangle atlases support base point 0 only")
            hw, hh = domain.params
            q = np.exp(-2.0 * np.pi * hh / hw)
            self._k = _modulus_from_nome(q)
            self._K = agm_complete(self._k)
            self._Kp = agm_complete(np.sqrt(1.0 - self._k ** 2))
            if abs(self._Kp / self._K - 2.0 * hh / hw) > 1e-9:
                raise ConvergenceError(
                    "elliptic modulus inconsistent with the aspect ratio")
            self._sqrtk = np.sqrt(self._k)
            self._c0 = 1j / self._sqrtk
            # g'(0) of the unrotated map, then the phase making g'(0) > 0
            u0 = 0.5j * self._Kp
            s0, c0v, d0v = jacobi_sn_cn_dn(np.array([u0]), self._k)
            mu = (c0v[0] * d0v[0] / (2.0 * self._c0)) * (self._K / hw)
            self._phase = np.conj(mu) / abs(mu)
            self.derivative_at_base = float(abs(mu))

    # -- forward ------------------------------------------------------------

    def forward(self, z):
        """Evaluate g(z); accepts scalars or arrays."""
        z = np.asarray(z, dtype=np.complex128)
        scalar = z.ndim == 0
        z = np.atleast_1d(z)
        dom = self.domain
        if dom.kind == "disk":
            center, r = dom.params
            w = (z - center) / r
            out = (w - self._w0) / (1.0 - np.conj(self._w0) * w)
        elif dom.kind == "ellipse":
            u = (2.0 * self._K / np.pi) * np.arcsin(z / self._c)
            out = self._sqrtk * jacobi_sn_cn_dn(u, self._k)[0]
        else:
            hw, _ = dom.params
            t = self._K * z / hw + 0.5j * self._Kp
            s = jacobi_sn_cn_dn(t, self._k)[0]
            out = self._phase * (s - self._c0) / (s + self._c0)
        return complex(out[0]) if scalar else out

    # -- inverse ------------------------------------------------------------

    def inverse(self, w):
        """Evaluate g^{-1}(w) for w strictly inside the unit disk.

        Newton iteration in the elliptic parameter with continuation from
        the origin; quadratically convergent away from the critical points
        of the parametrization (the ellipse foci, the rectangle corners).
        """
        w = np.asarray(w, dtype=np.complex128)
        scalar = w.ndim == 0
        w = np.atleast_1d(w).ravel()
        if np.any(np.abs(w) >= 1.0):
            raise ArgumentError("inverse is defined for |w| < 1")
        dom = self.domain
        if dom.kind == "disk":
            center, r = dom.params
            v = (w + self._w0) / (1.0 + np.conj(self._w0) * w)
            out = center + r * v
        elif dom.kind == "ellipse":
            u = self._invert_sn(w / self._sqrtk)
            out = self._c * np.sin(np.pi * u / (2.0 * self._K))
        else:
            hw, _ = dom.params
            ww = w / self._phase
            v = self._c0 * (1.0 + ww) / (1.0 - ww)
            t = self._invert_sn(v, start=0.5j * self._Kp)
            out = (t - 0.5j * self._Kp) * hw / self._K
        res = np.abs(self.forward(out) - w)
        if np.max(res) > 1e-9:
            raise ConvergenceError(
                f"inverse Newton residual {np.max(res):.3e} at "
                f"w = {w[int(np.argmax(res))]:.6g}")
        return complex(out[0]) if scalar else out.reshape(-1)

    def _invert_sn(self, v, start=0j):
        """Solve sn(u) = v by damped Newton with continuation from sn(start)."""
        v = np.atleast_1d(np.asarray(v, dtype=np.complex128))
        u = np.full(v.shape, complex(start), dtype=np.complex128)
        v0 = jacobi_sn_cn_dn(np.atleast_1d(np.asarray(start, complex)),
                             self._k)[0][0]
        for frac in (0.25, 0.5, 0.75, 1.0):
            target = v0 + frac * (v - v0)
            for _ in range(60):
                s, c, d = jacobi_sn_cn_dn(u, self._k)
                step = (s - target) / (c * d)
                # damp long steps to stay in the basin
                mag = np.abs(step)
                cap = 0.5 * (1.0 + np.abs(u))
                damp = np.where(mag > cap, cap / np.maximum(mag, 1e-300), 1.0)
                u = u - step * damp
                if np.max(np.abs(step)) < 1e-14:
                    break
        return u

    # -- boundary correspondence ---------------------------------------------

    def boundary_param(self, theta):
        """g^{-1}(e^{i theta}), computed exactly on the boundary curve."""
        theta = np.asarray(theta, dtype=np.float64)
        scalar = theta.ndim == 0
        theta = np.atleast_1d(theta) % (2.0 * np.pi)
        dom = self.domain
        if dom.kind == "disk":
            center, r = dom.params
            w = np.exp(1j * theta)
            out = center + r * (w + self._w0) / (1.0 + np.conj(self._w0) * w)
        elif dom.kind == "ellipse":
            out = self._ellipse_boundary(theta)
        else:
            out = self._rect_boundary(theta)
        return complex(out[0]) if scalar else out

    def _ellipse_boundary(self, theta):
        """Invert the boundary correspondence on the top edge of the
        parameter rectangle, then reflect: for t in [0, pi] the preimage of
        e^{it} is a sin(p) + i b cos(p) with p = pi x / (2K) and x solving
        arg(sqrt(k) sn(x + i K'/2)) = t, decreasing from pi at x = -K to 0
        at x = K."""
        a, b = self.domain.params
        t = np.where(theta <= np.pi, theta, 2.0 * np.pi - theta)

        def angle_at(x):
            s = jacobi_sn_cn_dn(x + 0.5j * self._Kp, self._k)[0]
            return np.angle(self._sqrtk * s)

        lo = np.full(t.shape, -self._K)
        hi = np.full(t.shape, self._K)
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            am = angle_at(mid)
            # angle decreases with x
            take_hi = am >= t
            lo = np.where(take_hi, mid, lo)
            hi = np.where(take_hi, hi, mid)
        x = 0.5 * (lo + hi)
        p = np.pi * x / (2.0 * self._K)
        zeta = a * np.sin(p) + 1j * b * np.cos(p)
        return np.where(theta <= np.pi, zeta, np.conj(zeta))

    def _rect_boundary(self, theta):
        """Piecewise-exact boundary correspondence for the rectangle.

        In half-plane coordinates v = sn(t) the boundary goes through the
        extended real line; each of the five ranges of v corresponds to one
        rectangle edge (the top edge splits at the sn pole), and each is a
        monotone real 1-d inversion solved by bisection.
        """
        hw, hh = self.domain.params
        k, K, Kp = self._k, self._K, self._Kp
        kp = np.sqrt(1.0 - k * k)
        w = np.exp(1j * theta) / self._phase
        out = np.empty(theta.shape, dtype=np.complex128)
        pole = np.abs(w - 1.0) < 1e-13
        out[pole] = 1j * hh  # preimage of the sn pole t = i K'
        rest = ~pole
        v = np.real(self._c0 * (1.0 + w[rest]) / (1.0 - w[rest]))
        z = np.empty(v.shape, dtype=np.complex128)

        bottom = np.abs(v) < 1.0
        right = (v >= 1.0) & (v <= 1.0 / k)
        left = (v <= -1.0) & (v >= -1.0 / k)
        top = ~(bottom | right | left)

        if np.any(bottom):
            x = self._bisect_sn_real(v[bottom])
            z[bottom] = x * hw / K - 1j * hh
        if np.any(right):
            y = self._bisect_dn_real(1.0 / v[right], kp)
            z[right] = hw + 1j * (y - 0.5 * Kp) * hw / K
        if np.any(left):
            y = self._bisect_dn_real(-1.0 / v[left], kp)
            z[left] = -hw + 1j * (y - 0.5 * Kp) * hw / K
        if np.any(top):
            # sn(x + i K') = 1/(k sn(x)), so sn(x) = 1/(k v)
            x = self._bisect_sn_real(1.0 / (k * v[top]))
            z[top] = x * hw / K + 1j * hh
        out[rest] = z
        return out

    def _bisect_sn_real(self, v):
        """x in [-K, K] with sn(x, k) = v, for real v in (-1, 1)."""
        lo = np.full(v.shape, -self._K)
        hi = np.full(v.shape, self._K)
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            sm = np.real(jacobi_sn_cn_dn(mid.astype(complex), self._k)[0])
            gt = sm >= v
            hi = np.where(gt, mid, hi)
            lo = np.where(gt, lo, mid)
        return 0.5 * (lo + hi)

    def _bisect_dn_real(self, d, kp):
        """y in [0, K'] with dn(y, k') = d, for d in [k, 1] (dn decreasing)."""
        lo = np.zeros(d.shape)
        hi = np.full(d.shape, self._Kp)
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            dm = np.real(jacobi_sn_cn_dn(mid.astype(complex), kp)[2])
            gt = dm >= d
            lo = np.where(gt, mid, lo)
            hi = np.where(gt, hi, mid)
        return 0.5 * (lo + hi)


def build_atlas(domain):
    """Construct the conformal atlas for a supported domain.

    For the disk the map is the exact Moebius transform moving the base
    point to 0; for centered ellipses and rectangles it is the elliptic
    formula (base point 0 only).  The rotational freedom is fixed by
    g'(z0) > 0, which also forces oddness for the centered symmetric
    domains.
    """
    if not isinstance(domain, Domain):
        raise ArgumentError("build_atlas expects a Domain")
    return ConformalAtlas(domain)


# ---------------------------------------------------------------------------
# quadrature

@dataclass(frozen=True)
class BoundaryQuadrature:
    """Nodes zeta_j = g^{-1}(e^{2 pi i j/m}) with uniform weights 1/m.

    Uniform angles on the circle push forward to harmonic measure at the
    base point, so these nodes integrate boundary data against omega_{z0}.
    """
    thetas: np.ndarray
    nodes: np.ndarray
    weights: np.ndarray
    m: int

    def node_defect(self, domain):
        return float(np.max(np.abs(domain.violation(self.nodes))))


def quadrature(atlas, m):
    m = int(m)
    if m < 8:
        raise ArgumentError("quadrature needs m >= 8")
    thetas = 2.0 * np.pi * np.arange(m) / m
    nodes = atlas.boundary_param(thetas)
    return BoundaryQuadrature(thetas=thetas, nodes=nodes,
                              weights=np.full(m, 1.0 / m), m=m)


# ---------------------------------------------------------------------------
# polynomial approximants and the matrix calculus

@dataclass(frozen=True)
class PolyApproxInfo:
    degree: int
    sup_error: float        # max |p - g| over the checking samples
    sup_after_norm: float   # measured sup of |p| used as the normalizer M
    condition: float


def poly_approx(atlas, degree):
    """Degree-d polynomial approximant of g with p(z0) = 0, sup |p| <= 1.

    Boundary least-squares fit of g at 4d samples equispaced in boundary
    arclength, followed by the exact post-normalization p <- (p - p(z0))/M,
    with M the measured sup over the boundary; both side conditions then
    hold to sampling accuracy.  For centered ellipses/rectangles the basis
    is odd powers only (the map is odd); raises DegreeTooHighError when the
    fit's condition estimate exceeds the cap.
    """
    d = int(degree)
    if d < 4:
        raise ArgumentError("degree must be >= 4")
    if d > TOL.max_degree:
        raise ArgumentError(f"degree must be <= {TOL.max_degree}")
    z0 = atlas.domain.base_point
    # uniform circle angles crowd toward the flattest boundary arcs
    # (harmonic measure), starving the fit near the ends of a thin ellipse
    # exactly where g turns fastest; resample equispaced in arclength
    t_fine = 2.0 * np.pi * np.arange(16 * d + 1) / (16 * d)
    z_fine = atlas.boundary_param(t_fine)
    s_arc = np.concatenate([[0.0], np.cumsum(np.abs(np.diff(z_fine)))])

    def at_arclength(n):
        t = np.interp(s_arc[-1] * np.arange(n) / n, s_arc, t_fine)
        return t, atlas.boundary_param(t)

    thetas, zi = at_arclength(4 * d)
    target = np.exp(1j * thetas)   # g(zi) by construction
    scale = float(np.max(np.abs(zi)))
    odd_only = atlas.domain.kind in ("ellipse", "rectangle")
    powers = list(range(1, d + 1, 2)) if odd_only else list(range(0, d + 1))
    cols = np.column_stack([(zi / scale) ** p for p in powers])
    coef, _, _, sv = np.linalg.lstsq(cols, target, rcond=None)
    cond = float(sv[0] / sv[-1]) if sv[-1] > 0 else np.inf
    if cond > TOL.fit_cond_max:
        raise DegreeTooHighError(d, cond)
    c = np.zeros(d + 1, dtype=np.complex128)
    for p, cf in zip(powers, coef):
        c[p] = cf / scale ** p
    p_fit = Poly(c)
    # exact post-normalization: p(z0) = 0 by the shift, sup |p| <= 1 by
    # dividing through the refined boundary sup (a grid max alone can sit
    # below the true sup by the squared grid spacing)
    p_shift = p_fit - complex(p_fit(z0))
    M, _ = boundary_sup(atlas.domain, p_shift, coarse=8 * d)
    p_norm = (1.0 / M) * p_shift
    t_chk, check = at_arclength(8 * d)
    sup_err = float(np.max(np.abs(p_norm(check) - np.exp(1j * t_chk))))
    info = PolyApproxInfo(degree=d, sup_error=sup_err, sup_after_norm=M,
                          condition=cond)
    return p_norm, info


@dataclass(frozen=True)
class GMatrixResult:
    matrix: np.ndarray
    sup_error: float        # boundary sup error of the approximant vs g
    degree: int             # 0 for the exact disk Moebius
    poly: Poly              # None for the disk


def g_of_matrix(atlas, T, degree=32):
    """g(T) through the functional calculus.

    Disk atlases use the exact Moebius transform of the matrix; the other
    domains use the degree-d polynomial approximant of g from
    :func:`poly_approx` (the boundary sup error is reported alongside).
    Requires sigma(T) strictly inside the domain (margin
    ``TOL.spectrum_margin``).
    """
    T = as_operator(T)
    spectrum = gen_eig(T)
    viol = np.asarray(atlas.domain.violation(spectrum))
    j = int(np.argmax(viol))
    if viol[j] > -TOL.spectrum_margin:
        raise SpectrumOutsideDomainError(spectrum[j], float(viol[j]))
    if atlas.domain.kind == "disk":
        center, r = atlas.domain.params
        n = T.shape[0]
        eye = np.eye(n, dtype=np.complex128)
        W = (T - center * eye) / r
        w0 = atlas._w0
        G = solve(eye - np.conj(w0) * W, W - w0 * eye)
        return GMatrixResult(matrix=G, sup_error=0.0, degree=0, poly=None)
    p, info = poly_approx(atlas, degree)
    return GMatrixResult(matrix=poly_apply(p, T), sup_error=info.sup_error,
                         degree=info.degree, poly=p)


def h_family(atlas, zeta, z, g_of_z=None):
    """The half-plane family h_zeta = (g(zeta) + g)/(g(zeta) - g).

    Scalar z: evaluated directly (h_zeta(z0) = 1 exactly).  Matrix z:
    ``g_of_z`` must supply g(z) as a matrix (see :func:`g_of_matrix`); the
    result is (g(zeta) I + G)(g(zeta) I - G)^{-1}.
    """
    wz = complex(atlas.forward(zeta))
    if isinstance(z, np.ndarray) and z.ndim == 2:
        if g_of_z is None:
            raise ArgumentError("matrix argument requires g_of_z = g(T)")
        G = g_of_z.matrix if isinstance(g_of_z, GMatrixResult) else g_of_z
        G = as_operator(G)
        lams = gen_eig(G)
        dmin = float(np.min(np.abs(lams - wz)))
        if dmin < TOL.pole_margin:
            raise PoleProximityError(wz, lams[np.argmin(np.abs(lams - wz))],
                                     dmin, TOL.pole_margin)
        eye = np.eye(G.shape[0], dtype=np.complex128)
        return solve(wz * eye - G, wz * eye + G)
    gz = atlas.forward(z)
    return (wz + gz) / (wz - gz)


def halfplane_images(G, thetas, pole_margin=1e-12):
    """Stack of H_j = (e^{i theta_j} I + G)(e^{i theta_j} I - G)^{-1}.

    Shared evaluation path for condition (ii) checks and the POVM
    discretization: g(zeta_j) = e^{i theta_j} exactly at quadrature nodes.
    The factors commute, so the product is computed with a single solve per
    node.  Raises :class:`PoleProximityError` if some e^{i theta_j} comes
    within ``pole_margin`` of sigma(G).
    """
    G = as_operator(G)
    thetas = np.atleast_1d(np.asarray(thetas, dtype=np.float64))
    lams = gen_eig(G)
    n = G.shape[0]
    eye = np.eye(n, dtype=np.complex128)
    out = np.empty((thetas.size, n, n), dtype=np.complex128)
    for j, th in enumerate(thetas):
        w = np.exp(1j * th)
        dmin = float(np.min(np.abs(lams - w)))
        if dmin < pole_margin:
            raise PoleProximityError(w, lams[np.argmin(np.abs(lams - w))],
                                     dmin, pole_margin)
        out[j] = solve(w * eye - G, w * eye + G)
    return out


def boundary_sup(domain, fn, coarse=2048):
    """Refined sup of |fn| over the domain boundary.

    Coarse sampling of the geometric boundary parametrization plus
    golden-section refinement of every local maximum; returns
    ``(sup, argmax_point)``.
    """
    s = 2.0 * np.pi * np.arange(coarse) / coarse
    vals = np.abs(fn(domain.boundary_point(s)))

    def f(si):
        return float(abs(fn(domain.boundary_point(si))))

    sup, s_best = periodic_max(f, vals, s, 2.0 * np.pi)
    return sup, domain.boundary_point(s_best)
