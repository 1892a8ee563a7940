"""Polynomial and rational functional calculus on matrices.

``Poly`` stores coefficients in ascending degree; evaluation on matrices is
a Horner scheme.  ``RationalFn`` is a numerator/denominator pair applied as
``p(T) q(T)^{-1}`` through a single linear solve (the two commute in the
calculus).  Rational evaluation refuses when a denominator root comes
within ``TOL.pole_margin`` of the spectrum.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, PoleProximityError
from .matcore import as_operator, fro_norm, gen_eig, solve
from .tolerances import TOL

__all__ = [
    "Poly", "RationalFn", "poly_apply", "rational_apply",
    "mobius_halfplane", "mobius_exchange", "blaschke_product",
]


@dataclass(frozen=True)
class Poly:
    """Polynomial with complex coefficients, ascending degree."""
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=np.complex128))
        if c.ndim != 1 or c.size == 0:
            raise ArgumentError("coefficients must be a nonempty 1-d array")
        # normal form: strip trailing zeros, keep the zero polynomial as [0]
        nz = np.nonzero(c)[0]
        c = c[: nz[-1] + 1] if nz.size else c[:1]
        if c.size - 1 > TOL.max_degree:
            raise ArgumentError(
                f"degree {c.size - 1} exceeds the supported cap {TOL.max_degree}")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self):
        return self.coeffs.size - 1

    def __call__(self, z):
        z = np.asarray(z, dtype=np.complex128)
        out = np.full(z.shape, self.coeffs[-1], dtype=np.complex128)
        for c in self.coeffs[-2::-1]:
            out = out * z + c
        return out if out.shape else complex(out)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return Poly(np.convolve(self.coeffs, other.coeffs))
        return Poly(self.coeffs * other)

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        n = max(self.coeffs.size, other.coeffs.size)
        c = np.zeros(n, dtype=np.complex128)
        c[: self.coeffs.size] += self.coeffs
        c[: other.coeffs.size] += other.coeffs
        return Poly(c)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        return self + (-1.0) * other

    def roots(self):
        if self.degree < 1:
            return np.empty(0, dtype=np.complex128)
        return np.roots(self.coeffs[::-1])


@dataclass(frozen=True)
class RationalFn:
    """Quotient of two polynomials in no-common-root normal form.

    Common roots of numerator and denominator (paired within 1e-9) are
    deflated at construction.
    """
    num: Poly
    den: Poly

    def __post_init__(self):
        num, den = self.num, self.den
        if not isinstance(num, Poly):
            num = Poly(num)
        if not isinstance(den, Poly):
            den = Poly(den)
        if not den.coeffs.any():
            raise ArgumentError("denominator must not be identically zero")
        num, den = _deflate_common_roots(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __call__(self, z):
        return self.num(z) / self.den(z)

    def poles(self):
        return self.den.roots()


def _deflate_common_roots(num, den, tol=1e-9):
    if num.degree < 1 or den.degree < 1 or not num.coeffs.any():
        return num, den
    nroots = list(num.roots())
    droots = list(den.roots())
    scale = 1.0 + max(np.max(np.abs(nroots)), np.max(np.abs(droots)))
    kept_d = []
    for r in droots:
        hit = None
        for i, s in enumerate(nroots):
            if abs(r - s) <= tol * scale:
                hit = i
                break
        if hit is None:
            kept_d.append(r)
        else:
            del nroots[hit]
    if len(kept_d) == len(droots):
        return num, den
    lead_n = num.coeffs[-1]
    lead_d = den.coeffs[-1]
    num = lead_n * _poly_from_roots(nroots)
    den = lead_d * _poly_from_roots(kept_d)
    return num, den


def _poly_from_roots(roots):
    c = np.array([1.0 + 0.0j])
    for r in roots:
        c = np.convolve(c, np.array([-r, 1.0 + 0.0j]))
    return Poly(c)


def poly_apply(p, T):
    """Evaluate a polynomial on a matrix by the Horner scheme."""
    if not isinstance(p, Poly):
        p = Poly(p)
    T = as_operator(T)
    n = T.shape[0]
    out = p.coeffs[-1] * np.eye(n, dtype=np.complex128)
    for c in p.coeffs[-2::-1]:
        out = out @ T + c * np.eye(n, dtype=np.complex128)
    return out


def rational_apply(f, T, pole_margin=None):
    """Evaluate a rational function on a matrix as p(T) q(T)^{-1}.

    Raises :class:`PoleProximityError` when a denominator root is within
    ``pole_margin`` (default ``TOL.pole_margin``) of sigma(T).
    """
    if pole_margin is None:
        pole_margin = TOL.pole_margin
    T = as_operator(T)
    if isinstance(f, Poly):
        return poly_apply(f, T)
    poles = f.poles()
    if poles.size:
        spectrum = gen_eig(T)
        dists = np.abs(spectrum[None, :] - poles[:, None])
        i, j = np.unravel_index(np.argmin(dists), dists.shape)
        if dists[i, j] < pole_margin:
            raise PoleProximityError(poles[i], spectrum[j], dists[i, j],
                                     pole_margin)
    P = poly_apply(f.num, T)
    Q = poly_apply(f.den, T)
    return solve(Q, P)


def mobius_halfplane(T, theta):
    """(I + e^{-i theta} T)(I - e^{-i theta} T)^{-1}.

    Maps the unit disk onto the right half-plane; evaluated exactly through
    one linear solve.  Raises :class:`PoleProximityError` when e^{i theta}
    is within ``TOL.pole_margin`` of sigma(T).
    """
    T = as_operator(T)
    w = np.exp(-1j * float(theta))
    spectrum = gen_eig(T)
    d = np.abs(spectrum - np.exp(1j * float(theta)))
    j = int(np.argmin(d))
    if d[j] < TOL.pole_margin:
        raise PoleProximityError(np.exp(1j * float(theta)), spectrum[j],
                                 d[j], TOL.pole_margin)
    n = T.shape[0]
    eye = np.eye(n, dtype=np.complex128)
    return solve(eye - w * T, eye + w * T)


def mobius_exchange(a):
    """The disk automorphism phi(z) = (a - z)/(1 - conj(a) z).

    Exchanges 0 and a and is an involution; requires |a| < 1.
    """
    a = complex(a)
    if abs(a) >= 1.0:
        raise ArgumentError(f"|a| = {abs(a):.6g} must be < 1")
    return RationalFn(Poly([a, -1.0]), Poly([1.0, -np.conj(a)]))


def blaschke_product(points, phase=1.0, vanish_at_zero=False):
    """Finite Blaschke product e^{i arg(phase)} prod_j (a_j - z)/(1 - conj(a_j) z).

    Exactly unimodular on the unit circle, so sup-normalization is exact.
    With ``vanish_at_zero`` an extra factor z forces f(0) = 0.  All |a_j|
    must be < 1.
    """
    phase = complex(phase)
    if phase == 0:
        raise ArgumentError("phase must be nonzero")
    phase = phase / abs(phase)
    num = Poly([phase])
    den = Poly([1.0])
    for a in points:
        a = complex(a)
        if abs(a) >= 1.0:
            raise ArgumentError(f"Blaschke zero |a| = {abs(a):.6g} must be < 1")
        num = num * Poly([a, -1.0])
        den = den * Poly([1.0, -np.conj(a)])
    if vanish_at_zero:
        num = num * Poly([0.0, 1.0])
    return RationalFn(num, den)
