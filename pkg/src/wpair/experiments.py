"""Reproductions of the known examples, counterexamples and searches.

The centerpiece is the ellipse phenomenon: the 2x2 matrix
T = [[c, 2b], [0, -c]] has numerical range exactly the closed ellipse with
semi-axes a >= b and foci +-c = +-sqrt(a^2 - b^2), yet the pair
(ellipse, 0) fails to control w(f(T)): for f an odd function, T^2 = c^2 I
collapses f(T) to (f(c)/c) T, so w(f(T)) = |f(c)| a/c, and the Riemann map
g of the ellipse has |g(c)| > c/a by the Schwarz lemma (strictly, because
g is not a disk automorphism).  Polynomial approximants of g inherit the
violation at finite degree.

Also here: the involution variant (any non-Hermitian T with T^2 = I has an
elliptical numerical range with foci +-1, reproducing the same failure),
the disk fuzz suite for the numerical-radius mapping bound and its
teardrop refinement, and the derivative-free search for a 3x3 matrix
exhibiting the violation over a square domain.
"""

import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import minimize

from .confmap import Domain, build_atlas, boundary_sup, poly_approx
from .errors import ArgumentError
from .funcalc import Poly, blaschke_product, poly_apply, rational_apply
from .matcore import as_operator, op_norm
from .numrange import RADIUS_COARSE, boundary, numerical_radius
from .tolerances import TOL
from .wspec import (PairCheckReport, check_condition_i_sampled,
                    normalized_test_poly, teardrop_check)

__all__ = [
    "EllipseParams", "crouzeix_matrix", "ellipse_violation",
    "EllipseViolationReport", "pair_refutation", "involution_demo",
    "InvolutionReport", "bsk_fuzz", "BskFuzzReport",
    "SearchCandidate", "square_search", "SquareSearchReport",
    "random_matrix_with_radius",
]


@dataclass(frozen=True)
class EllipseParams:
    a: float
    b: float

    def __post_init__(self):
        if not self.a > self.b > 0:
            raise ArgumentError(
                f"ellipse needs a > b > 0, got a={self.a}, b={self.b}")

    @property
    def c(self):
        return float(np.sqrt(self.a ** 2 - self.b ** 2))

    def domain(self):
        return Domain.ellipse(self.a, self.b)


def crouzeix_matrix(p):
    """The 2x2 matrix [[c, 2b], [0, -c]] with range the (a, b) ellipse."""
    c = p.c
    return np.array([[c, 2.0 * p.b], [0.0, -c]], dtype=np.complex128)


@dataclass(frozen=True)
class EllipseViolationReport:
    params: EllipseParams
    w_T: float
    g_at_c: complex
    ratio: float              # |g(c)| a / c, the limiting w(f(T))
    schwarz_lower: float      # c / a, the Schwarz bound |g(c)| must beat
    per_degree_w: dict        # degree -> w(f_d(T))
    per_degree_structure: dict  # degree -> ||f_d(T) - (f_d(c)/c) T||
    first_violating_degree: Optional[int]


def ellipse_violation(p, degrees=(8, 16, 32)):
    """Measure the numerical-radius violation on the (a, b) ellipse.

    Returns w(T), g(c), the limit ratio |g(c)| a/c > 1, and per-degree
    w(f_d(T)) for the normalized approximants f_d of g; since f_d is odd
    and T^2 = c^2 I, f_d(T) = (f_d(c)/c) T exactly, and the structure
    column records the numerical deviation from that identity.
    """
    T = crouzeix_matrix(p)
    atlas = build_atlas(p.domain())
    c = p.c
    w_T = numerical_radius(T)
    g_at_c = complex(atlas.forward(c * (1.0 - 1e-15)))
    ratio = abs(g_at_c) * p.a / c
    per_w, per_s = {}, {}
    first = None
    for d in sorted(int(d) for d in degrees):
        f, info = poly_approx(atlas, d)
        fT = poly_apply(f, T)
        wv = numerical_radius(fT)
        per_w[d] = wv
        per_s[d] = float(op_norm(fT - (complex(f(c)) / c) * T))
        if first is None and wv > 1.0:
            first = d
    return EllipseViolationReport(
        params=p, w_T=w_T, g_at_c=g_at_c, ratio=float(ratio),
        schwarz_lower=float(c / p.a), per_degree_w=per_w,
        per_degree_structure=per_s, first_violating_degree=first)


def pair_refutation(p, trials=25, rng_seed=11):
    """Sampled condition (i) on (Crouzeix matrix, ellipse) - fails with
    a Riemann-map approximant as witness."""
    T = crouzeix_matrix(p)
    return check_condition_i_sampled(T, p.domain(), trials=trials,
                                     rng_seed=rng_seed)


@dataclass(frozen=True)
class InvolutionReport:
    seed: int
    similarity_cond: float
    fitted_a: float
    fitted_b: float
    fit_residual: float
    center_offset: float
    norm_p_plus: float        # ||(T + I)/2||, the theoretical semi-major axis
    refutation: PairCheckReport
    resamples: int


def involution_demo(seed=1, boundary_samples=720, min_a=1.05,
                    max_cond=1e6, refute_trials=10):
    """A random non-Hermitian involution and its elliptical range.

    T = S diag(1, -1) S^{-1} satisfies T^2 = I; unless T is Hermitian its
    numerical range is an ellipse centered at 0 with foci +-1, which the
    demo recovers by fitting x^2/A^2 + y^2/B^2 = 1 to the computed
    boundary.  The fitted ellipse (with base point 0) is then refuted as a
    pair for T by the sampled condition (i).  S is resampled while it is
    too close to unitary (the range degenerates to [-1, 1]) or too
    ill-conditioned for trustworthy arithmetic.
    """
    rng = np.random.default_rng(seed)
    resamples = 0
    while True:
        S = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        cond = float(np.linalg.cond(S))
        T = S @ np.diag([1.0, -1.0]).astype(complex) @ np.linalg.inv(S)
        # ||(T+I)/2|| is the semi-major axis of W(T)
        a_theory = op_norm((T + np.eye(2)) / 2.0)
        if cond <= max_cond and a_theory >= min_a:
            break
        resamples += 1
        if resamples > 200:
            raise ArgumentError("could not sample a usable involution")
    bd = boundary(T, boundary_samples)
    pts = bd.points
    center_offset = float(abs(pts.mean()))
    x, y = pts.real, pts.imag
    # least-squares conic alpha x^2 + beta y^2 = 1
    A = np.column_stack([x ** 2, y ** 2])
    coef, *_ = np.linalg.lstsq(A, np.ones_like(x), rcond=None)
    alpha, beta = float(coef[0]), float(coef[1])
    if alpha <= 0 or beta <= 0:
        raise ArgumentError("degenerate conic fit; range not elliptical?")
    fit_residual = float(np.max(np.abs(A @ coef - 1.0)))
    fitted_a, fitted_b = 1.0 / np.sqrt(alpha), 1.0 / np.sqrt(beta)
    p = EllipseParams(fitted_a, fitted_b)
    refutation = check_condition_i_sampled(
        T, p.domain(), trials=refute_trials, rng_seed=seed)
    return InvolutionReport(
        seed=seed, similarity_cond=cond, fitted_a=fitted_a, fitted_b=fitted_b,
        fit_residual=fit_residual, center_offset=center_offset,
        norm_p_plus=float(a_theory), refutation=refutation,
        resamples=resamples)


def random_matrix_with_radius(rng, n, target_w=1.0):
    """Complex Ginibre matrix rescaled to numerical radius ``target_w``."""
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    w = numerical_radius(A)
    return A * (target_w / w)


def _random_disk_function(rng, vanish_at_zero):
    """Random disk-to-disk test function with exact or refined sup <= 1.

    Blaschke products carry sup exactly 1 by construction; random
    polynomials are normalized by a refined boundary sup.  Returns
    (callable-applier result matrix factory, description).
    """
    if rng.random() < 0.5:
        k = int(rng.integers(1, 4))
        zeros = (rng.uniform(0.05, 0.9, size=k)
                 * np.exp(2j * np.pi * rng.random(k)))
        phase = np.exp(2j * np.pi * rng.random())
        f = blaschke_product(zeros, phase=phase,
                             vanish_at_zero=vanish_at_zero)
        return f, {"kind": "blaschke", "factors": k,
                   "vanishing": vanish_at_zero}
    deg = int(rng.integers(1, 25))
    c = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
    disk = Domain.disk(1.0)
    if vanish_at_zero:
        p, _ = normalized_test_poly(c, disk, 0j)
        return p, {"kind": "poly", "degree": deg, "vanishing": True}
    p = Poly(c)
    sup, _ = boundary_sup(disk, p)
    p = (1.0 / sup) * p
    return p, {"kind": "poly", "degree": deg, "vanishing": False}


@dataclass(frozen=True)
class BskFuzzReport:
    trials: int
    seed: int
    max_w_vanishing: float
    worst_vanishing: Optional[dict]
    max_teardrop_excess: float
    worst_teardrop: Optional[dict]
    vanishing_count: int
    teardrop_count: int
    elapsed: float

    @property
    def passed(self):
        ok = True
        if self.vanishing_count:
            ok = ok and self.max_w_vanishing <= 1.0 + 1e-7
        if self.teardrop_count:
            ok = ok and self.max_teardrop_excess <= 1e-6
        return ok


def bsk_fuzz(trials=100, seed=0, mode="both", max_n=6):
    """Fuzz the disk mapping bound w(f(T)) <= sup |f| and its refinement.

    Each trial draws T (n <= 6) scaled to w(T) = 1 and a random
    disk-to-disk f.  With f(0) = 0 the numerical radius of f(T) must stay
    within 1 + 1e-7; with f(0) != 0 the whole range W(f(T)) must stay in
    the teardrop t(f(0)) within 1e-6.  ``mode`` selects "vanishing",
    "teardrop", or "both" (alternating).
    """
    if mode not in ("both", "vanishing", "teardrop"):
        raise ArgumentError(f"unknown mode {mode!r}")
    rng = np.random.default_rng(seed)
    t0 = time.time()
    max_wv, worst_v = -np.inf, None
    max_ex, worst_t = -np.inf, None
    nv = nt = 0
    disk = Domain.disk(1.0)
    for i in range(trials):
        n = int(rng.integers(2, max_n + 1))
        T = random_matrix_with_radius(rng, n, 1.0)
        vanishing = {"vanishing": True, "teardrop": False,
                     "both": i % 2 == 0}[mode]
        f, desc = _random_disk_function(rng, vanishing)
        if vanishing:
            fT = (rational_apply(f, T) if not isinstance(f, Poly)
                  else poly_apply(f, T))
            wv = numerical_radius(fT)
            nv += 1
            if wv > max_wv:
                max_wv, worst_v = wv, {"trial": i, "n": n, **desc}
        else:
            rep = teardrop_check(T, disk, f, m_range_samples=240)
            nt += 1
            if rep.max_excess > max_ex:
                max_ex = rep.max_excess
                worst_t = {"trial": i, "n": n, "apex": rep.apex, **desc}
    return BskFuzzReport(
        trials=trials, seed=seed,
        max_w_vanishing=float(max_wv) if nv else 0.0,
        worst_vanishing=worst_v,
        max_teardrop_excess=float(max_ex) if nt else 0.0,
        worst_teardrop=worst_t, vanishing_count=nv, teardrop_count=nt,
        elapsed=time.time() - t0)


# ---------------------------------------------------------------------------
# square search

@dataclass(frozen=True)
class SearchCandidate:
    T: np.ndarray
    penalty: float
    objective: float
    per_degree_w: dict


@dataclass(frozen=True)
class SquareSearchReport:
    best: SearchCandidate
    evaluations: int
    budget: int
    seed: int
    degrees: tuple
    domain_kind: str
    success: bool             # objective > 1 with feasible penalty
    feasible: bool
    elapsed: float
    restarts: int


def _range_violation(T, domain, m=96):
    """Max signed violation of W(T) against the domain (coarse sweep)."""
    pts = boundary(T, m).points
    return float(np.max(np.asarray(domain.violation(pts))))


def _fast_radius(T):
    # coarse support sweep without golden refinement; enough to rank
    # candidates during search, final candidates are re-measured exactly
    from .backend import support_sweep
    thetas = 2.0 * np.pi * np.arange(240) / 240
    support, _, _ = support_sweep(T, thetas)
    return float(np.max(support))


def square_search(budget=2000, seed=7, degrees=(8, 16, 32),
                  domain_kind="square", penalty_weight=10.0,
                  crouzeix_seeding=True):
    """Derivative-free search for a violating 3x3 matrix over a domain.

    Maximizes max_d w(f_d(T)) - rho * max(0, range violation) over the 18
    real parameters of T, where f_d are the normalized Riemann-map
    approximants of the domain (f_d(0) = 0, sup <= 1).  Nelder-Mead
    restarts alternate between scaled random starts and structured ones
    (embedded tilted 2x2 violating blocks) until the evaluation budget is
    spent.  The returned candidate is re-measured at full accuracy; for
    the square, success (objective > 1) is an experimental outcome that is
    recorded, not asserted.  ``domain_kind="ellipse"`` runs the sanity
    variant on ellipse(2, 1) where a violating matrix is known to exist.
    """
    if budget < 1:
        raise ArgumentError("budget must be >= 1")
    if domain_kind == "square":
        domain = Domain.square(1.0)
    elif domain_kind == "ellipse":
        domain = Domain.ellipse(2.0, 1.0)
    else:
        raise ArgumentError(f"unsupported search domain {domain_kind!r}")
    atlas = build_atlas(domain)
    approximants = []
    for d in sorted(int(d) for d in degrees):
        f, _ = poly_approx(atlas, d)
        approximants.append((d, f))
    t0 = time.time()
    rng = np.random.default_rng(seed)
    evals = 0

    def unpack(x):
        return (x[:9] + 1j * x[9:]).reshape(3, 3)

    def objective(x):
        nonlocal evals
        evals += 1
        T = unpack(x)
        pen = max(0.0, _range_violation(T, domain))
        score = max(_fast_radius(poly_apply(f, T)) for _, f in approximants)
        return -(score - penalty_weight * pen)

    def structured_start():
        # a tilted embedding of a 2x2 block with B^2 = gamma^2 I: its range
        # is an ellipse with foci +-gamma that odd functions stretch by
        # |f(gamma)/gamma|.  For the square the block sits on the diagonal
        # (the corners leave the most room), for the ellipse on the real
        # axis at the known violating shape.
        T = np.zeros((3, 3), dtype=complex)
        if domain.kind == "rectangle":
            C = rng.uniform(0.7, 1.35)
            b2max = max((2.0 - C * C) / 2.0, 0.04)
            B = np.sqrt(b2max) * rng.uniform(0.7, 1.0)
            tilt = np.exp(1j * (np.pi / 4.0 + rng.normal(0.0, 0.05)))
            T[:2, :2] = tilt * np.array([[C, 2.0 * B], [0.0, -C]])
        else:
            blk = crouzeix_matrix(EllipseParams(2.0, 1.0))
            T[:2, :2] = blk * rng.uniform(0.9, 1.0)
        T[2, 2] = rng.uniform(-0.4, 0.4) + 1j * rng.uniform(-0.4, 0.4)
        T += 0.02 * (rng.standard_normal((3, 3))
                     + 1j * rng.standard_normal((3, 3)))
        # shrink until feasible-ish
        for _ in range(60):
            if _range_violation(T, domain) <= 0:
                break
            T *= 0.92
        return np.concatenate([T.real.ravel(), T.imag.ravel()])

    def random_start():
        A = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        A *= 0.45 / max(op_norm(A), 1e-12)
        return np.concatenate([A.real.ravel(), A.imag.ravel()])

    best_x, best_val = None, np.inf
    restarts = 0
    per_restart = max(60, budget // 12)
    while evals < budget:
        x0 = (structured_start()
              if (crouzeix_seeding and restarts % 2 == 0) else random_start())
        res = minimize(objective, x0, method="Nelder-Mead",
                       options={"maxfev": min(per_restart, budget - evals),
                                "xatol": 1e-8, "fatol": 1e-10})
        restarts += 1
        if res.fun < best_val:
            best_val, best_x = res.fun, res.x
    T_best = unpack(best_x)
    # full-accuracy re-measurement of the winning candidate
    pen = max(0.0, _range_violation(T_best, domain, m=720))
    per_w = {}
    for d, f in approximants:
        per_w[d] = numerical_radius(poly_apply(f, T_best))
    obj = max(per_w.values())
    cand = SearchCandidate(T=T_best, penalty=pen, objective=float(obj),
                           per_degree_w=per_w)
    feasible = pen <= 1e-8
    return SquareSearchReport(
        best=cand, evaluations=evals, budget=budget, seed=seed,
        degrees=tuple(sorted(int(d) for d in degrees)),
        domain_kind=domain_kind, success=bool(feasible and obj > 1.0),
        feasible=bool(feasible), elapsed=time.time() - t0,
        restarts=restarts)
