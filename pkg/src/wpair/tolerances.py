"""Central tolerance record.

All numerical thresholds used across the package live in one frozen
dataclass so tests and documentation reference a single source of truth.
Values are either relative (suffix ``_rel``) to a stated scale or absolute.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # matcore
    hermitian_rel: float = 1e-12      # allowed anti-Hermitian part, relative to ||A||
    eig_recon_rel: float = 1e-10      # ||A - V L V*|| / ||A||
    solve_rel: float = 1e-10          # ||A X - B|| / (||A|| ||X||)
    pivot_rel: float = 1e-14          # singularity threshold, relative to ||A||
    psd_floor: float = -1e-10         # most negative eigenvalue accepted as PSD
    psd_sqrt_rel: float = 1e-9        # ||sqrt(A)^2 - A|| / ||A||
    opnorm_rel: float = 1e-8

    # funcalc / calculus
    pole_margin: float = 1e-6         # min distance from poles to sigma(T)
    max_degree: int = 128

    # confmap
    base_point_tol: float = 1e-10     # |g(z0)|
    boundary_tol: float = 1e-8        # ||g(zeta)| - 1| on boundary samples
    roundtrip_tol: float = 1e-8       # |ginv(g(z)) - z| on interior grid
    interior_margin: float = 1e-9     # z0 must be this far inside
    spectrum_margin: float = 1e-6     # sigma(T) strictly inside the domain
    fit_cond_max: float = 1e12        # boundary least-squares condition cap
    elliptic_tol: float = 1e-14       # AGM convergence

    # numrange
    radius_rel: float = 1e-8          # numerical radius accuracy target
    convexity_tol: float = 1e-9       # cross-product test on boundary polyline

    # wspec / dilation
    pair_tol: float = 1e-8            # default tolerance for condition (ii) margin
    povm_psd_floor: float = -1e-9     # PSD floor for discretized POVM elements
    naimark_tol: float = 1e-10        # V*V = I and V* Q_j V = F_j residuals
    contraction_tol: float = 1e-10    # ||T|| <= 1 + this for unitary dilation
    vanishing_tol: float = 1e-10      # |f(z0)| for the dilation identity
    teardrop_tol: float = 1e-12       # geometry resolution of the membership test


TOL = Tolerances()
