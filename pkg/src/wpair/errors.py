"""Exception hierarchy.

Every error raised deliberately by this package derives from
:class:`WpairError` so callers can catch the whole family at once.  The
subclasses distinguish "the input is malformed" from "the mathematics says
no" (singularity, non-convergence, hypothesis violations); the command line
front end maps the two groups to different exit codes.
"""


class WpairError(Exception):
    """Base class for all errors raised by wpair."""


class ArgumentError(WpairError):
    """Raised when an argument is malformed or out of range.

    Examples: a non-square matrix, NaN entries, an unsupported domain kind,
    a degree above the supported cap.
    """


class NonHermitianError(ArgumentError):
    """Raised when an operation requiring a Hermitian matrix receives one
    whose anti-Hermitian part exceeds the tolerance."""


class SingularMatrixError(WpairError):
    """Raised when a linear solve meets a pivot below the relative threshold.

    The offending pivot magnitude is stored in :attr:`pivot`.
    """

    def __init__(self, pivot, threshold):
        self.pivot = float(pivot)
        self.threshold = float(threshold)
        super().__init__(
            f"matrix is singular to working precision: "
            f"pivot magnitude {self.pivot:.3e} below threshold {self.threshold:.3e}"
        )


class NotPSDError(WpairError):
    """Raised when a matrix expected to be positive semidefinite has an
    eigenvalue below the allowed floor.  Carries :attr:`min_eigenvalue`."""

    def __init__(self, min_eigenvalue, context=""):
        self.min_eigenvalue = float(min_eigenvalue)
        msg = f"matrix is not PSD: min eigenvalue {self.min_eigenvalue:.3e}"
        if context:
            msg += f" ({context})"
        super().__init__(msg)


class PoleProximityError(WpairError):
    """Raised when a rational function has a pole too close to the spectrum
    of the matrix it is applied to (or to a required evaluation point)."""

    def __init__(self, pole, spectrum_point, distance, margin):
        self.pole = complex(pole)
        self.spectrum_point = complex(spectrum_point)
        self.distance = float(distance)
        self.margin = float(margin)
        super().__init__(
            f"pole {self.pole:.6g} within {self.distance:.3e} of spectrum point "
            f"{self.spectrum_point:.6g} (margin {self.margin:.1e})"
        )


class SpectrumOutsideDomainError(WpairError):
    """Raised when sigma(T) is not strictly inside the domain required by a
    functional-calculus operation."""

    def __init__(self, point, violation):
        self.point = complex(point)
        self.violation = float(violation)
        super().__init__(
            f"spectrum point {self.point:.6g} is not strictly inside the domain "
            f"(signed boundary defect {self.violation:.3e})"
        )


class ConvergenceError(WpairError):
    """Raised when an iteration fails to reach its tolerance within the
    iteration bound.  Nothing is silently truncated."""


class NotContractionError(WpairError):
    """Raised when a unitary-dilation routine receives a matrix with
    operator norm above 1 (beyond tolerance)."""

    def __init__(self, norm):
        self.norm = float(norm)
        super().__init__(f"matrix is not a contraction: ||T|| = {self.norm:.12g} > 1")


class HypothesisError(WpairError):
    """Raised when a mathematical hypothesis of an identity is violated,
    e.g. f(z0) != 0 where the dilation identity requires it, or Im f(z0) != 0
    in the boundary reconstruction formula.  The operation refuses rather
    than silently returning a wrong answer."""


class DegreeTooHighError(WpairError):
    """Raised when a boundary least-squares fit is too ill-conditioned at the
    requested degree (condition estimate above the cap)."""

    def __init__(self, degree, cond):
        self.degree = int(degree)
        self.cond = float(cond)
        super().__init__(
            f"approximation degree {self.degree} too high: "
            f"fit condition estimate {self.cond:.3e}"
        )
