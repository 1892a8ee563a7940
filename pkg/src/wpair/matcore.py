"""Dense complex matrix primitives.

Matrices are plain numpy ``complex128`` arrays; :func:`as_operator`
validates shape and finiteness at module boundaries.  Everything downstream
(numerical ranges, functional calculus, dilations) consumes only the
primitives defined here.  All functions are pure; values are never mutated.

Dimensions are deliberately small (the toolkit targets n <= 64): the
Hermitian eigensolver is a cyclic Jacobi scheme in the compiled backend,
and the general (non-Hermitian) spectrum and linear solves are delegated to
LAPACK via numpy/scipy behind the contracts below.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import backend
from .errors import (ArgumentError, ConvergenceError, NonHermitianError,
                     NotPSDError, SingularMatrixError)
from .tolerances import TOL

__all__ = [
    "as_operator", "HermEigResult", "herm_eig", "gen_eig", "solve",
    "re_part", "im_part", "psd_sqrt", "op_norm", "fro_norm",
]


def as_operator(A):
    """Validate and return a square complex matrix as a complex128 array.

    Raises :class:`ArgumentError` for non-square input, empty matrices, or
    non-finite entries.
    """
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ArgumentError(f"expected a square matrix, got shape {A.shape}")
    if A.shape[0] < 1:
        raise ArgumentError("matrix dimension must be >= 1")
    A = np.ascontiguousarray(A, dtype=np.complex128)
    if not np.all(np.isfinite(A.view(np.float64))):
        raise ArgumentError("matrix entries must be finite (no NaN/Inf)")
    return A


def fro_norm(A):
    return float(np.linalg.norm(A))


@dataclass(frozen=True)
class HermEigResult:
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` are real ascending; ``eigenvectors`` has orthonormal
    columns, one per eigenvalue.
    """
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.conj().T


def herm_eig(A, want_vectors=True):
    """Eigendecomposition of a Hermitian matrix.

    The input must be Hermitian up to ``TOL.hermitian_rel`` relative to its
    norm; it is symmetrized exactly before factorization.  Returns a
    :class:`HermEigResult` (with ``eigenvectors=None`` if ``want_vectors``
    is false).
    """
    A = as_operator(A)
    scale = fro_norm(A)
    if scale > 0.0:
        defect = fro_norm(A - A.conj().T)
        # absolute floor keeps numerically-zero matrices acceptable
        if defect > TOL.hermitian_rel * scale + 1e-14:
            raise NonHermitianError(
                f"anti-Hermitian part {defect:.3e} exceeds "
                f"{TOL.hermitian_rel:.1e} x ||A|| = {TOL.hermitian_rel * scale:.3e}")
    H = 0.5 * (A + A.conj().T)
    try:
        w, V = backend.herm_eigh(H, want_vectors=want_vectors)
    except RuntimeError as exc:
        raise ConvergenceError(str(exc)) from exc
    return HermEigResult(eigenvalues=w, eigenvectors=V)


def gen_eig(A):
    """Spectrum of a general square matrix, with multiplicity.

    Delegates to LAPACK's nonsymmetric eigensolver and then verifies each
    point by a residual check: the smallest singular value of ``A - lam*I``
    must be below ``1e-8 * ||A||``.  Raises :class:`ConvergenceError` if the
    iteration fails or a residual check does (nothing is silently kept).
    """
    A = as_operator(A)
    try:
        lams = np.linalg.eigvals(A)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"eigenvalue iteration failed: {exc}") from exc
    scale = max(fro_norm(A), 1.0)
    n = A.shape[0]
    eye = np.eye(n)
    for lam in lams:
        smin = np.linalg.svd(A - lam * eye, compute_uv=False)[-1]
        if smin > 1e-8 * scale:
            raise ConvergenceError(
                f"spectrum residual check failed at {lam:.6g}: "
                f"sigma_min = {smin:.3e}")
    return np.sort_complex(lams)


def solve(A, B):
    """Solve A X = B by LU factorization with partial pivoting.

    Raises :class:`SingularMatrixError` (carrying the offending pivot
    magnitude) when a pivot falls below ``TOL.pivot_rel * ||A||``.
    """
    A = as_operator(A)
    B = np.asarray(B, dtype=np.complex128)
    if B.shape[0] != A.shape[0]:
        raise ArgumentError(
            f"dimension mismatch: A is {A.shape}, B is {B.shape}")
    lu, piv = scipy.linalg.lu_factor(A, check_finite=False)
    pivots = np.abs(np.diag(lu))
    threshold = TOL.pivot_rel * max(fro_norm(A), np.finfo(float).tiny)
    if pivots.min() <= threshold:
        raise SingularMatrixError(pivots.min(), threshold)
    return scipy.linalg.lu_solve((lu, piv), B, check_finite=False)


def re_part(T):
    """Hermitian part (T + T*)/2; exactly Hermitian by construction."""
    T = as_operator(T)
    return 0.5 * (T + T.conj().T)


def im_part(T):
    """Skew part (T - T*)/(2i); exactly Hermitian by construction."""
    T = as_operator(T)
    return (T - T.conj().T) / 2j


def psd_sqrt(A, floor=None, zero_below=0.0):
    """Hermitian square root of a PSD matrix.

    Eigenvalues in ``[floor, 0)`` are clamped to zero (the default floor is
    ``TOL.psd_floor``); anything below the floor raises
    :class:`NotPSDError`.  ``zero_below`` additionally flushes eigenvalues
    under that (absolute) threshold to exact zero, which keeps the square
    root from amplifying roundoff-scale residues by half their exponent -
    relevant for defect operators of near-isometries.
    """
    if floor is None:
        floor = TOL.psd_floor
    res = herm_eig(A)
    w = res.eigenvalues
    if w.min() < floor * max(1.0, abs(w).max() if w.size else 1.0):
        raise NotPSDError(w.min())
    w = np.clip(w, 0.0, None)
    if zero_below > 0.0:
        w = np.where(w < zero_below, 0.0, w)
    V = res.eigenvectors
    S = (V * np.sqrt(w)) @ V.conj().T
    return 0.5 * (S + S.conj().T)


def op_norm(A):
    """Operator (spectral) norm via the largest eigenvalue of A* A."""
    A = as_operator(A)
    if not A.any():
        return 0.0
    w, _ = backend.herm_eigh(A.conj().T @ A, want_vectors=False)
    return float(np.sqrt(max(w[-1], 0.0)))
