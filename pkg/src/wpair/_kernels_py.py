"""Pure-Python kernel implementations.

Same contract as the compiled module ``wpair._kernels``; backed by numpy's
LAPACK bindings.  Selected automatically at import time when the compiled
extension is unavailable, or explicitly via ``WPAIR_PURE_PYTHON=1``.

Contract
--------
herm_eigh(A, want_vectors=True)
    Eigendecomposition of a Hermitian complex matrix.  Returns
    ``(w, V)`` with ``w`` real ascending and ``V`` unitary columns, or
    ``(w, None)`` when ``want_vectors`` is false.  The input is assumed
    Hermitian; callers symmetrize first.
batch_eigvalsh(Hs)
    Ascending eigenvalues of a stack of Hermitian matrices, shape
    ``(m, n) <- (m, n, n)``.
support_sweep(T, thetas)
    For each angle theta: the largest eigenvalue of Re(e^{-i theta} T),
    the numerical-range boundary point <T x, x> for the corresponding top
    unit eigenvector x, and x itself.  Returns
    ``(support_values, boundary_points, vectors)`` with ``vectors`` of
    shape ``(m, n)``.
"""

import numpy as np

BACKEND_NAME = "python"


def herm_eigh(A, want_vectors=True):
    A = np.asarray(A, dtype=np.complex128)
    if want_vectors:
        w, V = np.linalg.eigh(A)
        return w, V
    return np.linalg.eigvalsh(A), None


def batch_eigvalsh(Hs):
    return np.linalg.eigvalsh(np.asarray(Hs, dtype=np.complex128))


def support_sweep(T, thetas):
    T = np.asarray(T, dtype=np.complex128)
    thetas = np.atleast_1d(np.asarray(thetas, dtype=np.float64))
    phases = np.exp(-1j * thetas)
    Hs = 0.5 * (phases[:, None, None] * T[None, :, :]
                + np.conj(phases)[:, None, None] * T.conj().T[None, :, :])
    w, V = np.linalg.eigh(Hs)
    support = w[:, -1].copy()
    x = np.ascontiguousarray(V[:, :, -1])
    boundary = np.einsum("mi,ij,mj->m", x.conj(), T, x)
    return support, boundary, x
