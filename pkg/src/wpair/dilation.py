"""Dilations realizing the normal-boundary condition and the classical
unitary power dilation.

The constructive chain: quadrature turns the operator measure
F(B) = (1/2) int_B Re(h_zeta(T) + I) d omega into finitely many PSD blocks
F_j summing to I (a POVM); the finite Naimark construction stacks their
square roots into an isometry V so that F_j = V* Q_j V with coordinate
projections Q_j; and N = sum_j zeta_j Q_j is a normal matrix with spectrum
on the domain boundary satisfying f(T) ~= 2 V* f(N) V for functions
vanishing at the base point.  The factor 2 and the base-point condition
are both essential: with f == 1 the compression is 2I, not I, and the
check demonstrates that.

Separately, ``egervary_dilation`` builds the finite block-unitary U whose
upper-left corner reproduces T^k for k up to a requested horizon - the
classical power dilation of a contraction, which realizes the analogous
boundary-normal statement for the disk and the operator norm.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .confmap import build_atlas, boundary_sup, g_of_matrix, halfplane_images, quadrature
from .errors import (ArgumentError, HypothesisError, NotContractionError,
                     NotPSDError)
from .funcalc import Poly, RationalFn, poly_apply, rational_apply
from .matcore import as_operator, fro_norm, herm_eig, op_norm, psd_sqrt, re_part, solve
from .tolerances import TOL

__all__ = [
    "PovmDiscretization", "povm_discretize", "NaimarkModel", "naimark_dilate",
    "DilationCheckReport", "dilation_calculus_check",
    "resolvent_positivity_check", "egervary_dilation",
]


@dataclass(frozen=True)
class PovmDiscretization:
    """Finite positive operator measure on boundary nodes.

    elements[j] = F_j is PSD and sum_j F_j = I exactly (after the symmetric
    renormalization applied by :func:`povm_discretize`).
    """
    elements: np.ndarray      # (m, n, n)
    nodes: np.ndarray         # (m,)
    m: int
    domain: object = None
    base_point: complex = 0j

    def sum_defect(self):
        n = self.elements.shape[1]
        return fro_norm(self.elements.sum(axis=0) - np.eye(n))

    def min_eigenvalue(self):
        worst = np.inf
        for F in self.elements:
            lam = herm_eig(re_part(F), want_vectors=False).eigenvalues[0]
            worst = min(worst, float(lam))
        return worst


def povm_discretize(T, atlas, m=256, d=32, tol=None):
    """Discretize F(B) = (1/2) int_B Re(h_zeta(T) + I) d omega at m nodes.

    F_j = (Re H_j + I)/(2m) with H_j = h_{zeta_j}(T); positivity of every
    block is precisely the pair condition (ii), which is verified first at
    the same nodes (tolerance ``tol``, default 1e-8) so a failure is
    reported as the hypothesis violation it is rather than as a mysterious
    non-PSD block.  A symmetric renormalization
    F_j <- R^{1/2} F_j R^{1/2}, R = (sum F_j)^{-1}, makes the total mass
    exactly I while preserving positivity.
    """
    if tol is None:
        tol = TOL.pair_tol
    T = as_operator(T)
    n = T.shape[0]
    quad = quadrature(atlas, m)
    gres = g_of_matrix(atlas, T, d)
    H = halfplane_images(gres.matrix, quad.thetas)
    eye = np.eye(n)
    raw = np.empty((m, n, n), dtype=np.complex128)
    worst = np.inf
    jworst = -1
    for j in range(m):
        raw[j] = (re_part(H[j]) + eye) / (2.0 * m)
        lam = float(herm_eig(raw[j], want_vectors=False).eigenvalues[0])
        if lam < worst:
            worst, jworst = lam, j
    # lambda_min(F_j) = (lambda_min(Re H_j) + 1)/(2m)
    margin = worst * 2.0 * m
    if margin < -tol:
        raise HypothesisError(
            f"pair condition (ii) fails at node {jworst} "
            f"(theta = {quad.thetas[jworst]:.6f}): margin {margin:.3e}; "
            "the operator measure is not positive for this pair")
    if worst < TOL.povm_psd_floor:
        raise NotPSDError(worst, context=f"POVM block {jworst}")
    S = raw.sum(axis=0)
    es = herm_eig(S)
    if es.eigenvalues[0] <= 0:
        raise NotPSDError(float(es.eigenvalues[0]), context="POVM total mass")
    Rhalf = (es.eigenvectors * (es.eigenvalues ** -0.5)) @ \
        es.eigenvectors.conj().T
    out = np.einsum("ab,jbc,cd->jad", Rhalf, raw, Rhalf)
    # exact Hermitian symmetrization of each block
    out = 0.5 * (out + np.conj(np.swapaxes(out, 1, 2)))
    return PovmDiscretization(elements=out, nodes=quad.nodes, m=m,
                              domain=atlas.domain,
                              base_point=atlas.domain.base_point)


class NaimarkModel:
    """Finite Naimark dilation of a boundary POVM.

    V stacks the block square roots F_j^{1/2} into an (m n) x n isometry;
    the coordinate-block projections Q_j and the normal matrix
    N = sum_j zeta_j Q_j are kept structurally (N is block-diagonal with
    scalar blocks zeta_j I, so a dense copy is never needed for the
    calculus - ``compress(fvals)`` computes V* f(N) V as
    sum_j f(zeta_j) F_j^{1/2} F_j^{1/2}).  ``n_dense``/``q_dense``
    materialize the big matrices for small models and for export.
    """

    def __init__(self, V, nodes, n, povm=None, domain=None, base_point=0j):
        self.V = V
        self.nodes = np.asarray(nodes)
        self.n = int(n)
        self.m = self.nodes.size
        self.povm = povm
        self.domain = domain
        self.base_point = complex(base_point)

    def block(self, j):
        return self.V[j * self.n:(j + 1) * self.n]

    def isometry_defect(self):
        return fro_norm(self.V.conj().T @ self.V - np.eye(self.n))

    def naimark_defect(self):
        """max_j ||V* Q_j V - F_j||, the defining identity."""
        worst = 0.0
        for j in range(self.m):
            B = self.block(j)
            worst = max(worst, fro_norm(B.conj().T @ B - self.povm.elements[j]))
        return worst

    def compress(self, fvals):
        """V* f(N) V for f given by its values at the nodes."""
        fvals = np.asarray(fvals, dtype=np.complex128)
        out = np.zeros((self.n, self.n), dtype=np.complex128)
        for j in range(self.m):
            B = self.block(j)
            out += fvals[j] * (B.conj().T @ B)
        return out

    def n_dense(self, max_dim=4096):
        dim = self.m * self.n
        if dim > max_dim:
            raise ArgumentError(
                f"dense N would be {dim}x{dim}; raise max_dim to force")
        return np.kron(np.diag(self.nodes), np.eye(self.n))

    def q_dense(self, j, max_dim=4096):
        dim = self.m * self.n
        if dim > max_dim:
            raise ArgumentError(
                f"dense Q_j would be {dim}x{dim}; raise max_dim to force")
        Q = np.zeros((dim, dim), dtype=np.complex128)
        sl = slice(j * self.n, (j + 1) * self.n)
        Q[sl, sl] = np.eye(self.n)
        return Q


def naimark_dilate(povm):
    """Stack F_j^{1/2} into the Naimark isometry V with F_j = V* Q_j V."""
    m, n = povm.m, povm.elements.shape[1]
    V = np.empty((m * n, n), dtype=np.complex128)
    for j in range(m):
        V[j * n:(j + 1) * n] = psd_sqrt(povm.elements[j],
                                        floor=TOL.povm_psd_floor)
    model = NaimarkModel(V, povm.nodes, n, povm=povm, domain=povm.domain,
                         base_point=povm.base_point)
    defect = model.isometry_defect()
    if defect > TOL.naimark_tol:
        raise HypothesisError(
            f"Naimark isometry defect {defect:.3e} exceeds tolerance; "
            "was the POVM renormalized?")
    return model


@dataclass(frozen=True)
class DilationCheckReport:
    delta: float              # ||f(T) - 2 V* f(N) V||
    f_at_base: complex
    m: int
    direct_norm: float
    compressed_norm: float


def dilation_calculus_check(T, model, f, enforce_base_point=True):
    """Measure Delta = ||f(T) - 2 V* f(N) V|| on the model.

    f(N) is exact on the dilation side (N is normal with eigenvalues at
    the nodes); f(T) is computed directly through the functional calculus,
    so Delta isolates the quadrature and approximation error of the model.
    The identity requires f(z0) = 0 and the check refuses otherwise;
    passing ``enforce_base_point=False`` disables the refusal so the
    failure of the unmodified identity (e.g. f == 1 giving Delta = 1) can
    be demonstrated deliberately.
    """
    T = as_operator(T)
    fz0 = complex(f(model.base_point))
    if enforce_base_point and abs(fz0) > TOL.vanishing_tol:
        raise HypothesisError(
            f"dilation calculus requires f(z0) = 0, got |f(z0)| = {abs(fz0):.3e}; "
            "the two-dilation identity is false without it")
    fT = rational_apply(f, T) if isinstance(f, RationalFn) else poly_apply(f, T)
    comp = 2.0 * model.compress(f(model.nodes))
    delta = op_norm(fT - comp)
    return DilationCheckReport(delta=float(delta), f_at_base=fz0, m=model.m,
                               direct_norm=float(op_norm(fT)),
                               compressed_norm=float(op_norm(comp)))


def resolvent_positivity_check(T, model, f, alpha, tol=1e-8):
    """Check lambda_min(Re (I - alpha f(T))^{-1}) >= -tol.

    This is the inequality the dilation forces for |alpha| < 1 when f
    vanishes at the base point and |f| <= 1 on the boundary: the auxiliary
    function f/(1 - alpha f) again vanishes at z0 and has positive real
    part structure under the model, so the direct resolvent must have
    nearly-PSD real part.  Returns (passed, report) with both the direct
    margin and the model-side reconstruction
    I + 2 V* h(N) V, h = alpha f/(1 - alpha f), for comparison.
    """
    T = as_operator(T)
    alpha = complex(alpha)
    if abs(alpha) >= 1.0:
        raise ArgumentError(f"|alpha| must be < 1, got {abs(alpha)}")
    fz0 = complex(f(model.base_point))
    if abs(fz0) > TOL.vanishing_tol:
        raise HypothesisError("resolvent check requires f(z0) = 0")
    if model.domain is not None:
        sup, _ = boundary_sup(model.domain, f)
        if sup > 1.0 + 1e-9:
            raise HypothesisError(
                f"resolvent check requires sup |f| <= 1 on the boundary, got {sup:.9g}")
    fT = rational_apply(f, T) if isinstance(f, RationalFn) else poly_apply(f, T)
    n = fT.shape[0]
    eye = np.eye(n, dtype=np.complex128)
    resolvent = solve(eye - alpha * fT, eye)
    margin = float(herm_eig(re_part(resolvent),
                            want_vectors=False).eigenvalues[0])
    fvals = f(model.nodes)
    hvals = alpha * fvals / (1.0 - alpha * fvals)
    model_side = eye + 2.0 * model.compress(hvals)
    model_margin = float(herm_eig(re_part(model_side),
                                  want_vectors=False).eigenvalues[0])
    report = {
        "margin": margin,
        "model_margin": model_margin,
        "model_vs_direct": float(op_norm(resolvent - model_side)),
        "alpha": alpha,
    }
    return margin >= -tol, report


def egervary_dilation(T, n_steps):
    """Block unitary U on (n_steps + 1) copies of H dilating T^k, k <= n_steps.

    Layout (block indices 0..N, N = n_steps): the first block column is
    [T, D_T, 0, ..., 0]^T with the defect D_T = (I - T*T)^{1/2}; the last
    block column is [D_{T*}, -T*, 0, ..., 0]^T; and blocks (j, j-1) for
    j >= 2 hold shifted identities.  Unitarity rides on the intertwining
    T* D_{T*} = D_T T*; it is verified numerically rather than trusted.
    Compression of U^k to the first block reproduces T^k because a path
    leaving the first block cannot return in fewer than N steps.
    """
    T = as_operator(T)
    N = int(n_steps)
    if N < 1:
        raise ArgumentError("n_steps must be >= 1")
    nrm = op_norm(T)
    if nrm > 1.0 + TOL.contraction_tol:
        raise NotContractionError(nrm)
    n = T.shape[0]
    eye = np.eye(n, dtype=np.complex128)
    DT = psd_sqrt(re_part(eye - T.conj().T @ T), floor=-1e-9, zero_below=1e-14)
    DTs = psd_sqrt(re_part(eye - T @ T.conj().T), floor=-1e-9, zero_below=1e-14)
    dim = (N + 1) * n
    U = np.zeros((dim, dim), dtype=np.complex128)

    def put(i, j, B):
        U[i * n:(i + 1) * n, j * n:(j + 1) * n] = B

    put(0, 0, T)
    put(0, N, DTs)
    put(1, 0, DT)
    put(1, N, -T.conj().T)
    for j in range(2, N + 1):
        put(j, j - 1, eye)
    defect = fro_norm(U.conj().T @ U - np.eye(dim))
    if defect > TOL.naimark_tol:
        raise HypothesisError(
            f"unitarity defect {defect:.3e}; defect operators inconsistent")
    return U
