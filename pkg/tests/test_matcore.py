import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_complex, random_hermitian
from wpair import backend
from wpair._kernels_py import herm_eigh as py_herm_eigh
from wpair._kernels_py import support_sweep as py_support_sweep
from wpair.errors import (ArgumentError, NonHermitianError, NotPSDError,
                          SingularMatrixError)
from wpair.matcore import (as_operator, fro_norm, gen_eig, herm_eig, im_part,
                           op_norm, psd_sqrt, re_part, solve)


class TestAsOperator:
    def test_accepts_lists(self):
        A = as_operator([[1, 2], [3, 4]])
        assert A.dtype == np.complex128
        assert A.shape == (2, 2)

    def test_rejects_non_square(self):
        with pytest.raises(ArgumentError):
            as_operator(np.zeros((2, 3)))

    def test_rejects_vector(self):
        with pytest.raises(ArgumentError):
            as_operator(np.zeros(4))

    def test_rejects_nan_and_inf(self):
        with pytest.raises(ArgumentError):
            as_operator(np.array([[np.nan, 0], [0, 0]]))
        with pytest.raises(ArgumentError):
            as_operator(np.array([[0, 0], [0, 1j * np.inf]]))

    def test_non_contiguous_input(self):
        # transposed views are not C-contiguous; the float64 reinterpret
        # used by the finiteness check must still work
        A = (np.arange(9, dtype=np.complex128) + 1j).reshape(3, 3)
        out = as_operator(A.T)
        assert np.array_equal(out, A.T)


class TestHermEig:
    def test_against_numpy(self, rng):
        for n in (1, 2, 5, 12):
            H = random_hermitian(rng, n)
            res = herm_eig(H)
            w_ref = np.linalg.eigvalsh(H)
            assert np.allclose(res.eigenvalues, w_ref, atol=1e-12)
            assert fro_norm(res.reconstruct() - H) < 1e-12 * max(fro_norm(H), 1)

    def test_ascending_order(self, rng):
        H = random_hermitian(rng, 7)
        w = herm_eig(H, want_vectors=False).eigenvalues
        assert np.all(np.diff(w) >= 0)

    def test_orthonormal_vectors(self, rng):
        H = random_hermitian(rng, 6)
        V = herm_eig(H).eigenvectors
        assert fro_norm(V.conj().T @ V - np.eye(6)) < 1e-12

    def test_rejects_non_hermitian(self):
        with pytest.raises(NonHermitianError):
            herm_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_zero_matrix_ok(self):
        res = herm_eig(np.zeros((3, 3), dtype=complex))
        assert np.all(res.eigenvalues == 0.0)

    def test_near_zero_matrix_ok(self):
        # anti-Hermitian noise at eps scale must not be fatal when the
        # matrix itself is numerically zero
        A = 1e-17 * np.array([[0, 1], [-0.5, 0]], dtype=complex)
        res = herm_eig(A)
        assert np.max(np.abs(res.eigenvalues)) < 1e-16


class TestGenEig:
    def test_against_numpy(self, rng):
        for n in (2, 4, 6):
            A = random_complex(rng, n)
            lam = gen_eig(A)
            ref = np.sort_complex(np.linalg.eigvals(A))
            assert np.allclose(lam, ref, atol=1e-10)

    def test_jordan_block(self):
        # defective matrix: residual check must still accept LAPACK output
        J = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
        lam = gen_eig(J)
        assert np.max(np.abs(lam)) < 1e-7


class TestSolve:
    def test_residual(self, rng):
        A = random_complex(rng, 8)
        B = random_complex(rng, 8)
        X = solve(A, B)
        assert fro_norm(A @ X - B) < 1e-10 * fro_norm(A) * fro_norm(X)

    def test_vector_rhs(self, rng):
        A = random_complex(rng, 5)
        b = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        x = solve(A, b)
        assert np.linalg.norm(A @ x - b) < 1e-10 * fro_norm(A)

    @pytest.mark.filterwarnings("ignore::scipy.linalg.LinAlgWarning")
    def test_singular_raises(self):
        A = np.array([[1.0, 2.0], [2.0, 4.0]], dtype=complex)
        with pytest.raises(SingularMatrixError):
            solve(A, np.eye(2))

    def test_shape_mismatch(self, rng):
        with pytest.raises(ArgumentError):
            solve(random_complex(rng, 3), np.eye(4))


class TestParts:
    def test_decomposition(self, rng):
        T = random_complex(rng, 5)
        R, I = re_part(T), im_part(T)
        assert fro_norm(R - R.conj().T) == 0.0
        assert fro_norm(I - I.conj().T) == 0.0
        assert fro_norm(T - (R + 1j * I)) < 1e-14 * fro_norm(T)


class TestPsdSqrt:
    def test_square_recovers(self, rng):
        A = random_complex(rng, 6)
        P = A @ A.conj().T
        S = psd_sqrt(P)
        assert fro_norm(S @ S - P) < 1e-9 * fro_norm(P)
        assert fro_norm(S - S.conj().T) == 0.0

    def test_clips_tiny_negative(self):
        P = np.diag([1.0, -1e-14]).astype(complex)
        S = psd_sqrt(P)
        assert S[1, 1].real >= 0.0
        assert abs(S[0, 0] - 1.0) < 1e-14

    def test_rejects_indefinite(self):
        with pytest.raises(NotPSDError):
            psd_sqrt(np.diag([1.0, -0.5]).astype(complex))

    def test_zero_below_flushes(self):
        # a 1e-16 eigenvalue would otherwise produce a 1e-8 square root
        P = np.diag([1.0, 1e-16]).astype(complex)
        S = psd_sqrt(P, zero_below=1e-14)
        assert S[1, 1] == 0.0


class TestOpNorm:
    def test_against_numpy(self, rng):
        for n in (1, 3, 7):
            A = random_complex(rng, n)
            assert abs(op_norm(A) - np.linalg.norm(A, 2)) < 1e-10 * fro_norm(A)

    def test_zero(self):
        assert op_norm(np.zeros((4, 4))) == 0.0


class TestBackends:
    """The compiled kernels and the numpy fallback share one contract."""

    def test_herm_eigh_agree(self, rng):
        H = random_hermitian(rng, 9)
        w1, V1 = backend.herm_eigh(H)
        w2, V2 = py_herm_eigh(H)
        assert np.allclose(w1, w2, atol=1e-11)
        # eigenvectors may differ by phase; compare projectors
        P1 = (V1 * w1) @ V1.conj().T
        P2 = (V2 * w2) @ V2.conj().T
        assert np.allclose(P1, P2, atol=1e-11)

    def test_support_sweep_agree(self, rng):
        T = random_complex(rng, 5)
        th = np.linspace(0, 2 * np.pi, 37)
        s1, b1, x1 = backend.support_sweep(T, th)
        s2, b2, x2 = py_support_sweep(T, th)
        assert np.allclose(s1, s2, atol=1e-11)
        assert np.allclose(b1, b2, atol=1e-9)

    def test_support_sweep_values(self, rng):
        # direct definition: support value is the top eigenvalue of the
        # rotated Hermitian part, the point is the vector's quadratic form
        T = random_complex(rng, 4)
        th = np.array([0.0, 1.1, 4.0])
        s, b, x = backend.support_sweep(T, th)
        for j, t in enumerate(th):
            H = 0.5 * (np.exp(-1j * t) * T + np.exp(1j * t) * T.conj().T)
            assert abs(s[j] - np.linalg.eigvalsh(H)[-1]) < 1e-12
            assert abs(b[j] - x[j].conj() @ T @ x[j]) < 1e-12
            assert abs(np.linalg.norm(x[j]) - 1.0) < 1e-12


@given(st.integers(min_value=1, max_value=6), st.integers(0, 2 ** 32 - 1))
@settings(max_examples=25, deadline=None)
def test_psd_sqrt_is_psd(n, seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    S = psd_sqrt(A @ A.conj().T)
    assert np.linalg.eigvalsh(S).min() >= -1e-10 * max(1.0, fro_norm(S))


@given(st.integers(min_value=1, max_value=6), st.integers(0, 2 ** 32 - 1))
@settings(max_examples=25, deadline=None)
def test_opnorm_bounds_radius(n, seed):
    # w(T) <= ||T|| <= 2 w(T) for every matrix
    rng = np.random.default_rng(seed)
    T = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    from oracles import radius_dense
    w = radius_dense(T, n=512)
    nrm = op_norm(T)
    assert w <= nrm + 1e-9
    assert nrm <= 2.0 * w + 1e-9
