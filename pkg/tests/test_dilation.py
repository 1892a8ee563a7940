"""POVM discretization, the finite Naimark isometry, the two-dilation
calculus with its base-point caveat, and the block unitary power dilation."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wpair.confmap import Domain, build_atlas, poly_approx
from wpair.dilation import (NaimarkModel, PovmDiscretization,
                            dilation_calculus_check, egervary_dilation,
                            naimark_dilate, povm_discretize,
                            resolvent_positivity_check)
from wpair.errors import ArgumentError, HypothesisError, NotContractionError
from wpair.funcalc import Poly, RationalFn
from wpair.matcore import op_norm
from wpair.wspec import check_condition_ii


def nilpotent(w):
    return np.array([[0.0, 2.0 * w], [0.0, 0.0]], dtype=complex)


def crouzeix():
    c = np.sqrt(3.0)
    return np.array([[c, 2.0], [0.0, -c]], dtype=complex)


DISK = build_atlas(Domain.disk(1.0))


def disk_model(T, m=64):
    return naimark_dilate(povm_discretize(T, DISK, m=m))


class TestPovmDiscretize:
    def test_scalar_base_point_gives_uniform_blocks(self):
        # T = z0 I makes every h_zeta(T) = I, so F_j = I/m before the
        # renormalization and the renormalization is then the identity
        povm = povm_discretize(np.zeros((3, 3)), DISK, m=16)
        target = np.eye(3) / 16.0
        for F in povm.elements:
            assert np.max(np.abs(F - target)) < 1e-15

    def test_boundary_case_blocks_are_psd(self):
        povm = povm_discretize(nilpotent(1.0), DISK, m=64)
        assert povm.min_eigenvalue() >= -1e-10
        assert povm.sum_defect() < 1e-13

    def test_sum_is_identity_after_renormalization(self):
        povm = povm_discretize(nilpotent(0.97), DISK, m=32)
        S = povm.elements.sum(axis=0)
        assert np.max(np.abs(S - np.eye(2))) < 1e-14

    def test_nodes_lie_on_boundary(self):
        povm = povm_discretize(nilpotent(0.5), DISK, m=16)
        assert np.max(np.abs(np.abs(povm.nodes) - 1.0)) < 1e-14

    def test_rejects_pair_condition_failure(self):
        with pytest.raises(HypothesisError, match="node"):
            povm_discretize(nilpotent(1.1), DISK, m=64)
        # the same pair fails the standalone check with the same semantics
        rep = check_condition_ii(nilpotent(1.1), Domain.disk(1.0), m=64)
        assert not rep.passed
        assert rep.margin == pytest.approx(-0.2, abs=1e-12)

    def test_ellipse_domain(self):
        atlas = build_atlas(Domain.ellipse(2.0, 1.0))
        povm = povm_discretize(0.3 * crouzeix(), atlas, m=64, d=32)
        assert povm.min_eigenvalue() >= -1e-10
        assert povm.sum_defect() < 1e-13
        x, y = povm.nodes.real, povm.nodes.imag
        conic = x ** 2 / 4.0 + y ** 2 - 1.0
        assert np.max(np.abs(conic)) < 1e-12


class TestNaimarkDilate:
    def test_single_identity_block(self):
        povm = PovmDiscretization(elements=np.eye(2)[None, :, :],
                                  nodes=np.array([1.0 + 0j]), m=1)
        model = naimark_dilate(povm)
        assert np.allclose(model.V, np.eye(2))
        assert np.allclose(model.n_dense(), np.eye(2))

    def test_uniform_povm_blocks(self):
        m = 8
        nodes = np.exp(2j * np.pi * np.arange(m) / m)
        povm = PovmDiscretization(
            elements=np.broadcast_to(np.eye(2) / m, (m, 2, 2)).copy(),
            nodes=nodes, m=m)
        model = naimark_dilate(povm)
        for j in range(m):
            assert np.allclose(model.block(j), np.eye(2) / np.sqrt(m))
        assert model.isometry_defect() < 1e-14

    def test_isometry_and_defining_identity(self):
        model = disk_model(nilpotent(1.0), m=64)
        assert model.isometry_defect() < 1e-12
        assert model.naimark_defect() < 1e-12

    def test_dense_route_agrees_with_blocks(self):
        # V* Q_j V computed with materialized projections must reproduce
        # the F_j; same identity as naimark_defect but through dense algebra
        model = disk_model(nilpotent(0.8), m=8)
        Qsum = np.zeros((16, 16), dtype=complex)
        for j in range(8):
            Q = model.q_dense(j)
            assert np.allclose(Q @ Q, Q)
            Qsum += Q
            lhs = model.V.conj().T @ Q @ model.V
            assert op_norm(lhs - model.povm.elements[j]) < 1e-13
        assert np.allclose(Qsum, np.eye(16))

    def test_dense_normal_matrix(self):
        model = disk_model(nilpotent(0.8), m=8)
        N = model.n_dense()
        assert np.allclose(N @ N.conj().T, N.conj().T @ N)
        # disk nodes are unimodular, so N is in fact unitary
        assert np.allclose(N.conj().T @ N, np.eye(16))
        eigs = np.linalg.eigvals(N)
        dist = np.abs(eigs[:, None] - model.nodes[None, :]).min(axis=1)
        assert np.max(dist) < 1e-12

    def test_dense_guards(self):
        model = disk_model(nilpotent(0.5), m=8)
        with pytest.raises(ArgumentError):
            model.n_dense(max_dim=8)
        with pytest.raises(ArgumentError):
            model.q_dense(0, max_dim=8)


class TestDilationCalculus:
    def test_zero_function(self):
        model = disk_model(nilpotent(0.9), m=16)
        rep = dilation_calculus_check(nilpotent(0.9), model, Poly([0.0]))
        assert rep.delta == 0.0

    def test_berger_powers_on_disk(self):
        # T^k = 2 V* N^k V for the w(T) = 1 nilpotent: the strange 2-dilation
        T = nilpotent(1.0)
        model = disk_model(T, m=256)
        for k in (1, 2, 3):
            f = Poly([0.0] * k + [1.0])
            rep = dilation_calculus_check(T, model, f)
            assert rep.delta < 1e-8

    def test_ellipse_approximant_pipeline(self):
        atlas = build_atlas(Domain.ellipse(2.0, 1.0))
        T = 0.3 * crouzeix()
        model = naimark_dilate(povm_discretize(T, atlas, m=512, d=32))
        p, info = poly_approx(atlas, 32)
        assert info.sup_error < 1e-3
        rep = dilation_calculus_check(T, model, p)
        assert rep.delta < 1e-5

    def test_base_point_necessity(self):
        # f == 1 gives ||I - 2I|| = 1 at every m: the identity genuinely
        # needs f(z0) = 0 and no amount of resolution rescues it
        T = nilpotent(1.0)
        for m in (16, 64):
            model = disk_model(T, m=m)
            rep = dilation_calculus_check(T, model, Poly([1.0]),
                                          enforce_base_point=False)
            assert abs(rep.delta - 1.0) < 1e-12
            assert rep.delta > 0.5

    def test_refuses_nonvanishing_f(self):
        model = disk_model(nilpotent(0.5), m=16)
        with pytest.raises(HypothesisError, match="f\\(z0\\)"):
            dilation_calculus_check(nilpotent(0.5), model, Poly([1.0]))

    def test_error_halves_with_m(self):
        # rational f with a pole just outside pins the quadrature rate
        T = nilpotent(1.0)
        f = RationalFn([0.0, 1.0], [-1.3, 1.0])
        errs = []
        for m in (16, 32, 64, 128):
            model = disk_model(T, m=m)
            errs.append(dilation_calculus_check(T, model, f).delta)
        for lo, hi in zip(errs[1:], errs):
            if hi < 1e-10:
                break
            assert lo < 0.5 * hi

    def test_report_fields(self):
        T = nilpotent(0.5)
        model = disk_model(T, m=64)
        rep = dilation_calculus_check(T, model, Poly([0.0, 1.0]))
        assert rep.f_at_base == 0.0
        assert rep.m == 64
        assert abs(rep.direct_norm - 1.0) < 1e-12
        assert abs(rep.compressed_norm - rep.direct_norm) < 1e-6


class TestResolventPositivity:
    def test_closed_form_margin(self):
        # (I - 0.9 T)^{-1} = [[1, 1.8], [0, 1]] has Re-part eigenvalues
        # 1 -/+ 0.9, so the margin is exactly 0.1
        T = nilpotent(1.0)
        model = disk_model(T, m=256)
        ok, rep = resolvent_positivity_check(T, model, Poly([0.0, 1.0]), 0.9)
        assert ok
        assert abs(rep["margin"] - 0.1) < 1e-12
        assert rep["model_vs_direct"] < 1e-6

    def test_alpha_zero(self):
        T = nilpotent(0.7)
        model = disk_model(T, m=16)
        ok, rep = resolvent_positivity_check(T, model, Poly([0.0, 1.0]), 0.0)
        assert ok
        assert rep["margin"] == pytest.approx(1.0, abs=1e-14)
        assert rep["model_vs_direct"] == 0.0

    def test_zero_function(self):
        T = nilpotent(0.7)
        model = disk_model(T, m=16)
        ok, rep = resolvent_positivity_check(T, model, Poly([0.0]), 0.5)
        assert ok
        assert rep["margin"] == pytest.approx(1.0, abs=1e-14)

    def test_rejects_large_alpha(self):
        model = disk_model(nilpotent(0.5), m=16)
        with pytest.raises(ArgumentError):
            resolvent_positivity_check(nilpotent(0.5), model,
                                       Poly([0.0, 1.0]), 1.0)

    def test_rejects_nonvanishing_f(self):
        model = disk_model(nilpotent(0.5), m=16)
        with pytest.raises(HypothesisError):
            resolvent_positivity_check(nilpotent(0.5), model,
                                       Poly([0.5, 0.5]), 0.5)

    def test_rejects_large_sup(self):
        model = disk_model(nilpotent(0.5), m=16)
        with pytest.raises(HypothesisError, match="sup"):
            resolvent_positivity_check(nilpotent(0.5), model,
                                       Poly([0.0, 2.0]), 0.5)


class TestEgervary:
    def test_scalar_zero(self):
        U = egervary_dilation(np.zeros((1, 1)), 1)
        assert np.array_equal(U, np.array([[0.0, 1.0], [1.0, 0.0]],
                                          dtype=complex))

    def test_unitary_input_has_exact_defects(self):
        T = np.diag(np.exp(1j * np.array([0.3, -1.1, 2.0])))
        U = egervary_dilation(T, 3)
        # defect operators flush to exactly zero, so the off-corner block
        # in the first row is identically 0
        assert not np.any(U[:3, -3:])
        for k in range(1, 4):
            Uk = np.linalg.matrix_power(U, k)
            assert op_norm(Uk[:3, :3] - np.linalg.matrix_power(T, k)) < 1e-12

    def test_random_contractions(self, rng):
        for _ in range(20):
            n = int(rng.integers(1, 5))
            A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            T = 0.95 * A / np.linalg.norm(A, 2)
            U = egervary_dilation(T, 5)
            dim = U.shape[0]
            assert dim == 6 * n
            assert op_norm(U.conj().T @ U - np.eye(dim)) < 1e-10
            for k in range(1, 6):
                Uk = np.linalg.matrix_power(U, k)
                assert op_norm(Uk[:n, :n]
                               - np.linalg.matrix_power(T, k)) < 1e-9

    def test_rejects_noncontraction(self):
        with pytest.raises(NotContractionError):
            egervary_dilation(nilpotent(1.0), 2)   # norm 2, radius 1

    def test_rejects_bad_step_count(self):
        with pytest.raises(ArgumentError):
            egervary_dilation(np.zeros((2, 2)), 0)


@given(st.floats(min_value=0.0, max_value=1.0),
       st.floats(min_value=0.0, max_value=2 * np.pi),
       st.integers(min_value=1, max_value=6))
@settings(max_examples=40, deadline=None)
def test_scalar_power_dilation(r, phase, n_steps):
    # for a scalar contraction the compressed powers have the closed form
    # a^k, directly comparable without any matrix machinery
    a = r * np.exp(1j * phase)
    U = egervary_dilation(np.array([[a]]), n_steps)
    for k in range(1, n_steps + 1):
        top = np.linalg.matrix_power(U, k)[0, 0]
        assert abs(top - a ** k) < 1e-12
