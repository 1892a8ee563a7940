"""Reproduction experiments: the ellipse violation, the involution variant,
the disk fuzz suite, and the square search."""

import numpy as np
import pytest

from oracles import FROZEN
from wpair.confmap import Domain, build_atlas, poly_approx
from wpair.errors import ArgumentError
from wpair.experiments import (EllipseParams, bsk_fuzz, crouzeix_matrix,
                               ellipse_violation, involution_demo,
                               pair_refutation, random_matrix_with_radius,
                               square_search)
from wpair.funcalc import poly_apply
from wpair.numrange import boundary, numerical_radius
from wpair.wspec import check_condition_i_sampled


class TestEllipseParams:
    def test_focal_distance(self):
        assert EllipseParams(2.0, 1.0).c == pytest.approx(np.sqrt(3.0))

    def test_rejects_degenerate(self):
        with pytest.raises(ArgumentError):
            EllipseParams(1.0, 1.0)
        with pytest.raises(ArgumentError):
            EllipseParams(1.0, 2.0)
        with pytest.raises(ArgumentError):
            EllipseParams(1.0, 0.0)


class TestCrouzeixMatrix:
    def test_literal_entries(self):
        T = crouzeix_matrix(EllipseParams(2.0, 1.0))
        c = np.sqrt(3.0)
        assert np.allclose(T, [[c, 2.0], [0.0, -c]])

    def test_spectrum_and_square(self):
        p = EllipseParams(3.0, 1.0)
        T = crouzeix_matrix(p)
        eigs = np.sort_complex(np.linalg.eigvals(T))
        assert np.allclose(eigs, [-p.c, p.c])
        assert np.allclose(T @ T, p.c ** 2 * np.eye(2))

    @pytest.mark.parametrize("a,b", [(2.0, 1.0), (3.0, 1.0), (1.5, 1.0)])
    def test_range_is_the_ellipse(self, a, b):
        T = crouzeix_matrix(EllipseParams(a, b))
        pts = boundary(T, 360).points
        conic = pts.real ** 2 / a ** 2 + pts.imag ** 2 / b ** 2 - 1.0
        assert np.max(np.abs(conic)) < 1e-6


@pytest.fixture(scope="module")
def report():
    return ellipse_violation(EllipseParams(2.0, 1.0))


class TestEllipseViolation:
    def test_limit_ratio(self, report):
        # |g(c)| a / c for the (2, 1) ellipse, pinned by the frozen map oracle
        expected = FROZEN["ellipse_g_at_c"] * 2.0 / np.sqrt(3.0)
        assert abs(report.ratio - expected) < 1e-10
        assert report.ratio > 1.01

    def test_schwarz_bound_is_beaten(self, report):
        assert report.schwarz_lower == pytest.approx(np.sqrt(3.0) / 2.0)
        assert abs(report.g_at_c) > report.schwarz_lower + 0.08

    def test_radius_of_t(self, report):
        assert abs(report.w_T - 2.0) < 1e-8

    def test_per_degree_values(self, report):
        assert report.first_violating_degree == 8
        assert all(w > 1.0 for w in report.per_degree_w.values())
        ws = [report.per_degree_w[d] for d in (8, 16, 32)]
        assert ws[0] < ws[1] < ws[2] < report.ratio
        assert report.per_degree_w[32] == pytest.approx(report.ratio, abs=1e-3)

    def test_structure_identity(self, report):
        # odd approximant + T^2 = c^2 I collapse f_d(T) to a multiple of T
        assert all(s < 1e-12 for s in report.per_degree_structure.values())

    def test_ratio_decays_toward_disk(self):
        # eccentricity -> 0 is the equality case; the violation must fade
        r1 = ellipse_violation(EllipseParams(2.0, 1.0), degrees=(8,)).ratio
        r2 = ellipse_violation(EllipseParams(2.0, 1.8), degrees=(8,)).ratio
        r3 = ellipse_violation(EllipseParams(2.0, 1.98), degrees=(8,)).ratio
        assert r1 > r2 > r3 > 1.0


class TestPairRefutation:
    def test_ellipse_pair_fails(self):
        rep = pair_refutation(EllipseParams(2.0, 1.0), trials=10, rng_seed=11)
        assert not rep.passed
        assert rep.witness["kind"] == "riemann_map_approximant"
        assert rep.witness["degree"] <= 32
        assert rep.details["max_w"] > 1.1

    def test_same_matrix_on_large_disk_passes(self):
        # w(T/2) = 1, so the radius-2 disk is a working pair for T
        T = crouzeix_matrix(EllipseParams(2.0, 1.0))
        rep = check_condition_i_sampled(T, Domain.disk(2.0), trials=10,
                                        rng_seed=3)
        assert rep.passed


class TestInvolutionDemo:
    def test_seed_one(self):
        rep = involution_demo(seed=1)
        assert rep.fit_residual < 1e-6
        assert rep.center_offset < 1e-6
        # foci of the fitted ellipse sit at +-1 because T^2 = I
        assert rep.fitted_a ** 2 - rep.fitted_b ** 2 == pytest.approx(1.0, abs=1e-6)
        assert rep.fitted_a == pytest.approx(rep.norm_p_plus, abs=1e-6)
        assert rep.fitted_a > 1.05
        assert not rep.refutation.passed

    def test_reproducible(self):
        a = involution_demo(seed=1, refute_trials=4)
        b = involution_demo(seed=1, refute_trials=4)
        assert a.fitted_a == b.fitted_a
        assert a.fit_residual == b.fit_residual

    def test_other_seeds_still_elliptical(self):
        for seed in (2, 3):
            rep = involution_demo(seed=seed, refute_trials=4)
            assert rep.fit_residual < 1e-6
            assert rep.similarity_cond < 1e6


class TestRandomMatrixWithRadius:
    def test_hits_target(self, rng):
        for target in (1.0, 0.9, 2.5):
            T = random_matrix_with_radius(rng, 4, target)
            assert numerical_radius(T) == pytest.approx(target, abs=1e-10)


class TestBskFuzz:
    def test_small_run_both_modes(self):
        rep = bsk_fuzz(trials=12, seed=5, mode="both")
        assert rep.passed
        assert rep.vanishing_count == 6
        assert rep.teardrop_count == 6
        assert rep.max_w_vanishing <= 1.0 + 1e-7
        assert rep.max_teardrop_excess <= 1e-6

    def test_vanishing_only(self):
        rep = bsk_fuzz(trials=6, seed=2, mode="vanishing")
        assert rep.teardrop_count == 0
        assert rep.vanishing_count == 6
        assert rep.worst_vanishing is not None

    def test_teardrop_only(self):
        rep = bsk_fuzz(trials=6, seed=2, mode="teardrop")
        assert rep.vanishing_count == 0
        assert rep.teardrop_count == 6
        assert rep.worst_teardrop is not None

    def test_rejects_unknown_mode(self):
        with pytest.raises(ArgumentError):
            bsk_fuzz(trials=1, mode="everything")

    def test_seed_reproducible(self):
        a = bsk_fuzz(trials=8, seed=9)
        b = bsk_fuzz(trials=8, seed=9)
        assert a.max_w_vanishing == b.max_w_vanishing
        assert a.max_teardrop_excess == b.max_teardrop_excess


class TestSquareSearch:
    def test_ellipse_sanity_refinds_violation(self):
        # on the ellipse a violating matrix is known, so a short seeded
        # search must rediscover objective > 1
        rep = square_search(budget=240, seed=7, degrees=(8, 16),
                            domain_kind="ellipse")
        assert rep.success
        assert rep.feasible
        assert rep.best.objective > 1.0
        assert rep.domain_kind == "ellipse"

    def test_square_run_records_outcome(self):
        rep = square_search(budget=120, seed=3, degrees=(8,))
        assert rep.best.T.shape == (3, 3)
        assert rep.evaluations >= 120
        assert isinstance(rep.success, bool)
        assert isinstance(rep.feasible, bool)
        assert rep.best.penalty >= 0.0
        assert set(rep.best.per_degree_w) == {8}

    def test_objective_is_recomputable(self):
        rep = square_search(budget=120, seed=3, degrees=(8,))
        atlas = build_atlas(Domain.square(1.0))
        f, _ = poly_approx(atlas, 8)
        w = numerical_radius(poly_apply(f, rep.best.T))
        assert w == pytest.approx(rep.best.per_degree_w[8], abs=1e-8)
        assert rep.best.objective == pytest.approx(w, abs=1e-8)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ArgumentError):
            square_search(budget=0)
        with pytest.raises(ArgumentError):
            square_search(budget=10, domain_kind="pentagon")
