import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_complex
from oracles import eig_calculus
from wpair.errors import ArgumentError, PoleProximityError
from wpair.funcalc import (Poly, RationalFn, blaschke_product, mobius_exchange,
                           mobius_halfplane, poly_apply, rational_apply)


class TestPoly:
    def test_eval_matches_numpy(self, rng):
        c = rng.standard_normal(7) + 1j * rng.standard_normal(7)
        p = Poly(c)
        z = rng.standard_normal(20) + 1j * rng.standard_normal(20)
        ref = np.polyval(c[::-1], z)
        assert np.allclose(p(z), ref, atol=1e-12)

    def test_scalar_eval_returns_scalar(self):
        assert isinstance(Poly([1.0, 2.0])(0.5), complex)

    def test_trailing_zeros_stripped(self):
        p = Poly([1.0, 2.0, 0.0, 0.0])
        assert p.degree == 1

    def test_zero_poly(self):
        p = Poly([0.0, 0.0])
        assert p.degree == 0
        assert p(3.0) == 0.0

    def test_arith(self, rng):
        a = Poly(rng.standard_normal(4))
        b = Poly(rng.standard_normal(3))
        z = 0.3 + 0.7j
        assert abs((a + b)(z) - (a(z) + b(z))) < 1e-13
        assert abs((a - b)(z) - (a(z) - b(z))) < 1e-13
        assert abs((a * b)(z) - a(z) * b(z)) < 1e-13
        assert abs((2.5 * a)(z) - 2.5 * a(z)) < 1e-13

    def test_roots(self):
        p = Poly([-6.0, 11.0, -6.0, 1.0])  # (z-1)(z-2)(z-3)
        r = np.sort(np.real(p.roots()))
        assert np.allclose(r, [1.0, 2.0, 3.0], atol=1e-10)

    def test_degree_cap(self):
        with pytest.raises(ArgumentError):
            Poly(np.ones(130))

    def test_rejects_empty(self):
        with pytest.raises(ArgumentError):
            Poly([])


class TestPolyApply:
    def test_against_eig_calculus(self, rng):
        c = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        p = Poly(c)
        T = random_complex(rng, 5)
        ref = eig_calculus(p, T)
        assert np.allclose(poly_apply(p, T), ref, atol=1e-8 * np.abs(ref).max())

    def test_constant(self):
        out = poly_apply(Poly([3.0 + 1j]), np.zeros((2, 2)))
        assert np.allclose(out, (3.0 + 1j) * np.eye(2))

    def test_accepts_coefficient_list(self):
        T = np.diag([1.0, 2.0]).astype(complex)
        out = poly_apply([0.0, 0.0, 1.0], T)   # z^2
        assert np.allclose(out, np.diag([1.0, 4.0]))


class TestRational:
    def test_eval(self):
        f = RationalFn(Poly([0.0, 1.0]), Poly([1.0, 0.5]))
        assert abs(f(2.0) - 1.0) < 1e-15

    def test_deflation(self):
        # (z-1)(z-2) / (z-1)(z-3) reduces to (z-2)/(z-3)
        num = Poly(np.convolve([-1.0, 1.0], [-2.0, 1.0]))
        den = Poly(np.convolve([-1.0, 1.0], [-3.0, 1.0]))
        f = RationalFn(num, den)
        assert f.num.degree == 1
        assert f.den.degree == 1
        assert np.allclose(np.real(f.poles()), [3.0], atol=1e-8)

    def test_zero_denominator_rejected(self):
        with pytest.raises(ArgumentError):
            RationalFn(Poly([1.0]), Poly([0.0]))

    def test_apply_against_eig_calculus(self, rng):
        T = 0.4 * random_complex(rng, 4)
        f = RationalFn(Poly([0.0, 1.0, 0.3]), Poly([1.0, 0.0, 0.25]))
        ref = eig_calculus(f, T)
        out = rational_apply(f, T)
        assert np.allclose(out, ref, atol=1e-9 * max(1.0, np.abs(ref).max()))

    def test_pole_proximity(self):
        T = np.diag([2.0, 0.0]).astype(complex)
        f = RationalFn(Poly([1.0]), Poly([-2.0, 1.0]))  # pole at 2
        with pytest.raises(PoleProximityError):
            rational_apply(f, T)

    def test_poly_passthrough(self, rng):
        T = random_complex(rng, 3)
        p = Poly([1.0, 2.0])
        assert np.allclose(rational_apply(p, T), poly_apply(p, T))


class TestMobius:
    def test_halfplane_scalar_agreement(self):
        T = np.diag([0.5, -0.25j]).astype(complex)
        out = mobius_halfplane(T, 0.3)
        w = np.exp(-0.3j)
        expect = np.diag([(1 + w * lam) / (1 - w * lam)
                          for lam in [0.5, -0.25j]])
        assert np.allclose(out, expect, atol=1e-12)

    def test_halfplane_positive_real_part(self, rng):
        # strict contraction: the image lies in the open right half-plane
        T = 0.8 * random_complex(rng, 4) / np.linalg.norm(random_complex(rng, 4), 2)
        T = T * (0.8 / np.linalg.norm(T, 2))
        H = mobius_halfplane(T, 1.0)
        assert np.linalg.eigvalsh(0.5 * (H + H.conj().T)).min() > 0

    def test_halfplane_pole(self):
        T = np.eye(2, dtype=complex)
        with pytest.raises(PoleProximityError):
            mobius_halfplane(T, 0.0)

    def test_exchange_involution(self, rng):
        a = 0.3 - 0.4j
        f = mobius_exchange(a)
        assert abs(f(0.0) - a) < 1e-15
        assert abs(f(a)) < 1e-15
        z = 0.2 + 0.1j
        assert abs(f(complex(f(z))) - z) < 1e-13

    def test_exchange_unimodular_on_circle(self):
        f = mobius_exchange(0.5j)
        th = np.linspace(0, 2 * np.pi, 64)
        assert np.max(np.abs(np.abs(f(np.exp(1j * th))) - 1.0)) < 1e-12

    def test_exchange_rejects_boundary(self):
        with pytest.raises(ArgumentError):
            mobius_exchange(1.0)


class TestBlaschke:
    def test_unimodular_on_circle(self, rng):
        zeros = [0.3, -0.2 + 0.4j, 0.1j]
        f = blaschke_product(zeros, phase=np.exp(0.7j))
        th = np.linspace(0, 2 * np.pi, 128)
        assert np.max(np.abs(np.abs(f(np.exp(1j * th))) - 1.0)) < 1e-12

    def test_vanish_at_zero(self):
        f = blaschke_product([0.5], vanish_at_zero=True)
        assert abs(f(0.0)) == 0.0

    def test_zeros_are_zeros(self):
        f = blaschke_product([0.3, -0.5j])
        assert abs(f(0.3)) < 1e-13
        assert abs(f(-0.5j)) < 1e-13

    def test_rejects_outside_zero(self):
        with pytest.raises(ArgumentError):
            blaschke_product([1.2])


@given(st.integers(0, 2 ** 32 - 1), st.integers(min_value=1, max_value=5))
@settings(max_examples=20, deadline=None)
def test_poly_apply_commutes_with_similarity(seed, n):
    # f(S T S^{-1}) = S f(T) S^{-1}
    rng = np.random.default_rng(seed)
    T = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    S = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    S += 3.0 * np.eye(n)   # keep it invertible and well conditioned
    p = Poly(rng.standard_normal(4))
    left = poly_apply(p, S @ T @ np.linalg.inv(S))
    right = S @ poly_apply(p, T) @ np.linalg.inv(S)
    assert np.allclose(left, right, atol=1e-7 * max(1.0, np.abs(right).max()))
