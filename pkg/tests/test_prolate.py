import math

import numpy as np
import pytest

from macroscal.errors import DomainError
from macroscal.prolate import (ProlateSpec, ellipsoid_area, ellipsoid_ball_bound, family_csv,
                               product_cover_ball_bound, prolate_family, solve_a)
from macroscal.spaceform import ball_volume, unit_sphere_volume

PI = math.pi


def spheroid_area(eps, a):
    """Closed-form area of the prolate spheroid with semi-axes eps, eps, a."""
    if a == eps:
        return 4 * PI * eps ** 2
    e = math.sqrt(1 - eps ** 2 / a ** 2)
    return 2 * PI * eps ** 2 + 2 * PI * eps * a * math.asin(e) / e


def spheroid_root(eps):
    lo, hi = 1.0, 100.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if spheroid_area(eps, mid) < 4 * PI:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def mc_surface(k, eps, a, n, rng, center=None, radius=None):
    """Monte Carlo area of E^k(eps, a) (or of its part within ``radius`` of ``center``).

    Uniform points x on S^k pushed forward by diag(eps, .., eps, a); the
    surface Jacobian of that linear map at x is det(D) |D^-1 x|.
    """
    g = rng.standard_normal((n, k + 1))
    x = g / np.linalg.norm(g, axis=1, keepdims=True)
    D = np.array([eps] * k + [a])
    jac = np.prod(D) * np.linalg.norm(x / D, axis=1) * unit_sphere_volume(k)
    if center is not None:
        jac = jac * (np.linalg.norm(x * D - center, axis=1) <= radius)
    return jac.mean(), jac.std() / math.sqrt(n)


class TestArea:
    @pytest.mark.parametrize("k", [2, 3, 4, 6])
    def test_round_sphere(self, k):
        assert ellipsoid_area(k, 1.0, 1.0) == pytest.approx(unit_sphere_volume(k), rel=1e-12)

    @pytest.mark.parametrize("eps,a", [(0.25, 1.0), (0.5, 1.0), (0.75, 1.0), (0.5, 3.0), (0.1, 12.0)])
    def test_spheroid_closed_form(self, eps, a):
        assert ellipsoid_area(2, eps, a) == pytest.approx(spheroid_area(eps, a), rel=1e-9)

    def test_monte_carlo_k3(self):
        rng = np.random.default_rng(12345)
        mean, se = mc_surface(3, 0.5, 1.0, 400_000, rng)
        assert abs(ellipsoid_area(3, 0.5, 1.0) - mean) <= 3 * se

    def test_increasing_in_a_and_eps(self):
        areas_a = [ellipsoid_area(3, 0.3, a) for a in (0.3, 0.5, 1.0, 2.0, 5.0)]
        assert all(x < y for x, y in zip(areas_a, areas_a[1:]))
        areas_e = [ellipsoid_area(3, e, 2.0) for e in (0.1, 0.4, 0.9, 1.5)]
        assert all(x < y for x, y in zip(areas_e, areas_e[1:]))

    def test_domain(self):
        with pytest.raises(DomainError):
            ellipsoid_area(2, 1.0, 0.5)
        with pytest.raises(DomainError):
            ellipsoid_area(1, 0.5, 1.0)
        with pytest.raises(DomainError):
            ProlateSpec(3, 2.0, 1.0)

    def test_spec_area(self):
        assert ProlateSpec(2, 1.0, 1.0).area() == pytest.approx(4 * PI, rel=1e-12)


class TestSolveA:
    def test_round(self):
        assert solve_a(3, 1.0) == 1.0

    def test_spheroid_root(self):
        assert solve_a(2, 0.5) == pytest.approx(spheroid_root(0.5), rel=1e-8)
        # frozen from an mpmath root of the closed form
        assert solve_a(2, 0.5) == pytest.approx(2.5037517351301354583, rel=1e-10)

    @pytest.mark.parametrize("k", [2, 3, 5])
    def test_roundtrip(self, k):
        for eps in (0.9, 0.5, 0.2, 0.05):
            a = solve_a(k, eps)
            assert ellipsoid_area(k, eps, a) == pytest.approx(unit_sphere_volume(k), rel=1e-8)

    def test_increasing_as_eps_halves(self):
        values = [solve_a(3, 2.0 ** -j) for j in range(8)]
        assert all(x < y for x, y in zip(values, values[1:]))

    def test_domain(self):
        with pytest.raises(DomainError):
            solve_a(2, 0.0)
        with pytest.raises(DomainError):
            solve_a(2, 1.5)


class TestBallBounds:
    def test_direct(self):
        assert ellipsoid_ball_bound(2, 1.0, 1.0) == pytest.approx(4 * PI, rel=1e-15)

    def test_arithmetic(self):
        assert ellipsoid_ball_bound(3, 0.1, 2.0) == pytest.approx(0.16 * PI, rel=1e-14)
        assert ellipsoid_ball_bound(3, 0.1, 2.0) == pytest.approx(0.502655, abs=1e-6)

    @pytest.mark.parametrize("eps", [1.0, 0.5, 0.1])
    @pytest.mark.parametrize("R", [0.05, 0.3, 1.0, 3.0])
    def test_exceeds_sampled_ball_areas(self, eps, R):
        # the chord-distance ball contains the geodesic ball, so its area
        # is an upper estimate of the geodesic-ball area
        rng = np.random.default_rng(2024)
        a = solve_a(2, eps)
        bound = ellipsoid_ball_bound(2, eps, R)
        for center in (np.array([0.0, 0.0, a]), np.array([eps, 0.0, 0.0])):
            mean, se = mc_surface(2, eps, a, 200_000, rng, center=center, radius=R)
            assert bound >= mean - 3 * se

    def test_pole_cap_exact(self):
        # around a pole the geodesic ball is the cap of meridian length R
        from macroscal.quadrature import integrate
        eps = 0.2
        a = solve_a(2, eps)
        speed = lambda t: np.sqrt((a * np.sin(t)) ** 2 + (eps * np.cos(t)) ** 2)
        for R in (0.1, 0.5, 2.0):
            # find the polar angle where the meridian arc reaches R
            lo, hi = 0.0, math.pi
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                if integrate(speed, 0.0, mid, tol=1e-13)[0] < R:
                    lo = mid
                else:
                    hi = mid
            cap = 2 * PI * integrate(lambda t: eps * np.sin(t) * speed(t), 0.0, lo, tol=1e-13)[0]
            assert cap <= ellipsoid_ball_bound(2, eps, R)

    def test_product_at_eps_one(self):
        R = 0.7
        expected = 2 * 2 * PI * R * ball_volume(2, 2.0, R)
        assert product_cover_ball_bound(4, 2, 1.0, R) == pytest.approx(expected, rel=1e-14)

    @pytest.mark.parametrize("n", [3, 4, 6])
    def test_line_factor(self, n):
        eps, R = 0.3, 1.7
        expected = 2 * unit_sphere_volume(n - 2) * R * eps ** (n - 2) * 2 * R
        assert product_cover_ball_bound(n, n - 1, eps, R) == pytest.approx(expected, rel=1e-14)

    def test_monomial_decay(self):
        b = [product_cover_ball_bound(5, 3, 2.0 ** -j, 1.0) for j in range(6)]
        for x, y in zip(b, b[1:]):
            assert y / x == pytest.approx(0.25, rel=1e-14)

    def test_k_out_of_range(self):
        with pytest.raises(DomainError):
            product_cover_ball_bound(4, 4, 0.5, 1.0)


class TestFamily:
    def test_halving(self):
        rows = prolate_family(4, 2, 1.0, [2.0 ** -j for j in range(6)])
        lbs = [r.mscal_lb for r in rows]
        assert all(x < y for x, y in zip(lbs, lbs[1:]))
        assert {r.systole for r in rows} == {unit_sphere_volume(2)}
        for r in rows:
            assert r.product_bound == pytest.approx(
                r.ball_bound * ball_volume(2, 2.0, 1.0), rel=1e-14)

    def test_eps_one_row(self):
        (row,) = prolate_family(5, 3, 0.5, [1.0])
        assert row.a == 1.0
        assert math.isfinite(row.ball_bound) and math.isfinite(row.mscal_lb)
        assert row.systole == unit_sphere_volume(3)

    def test_csv(self):
        text = family_csv(prolate_family(3, 2, 1.0, [1.0, 0.5]))
        lines = text.splitlines()
        assert lines[0] == "n,k,eps,a,R,ball_bound,product_bound,mscal_lb,systole"
        assert len(lines) == 3
