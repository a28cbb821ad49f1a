import math
import random

import pytest
from hypothesis import given, strategies as st

from macroscal.errors import DomainError
from macroscal.mscal import (BallVolumeObservation, gate_formulations, macroscopic_scal,
                             mscal_at_least, width_gate)
from macroscal.spaceform import ball_volume, kappa_n, unit_ball_volume

PI = math.pi


class TestObservation:
    def test_validation(self):
        with pytest.raises(DomainError):
            BallVolumeObservation(R=0.0, v=1.0)
        with pytest.raises(DomainError):
            BallVolumeObservation(R=1.0, v=-1.0)

    def test_volume_above_euclidean_allowed(self):
        BallVolumeObservation(R=1.0, v=100.0)


class TestMacroscopicScal:
    def test_euclidean(self):
        assert abs(macroscopic_scal(3, BallVolumeObservation(1.0, 4 * PI / 3))) <= 1e-8

    def test_berger_scale(self):
        eps = 0.001
        kp = PI * 1.01
        obs = BallVolumeObservation(R=kp * eps ** (1 / 3), v=2 * PI ** 2 * eps)
        assert macroscopic_scal(3, obs) == pytest.approx(600.0, rel=1e-8)

    def test_doubled_volume_negative(self):
        # frozen from an mpmath root of the quadrature volume
        s = macroscopic_scal(3, BallVolumeObservation(1.0, 2 * 4 * PI / 3))
        assert s < 0
        assert s == pytest.approx(-21.235740913064122595, rel=1e-8)

    @given(v1=st.floats(0.01, 50.0), ratio=st.floats(1.001, 20.0), R=st.floats(0.2, 3.0))
    def test_antitone_in_volume(self, v1, ratio, R):
        s1 = macroscopic_scal(3, BallVolumeObservation(R, v1))
        s2 = macroscopic_scal(3, BallVolumeObservation(R, v1 * ratio))
        assert s1 > s2


class TestAtLeast:
    def test_boundary(self):
        assert mscal_at_least(3, BallVolumeObservation(1.0, 4 * PI / 3), 0.0)

    def test_saturation(self):
        obs = BallVolumeObservation(PI, 2 * PI ** 2)
        assert mscal_at_least(3, obs, 6.0)
        assert not mscal_at_least(3, obs, 6.0 + 1e-3)

    def test_agrees_with_inversion(self):
        rng = random.Random(7)
        checked = 0
        for _ in range(2000):
            n = rng.randint(2, 6)
            obs = BallVolumeObservation(rng.uniform(0.1, 3.0), math.exp(rng.uniform(-4, 4)))
            s = rng.uniform(-30, 30)
            m = macroscopic_scal(n, obs, tol=1e-13)
            if abs(m - s) <= 1e-9 * max(1.0, abs(s)):
                continue
            assert mscal_at_least(n, obs, s) == (m >= s)
            checked += 1
        assert checked > 1900


class TestWidthGate:
    def test_report_invariants(self):
        rep = width_gate(4, 2.0, 3.0, 5.0)
        assert rep.r_opt == 3 / 4 * 2.0
        assert rep.width_bound == rep.r_opt
        assert rep.holds == (rep.lhs < rep.rhs)

    def test_just_above_kappa(self):
        k = kappa_n(3, 1.0, tol=1e-14)
        rep = width_gate(3, 1.0, k * (1 + 1e-6), 1.0)
        assert rep.holds and not rep.marginal

    def test_just_below_kappa(self):
        k = kappa_n(3, 1.0, tol=1e-14)
        rep = width_gate(3, 1.0, k * (1 - 1e-6), 1.0)
        assert not rep.holds and not rep.marginal

    def test_at_kappa_marginal(self):
        k = kappa_n(3, 1.0, tol=1e-14)
        assert width_gate(3, 1.0, k, 1.0).marginal

    @pytest.mark.parametrize("n,R,c", [(3, 1.0, 1.0), (4, 0.5, 30.0), (5, 2.0, 200.0), (3, 0.3, 9.0)])
    def test_flat_substitution(self, n, R, c):
        rep = width_gate(n, R, 0.0, c)
        assert rep.lhs == pytest.approx(n * unit_ball_volume(n) * R ** (n - 1), rel=1e-13)
        assert rep.holds == (n * unit_ball_volume(n) < c * ((n - 1) / n) ** (n - 1))

    def test_formulations_agree(self):
        rng = random.Random(3)
        for _ in range(300):
            n = rng.randint(3, 6)
            R, s, c = rng.uniform(0.1, 3.0), rng.uniform(-50, 200), math.exp(rng.uniform(-3, 7))
            if width_gate(n, R, s, c).marginal:
                continue
            direct, scaled, via_kappa = gate_formulations(n, R, s, c)
            assert direct == scaled == via_kappa

    def test_csv_row(self):
        text = width_gate(3, 1.0, 0.0, 1.0).to_csv()
        header, row = text.splitlines()
        assert header == "n,R,s,c,r_opt,lhs,rhs,holds,width_bound"
        assert row.split(",")[7] in ("true", "false")

    @pytest.mark.parametrize("args", [(3, 0.0, 1.0, 1.0), (3, 1.0, 1.0, 0.0), (2, 1.0, 1.0, 1.0)])
    def test_domain(self, args):
        with pytest.raises(DomainError):
            width_gate(*args)
