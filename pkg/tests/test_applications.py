import math

import pytest

import oracles
from stepcalc.applications import (
    BallisticsSpec,
    GeoPoint,
    PendulumSpec,
    ballistics_ivp,
    ballistics_range,
    ballistics_trajectory,
    elliptic_F,
    elliptic_K,
    loxodrome,
    mechanical_energy,
    meridional_parts,
    pendulum_period_elliptic,
    pendulum_period_ode,
    rectify,
    unit_circle,
    vacuum_range,
)


class TestPendulum:
    def test_small_angle_limit(self):
        spec = PendulumSpec(1.0, theta0=0.01)
        period = pendulum_period_ode(spec)
        small = spec.small_angle_period()
        assert abs(period - small) / small < 1e-4

    def test_ode_matches_elliptic_route(self):
        for theta0 in (0.5, 1.0, 2.0):
            spec = PendulumSpec(1.0, theta0=theta0)
            t_ode = pendulum_period_ode(spec)
            t_ell = pendulum_period_elliptic(spec)
            assert abs(t_ode - t_ell) / t_ell < 1e-6

    def test_period_grows_with_amplitude(self):
        periods = [
            pendulum_period_ode(PendulumSpec(1.0, theta0=a), h=1e-3)
            for a in (0.5, 1.0, 2.0)
        ]
        assert periods[0] < periods[1] < periods[2]

    def test_right_angle_ratio_matches_agm_oracle(self):
        spec = PendulumSpec(1.0, theta0=math.pi / 2)
        ratio = pendulum_period_elliptic(spec) / spec.small_angle_period()
        expected = 2.0 * oracles.elliptic_K_agm(math.sin(math.pi / 4)) / oracles.PI
        assert abs(ratio - expected) < 5e-5  # 4 significant figures
        assert f"{ratio:.4f}" == "1.1803"

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            PendulumSpec(0.0)
        with pytest.raises(ValueError):
            PendulumSpec(1.0, theta0=math.pi)


class TestEllipticIntegrals:
    def test_complete_at_zero_modulus(self):
        assert abs(elliptic_K(0.0) - oracles.PI / 2) < 1e-9

    def test_complete_is_incomplete_at_right_angle(self):
        k = 0.6
        assert abs(elliptic_F(math.pi / 2, k) - elliptic_K(k)) < 1e-9

    def test_against_agm_oracle(self):
        assert abs(elliptic_K(0.8) - oracles.elliptic_K_agm(0.8)) < 1e-8

    def test_domain(self):
        with pytest.raises(ValueError):
            elliptic_K(1.0)
        with pytest.raises(ValueError):
            elliptic_F(2.0, 0.5)


class TestBallistics:
    def test_vacuum_closed_form(self):
        spec = BallisticsSpec(0.16, 0.0, 30.0, 0.7)
        expected = vacuum_range(spec)
        assert abs(ballistics_range(spec) - expected) / expected < 1e-6

    def test_drag_shortens_the_throw(self):
        vac = BallisticsSpec(0.16, 0.0, 40.0, math.radians(40))
        drag = BallisticsSpec(0.16, 0.005, 40.0, math.radians(40))
        assert ballistics_range(drag) < vacuum_range(vac)

    def test_heavier_ball_flies_further(self):
        ranges = [
            ballistics_range(BallisticsSpec(m, 0.005, 40.0, math.radians(40)))
            for m in (0.06, 0.16, 0.5, 1.0)
        ]
        assert all(a < b for a, b in zip(ranges, ranges[1:]))

    def test_energy_never_increases_under_drag(self):
        spec = BallisticsSpec(0.16, 0.005, 40.0, math.radians(40))
        traj = ballistics_trajectory(spec, h=1e-3)
        energies = [mechanical_energy(spec, s) for s in traj.states]
        for before, after in zip(energies, energies[1:]):
            assert after <= before + 1e-9 * energies[0]

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            BallisticsSpec(-1.0, 0.0, 10.0, 0.5)
        with pytest.raises(ValueError):
            BallisticsSpec(1.0, 0.0, 10.0, 2.0)


class TestRectification:
    def test_inscribed_square(self):
        assert abs(rectify(unit_circle, 0.0, 2 * math.pi, 4) - 4 * math.sqrt(2)) < 1e-9

    def test_inscribed_hexagon(self):
        assert abs(rectify(unit_circle, 0.0, 2 * math.pi, 6) - 6.0) < 1e-9

    def test_dyadic_refinement_is_monotone_to_two_pi(self):
        previous = 0.0
        for p in range(4, 21):
            length = rectify(unit_circle, 0.0, 2 * math.pi, 2**p)
            assert length > previous
            previous = length
        assert abs(previous - 2 * oracles.PI) < 1e-8

    def test_segment_count_validated(self):
        with pytest.raises(ValueError):
            rectify(unit_circle, 0.0, 1.0, 0)


class TestLoxodrome:
    def test_meridian_sailing(self):
        p1 = GeoPoint(0.0, 0.0)
        p2 = GeoPoint(math.radians(10), 0.0)
        bearing, distance = loxodrome(p1, p2, radius=1.0)
        assert bearing == 0.0
        assert abs(distance - math.radians(10)) < 1e-10 * distance

    def test_parallel_sailing(self):
        lat = math.radians(60)
        p1 = GeoPoint(lat, 0.0)
        p2 = GeoPoint(lat, math.radians(10))
        bearing, distance = loxodrome(p1, p2, radius=1.0)
        assert bearing == math.pi / 2
        assert abs(distance - math.radians(10) / 2) < 1e-10 * distance

    def test_diagonal_bearing_against_closed_form(self):
        p1 = GeoPoint(0.0, 0.0)
        p2 = GeoPoint(math.radians(45), math.radians(45))
        bearing, _ = loxodrome(p1, p2)
        expected = math.atan2(math.pi / 4, math.log(math.tan(3 * math.pi / 8)))
        assert abs(bearing - expected) < 1e-9

    def test_swap_reverses_bearing_and_keeps_distance(self):
        p1 = GeoPoint(math.radians(10), math.radians(-30))
        p2 = GeoPoint(math.radians(55), math.radians(20))
        b12, d12 = loxodrome(p1, p2)
        b21, d21 = loxodrome(p2, p1)
        diff = (b21 - b12) % (2 * math.pi)
        assert abs(diff - math.pi) < 1e-9
        assert abs(d12 - d21) <= 1e-10 * d12

    def test_meridional_parts_match_closed_form(self):
        for phi in (0.2, 0.5, 0.9, 1.2):
            expected = math.log(math.tan(math.pi / 4 + phi / 2))
            assert abs(meridional_parts(phi, h=1e-5) - expected) < 1e-8

    def test_poles_rejected(self):
        with pytest.raises(ValueError):
            GeoPoint(math.pi / 2, 0.0)

    def test_coincident_points(self):
        p = GeoPoint(0.3, 0.4)
        assert loxodrome(p, p) == (0.0, 0.0)
