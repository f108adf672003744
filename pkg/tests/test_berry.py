"""Sphere geometry and the discrete geometric phase."""

import cmath
import math

import numpy as np
import pytest

from als.berry import (
    ResolutionError,
    SpherePath,
    berry_phase,
    latitude_loop,
    polar_loop,
    solid_angle,
    sphere_point,
)
from als.gstate import inner_product
from als.modes import schwinger_state
from als.operators import spin_axis

rng = np.random.default_rng(707)

CAP_PI8 = 2 * math.pi * (1 - math.cos(math.pi / 4))  # = 1.84030236902122


class TestSpherePoint:
    def test_north_pole(self):
        for phi in rng.uniform(0, 2 * math.pi, size=5):
            assert sphere_point(float(phi), math.pi / 4) == pytest.approx(
                [0, 0, 1], abs=1e-14
            )

    def test_equatorial_reference(self):
        assert sphere_point(0.0, 0.0) == pytest.approx([1, 0, 0], abs=1e-15)

    def test_agrees_with_spin_axis(self):
        for _ in range(20):
            phi, alpha = rng.uniform(-3, 3, size=2)
            assert np.max(
                np.abs(sphere_point(float(phi), float(alpha)) - spin_axis(float(phi), float(alpha)))
            ) <= 1e-15


class TestSpherePathValidation:
    def test_open_endpoints_rejected_for_closed(self):
        with pytest.raises(ValueError):
            SpherePath(((0.0, 0.1), (0.5, 0.1), (1.0, 0.1)), closed=True)

    def test_seam_closure_accepted(self):
        # (phi, 0) and (phi - pi/2, pi/2) are the same sphere point
        SpherePath(((0.3, 0.0), (0.5, 0.3), (0.3 - 0.5 * math.pi, 0.5 * math.pi)))

    def test_open_path_allowed_when_flagged(self):
        p = SpherePath(((0.0, 0.1), (0.5, 0.1)), closed=False)
        with pytest.raises(ValueError):
            solid_angle(p)


class TestSolidAngle:
    def test_shrinking_triangle_near_pole(self):
        last = math.inf
        for size in (0.3, 0.15, 0.075, 0.0375):
            a0 = math.pi / 4 - size
            tri = SpherePath(
                ((0.0, a0), (math.pi / 3, a0), (2 * math.pi / 3, a0), (0.0, a0))
            )
            val = abs(solid_angle(tri))
            assert val < last
            last = val
        assert last <= 0.01

    def test_latitude_loop_matches_cap_formula(self):
        om = solid_angle(latitude_loop(math.pi / 8, 2000))
        assert om == pytest.approx(CAP_PI8, abs=1e-5)

    def test_equatorial_loop_is_hemisphere(self):
        om = solid_angle(latitude_loop(0.0, 800))
        assert om == pytest.approx(2 * math.pi, abs=1e-10)

    def test_orientation_flips_sign(self):
        fwd = latitude_loop(math.pi / 8, 500)
        assert solid_angle(fwd.reversed()) == pytest.approx(-solid_angle(fwd), abs=1e-12)

    def test_polar_loop_quarter_sphere(self):
        om = solid_angle(polar_loop(0.4, 400))
        assert abs(om) == pytest.approx(math.pi, abs=1e-9)

    def test_degenerate_path_rejected(self):
        with pytest.raises(ValueError):
            solid_angle(SpherePath(((0.0, 0.1), (0.0, 0.1), (0.0, 0.1))))


class TestBerryPhase:
    def test_zero_for_zero_angular_momentum(self):
        assert abs(berry_phase(latitude_loop(math.pi / 8, 400), 2, 2)) <= 1e-8

    def test_zero_for_pole_pinned_loop(self):
        assert abs(berry_phase(latitude_loop(math.pi / 4, 400), 3, 0)) <= 1e-8

    def test_l3_latitude_loop_value(self):
        # target: -(3/2) * 2 pi (1 - cos(pi/4)) = -2.76045355346183
        phase = berry_phase(latitude_loop(math.pi / 8, 2000), 3, 0)
        assert abs(phase + 1.5 * CAP_PI8) <= 1e-3

    def test_quadratic_convergence_to_cap_value(self):
        errs = []
        for nseg in (250, 500, 1000, 2000):
            phase = berry_phase(latitude_loop(math.pi / 8, nseg), 3, 0)
            errs.append(abs(phase + 1.5 * CAP_PI8))
        assert all(errs[i + 1] < errs[i] for i in range(len(errs) - 1))
        assert errs[0] / errs[-1] >= 16.0  # consistent with 1/N^2 decay

    def test_matches_discrete_solid_angle(self):
        # at equal segment count the product phase tracks -(l/2) Omega tightly
        for nseg in (250, 1000):
            loop = latitude_loop(math.pi / 8, nseg)
            assert berry_phase(loop, 3, 0) == pytest.approx(
                -1.5 * solid_angle(loop), abs=1e-9
            )

    def test_orientation_flip(self):
        fwd = latitude_loop(math.pi / 8, 400)
        assert berry_phase(fwd.reversed(), 3, 0) == pytest.approx(
            -berry_phase(fwd, 3, 0), abs=1e-10
        )

    def test_polar_loop_proportionality(self):
        loop = polar_loop(0.3, 300)
        om = solid_angle(loop)
        assert berry_phase(loop, 1, 0) == pytest.approx(-0.5 * om, abs=1e-6)

    def test_gauge_invariance(self):
        loop = latitude_loop(math.pi / 8, 120)
        verts = loop.vertices[:-1]
        states = [schwinger_state(3, 0, a, p) for p, a in verts]

        def product_phase(ss):
            prod = 1 + 0j
            for k in range(len(ss)):
                prod *= inner_product(ss[k], ss[(k + 1) % len(ss)])
            return -cmath.phase(prod)

        base = product_phase(states)
        phases = [cmath.exp(1j * float(rng.uniform(0, 2 * math.pi))) for _ in states]
        redecorated = [ph * s for ph, s in zip(phases, states)]
        assert abs(product_phase(redecorated) - base) <= 1e-10
        assert abs(base - berry_phase(loop, 3, 0)) <= 1e-12

    def test_open_path_rejected(self):
        p = SpherePath(((0.0, 0.1), (0.5, 0.1)), closed=False)
        with pytest.raises(ValueError):
            berry_phase(p, 1, 0)

    def test_coarse_path_resolution_error(self):
        # three equatorial orientations 2 pi / 3 apart; for n + m = 20 the
        # consecutive overlaps are cos(pi/3)^20 ~ 9.5e-7, below the floor
        path = SpherePath(
            ((0.0, 0.0), (math.pi / 3, 0.0), (2 * math.pi / 3, 0.0), (math.pi, 0.0))
        )
        with pytest.raises(ResolutionError):
            berry_phase(path, 20, 0)
