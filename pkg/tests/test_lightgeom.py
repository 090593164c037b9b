import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fillight import lightgeom as lg


class TestLightParams:
    def test_degree_construction(self):
        p = lg.LightParams.from_degrees(5000, 45, 1000, 300, 10, -20)
        assert p.theta_hp == pytest.approx(math.pi / 4)
        assert p.theta_hp_deg == pytest.approx(45.0)

    def test_dict_round_trip(self):
        p = lg.LightParams.from_degrees(4571, 33.3, 1800, 520, -1559, 900)
        q = lg.LightParams.from_dict(p.to_dict())
        assert q == p

    @pytest.mark.parametrize("kwargs", [
        dict(kelvin=500.0),
        dict(kelvin=30000.0),
        dict(theta_hp=0.0),
        dict(theta_hp=math.pi / 2),
        dict(z0=0.0),
        dict(z0=-5.0),
        dict(d_lamp=0.0),
        dict(dx=math.nan),
    ])
    def test_invalid_params(self, kwargs):
        base = dict(kelvin=5000.0, theta_hp=0.6, z0=1000.0, d_lamp=300.0,
                    dx=0.0, dy=0.0)
        with pytest.raises(ValueError):
            lg.LightParams(**{**base, **kwargs})


class TestSampleDisk:
    def test_single_sample(self):
        pts = lg.sample_disk(2.0, 1)
        assert pts.shape == (1, 2)
        assert pts[0, 0] == pytest.approx(math.sqrt(0.5), abs=1e-9)
        assert pts[0, 1] == 0.0

    def test_radius_bound_n4(self):
        pts = lg.sample_disk(2.0, 4)
        radii = np.hypot(pts[:, 0], pts[:, 1])
        assert radii.max() <= math.sqrt(3.5 / 4) + 1e-12

    def test_all_inside_disk(self):
        pts = lg.sample_disk(7.0, 1000)
        assert np.hypot(pts[:, 0], pts[:, 1]).max() < 3.5

    def test_deterministic_bit_identical(self):
        a = lg.sample_disk(3.0, 257)
        b = lg.sample_disk(3.0, 257)
        assert np.array_equal(a, b)

    def test_uniformity_against_rejection_oracle(self):
        n = 4096
        pts = lg.sample_disk(2.0, n)
        centroid = pts.mean(axis=0)
        assert np.hypot(*centroid) < 0.02

        # any half-disk holds within 5% of n/2
        rng = np.random.default_rng(99)
        for _ in range(25):
            d = rng.normal(size=2)
            d /= np.hypot(*d)
            count = int((pts @ d > 0).sum())
            assert abs(count - n / 2) < 0.05 * n

        # radial distribution matches area-uniform rejection sampling
        rej = []
        while len(rej) < 20000:
            cand = rng.uniform(-1, 1, size=(40000, 2))
            rej.extend(cand[np.hypot(cand[:, 0], cand[:, 1]) <= 1.0])
        rej = np.asarray(rej)[:20000]
        mean_r2_fib = (pts ** 2).sum(axis=1).mean()
        mean_r2_rej = (rej ** 2).sum(axis=1).mean()
        assert mean_r2_fib == pytest.approx(0.5, abs=1e-3)  # exact by design
        assert abs(mean_r2_fib - mean_r2_rej) < 0.02

    def test_errors(self):
        with pytest.raises(ValueError):
            lg.sample_disk(2.0, 0)
        with pytest.raises(ValueError):
            lg.sample_disk(-1.0, 4)


class TestIncidentRay:
    def _params(self, **kw):
        base = dict(kelvin=5000.0, theta_hp=0.6, z0=100.0, d_lamp=10.0,
                    dx=0.0, dy=0.0)
        return lg.LightParams(**{**base, **kw})

    def test_on_axis(self):
        ray = lg.incident_ray((0, 0, 0), (0, 0), self._params())
        assert np.allclose(ray.direction, [0, 0, 1])
        assert ray.distance == pytest.approx(100.0)
        assert ray.emit_angle == 0.0

    def test_pythagorean_triple(self):
        p = self._params(dx=3.0, dy=4.0, z0=12.0)
        ray = lg.incident_ray((0, 0, 0), (0, 0), p)
        assert ray.distance == pytest.approx(13.0)

    def test_grazing_limit(self):
        p = self._params(dx=1e9, z0=1.0)
        ray = lg.incident_ray((0, 0, 0), (0, 0), p)
        assert ray.emit_angle == pytest.approx(math.pi / 2, abs=1e-6)

    def test_axis_symmetry_any_diameter(self):
        # central-sample ray from a pixel on the disk axis is axial
        # whatever the disk diameter
        for d_lamp in (1.0, 100.0, 5000.0):
            p = self._params(dx=70.0, dy=-30.0, d_lamp=d_lamp)
            ray = lg.incident_ray((70.0, -30.0, 0.0), (0, 0), p)
            assert ray.emit_angle == 0.0

    def test_degenerate_geometry(self):
        p = self._params(z0=5.0)
        with pytest.raises(ValueError):
            lg.incident_ray((0.0, 0.0, -5.0), (0.0, 0.0), p)

    @given(st.floats(-500, 500), st.floats(-500, 500), st.floats(-50, 200))
    def test_triangle_bound(self, px, py, depth):
        p = self._params(z0=300.0)
        ray = lg.incident_ray((px, py, depth), (0, 0), p)
        assert ray.distance >= abs(300.0 + depth) - 1e-9
        assert np.linalg.norm(ray.direction) == pytest.approx(1.0, abs=1e-9)


class TestEmissionWeight:
    def test_half_peak(self):
        rng = np.random.default_rng(0)
        for theta_hp in rng.uniform(math.radians(5), math.radians(85), 20):
            assert lg.emission_weight(theta_hp, theta_hp) == pytest.approx(0.5, abs=1e-9)

    def test_on_axis_unity(self):
        assert lg.emission_weight(0.0, 0.7) == 1.0

    def test_sixty_degree_exponent_one(self):
        # cos 60 = 0.5 makes p exactly 1, so the lobe is plain cosine
        hp = math.radians(60.0)
        assert lg.lobe_exponent(hp) == pytest.approx(1.0, abs=1e-12)
        assert lg.emission_weight(math.radians(30.0), hp) == pytest.approx(
            math.cos(math.radians(30.0)), abs=1e-12)

    def test_no_back_emission(self):
        assert lg.emission_weight(math.pi / 2, 0.5) == 0.0
        assert lg.emission_weight(2.5, 0.5) == 0.0

    def test_monotone_in_angle(self):
        thetas = np.linspace(0, math.pi / 2, 200)
        w = lg.emission_weight(thetas, 0.6)
        assert np.all(np.diff(w) <= 1e-15)

    @given(st.floats(0.05, 1.5), st.floats(0.06, 1.55))
    def test_monotone_in_half_peak(self, theta, hp_low):
        hp_high = min(hp_low + 0.01, 1.56)
        w_low = lg.emission_weight(theta, hp_low)
        w_high = lg.emission_weight(theta, hp_high)
        assert w_high >= w_low - 1e-12

    def test_domain_errors(self):
        for hp in (0.0, math.pi / 2, -0.1, 2.0):
            with pytest.raises(ValueError):
                lg.emission_weight(0.3, hp)
