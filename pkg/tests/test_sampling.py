import numpy as np
import pytest
from scipy import stats

from fillight.sampling import SamplingPolicy, derive_rng, sample_offset, sample_params


class TestPolicy:
    def test_defaults_valid(self):
        SamplingPolicy()

    def test_json_round_trip_and_digest(self):
        p = SamplingPolicy(offset_core_sigma=500.0)
        q = SamplingPolicy.from_json(p.to_json())
        assert p == q
        assert p.digest() == q.digest()
        assert p.digest() != SamplingPolicy().digest()

    @pytest.mark.parametrize("kwargs", [
        dict(offset_tail_fraction=1.5),
        dict(longtail_param_fraction=-0.1),
        dict(theta_hp_range=(50.0, 20.0)),
        dict(z0_range=(100.0, 100.0)),
        dict(temp_ranges={"warm": (100.0, 4000.0)}),
        dict(temp_ranges={"hot": (3000.0, 4000.0)}),
        dict(longtail_widen=0.5),
    ])
    def test_invalid_policies(self, kwargs):
        with pytest.raises(ValueError):
            SamplingPolicy(**kwargs)


class TestSampleParams:
    def test_reproducible_across_fresh_rngs(self):
        policy = SamplingPolicy()
        a = sample_params(policy, "warm", derive_rng(42, "img7", "warm"))
        b = sample_params(policy, "warm", derive_rng(42, "img7", "warm"))
        c = sample_params(policy, "warm", derive_rng(43, "img7", "warm"))
        assert a == b
        assert a != c

    def test_variant_temperature_containment(self):
        policy = SamplingPolicy()
        rng = derive_rng(0, "containment")
        for variant, (lo, hi) in policy.temp_ranges.items():
            for _ in range(200):
                p = sample_params(policy, variant, rng)
                assert lo <= p.kelvin <= hi

    def test_always_valid(self):
        # LightParams construction revalidates; 1000 draws must pass
        policy = SamplingPolicy(longtail_param_fraction=0.5)
        rng = derive_rng(1, "validity")
        for _ in range(1000):
            sample_params(policy, "cool", rng)

    def test_unknown_variant(self):
        with pytest.raises(ValueError):
            sample_params(SamplingPolicy(), "neon", derive_rng(0))

    def test_offset_coverage_reaches_figure_radii(self):
        policy = SamplingPolicy()
        rng = derive_rng(3, "coverage")
        radii = np.array([np.hypot(*sample_offset(policy, rng))
                          for _ in range(10_000)])
        assert np.quantile(radii, 0.99) >= 1800.0


class TestSampleOffset:
    def test_degenerate_core(self):
        policy = SamplingPolicy(offset_tail_fraction=0.0, offset_core_sigma=1e-9)
        rng = derive_rng(0, "core")
        for _ in range(50):
            dx, dy = sample_offset(policy, rng)
            assert abs(dx) < 1e-6 and abs(dy) < 1e-6

    def test_tail_branch_bounded(self):
        policy = SamplingPolicy(offset_tail_fraction=1.0, offset_tail_range=700.0)
        rng = derive_rng(0, "tail")
        for _ in range(500):
            dx, dy = sample_offset(policy, rng)
            assert np.hypot(dx, dy) <= 700.0

    def test_mixture_is_heavier_tailed_than_core(self):
        policy = SamplingPolicy()
        core_only = SamplingPolicy(offset_tail_fraction=0.0)
        rng_a = derive_rng(5, "mix")
        rng_b = derive_rng(5, "coreonly")
        mix = np.array([np.hypot(*sample_offset(policy, rng_a))
                        for _ in range(100_000)])
        core = np.array([np.hypot(*sample_offset(core_only, rng_b))
                         for _ in range(100_000)])
        assert stats.kurtosis(mix) > stats.kurtosis(core)

    def test_isotropy(self):
        policy = SamplingPolicy()
        rng = derive_rng(11, "isotropy")
        pts = np.array([sample_offset(policy, rng) for _ in range(100_000)])
        dirs = pts / np.linalg.norm(pts, axis=1, keepdims=True)
        assert np.linalg.norm(dirs.mean(axis=0)) < 0.02


def test_policy_hard_bounds_validated():
    with pytest.raises(ValueError):
        SamplingPolicy(theta_hp_range=(0.0, 45.0))
    with pytest.raises(ValueError):
        SamplingPolicy(theta_hp_range=(30.0, 95.0))
    with pytest.raises(ValueError):
        SamplingPolicy(z0_range=(-10.0, 100.0))
