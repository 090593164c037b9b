import numpy as np
import pytest
from hypothesis import HealthCheck, settings

import fillight as fl
from fillight.synthetic import flat_scene

# JIT warmup dominates first-call timings; keep hypothesis relaxed.
settings.register_profile(
    "fillight",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("fillight")


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile every numba kernel once before timing anything."""
    scene = flat_scene(8)
    params = fl.LightParams.from_degrees(5000, 45, 50, 10, 0, 0)
    cfg = fl.RenderConfig(n_samples=4)
    fl.render_fill_light(scene, params, cfg)
    fl.diffuse_irradiance(scene, params, cfg)
    fl.specular_irradiance(scene, params, cfg)
    fl.render_planar_targets(params, resolution=8, cfg=cfg)
    fl.visibility_map(scene.depth, (0.0, 0.0, -50.0), fl.VisibilityConfig())
    fl.soft_visibility((0.0, 0.0, 0.0), (0.0, 0.0, -50.0), scene.depth,
                       fl.VisibilityConfig())


@pytest.fixture
def default_params():
    return fl.LightParams.from_degrees(5000, 45, 2000, 400, 0, 0)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
