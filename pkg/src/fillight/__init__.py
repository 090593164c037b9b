"""fillight: physically consistent virtual fill light for portraits.

Renders the additive illumination residual of a disk-shaped area lamp
over per-image geometry/material rasters, builds paired training
datasets with planar supervision targets, and serves interactive
previews for human-driven light placement.
"""

from .colorspace import (
    cct_to_chromaticity,
    cct_to_xyz,
    fill_light_rgb,
    linear_to_srgb,
    luminance,
    srgb_to_linear,
    xyz_to_linear_rgb,
)
from .lightgeom import (
    GOLDEN_ANGLE,
    IncidentRay,
    LightParams,
    emission_weight,
    incident_ray,
    lobe_exponent,
    sample_disk,
)
from .planar import PlanarTargets, concat_target, render_planar_targets
from .sampling import SamplingPolicy, derive_rng, sample_offset, sample_params
from .shading import (
    DEFAULT_GAIN,
    FillResidual,
    RenderConfig,
    SceneAssets,
    compose_residual,
    compose_target,
    diffuse_irradiance,
    normalize_reflectance,
    render_fill_light,
    renormalize_normals,
    residual_to_srgb,
    specular_irradiance,
)
from .visibility import VisibilityConfig, soft_visibility, visibility_map

__version__ = "0.1.0"

__all__ = [
    "GOLDEN_ANGLE",
    "DEFAULT_GAIN",
    "FillResidual",
    "IncidentRay",
    "LightParams",
    "PlanarTargets",
    "RenderConfig",
    "SamplingPolicy",
    "SceneAssets",
    "VisibilityConfig",
    "cct_to_chromaticity",
    "cct_to_xyz",
    "compose_residual",
    "compose_target",
    "concat_target",
    "derive_rng",
    "diffuse_irradiance",
    "emission_weight",
    "fill_light_rgb",
    "incident_ray",
    "linear_to_srgb",
    "lobe_exponent",
    "luminance",
    "normalize_reflectance",
    "render_fill_light",
    "render_planar_targets",
    "renormalize_normals",
    "residual_to_srgb",
    "sample_disk",
    "sample_offset",
    "sample_params",
    "soft_visibility",
    "specular_irradiance",
    "srgb_to_linear",
    "visibility_map",
    "xyz_to_linear_rgb",
]
