"""Planar supervision targets: flat-plane irradiance plus direction field.

A geometry-free stand-in for the full render, used as auxiliary
supervision when learning to embed the lamp parameters: the same
emitter-disk integral evaluated over a flat plane at depth zero with
unit normals facing the lamp and no occlusion, paired with the
normalized 2D direction field pointing from the lamp's image-plane
projection to each plane location.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .colorspace import fill_light_rgb
from .lightgeom import LightParams, lobe_exponent, sample_disk
from .shading import DEFAULT_GAIN, RenderConfig

# Square plane window (scene pixels) mapped onto the target resolution;
# wide enough to cover the long-tail lamp offsets (+-1800 px and beyond).
DEFAULT_WINDOW = 4096.0

# The plane integrand is smooth, so far fewer emitter samples suffice
# than for the full render.
DEFAULT_PLANAR_SAMPLES = 512


@dataclass
class PlanarTargets:
    """Planar irradiance map and unit direction field for one lamp.

    The direction field stays float64 so its unit-norm invariant holds
    to 1e-9; persisting to PFM quantizes it to the format's 32 bits.
    """

    irradiance: np.ndarray  # (R, R, 3) float32 linear RGB, >= 0
    direction: np.ndarray  # (R, R, 2) float64 unit vectors
    resolution: int
    window: float = DEFAULT_WINDOW


def render_planar_targets(params: LightParams, resolution: int = 64,
                          cfg: RenderConfig | None = None,
                          window: float = DEFAULT_WINDOW,
                          samples=None) -> PlanarTargets:
    """Evaluate the emitter-disk integral over a flat plane.

    The plane sits at depth 0 spanning a `window`-sized square centered
    on the image origin; normals face the lamp so the Lambert factor is
    l_z, and visibility is identically 1. The direction field is the
    normalized vector from the lamp projection (dx, dy) to each plane
    point, zero only at the singular point itself.
    """
    resolution = int(resolution)
    if resolution < 8:
        raise ValueError("resolution must be >= 8")
    n = cfg.n_samples if cfg is not None else DEFAULT_PLANAR_SAMPLES
    gain = cfg.gain if cfg is not None else DEFAULT_GAIN
    if samples is None:
        samples = sample_disk(params.d_lamp, n)
    samples = np.asarray(samples, dtype=np.float64)
    ex = np.ascontiguousarray(params.dx + samples[:, 0])
    ey = np.ascontiguousarray(params.dy + samples[:, 1])
    field = _kernels.planar_scalar_field(
        resolution, float(window), ex, ey, float(params.z0),
        lobe_exponent(params.theta_hp))
    irradiance = ((gain * field)[:, :, None] * fill_light_rgb(params.kelvin))
    coords = (np.arange(resolution) + 0.5 - resolution / 2.0) * (window / resolution)
    ux, uy = np.meshgrid(coords - params.dx, coords - params.dy)
    norm = np.hypot(ux, uy)
    safe = np.maximum(norm, np.finfo(np.float64).tiny)
    direction = np.stack((ux / safe, uy / safe), axis=-1)
    direction[norm == 0.0] = 0.0
    return PlanarTargets(irradiance=irradiance.astype(np.float32),
                         direction=direction,
                         resolution=resolution, window=float(window))


def concat_target(t: PlanarTargets) -> np.ndarray:
    """Stack irradiance and direction into the 6-channel target.

    Channel order [I.r, I.g, I.b, U.x, U.y, 0]: the constant-zero sixth
    channel doubles as the z component of a 3-channel direction
    encoding, so both documented layouts coincide. Output is float64 so
    both inputs are carried bit-exactly.
    """
    pad = np.zeros((*t.direction.shape[:2], 1))
    return np.concatenate((t.irradiance.astype(np.float64), t.direction, pad),
                          axis=-1)
