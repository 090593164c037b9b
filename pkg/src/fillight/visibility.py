"""Screen-space soft visibility between pixels and emitter samples.

With only a depth buffer and no mesh, occlusion is estimated by
marching the image-space segment from a pixel toward an emitter sample,
comparing the ray's interpolated depth against the bilinearly sampled
depth raster at every step, and accumulating continuous per-step
occlusion probabilities into a transmittance product. Step positions
carry a small deterministic jitter to break banding.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels


@dataclass(frozen=True)
class VisibilityConfig:
    """Ray-march parameters for the soft visibility estimate.

    steps: march samples per ray (endpoints excluded).
    jitter_amplitude: per-step jitter window as a fraction of one step
        length, in [0, 1); displacement is at most half the window.
    occlusion_softness: depth difference (pixels) over which the
        occlusion probability ramps from 0 to 1.
    bias: depth bias (pixels) subtracted before the occlusion test, to
        suppress self-occlusion near the surface.
    seed: jitter hash seed.
    emitter_stride: quality knob; when > 1, visibility is evaluated on
        every stride-th emitter sample and reused for the ones between.
    enabled: when False, shading assumes V = 1 everywhere.
    """

    steps: int = 24
    jitter_amplitude: float = 0.5
    occlusion_softness: float = 8.0
    bias: float = 1.0
    seed: int = 0
    emitter_stride: int = 1
    enabled: bool = True

    def __post_init__(self):
        if self.steps < 2:
            raise ValueError("steps must be >= 2")
        if not (0.0 <= self.jitter_amplitude < 1.0):
            raise ValueError("jitter_amplitude must lie in [0, 1)")
        if not self.occlusion_softness > 0.0:
            raise ValueError("occlusion_softness must be positive")
        if self.bias < 0.0:
            raise ValueError("bias must be >= 0")
        if self.emitter_stride < 1:
            raise ValueError("emitter_stride must be >= 1")


def soft_visibility(pixel, emitter, depth: np.ndarray, cfg: VisibilityConfig,
                    coord_scale: float = 1.0, sample_index: int = 0) -> float:
    """Soft visibility in [0, 1] between one pixel and one emitter point.

    `pixel` and `emitter` are (x, y, depth) triples in scene units
    (emitter depth is -z0 for a lamp at distance z0). The jitter stream
    is keyed by the pixel's raster cell and `sample_index`, matching
    what the full render uses for emitter sample `sample_index`.
    """
    px, py, pd = (float(v) for v in pixel)
    ex, ey, ed = (float(v) for v in emitter)
    if not all(np.isfinite([px, py, pd, ex, ey, ed])):
        raise ValueError("pixel and emitter coordinates must be finite")
    if ed > pd:
        raise ValueError("emitter must not lie behind the pixel (depth axis)")
    depth = np.ascontiguousarray(depth, dtype=np.float32)
    h, w = depth.shape
    col = int(round(px / coord_scale + 0.5 * w - 0.5))
    row = int(round(py / coord_scale + 0.5 * h - 0.5))
    pix_id = row * w + col
    return float(_kernels.soft_visibility_scalar(
        px, py, pd, ex, ey, ed, depth, float(coord_scale),
        int(cfg.steps), float(cfg.jitter_amplitude),
        float(cfg.occlusion_softness), float(cfg.bias),
        pix_id, int(sample_index), int(cfg.seed)))


def visibility_map(depth: np.ndarray, emitter, cfg: VisibilityConfig,
                   coord_scale: float = 1.0, sample_index: int = 0) -> np.ndarray:
    """Visibility of every raster pixel toward a single emitter point.

    Pixels take their own raster depth as ray origin; returns an (H, W)
    float64 map. `sample_index` selects the jitter stream, matching the
    full render's per-emitter-sample streams. Used by the shadow-edge
    diagnostics and tests.
    """
    depth = np.ascontiguousarray(depth, dtype=np.float32)
    ex, ey, ed = (float(v) for v in emitter)
    return _kernels.visibility_map(
        depth, float(coord_scale), ex, ey, ed, int(cfg.steps),
        float(cfg.jitter_amplitude), float(cfg.occlusion_softness),
        float(cfg.bias), int(cfg.seed), int(sample_index))
