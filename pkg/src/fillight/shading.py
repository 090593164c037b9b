"""Per-pixel fill-light shading: Monte Carlo irradiance over the emitter
disk, normalized Blinn-Phong speculars, reflectance energy capping, and
assembly of the masked additive residual in linear and sRGB encodings.

The view axis is fixed: the camera sits on the lamp side of the scene,
so in render coordinates (+z from subject toward lamp) the surface-to-
camera direction is (0, 0, 1) and camera-facing normals have n_z > 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .colorspace import fill_light_rgb, linear_to_srgb, luminance, srgb_to_linear
from .lightgeom import LightParams, lobe_exponent, sample_disk
from .visibility import VisibilityConfig

# Reference anchor for the arbitrary radiometric units: a unit-albedo
# flat scene lit on-axis from z0 = 1024 px (full-frame portrait height)
# peaks at linear luminance 0.25, i.e. mid-gray ~0.54 after encoding.
DEFAULT_GAIN = 0.25 * 1024.0 * 1024.0

_REF_NORMAL = np.array([0.0, 0.0, 1.0], dtype=np.float32)


@dataclass
class SceneAssets:
    """Immutable per-image raster bundle driving a render.

    image/albedo/specular are sRGB in [0, 1]; depth is in pixels
    (positive away from the lamp); normals are unit vectors in render
    coordinates (camera-facing means n_z > 0); face_mask is binary.
    coord_scale maps raster cells to full-resolution pixel units so
    downsampled copies keep the same physical geometry.
    """

    image: np.ndarray
    depth: np.ndarray
    normals: np.ndarray
    albedo: np.ndarray
    specular: np.ndarray
    face_mask: np.ndarray
    coord_scale: float = 1.0
    image_id: str = ""
    replaced_normals: int = 0

    def __post_init__(self):
        self.image = _as_raster(self.image, 3, "image")
        self.depth = _as_raster(self.depth, None, "depth")
        self.normals = _as_raster(self.normals, 3, "normals")
        self.albedo = _as_raster(self.albedo, 3, "albedo")
        self.specular = _as_raster(self.specular, 3, "specular")
        self.face_mask = _as_raster(self.face_mask, None, "face_mask")
        shape = self.depth.shape
        for name in ("image", "normals", "albedo", "specular", "face_mask"):
            got = getattr(self, name).shape[:2]
            if got != shape:
                raise ValueError(
                    f"dimension mismatch: {name} is {got}, depth is {shape}")
        if not np.all(np.isfinite(self.depth)):
            raise ValueError("depth contains non-finite values")
        for name in ("image", "albedo", "specular"):
            a = getattr(self, name)
            if a.min() < 0.0 or a.max() > 1.0:
                raise ValueError(f"{name} channels must lie in [0, 1]")
        if not np.all((self.face_mask == 0.0) | (self.face_mask == 1.0)):
            raise ValueError("face_mask must be binary")
        norms = np.linalg.norm(self.normals, axis=-1)
        if np.abs(norms - 1.0).max() > 1e-3:
            raise ValueError("normals must be unit length (renormalize at ingestion)")
        if not self.coord_scale > 0.0:
            raise ValueError("coord_scale must be positive")

    @property
    def height(self) -> int:
        return self.depth.shape[0]

    @property
    def width(self) -> int:
        return self.depth.shape[1]


def _as_raster(a, channels, name):
    a = np.ascontiguousarray(a, dtype=np.float32)
    if channels is None:
        if a.ndim != 2:
            raise ValueError(f"{name} must be a 2D raster, got shape {a.shape}")
    elif a.ndim != 3 or a.shape[2] != channels:
        raise ValueError(f"{name} must be HxWx{channels}, got shape {a.shape}")
    return a


def renormalize_normals(normals: np.ndarray) -> tuple[np.ndarray, int]:
    """Unit-normalize a normal raster, replacing zero vectors.

    Zero-length normals get the camera-facing default (0, 0, 1) in
    render coordinates; returns the fixed raster and the replacement
    count for quality reporting.
    """
    normals = np.asarray(normals, dtype=np.float32)
    norms = np.linalg.norm(normals, axis=-1, keepdims=True)
    bad = norms[..., 0] < 1e-6
    out = np.where(bad[..., None], _REF_NORMAL, normals / np.maximum(norms, 1e-6))
    return np.ascontiguousarray(out, dtype=np.float32), int(bad.sum())


@dataclass(frozen=True)
class RenderConfig:
    """Render-quality knobs shared by the dataset and preview paths."""

    n_samples: int = 2048
    shininess: float = 32.0
    epsilon: float = 1e-4
    visibility: VisibilityConfig = field(default_factory=VisibilityConfig)
    specular_enabled: bool = True
    gain: float = DEFAULT_GAIN

    def __post_init__(self):
        if self.n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        if not self.shininess > 0.0:
            raise ValueError("shininess must be positive")
        if not self.epsilon > 0.0:
            raise ValueError("epsilon must be positive")
        if not self.gain > 0.0:
            raise ValueError("gain must be positive")


@dataclass
class FillResidual:
    """Additive fill-light residual in linear and display encodings."""

    linear: np.ndarray  # (H, W, 3) float32, >= 0, zero outside the mask
    srgb: np.ndarray  # (H, W, 3) float32 in [0, 1], zero outside the mask


def _scalar_fields(scene, params, cfg, want_diffuse, want_specular,
                   samples, skip_unmasked):
    if samples is None:
        samples = sample_disk(params.d_lamp, cfg.n_samples)
    samples = np.asarray(samples, dtype=np.float64)
    ex = np.ascontiguousarray(params.dx + samples[:, 0])
    ey = np.ascontiguousarray(params.dy + samples[:, 1])
    v = cfg.visibility
    return _kernels.shade_scalar_fields(
        scene.depth, scene.normals, scene.face_mask, float(scene.coord_scale),
        ex, ey, float(params.z0), lobe_exponent(params.theta_hp),
        float(cfg.shininess), want_diffuse, want_specular,
        v.enabled, int(v.steps), float(v.jitter_amplitude),
        float(v.occlusion_softness), float(v.bias), int(v.seed),
        int(v.emitter_stride), skip_unmasked)


def _tint(field2d, gain, kelvin):
    rgb = fill_light_rgb(kelvin)
    return (gain * field2d)[:, :, None] * rgb


def diffuse_irradiance(scene: SceneAssets, params: LightParams,
                       cfg: RenderConfig, samples=None) -> np.ndarray:
    """Monte Carlo diffuse irradiance map, linear RGB (H, W, 3).

    Per pixel: gain/N * sum_k c(T) w_k V_k [N.l_k]+ / r_k^2 over the
    emitter disk samples (Fibonacci set by default; pass `samples` to
    override, e.g. for randomized-sampling oracles).
    """
    d, _ = _scalar_fields(scene, params, cfg, True, False, samples, False)
    return _tint(d, cfg.gain, params.kelvin).astype(np.float32)


def specular_irradiance(scene: SceneAssets, params: LightParams,
                        cfg: RenderConfig, samples=None) -> np.ndarray:
    """Normalized Blinn-Phong specular map, linear RGB (H, W, 3).

    Aggregates (n+2)/(2pi) [N.h]+^n over the same per-sample weights as
    the diffuse term (lamp color, emission lobe, visibility, 1/r^2).
    """
    _, s = _scalar_fields(scene, params, cfg, False, True, samples, False)
    return _tint(s, cfg.gain, params.kelvin).astype(np.float32)


def normalize_reflectance(albedo_lin, specular_lin, epsilon: float):
    """Per-pixel reflectance energy cap.

    alpha = min(1, 1/(Y(albedo) + Y(specular) + epsilon)) scales both
    maps, capping the summed luminance at 1 while preserving channel
    ratios exactly. Returns (albedo, specular, alpha).
    """
    if not epsilon > 0.0:
        raise ValueError("epsilon must be positive")
    albedo_lin = np.asarray(albedo_lin, dtype=np.float64)
    specular_lin = np.asarray(specular_lin, dtype=np.float64)
    if np.any(albedo_lin < 0.0) or np.any(specular_lin < 0.0):
        raise ValueError("reflectance maps must be >= 0")
    ysum = luminance(albedo_lin) + luminance(specular_lin)
    alpha = np.minimum(1.0, 1.0 / (ysum + epsilon))
    return albedo_lin * alpha[..., None], specular_lin * alpha[..., None], alpha


def compose_residual(diffuse, specular, albedo_norm, specular_norm, mask):
    """Masked residual: (albedo * E + specular * S) * mask, elementwise."""
    arrays = [np.asarray(a) for a in (diffuse, specular, albedo_norm, specular_norm)]
    mask = np.asarray(mask)
    shape = arrays[0].shape
    if any(a.shape != shape for a in arrays) or mask.shape != shape[:2]:
        raise ValueError(
            "dimension mismatch: "
            + ", ".join(str(a.shape) for a in arrays)
            + f", mask {mask.shape}")
    out = (arrays[2] * arrays[0] + arrays[3] * arrays[1]) * mask[..., None]
    return out.astype(np.float32)


def residual_to_srgb(linear) -> np.ndarray:
    """Display-encode a linear residual (clamping above 1)."""
    return linear_to_srgb(linear).astype(np.float32)


def compose_target(image, residual_srgb, gamma: float) -> np.ndarray:
    """Carrier training target: gamma * image + 0.6 * residual.

    gamma is restricted to [0.2, 0.4], so with residual in [0, 1] the
    target never exceeds 0.4 + 0.6 = 1 and needs no clamp.
    """
    if not (0.2 <= gamma <= 0.4):
        raise ValueError(f"gamma {gamma} outside [0.2, 0.4]")
    image = np.asarray(image, dtype=np.float32)
    residual_srgb = np.asarray(residual_srgb, dtype=np.float32)
    return (np.float32(gamma) * image + np.float32(0.6) * residual_srgb).astype(np.float32)


def render_fill_light(scene: SceneAssets, params: LightParams,
                      cfg: RenderConfig) -> FillResidual:
    """Full fill-light render: emitter sampling through sRGB residual.

    Deterministic for fixed inputs and visibility seed. Pixels outside
    the face mask are skipped (their residual is identically zero).
    """
    d, s = _scalar_fields(scene, params, cfg, True, cfg.specular_enabled,
                          None, True)
    diffuse = _tint(d, cfg.gain, params.kelvin).astype(np.float32)
    if cfg.specular_enabled:
        specular = _tint(s, cfg.gain, params.kelvin).astype(np.float32)
    else:
        specular = np.zeros_like(diffuse)
    albedo_n, specular_n, _ = normalize_reflectance(
        srgb_to_linear(scene.albedo), srgb_to_linear(scene.specular), cfg.epsilon)
    linear = compose_residual(diffuse, specular,
                              albedo_n.astype(np.float32),
                              specular_n.astype(np.float32), scene.face_mask)
    return FillResidual(linear=linear, srgb=residual_to_srgb(linear))
