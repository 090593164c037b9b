"""Color math for the fill-light renderer.

Everything downstream shades in linear RGB: material maps arrive
display-encoded (sRGB), lamp chromaticity arrives as a correlated color
temperature in kelvin, and the rendered residual leaves as sRGB again.
This module holds the three conversions (transfer functions, CCT ->
chromaticity -> XYZ, XYZ -> linear sRGB) plus the linear-RGB luminance
operator used by the reflectance energy cap.

Functions accept scalars or numpy arrays; color arrays are channel-last.
All arithmetic is float64; callers store rasters as float32.
"""

from __future__ import annotations

import numpy as np

# Validity range of the CCT chromaticity polynomial (kelvin).
KELVIN_MIN = 1667.0
KELVIN_MAX = 25000.0

# Rec.709 / sRGB luminance weights for linear RGB.
LUMA_WEIGHTS = np.array([0.2126, 0.7152, 0.0722])

# XYZ -> linear sRGB, D65 white point (IEC 61966-2-1).
XYZ_TO_RGB = np.array(
    [
        [3.2404542, -1.5371385, -0.4985314],
        [-0.9692660, 1.8760108, 0.0415560],
        [0.0556434, -0.2040259, 1.0572252],
    ]
)

_SRGB_LINEAR_THRESHOLD = 0.04045
_LINEAR_SRGB_THRESHOLD = 0.0031308


def srgb_to_linear(c):
    """Decode display-encoded sRGB in [0, 1] to linear RGB.

    Piecewise inverse transfer function: c/12.92 below the 0.04045 knee,
    ((c + 0.055)/1.055)^2.4 above. Raises ValueError on out-of-range
    input rather than clamping.
    """
    c = np.asarray(c, dtype=np.float64)
    if np.any(c < 0.0) or np.any(c > 1.0) or not np.all(np.isfinite(c)):
        raise ValueError("sRGB values must lie in [0, 1]")
    low = c <= _SRGB_LINEAR_THRESHOLD
    out = np.where(low, c / 12.92, ((c + 0.055) / 1.055) ** 2.4)
    return out if out.ndim else float(out)


def linear_to_srgb(c):
    """Encode non-negative linear RGB as sRGB in [0, 1].

    Exact inverse of :func:`srgb_to_linear` on [0, 1]. Values above 1
    are clamped to 1 before encoding (additive light residuals may
    exceed display range); negative input raises ValueError.
    """
    c = np.asarray(c, dtype=np.float64)
    if np.any(c < 0.0) or not np.all(np.isfinite(c)):
        raise ValueError("linear RGB values must be >= 0 and finite")
    c = np.minimum(c, 1.0)
    low = c <= _LINEAR_SRGB_THRESHOLD
    # written as 1 + 1.055*(x - 1) so the clamp endpoint encodes to
    # exactly 1.0 (1.055 - 0.055 rounds a ulp short of 1 in float64)
    out = np.where(low, c * 12.92, 1.0 + 1.055 * (c ** (1.0 / 2.4) - 1.0))
    return out if out.ndim else float(out)


def luminance(rgb):
    """Linear-RGB luminance: 0.2126 r + 0.7152 g + 0.0722 b.

    `rgb` is channel-last; returns an array with the channel axis
    reduced (or a float for a single color).
    """
    rgb = np.asarray(rgb, dtype=np.float64)
    out = rgb @ LUMA_WEIGHTS
    return out if np.ndim(out) else float(out)


def cct_to_xyz(kelvin: float) -> np.ndarray:
    """Map a correlated color temperature to XYZ with Y normalized to 1.

    Chromaticity (x, y) comes from the cubic-spline approximation of the
    Planckian locus (Kang et al. 2002), valid on [1667, 25000] K, then is
    lifted to tristimulus via X = x/y, Y = 1, Z = (1 - x - y)/y.
    """
    x, y = cct_to_chromaticity(kelvin)
    return np.array([x / y, 1.0, (1.0 - x - y) / y])


def cct_to_chromaticity(kelvin: float) -> tuple[float, float]:
    """CIE 1931 (x, y) chromaticity of a blackbody at `kelvin`."""
    t = float(kelvin)
    if not (KELVIN_MIN <= t <= KELVIN_MAX):
        raise ValueError(
            f"color temperature {t} K outside valid range "
            f"[{KELVIN_MIN:.0f}, {KELVIN_MAX:.0f}] K"
        )
    inv = 1e3 / t
    if t <= 4000.0:
        x = ((-0.2661239 * inv - 0.2343589) * inv + 0.8776956) * inv + 0.179910
    else:
        x = ((-3.0258469 * inv + 2.1070379) * inv + 0.2226347) * inv + 0.240390
    if t <= 2222.0:
        y = ((-1.1063814 * x - 1.34811020) * x + 2.18555832) * x - 0.20219683
    elif t <= 4000.0:
        y = ((-0.9549476 * x - 1.37418593) * x + 2.09137015) * x - 0.16748867
    else:
        y = ((3.0817580 * x - 5.87338670) * x + 3.75112997) * x - 0.37001483
    return x, y


def xyz_to_linear_rgb(xyz):
    """XYZ -> linear sRGB (D65 primaries), channel-last.

    Out-of-gamut negative channels are clamped to 0: the renderer treats
    colors as additive light, and negative light is unphysical.
    """
    xyz = np.asarray(xyz, dtype=np.float64)
    rgb = xyz @ XYZ_TO_RGB.T
    return np.maximum(rgb, 0.0)


def fill_light_rgb(kelvin: float) -> np.ndarray:
    """Linear-RGB lamp color for a CCT, renormalized to luminance 1.

    The gamut clamp in :func:`xyz_to_linear_rgb` can shift luminance
    slightly off the Y = 1 of :func:`cct_to_xyz`; renormalizing keeps
    the temperature purely chromatic so render intensity is carried
    entirely by the geometric terms.
    """
    rgb = xyz_to_linear_rgb(cct_to_xyz(kelvin))
    return rgb / luminance(rgb)
