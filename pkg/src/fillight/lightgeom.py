"""Emitter-disk geometry: lamp parameters, disk sampling, incident rays.

Coordinate convention used throughout the renderer: image x rightward,
y downward, z increasing from the subject toward the lamp (which sits on
the viewer's side). A pixel at depth D lies at z = -D; the lamp disk
lies in the plane z = +Z0, centered at (dx, dy) relative to the image
center. The disk axis points along -z (toward the scene), so for the
pixel-to-emitter direction l the emission angle is arccos(l_z).

Angles are radians internally; every external boundary (CLI, policy
files, HTTP API) speaks degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .colorspace import KELVIN_MAX, KELVIN_MIN

# 2*pi*(1 - 1/phi): the golden-angle increment written as pi*(3 - sqrt(5)).
GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


@dataclass(frozen=True)
class LightParams:
    """The 6D lamp parameterization controlling every render.

    kelvin: correlated color temperature.
    theta_hp: half-peak angle of the emission lobe, radians, in (0, pi/2).
    z0: light-to-subject distance, pixels (same unit as depth).
    d_lamp: emitter disk diameter, pixels.
    dx, dy: disk-center offset from the image center, pixels.
    """

    kelvin: float
    theta_hp: float
    z0: float
    d_lamp: float
    dx: float
    dy: float

    def __post_init__(self):
        if not (KELVIN_MIN <= self.kelvin <= KELVIN_MAX):
            raise ValueError(f"kelvin {self.kelvin} outside [{KELVIN_MIN}, {KELVIN_MAX}]")
        if not (0.0 < self.theta_hp < math.pi / 2.0):
            raise ValueError(f"theta_hp {self.theta_hp} rad outside (0, pi/2)")
        if not self.z0 > 0.0:
            raise ValueError(f"z0 must be positive, got {self.z0}")
        if not self.d_lamp > 0.0:
            raise ValueError(f"d_lamp must be positive, got {self.d_lamp}")
        if not (math.isfinite(self.dx) and math.isfinite(self.dy)):
            raise ValueError("dx, dy must be finite")

    @property
    def theta_hp_deg(self) -> float:
        return math.degrees(self.theta_hp)

    @classmethod
    def from_degrees(cls, kelvin, theta_hp_deg, z0, d_lamp, dx, dy) -> "LightParams":
        """Construct with the half-peak angle given in degrees."""
        return cls(float(kelvin), math.radians(theta_hp_deg), float(z0),
                   float(d_lamp), float(dx), float(dy))

    def to_dict(self) -> dict:
        """External (degree-based) representation, e.g. for params.json."""
        return {
            "kelvin": self.kelvin,
            "theta_hp_deg": self.theta_hp_deg,
            "z0": self.z0,
            "d_lamp": self.d_lamp,
            "dx": self.dx,
            "dy": self.dy,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LightParams":
        return cls.from_degrees(d["kelvin"], d["theta_hp_deg"], d["z0"],
                                d["d_lamp"], d["dx"], d["dy"])


@dataclass(frozen=True)
class IncidentRay:
    """Pixel-to-emitter geometry for one (pixel, disk sample) pair."""

    direction: np.ndarray  # unit 3-vector, pixel -> emitter
    distance: float
    emit_angle: float  # angle between disk axis and emission direction


def sample_disk(d_lamp: float, n: int) -> np.ndarray:
    """Deterministic Fibonacci-spiral point set on the emitter disk.

    Sample k sits at radius (d_lamp/2)*sqrt((k + 0.5)/n) and angle
    k*pi*(3 - sqrt(5)), giving an approximately area-uniform, bit-stable
    (n, 2) array of disk coordinates relative to the disk center.
    """
    n = int(n)
    if n < 1:
        raise ValueError("sample count must be >= 1")
    if not d_lamp > 0.0:
        raise ValueError("disk diameter must be positive")
    k = np.arange(n, dtype=np.float64)
    r = 0.5 * d_lamp * np.sqrt((k + 0.5) / n)
    theta = k * GOLDEN_ANGLE
    return np.column_stack((r * np.cos(theta), r * np.sin(theta)))


def incident_ray(pixel, sample, params: LightParams) -> IncidentRay:
    """Geometry from a pixel (x, y, depth) to one emitter disk sample.

    The unnormalized vector is (dx + sx - px, dy + sy - py, z0 + depth);
    its z component is the pixel-to-lamp-plane distance. Raises on the
    degenerate case of an emitter coinciding with the pixel.
    """
    px, py, depth = (float(v) for v in pixel)
    sx, sy = (float(v) for v in sample)
    v = np.array([params.dx + sx - px, params.dy + sy - py, params.z0 + depth])
    dist = float(np.linalg.norm(v))
    if dist == 0.0:
        raise ValueError("degenerate geometry: emitter sample coincides with pixel")
    direction = v / dist
    emit_angle = math.acos(max(-1.0, min(1.0, direction[2])))
    return IncidentRay(direction=direction, distance=dist, emit_angle=emit_angle)


def lobe_exponent(theta_hp: float) -> float:
    """Exponent p of the cosine emission lobe, from the half-peak angle.

    p = log(0.5)/log(cos theta_hp), so cos^p(theta_hp) = 0.5 exactly.
    Depends only on theta_hp; computed once per render.
    """
    if not (0.0 < theta_hp < math.pi / 2.0):
        raise ValueError(f"theta_hp {theta_hp} rad outside (0, pi/2)")
    return math.log(0.5) / math.log(math.cos(theta_hp))


def emission_weight(emit_angle, theta_hp: float):
    """Directional emission weight cos^p(theta) in [0, 1].

    Zero at and beyond pi/2 (no back emission). Accepts scalar or array
    emission angles; theta_hp is scalar.
    """
    p = lobe_exponent(theta_hp)
    theta = np.asarray(emit_angle, dtype=np.float64)
    c = np.cos(theta)
    w = np.where(theta < math.pi / 2.0, np.maximum(c, 0.0) ** p, 0.0)
    return w if w.ndim else float(w)
