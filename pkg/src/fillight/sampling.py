"""Randomized 6D lamp-parameter generation for dataset construction.

Each portrait gets three color-temperature variants (warm, white, cool)
drawn from per-variant kelvin ranges; beam angle, distance, and disk
diameter are uniform within physical ranges with a small long-tail
fraction drawn from widened ranges; the image-plane offset follows a
two-component mixture (isotropic Gaussian core plus a wide uniform-disk
tail) so extreme lamp positions stay reachable.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .colorspace import KELVIN_MAX, KELVIN_MIN
from .lightgeom import LightParams

VARIANTS = ("warm", "white", "cool")

POLICY_SCHEMA_VERSION = 1

# Hard physical bounds that widened long-tail ranges are clipped to.
_THETA_HP_BOUNDS = (1.0, 89.0)  # degrees
_MIN_LENGTH = 1.0  # pixels, for z0 and d_lamp


@dataclass(frozen=True)
class SamplingPolicy:
    """Distribution parameters for the 6D lamp sampler.

    Kelvin ranges per variant; theta_hp in degrees; lengths in pixels.
    longtail_param_fraction is the probability that each of theta_hp,
    z0, d_lamp is drawn from a range widened by longtail_widen;
    offset_tail_fraction selects the wide uniform-disk branch of the
    offset mixture.
    """

    temp_ranges: dict = field(default_factory=lambda: {
        "warm": (2700.0, 4200.0),
        "white": (4200.0, 5800.0),
        "cool": (5800.0, 8500.0),
    })
    offset_core_sigma: float = 600.0
    offset_tail_fraction: float = 0.15
    offset_tail_range: float = 2400.0
    theta_hp_range: tuple = (15.0, 70.0)
    z0_range: tuple = (800.0, 4000.0)
    d_lamp_range: tuple = (200.0, 1600.0)
    longtail_param_fraction: float = 0.05
    longtail_widen: float = 2.0

    def __post_init__(self):
        for name in ("offset_tail_fraction", "longtail_param_fraction"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        if self.offset_core_sigma < 0.0:
            raise ValueError("offset_core_sigma must be >= 0")
        if self.offset_tail_range < 0.0:
            raise ValueError("offset_tail_range must be >= 0")
        for name in ("theta_hp_range", "z0_range", "d_lamp_range"):
            lo, hi = getattr(self, name)
            if not lo < hi:
                raise ValueError(f"{name} must satisfy min < max, got ({lo}, {hi})")
        if not (0.0 < self.theta_hp_range[0] and self.theta_hp_range[1] < 90.0):
            raise ValueError("theta_hp_range must lie inside (0, 90) degrees")
        for name in ("z0_range", "d_lamp_range"):
            if getattr(self, name)[0] <= 0.0:
                raise ValueError(f"{name} must be positive")
        for variant, (lo, hi) in self.temp_ranges.items():
            if variant not in VARIANTS:
                raise ValueError(f"unknown variant {variant!r}")
            if not (KELVIN_MIN <= lo < hi <= KELVIN_MAX):
                raise ValueError(
                    f"temp range for {variant} must lie inside "
                    f"[{KELVIN_MIN}, {KELVIN_MAX}] with min < max")
        if self.longtail_widen < 1.0:
            raise ValueError("longtail_widen must be >= 1")

    def to_json(self) -> str:
        doc = {"schema_version": POLICY_SCHEMA_VERSION, **asdict(self)}
        return json.dumps(doc, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "SamplingPolicy":
        doc = json.loads(text)
        version = doc.pop("schema_version", POLICY_SCHEMA_VERSION)
        if version != POLICY_SCHEMA_VERSION:
            raise ValueError(f"unsupported policy schema version {version}")
        doc["temp_ranges"] = {k: tuple(v) for k, v in doc["temp_ranges"].items()}
        for name in ("theta_hp_range", "z0_range", "d_lamp_range"):
            doc[name] = tuple(doc[name])
        return cls(**doc)

    def digest(self) -> str:
        """Stable short hash for provenance records."""
        return hashlib.sha256(self.to_json().encode()).hexdigest()[:16]


def derive_rng(seed: int, *scope) -> np.random.Generator:
    """Independent generator for a (seed, scope...) combination.

    Scope parts (image ids, variant names, draw indices) are hashed so
    each worker owns an unrelated stream; the same tuple always yields
    the same stream.
    """
    tag = hashlib.sha256("/".join(str(s) for s in scope).encode()).digest()[:8]
    return np.random.default_rng(
        np.random.SeedSequence((int(seed), int.from_bytes(tag, "little"))))


def sample_offset(policy: SamplingPolicy, rng: np.random.Generator) -> tuple[float, float]:
    """Draw a lamp offset from the core/tail mixture.

    Core branch: isotropic Gaussian with scale offset_core_sigma.
    Tail branch (probability offset_tail_fraction): uniform over a disk
    of radius offset_tail_range. Both branches are angle-uniform.
    """
    if rng.random() < policy.offset_tail_fraction:
        radius = policy.offset_tail_range * math.sqrt(rng.random())
        angle = rng.uniform(0.0, 2.0 * math.pi)
        return radius * math.cos(angle), radius * math.sin(angle)
    dx, dy = rng.normal(0.0, policy.offset_core_sigma, size=2)
    return float(dx), float(dy)


def _maybe_widened(rng, base, fraction, widen, bounds):
    lo, hi = base
    if rng.random() < fraction:
        half = 0.5 * (hi - lo) * widen
        mid = 0.5 * (lo + hi)
        lo, hi = mid - half, mid + half
    lo = max(lo, bounds[0])
    hi = min(hi, bounds[1])
    return rng.uniform(lo, hi)


def sample_params(policy: SamplingPolicy, variant: str,
                  rng: np.random.Generator) -> LightParams:
    """Draw one valid LightParams for a temperature variant.

    Draw order is fixed (T, theta_hp, z0, d_lamp, offset) so a given
    (seed, policy, variant) always produces the same parameters.
    """
    if variant not in policy.temp_ranges:
        raise ValueError(f"unknown variant {variant!r}; "
                         f"policy defines {sorted(policy.temp_ranges)}")
    for _ in range(100):
        kelvin = rng.uniform(*policy.temp_ranges[variant])
        theta_deg = _maybe_widened(rng, policy.theta_hp_range,
                                   policy.longtail_param_fraction,
                                   policy.longtail_widen, _THETA_HP_BOUNDS)
        z0 = _maybe_widened(rng, policy.z0_range,
                            policy.longtail_param_fraction,
                            policy.longtail_widen, (_MIN_LENGTH, math.inf))
        d_lamp = _maybe_widened(rng, policy.d_lamp_range,
                                policy.longtail_param_fraction,
                                policy.longtail_widen, (_MIN_LENGTH, math.inf))
        dx, dy = sample_offset(policy, rng)
        try:
            return LightParams.from_degrees(kelvin, theta_deg, z0, d_lamp, dx, dy)
        except ValueError:
            continue  # clipped ranges make this unreachable in practice
    raise RuntimeError("could not draw valid LightParams after 100 attempts")
