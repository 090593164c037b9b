"""Dataset factory: scene ingestion, quality control, paired records.

On-disk contract (all rasters share one resolution per image):

    <input_root>/<image_id>/
        image.png      8-bit sRGB portrait (the "before" image)
        depth.pfm      1-channel float depth, pixels, increasing away
                       from the camera/lamp
        normal.pfm     3-channel float normals, screen convention
                       (camera-facing z < 0; flipped at ingestion)
        albedo.png     8-bit sRGB diffuse reflectance
        specular.png   8-bit sRGB specular coefficient
        mask.png       8-bit grayscale face mask, binarized at 127
        scene.json     optional sidecar: {"coord_scale": s} maps raster
                       cells to s full-resolution pixels (desk-scale
                       synthetic scenes)

    <output_root>/<image_id>/<variant>/
        input.png      untouched original (plus input_dark.png with
                       --darken)
        target.png     carrier target gamma*I + 0.6*residual
        residual.png   sRGB-encoded residual
        residual.pfm   linear residual, float
        params.json    lamp parameters (degrees), gamma, provenance

    <output_root>/manifest.jsonl   one record per attempted (image,
                                   variant), sorted, no timestamps
    <output_root>/summary.json     counts by verdict
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np
from PIL import Image

from . import __version__ as RENDERER_VERSION
from .lightgeom import LightParams
from .pfm import read_pfm, write_pfm
from .sampling import SamplingPolicy, VARIANTS, derive_rng, sample_params
from .shading import (
    FillResidual,
    RenderConfig,
    SceneAssets,
    compose_target,
    render_fill_light,
    renormalize_normals,
)

ASSET_FILES = {
    "image": "image.png",
    "depth": "depth.pfm",
    "normal": "normal.pfm",
    "albedo": "albedo.png",
    "specular": "specular.png",
    "mask": "mask.png",
}

WORKERS_ENV_VAR = "FILLIGHT_WORKERS"


class SceneLoadError(Exception):
    """Base for ingestion failures; `code` names the failure class."""

    code = "load-error"


class MissingAssetError(SceneLoadError):
    code = "missing-asset"


class AssetDecodeError(SceneLoadError):
    code = "undecodable-asset"


class DimensionMismatchError(SceneLoadError):
    code = "dimension-mismatch"


def _read_png(path: Path, mode: str) -> np.ndarray:
    try:
        with Image.open(path) as im:
            return np.asarray(im.convert(mode), dtype=np.float32) / 255.0
    except OSError as e:
        raise AssetDecodeError(f"cannot decode {path.name}: {e}") from e


def load_scene(root: str | os.PathLike, image_id: str,
               depth_scale: float = 1.0, flip_normal_z: bool = True) -> SceneAssets:
    """Load and validate one scene-asset bundle.

    depth_scale rescales the (estimator-specific) depth unit to pixels.
    Normal maps use the screen convention with z pointing into the
    scene; flip_normal_z maps them into render coordinates. Zero-length
    normals are replaced with the camera-facing default and counted.
    """
    scene_dir = Path(root) / image_id
    paths = {k: scene_dir / v for k, v in ASSET_FILES.items()}
    missing = [v.name for v in paths.values() if not v.is_file()]
    if missing:
        raise MissingAssetError(f"scene {image_id}: missing {', '.join(missing)}")

    coord_scale = 1.0
    sidecar = scene_dir / "scene.json"
    if sidecar.is_file():
        try:
            coord_scale = float(json.loads(sidecar.read_text())
                                .get("coord_scale", 1.0))
        except (ValueError, json.JSONDecodeError) as e:
            raise AssetDecodeError(f"scene {image_id}: bad scene.json: {e}") from e

    image = _read_png(paths["image"], "RGB")
    albedo = _read_png(paths["albedo"], "RGB")
    specular = _read_png(paths["specular"], "RGB")
    mask = (_read_png(paths["mask"], "L") > 127.0 / 255.0).astype(np.float32)
    try:
        depth = read_pfm(paths["depth"])
        normals = read_pfm(paths["normal"])
    except ValueError as e:
        raise AssetDecodeError(f"scene {image_id}: {e}") from e
    if depth.ndim != 2:
        raise AssetDecodeError(f"scene {image_id}: depth.pfm must be 1-channel")
    if normals.ndim != 3:
        raise AssetDecodeError(f"scene {image_id}: normal.pfm must be 3-channel")

    shape = image.shape[:2]
    for name, arr in (("depth", depth), ("normal", normals), ("albedo", albedo),
                      ("specular", specular), ("mask", mask)):
        if arr.shape[:2] != shape:
            raise DimensionMismatchError(
                f"scene {image_id}: {name} is {arr.shape[:2]}, image is {shape}")
    if not np.all(np.isfinite(depth)):
        raise AssetDecodeError(f"scene {image_id}: depth contains non-finite values")

    if flip_normal_z:
        normals = normals * np.array([1.0, 1.0, -1.0], dtype=np.float32)
    normals, replaced = renormalize_normals(normals)
    return SceneAssets(
        image=image,
        depth=depth * np.float32(depth_scale),
        normals=normals,
        albedo=albedo,
        specular=specular,
        face_mask=mask,
        coord_scale=coord_scale,
        image_id=image_id,
        replaced_normals=replaced,
    )


@dataclass(frozen=True)
class QualityThresholds:
    min_mask_coverage: float = 0.02
    min_residual_energy: float = 1e-4
    max_residual_energy: float = 1.5


@dataclass
class QualityReport:
    """Per-sample quality verdict with the measurements behind it."""

    mask_coverage: float
    residual_energy: float
    nan_count: int
    replaced_normals: int
    passed: bool
    reason: str  # "ok", "failed-segmentation", "invalid-render",
    #              "residual-out-of-range"

    def to_dict(self) -> dict:
        return asdict(self)


def quality_check(scene: SceneAssets, res: FillResidual,
                  thresholds: QualityThresholds = QualityThresholds()) -> QualityReport:
    """Deterministic filter for failed segmentation or invalid renders."""
    coverage = float(scene.face_mask.mean())
    finite = np.isfinite(res.linear)
    nan_count = int(res.linear.size - finite.sum())
    masked = scene.face_mask > 0.0
    if masked.any() and nan_count == 0:
        lum = res.linear[masked] @ np.array([0.2126, 0.7152, 0.0722], dtype=np.float32)
        energy = float(lum.mean())
    else:
        energy = 0.0
    if nan_count > 0:
        passed, reason = False, "invalid-render"
    elif coverage < thresholds.min_mask_coverage:
        passed, reason = False, "failed-segmentation"
    elif not (thresholds.min_residual_energy <= energy
              <= thresholds.max_residual_energy):
        passed, reason = False, "residual-out-of-range"
    else:
        passed, reason = True, "ok"
    return QualityReport(mask_coverage=coverage, residual_energy=energy,
                         nan_count=nan_count,
                         replaced_normals=scene.replaced_normals,
                         passed=passed, reason=reason)


@dataclass
class Provenance:
    image_id: str
    variant: str
    seed: int
    policy_digest: str
    renderer_version: str = RENDERER_VERSION

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class PairedRecord:
    """One persisted training sample: before image, target, residual."""

    input_image: np.ndarray
    target_image: np.ndarray
    residual: FillResidual
    params: LightParams
    gamma: float
    provenance: Provenance


def generate_pair(scene: SceneAssets, params: LightParams, gamma: float,
                  cfg: RenderConfig, provenance: Provenance) -> PairedRecord:
    """Render one residual and compose the paired training sample."""
    residual = render_fill_light(scene, params, cfg)
    target = compose_target(scene.image, residual.srgb, gamma)
    return PairedRecord(input_image=scene.image, target_image=target,
                        residual=residual, params=params, gamma=gamma,
                        provenance=provenance)


def _save_png(path: Path, arr: np.ndarray) -> None:
    data = np.clip(np.rint(np.asarray(arr, dtype=np.float32) * 255.0), 0, 255)
    Image.fromarray(data.astype(np.uint8)).save(path)


def persist_record(record: PairedRecord, out_dir: str | os.PathLike,
                   report: QualityReport, darken: bool = False) -> list[str]:
    """Write one record's rasters and params; returns the file names."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _save_png(out / "input.png", record.input_image)
    if darken:
        _save_png(out / "input_dark.png", record.gamma * record.input_image)
    _save_png(out / "target.png", record.target_image)
    _save_png(out / "residual.png", record.residual.srgb)
    write_pfm(out / "residual.pfm", record.residual.linear)
    doc = {
        "params": record.params.to_dict(),
        "gamma": record.gamma,
        "provenance": record.provenance.to_dict(),
        "quality": report.to_dict(),
    }
    (out / "params.json").write_text(json.dumps(doc, indent=2, sort_keys=True))
    files = ["input.png", "target.png", "residual.png", "residual.pfm",
             "params.json"]
    if darken:
        files.insert(1, "input_dark.png")
    return files


@dataclass
class DatasetSummary:
    attempted: int = 0
    passed: int = 0
    failed: int = 0
    by_reason: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def list_scene_ids(input_root: str | os.PathLike) -> list[str]:
    root = Path(input_root)
    if not root.is_dir():
        raise FileNotFoundError(f"input root {root} is not a directory")
    return sorted(p.name for p in root.iterdir() if p.is_dir())


def _process_image(image_id, input_root, output_root, policy, seed, variants,
                   cfg, thresholds, depth_scale, darken):
    """All variants of one image; failures stay contained to the image."""
    lines = []
    try:
        scene = load_scene(input_root, image_id, depth_scale=depth_scale)
    except SceneLoadError as e:
        for variant in variants:
            lines.append({"image_id": image_id, "variant": variant,
                          "verdict": "fail", "reason": e.code,
                          "error": str(e)})
        return lines
    for variant in variants:
        try:
            rng = derive_rng(seed, image_id, variant)
            params = sample_params(policy, variant, rng)
            gamma = float(rng.uniform(0.2, 0.4))
            vis_seed = int(rng.integers(0, 2**63 - 1))
            run_cfg = replace(cfg, visibility=replace(cfg.visibility,
                                                      seed=vis_seed))
            provenance = Provenance(image_id=image_id, variant=variant,
                                    seed=seed, policy_digest=policy.digest())
            record = generate_pair(scene, params, gamma, run_cfg, provenance)
            report = quality_check(scene, record.residual, thresholds)
            line = {"image_id": image_id, "variant": variant,
                    "verdict": "pass" if report.passed else "fail",
                    "reason": report.reason,
                    "params": params.to_dict(), "gamma": gamma,
                    "quality": report.to_dict()}
            if report.passed:
                out_dir = Path(output_root) / image_id / variant
                names = persist_record(record, out_dir, report, darken=darken)
                line["paths"] = [f"{image_id}/{variant}/{n}" for n in names]
            lines.append(line)
        except Exception as e:  # isolate render faults per variant
            lines.append({"image_id": image_id, "variant": variant,
                          "verdict": "fail", "reason": "invalid-render",
                          "error": f"{type(e).__name__}: {e}"})
    return lines


def run_dataset(input_root, output_root, policy: SamplingPolicy | None = None,
                seed: int = 0, variants=VARIANTS,
                cfg: RenderConfig | None = None,
                thresholds: QualityThresholds = QualityThresholds(),
                depth_scale: float = 1.0, darken: bool = False,
                workers: int | None = None) -> DatasetSummary:
    """Render the paired dataset for every scene under input_root.

    Per-image failures are recorded in the manifest and never abort the
    batch. The manifest is sorted by (image_id, variant) and carries no
    timestamps, so reruns with the same seed are byte-identical.
    """
    policy = policy or SamplingPolicy()
    cfg = cfg or RenderConfig()
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV_VAR, "1"))
    workers = max(1, workers)
    ids = list_scene_ids(input_root)
    out_root = Path(output_root)
    out_root.mkdir(parents=True, exist_ok=True)

    def job(image_id):
        return _process_image(image_id, input_root, output_root, policy, seed,
                              variants, cfg, thresholds, depth_scale, darken)

    if workers == 1:
        results = [job(i) for i in ids]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(job, ids))

    lines = sorted((l for chunk in results for l in chunk),
                   key=lambda l: (l["image_id"], l["variant"]))
    with open(out_root / "manifest.jsonl", "w") as f:
        for line in lines:
            f.write(json.dumps(line, sort_keys=True) + "\n")

    summary = DatasetSummary()
    for line in lines:
        summary.attempted += 1
        if line["verdict"] == "pass":
            summary.passed += 1
        else:
            summary.failed += 1
        summary.by_reason[line["reason"]] = \
            summary.by_reason.get(line["reason"], 0) + 1
    (out_root / "summary.json").write_text(
        json.dumps(summary.to_dict(), indent=2, sort_keys=True))
    return summary


def save_scene(scene: SceneAssets, root: str | os.PathLike,
               image_id: str | None = None) -> Path:
    """Write a SceneAssets bundle in the input-directory layout.

    The inverse of load_scene for synthetic data: normals go out in the
    screen convention (z flipped), PNGs are 8-bit quantized.
    """
    image_id = image_id or scene.image_id or "scene"
    scene_dir = Path(root) / image_id
    scene_dir.mkdir(parents=True, exist_ok=True)
    _save_png(scene_dir / "image.png", scene.image)
    _save_png(scene_dir / "albedo.png", scene.albedo)
    _save_png(scene_dir / "specular.png", scene.specular)
    mask = (scene.face_mask * 255.0).astype(np.uint8)
    Image.fromarray(mask, mode="L").save(scene_dir / "mask.png")
    write_pfm(scene_dir / "depth.pfm", scene.depth)
    write_pfm(scene_dir / "normal.pfm",
              scene.normals * np.array([1.0, 1.0, -1.0], dtype=np.float32))
    if scene.coord_scale != 1.0:
        (scene_dir / "scene.json").write_text(
            json.dumps({"coord_scale": scene.coord_scale}))
    return scene_dir
