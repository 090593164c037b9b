"""HTTP preview service for interactive light placement.

Endpoints (JSON in, binary image out):

    POST /scenes                   register a zip of the six asset files
    POST /scenes/{id}/render       composited preview (original + residual)
    GET  /scenes/{id}/residual     residual alone, PNG or PFM
    GET  /scenes/{id}/original     the (possibly downsampled) original
    GET  /healthz                  liveness + scene count

Scene ids are content hashes, so registration is idempotent. Renders
never mutate scene state and use a fixed jitter seed, so identical
requests give byte-identical responses, concurrent or not.
"""

from __future__ import annotations

import hashlib
import io
import json
import os
import tempfile
import threading
import time
import zipfile
from collections import OrderedDict
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path

import numpy as np
from PIL import Image

from fastapi import FastAPI, HTTPException, Query, Request, Response
from pydantic import BaseModel, Field

from .colorspace import KELVIN_MAX, KELVIN_MIN, linear_to_srgb
from .lightgeom import LightParams
from .pfm import write_pfm
from .pipeline import ASSET_FILES, SceneLoadError, load_scene
from .shading import RenderConfig, SceneAssets, compose_target, render_fill_light
from .visibility import VisibilityConfig

PREVIEW_LEVELS = (128, 256)


def _resize_raster(arr: np.ndarray, size: tuple[int, int]) -> np.ndarray:
    """Bilinear float resize, channel by channel; size is (W, H)."""
    if arr.ndim == 2:
        im = Image.fromarray(np.asarray(arr, dtype=np.float32), mode="F")
        return np.asarray(im.resize(size, Image.BILINEAR), dtype=np.float32)
    return np.stack([_resize_raster(arr[..., c], size)
                     for c in range(arr.shape[2])], axis=-1)


def downsample_scene(scene: SceneAssets, max_dim: int) -> SceneAssets:
    """Geometry-preserving downsample: coord_scale absorbs the factor."""
    h, w = scene.height, scene.width
    if max(h, w) <= max_dim:
        return scene
    k = max_dim / max(h, w)
    nw, nh = max(1, round(w * k)), max(1, round(h * k))
    size = (nw, nh)
    normals = _resize_raster(scene.normals, size)
    norm = np.linalg.norm(normals, axis=-1, keepdims=True)
    normals = normals / np.maximum(norm, 1e-6)
    clip01 = lambda a: np.clip(_resize_raster(a, size), 0.0, 1.0)
    return SceneAssets(
        image=clip01(scene.image),
        depth=_resize_raster(scene.depth, size),
        normals=normals.astype(np.float32),
        albedo=clip01(scene.albedo),
        specular=clip01(scene.specular),
        face_mask=(_resize_raster(scene.face_mask, size) > 0.5).astype(np.float32),
        coord_scale=scene.coord_scale * w / nw,
        image_id=scene.image_id,
        replaced_normals=scene.replaced_normals,
    )


@dataclass
class SceneHandle:
    """A registered scene with its precomputed preview pyramid."""

    scene_id: str
    assets: SceneAssets
    levels: dict = field(default_factory=dict)

    @classmethod
    def build(cls, scene_id: str, assets: SceneAssets) -> "SceneHandle":
        levels = {lvl: downsample_scene(assets, lvl) for lvl in PREVIEW_LEVELS}
        return cls(scene_id=scene_id, assets=assets, levels=levels)

    def at_quality(self, quality: "Quality") -> SceneAssets:
        if quality is Quality.preview:
            return self.levels[min(PREVIEW_LEVELS)]
        return self.assets


class SceneStore:
    """Thread-safe LRU map of scene handles."""

    def __init__(self, max_scenes: int = 16):
        self.max_scenes = max_scenes
        self._scenes: OrderedDict[str, SceneHandle] = OrderedDict()
        self._lock = threading.Lock()

    def put(self, handle: SceneHandle) -> None:
        with self._lock:
            self._scenes[handle.scene_id] = handle
            self._scenes.move_to_end(handle.scene_id)
            while len(self._scenes) > self.max_scenes:
                self._scenes.popitem(last=False)

    def get(self, scene_id: str) -> SceneHandle | None:
        with self._lock:
            handle = self._scenes.get(scene_id)
            if handle is not None:
                self._scenes.move_to_end(scene_id)
            return handle

    def __len__(self) -> int:
        with self._lock:
            return len(self._scenes)


class Quality(str, Enum):
    preview = "preview"
    full = "full"


class ParamsModel(BaseModel):
    """Lamp parameters at the HTTP boundary (degrees for the beam angle)."""

    kelvin: float = Field(ge=KELVIN_MIN, le=KELVIN_MAX)
    theta_hp_deg: float = Field(gt=0.0, lt=90.0)
    z0: float = Field(gt=0.0)
    d_lamp: float = Field(gt=0.0)
    dx: float = 0.0
    dy: float = 0.0

    def to_params(self) -> LightParams:
        return LightParams.from_degrees(self.kelvin, self.theta_hp_deg,
                                        self.z0, self.d_lamp, self.dx, self.dy)


class RenderRequestModel(BaseModel):
    params: ParamsModel
    quality: Quality = Quality.preview
    gamma: float | None = Field(default=None, ge=0.2, le=0.4)
    strength: float = Field(default=1.0, ge=0.0)


def _png_bytes(arr: np.ndarray) -> bytes:
    data = np.clip(np.rint(np.asarray(arr, dtype=np.float32) * 255.0), 0, 255)
    buf = io.BytesIO()
    Image.fromarray(data.astype(np.uint8)).save(buf, format="PNG")
    return buf.getvalue()


def hash_scene_payload(members: dict[str, bytes]) -> str:
    digest = hashlib.sha256()
    for name in sorted(members):
        digest.update(name.encode())
        digest.update(len(members[name]).to_bytes(8, "little"))
        digest.update(members[name])
    return digest.hexdigest()[:24]


def create_app(assets_dir: str | None = None, max_scenes: int = 16,
               preview_samples: int = 256, full_samples: int = 2048,
               max_payload_bytes: int = 64 * 1024 * 1024,
               render_workers: int | None = None) -> FastAPI:
    """Build the preview service application.

    `assets_dir` doubles as the on-disk spill: scene bundles found
    there register at startup, uploads are persisted into it, and a
    scene evicted from the in-memory LRU reloads from it on demand.
    """
    app = FastAPI(title="fillight preview service")
    store = SceneStore(max_scenes=max_scenes)
    render_gate = threading.Semaphore(render_workers or os.cpu_count() or 1)
    base_cfg = RenderConfig(visibility=VisibilityConfig(seed=0))
    spill = Path(assets_dir) if assets_dir else None

    if spill and spill.is_dir():
        for scene_dir in sorted(spill.iterdir()):
            if scene_dir.is_dir():
                try:
                    scene = load_scene(spill, scene_dir.name)
                except SceneLoadError:
                    continue
                store.put(SceneHandle.build(scene_dir.name, scene))

    def _handle_or_404(scene_id: str) -> SceneHandle:
        handle = store.get(scene_id)
        if handle is None and spill and (spill / scene_id).is_dir():
            try:
                scene = load_scene(spill, scene_id)
            except SceneLoadError:
                scene = None
            if scene is not None:
                handle = SceneHandle.build(scene_id, scene)
                store.put(handle)
        if handle is None:
            raise HTTPException(status_code=404, detail=f"unknown scene {scene_id}")
        return handle

    def _render(handle: SceneHandle, params: LightParams, quality: Quality):
        scene = handle.at_quality(quality)
        n = preview_samples if quality is Quality.preview else full_samples
        cfg = replace(base_cfg, n_samples=n)
        t0 = time.perf_counter()
        with render_gate:
            residual = render_fill_light(scene, params, cfg)
        elapsed_ms = (time.perf_counter() - t0) * 1e3
        return scene, residual, elapsed_ms

    def _echo_headers(model: RenderRequestModel, elapsed_ms: float) -> dict:
        return {
            "X-Params": json.dumps(model.model_dump(), sort_keys=True),
            "X-Render-Ms": f"{elapsed_ms:.2f}",
        }

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "scenes": len(store)}

    @app.post("/scenes", status_code=201)
    async def register_scene(request: Request):
        body = await request.body()
        if len(body) > max_payload_bytes:
            raise HTTPException(status_code=413, detail="payload too large")
        try:
            archive = zipfile.ZipFile(io.BytesIO(body))
            names = set(archive.namelist())
        except zipfile.BadZipFile:
            raise HTTPException(
                status_code=400,
                detail="payload must be a zip archive of the scene assets")
        expected = set(ASSET_FILES.values())
        missing = sorted(expected - names)
        if missing:
            raise HTTPException(
                status_code=400, detail=f"missing assets: {', '.join(missing)}")
        members = {name: archive.read(name) for name in expected}
        scene_id = hash_scene_payload(members)
        if store.get(scene_id) is None:
            with tempfile.TemporaryDirectory() as tmp:
                scene_dir = Path(tmp) / scene_id
                scene_dir.mkdir()
                for name, blob in members.items():
                    (scene_dir / name).write_bytes(blob)
                try:
                    scene = load_scene(tmp, scene_id)
                except SceneLoadError as e:
                    raise HTTPException(status_code=400,
                                        detail=f"{e.code}: {e}")
            if spill:
                spill_dir = spill / scene_id
                spill_dir.mkdir(parents=True, exist_ok=True)
                for name, blob in members.items():
                    (spill_dir / name).write_bytes(blob)
            store.put(SceneHandle.build(scene_id, scene))
        return {"scene_id": scene_id}

    @app.post("/scenes/{scene_id}/render")
    def render_preview(scene_id: str, req: RenderRequestModel):
        handle = _handle_or_404(scene_id)
        scene, residual, ms = _render(handle, req.params.to_params(), req.quality)
        if req.gamma is not None:
            composite = compose_target(
                scene.image, np.float32(req.strength) * residual.srgb, req.gamma)
        else:
            composite = np.clip(
                scene.image + np.float32(req.strength) * residual.srgb, 0.0, 1.0)
        return Response(content=_png_bytes(composite), media_type="image/png",
                        headers=_echo_headers(req, ms))

    @app.get("/scenes/{scene_id}/residual")
    def get_residual(
        scene_id: str,
        kelvin: float = Query(ge=KELVIN_MIN, le=KELVIN_MAX),
        theta_hp_deg: float = Query(gt=0.0, lt=90.0),
        z0: float = Query(gt=0.0),
        d_lamp: float = Query(gt=0.0),
        dx: float = 0.0,
        dy: float = 0.0,
        quality: Quality = Quality.preview,
        strength: float = Query(default=1.0, ge=0.0),
        fmt: str = Query(default="png", pattern="^(png|pfm)$"),
    ):
        handle = _handle_or_404(scene_id)
        model = RenderRequestModel(
            params=ParamsModel(kelvin=kelvin, theta_hp_deg=theta_hp_deg,
                               z0=z0, d_lamp=d_lamp, dx=dx, dy=dy),
            quality=quality, strength=strength)
        _, residual, ms = _render(handle, model.params.to_params(), quality)
        headers = _echo_headers(model, ms)
        if fmt == "pfm":
            buf = io.BytesIO()
            write_pfm(buf, np.float32(strength) * residual.linear)
            return Response(content=buf.getvalue(),
                            media_type="application/octet-stream",
                            headers=headers)
        srgb = linear_to_srgb(np.float64(strength) * residual.linear)
        return Response(content=_png_bytes(srgb), media_type="image/png",
                        headers=headers)

    @app.get("/scenes/{scene_id}/original")
    def get_original(scene_id: str, quality: Quality = Quality.preview):
        handle = _handle_or_404(scene_id)
        scene = handle.at_quality(quality)
        return Response(content=_png_bytes(scene.image), media_type="image/png")

    return app
