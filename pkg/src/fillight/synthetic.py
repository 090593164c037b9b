"""Synthetic scene-asset builders used by tests, scripts, and demos.

These construct in-memory SceneAssets directly in render coordinates
(normals with +z toward the lamp). The `coord_scale` argument keeps a
small raster geometrically equivalent to a full-resolution portrait:
a 128 px scene with coord_scale 8 spans the same 1024 px world as the
datasets the renderer targets.
"""

from __future__ import annotations

import numpy as np

from .shading import SceneAssets


def _grid(size: int, coord_scale: float):
    coords = (np.arange(size) + 0.5 - size / 2.0) * coord_scale
    return np.meshgrid(coords, coords)


def flat_scene(size: int = 128, coord_scale: float = 1.0, albedo: float = 1.0,
               specular: float = 0.0, mask: str = "full",
               depth_value: float = 0.0, image_value: float = 0.1,
               image_id: str = "synthetic-flat") -> SceneAssets:
    """Flat lamp-facing plane with constant materials.

    mask: "full" marks every pixel as face; "disk" restricts the face
    region to a centered disk of 0.4 * size radius.
    """
    hw = (size, size)
    depth = np.full(hw, depth_value, dtype=np.float32)
    normals = np.zeros((*hw, 3), dtype=np.float32)
    normals[..., 2] = 1.0
    if mask == "full":
        m = np.ones(hw, dtype=np.float32)
    elif mask == "disk":
        x, y = _grid(size, 1.0)
        m = (np.hypot(x, y) <= 0.4 * size).astype(np.float32)
    else:
        raise ValueError(f"unknown mask kind {mask!r}")
    return SceneAssets(
        image=np.full((*hw, 3), image_value, dtype=np.float32),
        depth=depth,
        normals=normals,
        albedo=np.full((*hw, 3), albedo, dtype=np.float32),
        specular=np.full((*hw, 3), specular, dtype=np.float32),
        face_mask=m,
        coord_scale=coord_scale,
        image_id=image_id,
    )


def bump_scene(size: int = 128, coord_scale: float = 8.0,
               bump_height: float = 120.0, bump_radius_frac: float = 0.55,
               albedo: float = 0.8, specular: float = 0.15,
               image_id: str = "synthetic-face") -> SceneAssets:
    """Face-like scene: a smooth cosine bump rising toward the camera.

    Depth decreases toward the bump crown (closer to the lamp); normals
    follow the height field analytically so geometry and shading agree.
    """
    x, y = _grid(size, coord_scale)
    extent = 0.5 * size * coord_scale
    r = np.hypot(x, y) / (bump_radius_frac * extent)
    height = np.where(r < 1.0, bump_height * 0.5 * (1.0 + np.cos(np.pi * r)), 0.0)
    depth = (bump_height - height).astype(np.float32)
    # height = f(x, y), surface z = -depth = f - bump_height; normal is
    # (-df/dx, -df/dy, 1) normalized.
    dfdy, dfdx = np.gradient(height, coord_scale)
    normals = np.stack((-dfdx, -dfdy, np.ones_like(height)), axis=-1)
    normals /= np.linalg.norm(normals, axis=-1, keepdims=True)
    mask = (np.hypot(x, y) <= 0.42 * 2 * extent).astype(np.float32)
    rgb = np.empty((size, size, 3), dtype=np.float32)
    rgb[..., 0], rgb[..., 1], rgb[..., 2] = 0.35, 0.25, 0.22
    return SceneAssets(
        image=rgb,
        depth=depth,
        normals=normals.astype(np.float32),
        albedo=np.full((size, size, 3), albedo, dtype=np.float32),
        specular=np.full((size, size, 3), specular, dtype=np.float32),
        face_mask=mask,
        coord_scale=coord_scale,
        image_id=image_id,
    )


def slab_scene(size: int = 128, floor_depth: float = 200.0,
               slab_depth: float = 50.0, edge_col_frac: float = 0.5,
               image_id: str = "synthetic-slab") -> SceneAssets:
    """Shadow-test scene: a near slab covering columns left of the edge.

    The depth raster holds the slab depth where it covers the image and
    the floor depth elsewhere; normals face the lamp everywhere so
    shading differences come from visibility alone.
    """
    hw = (size, size)
    depth = np.full(hw, floor_depth, dtype=np.float32)
    edge = int(size * edge_col_frac)
    depth[:, :edge] = slab_depth
    normals = np.zeros((*hw, 3), dtype=np.float32)
    normals[..., 2] = 1.0
    return SceneAssets(
        image=np.full((*hw, 3), 0.2, dtype=np.float32),
        depth=depth,
        normals=normals,
        albedo=np.full((*hw, 3), 0.9, dtype=np.float32),
        specular=np.zeros((*hw, 3), dtype=np.float32),
        face_mask=np.ones(hw, dtype=np.float32),
        coord_scale=1.0,
        image_id=image_id,
    )
