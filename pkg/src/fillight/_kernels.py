"""Compiled per-pixel kernels for shading and screen-space visibility.

Scene coordinates: x, y in full-resolution pixel units with origin at
the image center; a raster cell (r, c) of a (H, W) raster with scale
factor `coord_scale` is centered at ((c + 0.5) - W/2, (r + 0.5) - H/2)
* coord_scale. Depth is positive away from the lamp, so the lamp plane
lies at ray depth -z0.

Everything here is deterministic: per-pixel accumulation order is fixed
(emitter sample index), and march jitter comes from a counter hash of
(pixel index, emitter sample index, seed), never a shared RNG stream.
Accumulators are float64; rasters are float32.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange

_INV_2P53 = 1.0 / 9007199254740992.0  # 2^-53

_MIX_A = np.uint64(0x9E3779B97F4A7C15)
_MIX_B = np.uint64(0xBF58476D1CE4E5B9)
_MIX_C = np.uint64(0xD6E8FEB86659FD93)
_FIN_1 = np.uint64(0xFF51AFD7ED558CCD)
_FIN_2 = np.uint64(0xC4CEB9FE1A85EC53)
_S33 = np.uint64(33)
_S11 = np.uint64(11)


@njit(cache=True, inline="always")
def _hash01(pix, k, seed):
    """Counter hash of (pixel, sample, seed) -> float in [0, 1)."""
    h = (pix * _MIX_A) ^ (k * _MIX_B) ^ (seed * _MIX_C)
    h ^= h >> _S33
    h *= _FIN_1
    h ^= h >> _S33
    h *= _FIN_2
    h ^= h >> _S33
    return np.float64(h >> _S11) * _INV_2P53


@njit(cache=True, inline="always")
def _bilinear(raster, row, col):
    """Bilinear lookup at fractional (row, col), clamped to the raster."""
    h, w = raster.shape
    row = min(max(row, 0.0), h - 1.0)
    col = min(max(col, 0.0), w - 1.0)
    r0 = int(row)
    c0 = int(col)
    r1 = min(r0 + 1, h - 1)
    c1 = min(c0 + 1, w - 1)
    fr = row - r0
    fc = col - c0
    top = raster[r0, c0] * (1.0 - fc) + raster[r0, c1] * fc
    bot = raster[r1, c0] * (1.0 - fc) + raster[r1, c1] * fc
    return top * (1.0 - fr) + bot * fr


@njit(cache=True, inline="always")
def _clip_axis(t_lo, t_hi, a0, slope, hi_bound):
    """Intersect [t_lo, t_hi] with {t : 0 <= a0 + t*slope <= hi_bound}."""
    if slope > 0.0:
        t_lo = max(t_lo, -a0 / slope)
        t_hi = min(t_hi, (hi_bound - a0) / slope)
    elif slope < 0.0:
        t_lo = max(t_lo, (hi_bound - a0) / slope)
        t_hi = min(t_hi, -a0 / slope)
    elif a0 < 0.0 or a0 > hi_bound:
        return 1.0, 0.0  # empty
    return t_lo, t_hi


@njit(cache=True, inline="always")
def _march_visibility(px, py, pdepth, ex, ey, edepth, depth, dmin, coord_scale,
                      steps, jitter_amp, softness, bias, pix_id, samp_id, seed):
    """Soft visibility of one pixel/emitter pair via depth-buffer marching.

    Steps along the image-space segment from the pixel toward the
    emitter (endpoints excluded), compares interpolated ray depth with
    the bilinearly sampled scene depth, accumulates per-step occlusion
    probabilities smoothstep((ray - scene - bias)/softness) into the
    transmittance product V = prod(1 - o_i). The whole step comb is
    shifted by a per-ray jitter of up to half a step. March samples
    falling outside the raster are unoccluded and skipped analytically.
    """
    h, w = depth.shape
    inv_scale = 1.0 / coord_scale
    c0 = px * inv_scale + 0.5 * w - 0.5
    cs = (ex - px) * inv_scale
    r0 = py * inv_scale + 0.5 * h - 0.5
    rs = (ey - py) * inv_scale
    t_lo, t_hi = _clip_axis(0.0, 1.0, c0, cs, w - 1.0)
    if t_lo > t_hi:
        return 1.0
    t_lo, t_hi = _clip_axis(t_lo, t_hi, r0, rs, h - 1.0)
    if t_lo > t_hi:
        return 1.0
    dd = edepth - pdepth
    # Ray depth falls monotonically toward the lamp; past the point
    # where it sinks below the shallowest scene depth plus bias, no
    # step can be occluded, so the tail of the march is dropped.
    if dd < 0.0:
        t_hi = min(t_hi, (dmin + bias - pdepth) / dd)
        if t_lo > t_hi:
            return 1.0
    shift = (_hash01(pix_id, samp_id, seed) - 0.5) * jitter_amp
    i_lo = int(np.ceil(t_lo * steps - 0.5 - shift))
    i_hi = int(np.floor(t_hi * steps - 0.5 - shift))
    if i_lo < 0:
        i_lo = 0
    if i_hi > steps - 1:
        i_hi = steps - 1
    inv_steps = 1.0 / steps
    vis = 1.0
    for i in range(i_lo, i_hi + 1):
        t = (i + 0.5 + shift) * inv_steps
        diff = (pdepth + t * dd) - _bilinear(depth, r0 + t * rs, c0 + t * cs) - bias
        if diff <= 0.0:
            continue
        if diff >= softness:
            return 0.0
        o = diff / softness
        o = o * o * (3.0 - 2.0 * o)
        vis *= 1.0 - o
    return vis


@njit(cache=True)
def soft_visibility_scalar(px, py, pdepth, ex, ey, edepth, depth, coord_scale,
                           steps, jitter_amp, softness, bias, pix_id, samp_id, seed):
    dmin = np.float64(depth.min())
    return _march_visibility(px, py, pdepth, ex, ey, edepth, depth, dmin, coord_scale,
                             steps, jitter_amp, softness, bias,
                             np.uint64(pix_id), np.uint64(samp_id), np.uint64(seed))


@njit(cache=True, parallel=True)
def visibility_map(depth, coord_scale, ex, ey, edepth,
                   steps, jitter_amp, softness, bias, seed, samp_id):
    """Per-pixel soft visibility toward a single emitter point."""
    h, w = depth.shape
    out = np.empty((h, w), dtype=np.float64)
    seed_u = np.uint64(seed)
    samp = np.uint64(samp_id)
    dmin = np.float64(depth.min())
    for r in prange(h):
        y = ((r + 0.5) - 0.5 * h) * coord_scale
        for c in range(w):
            x = ((c + 0.5) - 0.5 * w) * coord_scale
            pix = np.uint64(r * w + c)
            out[r, c] = _march_visibility(
                x, y, np.float64(depth[r, c]), ex, ey, edepth, depth, dmin,
                coord_scale, steps, jitter_amp, softness, bias, pix, samp, seed_u)
    return out


@njit(cache=True, parallel=True)
def shade_scalar_fields(depth, normals, mask, coord_scale, ex, ey, z0,
                        p_exp, shininess, want_diffuse, want_specular,
                        vis_enabled, steps, jitter_amp, softness, bias, seed,
                        emitter_stride, skip_unmasked):
    """Monte Carlo scalar irradiance fields over the emitter sample set.

    Returns (diffuse, specular) float64 maps holding, per pixel,
      diffuse  = 1/N * sum_k w_k V_k [N.l_k]+ / r_k^2
      specular = 1/N * sum_k w_k V_k (n+2)/(2pi) [N.h_k]+^n / r_k^2
    with w_k the cosine-lobe emission weight, h_k the half-vector of the
    incident direction and the fixed toward-camera view axis (0, 0, 1).
    Emitter samples below the surface horizon ([N.l]+ = 0) contribute to
    neither term. Callers multiply by gain and the lamp RGB color.
    """
    h, w = depth.shape
    n = ex.shape[0]
    inv_n = 1.0 / n
    spec_norm = (shininess + 2.0) / (2.0 * np.pi)
    out_d = np.zeros((h, w), dtype=np.float64)
    out_s = np.zeros((h, w), dtype=np.float64)
    seed_u = np.uint64(seed)
    edepth = -z0
    # A ray's depth only decreases from its pixel toward the lamp, so a
    # pixel within `bias` of the global minimum depth can never be
    # occluded; its march would return exactly 1 and is skipped.
    dmin = np.float64(depth.min())
    for r in prange(h):
        y = ((r + 0.5) - 0.5 * h) * coord_scale
        for c in range(w):
            if skip_unmasked and mask[r, c] == 0.0:
                continue
            x = ((c + 0.5) - 0.5 * w) * coord_scale
            d = np.float64(depth[r, c])
            nx = np.float64(normals[r, c, 0])
            ny = np.float64(normals[r, c, 1])
            nz = np.float64(normals[r, c, 2])
            vz = z0 + d
            pix = np.uint64(r * w + c)
            march = vis_enabled and d - dmin > bias
            acc_d = 0.0
            acc_s = 0.0
            vis_cache = 1.0
            for k in range(n):
                vx = ex[k] - x
                vy = ey[k] - y
                r2 = vx * vx + vy * vy + vz * vz
                rlen = np.sqrt(r2)
                lz = vz / rlen
                if lz <= 0.0:
                    continue
                ndl = (nx * vx + ny * vy + nz * vz) / rlen
                if ndl <= 0.0:
                    continue
                wgt = lz ** p_exp
                if march:
                    if emitter_stride <= 1 or k % emitter_stride == 0:
                        vis_cache = _march_visibility(
                            x, y, d, ex[k], ey[k], edepth, depth, dmin,
                            coord_scale, steps, jitter_amp, softness, bias,
                            pix, np.uint64(k), seed_u)
                    vis = vis_cache
                    if vis <= 0.0:
                        continue
                else:
                    vis = 1.0
                base = wgt * vis / r2
                if want_diffuse:
                    acc_d += base * ndl
                if want_specular:
                    hx = vx / rlen
                    hy = vy / rlen
                    hz = lz + 1.0
                    ndh = (nx * hx + ny * hy + nz * hz) / np.sqrt(
                        hx * hx + hy * hy + hz * hz)
                    if ndh > 0.0:
                        acc_s += base * ndh ** shininess
            out_d[r, c] = acc_d * inv_n
            out_s[r, c] = acc_s * inv_n * spec_norm
    return out_d, out_s


@njit(cache=True, parallel=True)
def planar_scalar_field(resolution, window, ex, ey, z0, p_exp):
    """Scalar irradiance of the lamp over a flat plane at depth zero.

    The plane spans a `window`-sized square of scene units mapped onto
    resolution^2 cells, with unit normals facing the lamp (so the
    Lambert term equals l_z) and no occlusion.
    """
    n = ex.shape[0]
    inv_n = 1.0 / n
    scale = window / resolution
    out = np.empty((resolution, resolution), dtype=np.float64)
    for r in prange(resolution):
        y = ((r + 0.5) - 0.5 * resolution) * scale
        for c in range(resolution):
            x = ((c + 0.5) - 0.5 * resolution) * scale
            acc = 0.0
            for k in range(n):
                vx = ex[k] - x
                vy = ey[k] - y
                r2 = vx * vx + vy * vy + z0 * z0
                lz = z0 / np.sqrt(r2)
                acc += lz ** p_exp * lz / r2
            out[r, c] = acc * inv_n
    return out
