"""Minimal PFM (portable float map) reader/writer.

PFM stores 32-bit float rasters with a tiny ASCII header: "PF" for
3-channel, "Pf" for 1-channel, then "<width> <height>" and a scale
whose sign encodes byte order (negative = little-endian). Rows are
stored bottom-to-top.
"""

from __future__ import annotations

import os

import numpy as np


def write_pfm(dest, data: np.ndarray) -> None:
    """Write a (H, W) or (H, W, 3) float raster as little-endian PFM.

    `dest` is a path or a writable binary file object.
    """
    data = np.asarray(data, dtype=np.float32)
    if data.ndim == 2:
        header = b"Pf"
    elif data.ndim == 3 and data.shape[2] == 3:
        header = b"PF"
    else:
        raise ValueError(f"PFM supports HxW or HxWx3 rasters, got {data.shape}")
    h, w = data.shape[:2]
    payload = (header + b"\n" + f"{w} {h}\n".encode() + b"-1.0\n"
               + np.flipud(data).astype("<f4").tobytes())
    if hasattr(dest, "write"):
        dest.write(payload)
    else:
        with open(dest, "wb") as f:
            f.write(payload)


def read_pfm(path: str | os.PathLike) -> np.ndarray:
    """Read a PFM file into a float32 array, rows top-to-bottom."""
    with open(path, "rb") as f:
        header = f.readline().strip()
        if header == b"PF":
            channels = 3
        elif header == b"Pf":
            channels = 1
        else:
            raise ValueError(f"not a PFM file: bad header {header!r}")
        dims = f.readline().split()
        if len(dims) != 2:
            raise ValueError("malformed PFM dimension line")
        w, h = int(dims[0]), int(dims[1])
        scale = float(f.readline().strip())
        dtype = "<f4" if scale < 0 else ">f4"
        count = w * h * channels
        raw = np.frombuffer(f.read(count * 4), dtype=dtype, count=count)
        if raw.size != count:
            raise ValueError("truncated PFM payload")
    data = raw.reshape((h, w, channels)) if channels == 3 else raw.reshape((h, w))
    return np.ascontiguousarray(np.flipud(data), dtype=np.float32)
