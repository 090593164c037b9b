#!/usr/bin/env python3
"""Measure preview render latency across quality settings."""

import argparse
import time

import numpy as np

import fillight as fl
from fillight.service import downsample_scene
from fillight.synthetic import bump_scene


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=1024)
    ap.add_argument("--runs", type=int, default=10)
    args = ap.parse_args()

    scene = bump_scene(args.size, coord_scale=1024.0 / args.size)
    params = fl.LightParams.from_degrees(5200, 45, 1500, 400, 300, -150)

    for label, level, n in (("preview-128", 128, 256),
                            ("preview-256", 256, 512),
                            ("full", args.size, 2048)):
        target = downsample_scene(scene, level)
        cfg = fl.RenderConfig(n_samples=n)
        fl.render_fill_light(target, params, cfg)  # warmup
        times = []
        for _ in range(args.runs):
            t0 = time.perf_counter()
            fl.render_fill_light(target, params, cfg)
            times.append(time.perf_counter() - t0)
        print(f"{label:>12} ({target.width}px, N={n}): "
              f"median {np.median(times) * 1e3:7.1f} ms   "
              f"p95 {np.quantile(times, 0.95) * 1e3:7.1f} ms")


if __name__ == "__main__":
    main()
