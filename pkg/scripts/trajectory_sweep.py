#!/usr/bin/env python3
"""Move the lamp around a circle while sweeping color temperature.

Desk-scale reproduction of the circular-trajectory control demo: eight
lamp offsets on a fixed-radius circle with linearly increasing kelvin,
beam shape held constant. Writes one composited preview per stop plus a
stats JSON (residual centroid angle and R/B ratio per stop).
"""

import argparse
import json
import math
from pathlib import Path

import numpy as np
from PIL import Image

import fillight as fl
from fillight.synthetic import flat_scene


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", required=True)
    ap.add_argument("--size", type=int, default=128)
    ap.add_argument("--radius", type=float, default=1800.0)
    ap.add_argument("--kelvin", type=float, nargs=2, default=(4571.0, 7545.0))
    ap.add_argument("--stops", type=int, default=8)
    ap.add_argument("--samples", type=int, default=2048)
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    scene = flat_scene(args.size, coord_scale=1024.0 / args.size, mask="disk")
    cfg = fl.RenderConfig(n_samples=args.samples)
    temps = np.linspace(args.kelvin[0], args.kelvin[1], args.stops)

    stats = []
    for i, kelvin in enumerate(temps):
        ang = 2.0 * math.pi * i / args.stops
        dx = args.radius * math.cos(ang)
        dy = args.radius * math.sin(ang)
        params = fl.LightParams.from_degrees(kelvin, 45, 2000, 400, dx, dy)
        res = fl.render_fill_light(scene, params, cfg)
        composite = np.clip(scene.image + res.srgb, 0.0, 1.0)
        Image.fromarray((composite * 255).astype(np.uint8)).save(
            out / f"stop{i}_dx{dx:+.0f}_dy{dy:+.0f}_T{kelvin:.0f}.png")

        lum = res.linear.astype(np.float64) @ [0.2126, 0.7152, 0.0722]
        coords = (np.arange(args.size) + 0.5 - args.size / 2) * scene.coord_scale
        cx = (lum.sum(axis=0) * coords).sum() / lum.sum()
        cy = (lum.sum(axis=1) * coords).sum() / lum.sum()
        masked = res.linear[scene.face_mask > 0].astype(np.float64)
        stats.append({
            "stop": i, "kelvin": float(kelvin), "dx": dx, "dy": dy,
            "lamp_angle_deg": math.degrees(ang),
            "centroid_angle_deg": math.degrees(math.atan2(cy, cx)),
            "red_blue_ratio": float(masked[:, 0].mean() / masked[:, 2].mean()),
        })
    (out / "stats.json").write_text(json.dumps(stats, indent=2))
    print(json.dumps(stats, indent=2))


if __name__ == "__main__":
    main()
