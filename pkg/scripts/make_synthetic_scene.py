#!/usr/bin/env python3
"""Write a synthetic scene-asset bundle in the pipeline's input layout.

Useful for exercising the dataset CLI and the preview service without
estimator outputs, e.g.:

    python scripts/make_synthetic_scene.py --kind face --size 256 \
        --coord-scale 4 --out /tmp/scenes --image-id demo
    fillight render --scene-root /tmp/scenes --image-id demo ...
"""

import argparse

from fillight.pipeline import save_scene
from fillight.synthetic import bump_scene, flat_scene, slab_scene


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kind", choices=("flat", "face", "slab"), default="face")
    ap.add_argument("--size", type=int, default=256)
    ap.add_argument("--coord-scale", type=float, default=4.0)
    ap.add_argument("--out", required=True)
    ap.add_argument("--image-id", default=None)
    args = ap.parse_args()

    if args.kind == "flat":
        scene = flat_scene(args.size, coord_scale=args.coord_scale, mask="disk")
    elif args.kind == "face":
        scene = bump_scene(args.size, coord_scale=args.coord_scale)
    else:
        scene = slab_scene(args.size)
    path = save_scene(scene, args.out, image_id=args.image_id)
    print(f"wrote {args.kind} scene to {path}")


if __name__ == "__main__":
    main()
