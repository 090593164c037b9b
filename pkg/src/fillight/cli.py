"""Command-line entry points: render, dataset, planar, serve.

Exit codes: 0 success, 1 usage error, 2 batch completed with recorded
failures.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .lightgeom import LightParams
from .pfm import write_pfm
from .pipeline import (
    Provenance,
    QualityThresholds,
    SceneLoadError,
    WORKERS_ENV_VAR,
    generate_pair,
    load_scene,
    persist_record,
    quality_check,
    run_dataset,
)
from .planar import concat_target, render_planar_targets
from .sampling import SamplingPolicy, VARIANTS
from .shading import RenderConfig
from .visibility import VisibilityConfig


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="fillight",
                     description="Virtual fill-light renderer and dataset pipeline")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("render", help="render one scene with one params file")
    p.add_argument("--scene-root", required=True)
    p.add_argument("--image-id", required=True)
    p.add_argument("--params", required=True,
                   help="JSON file with kelvin, theta_hp_deg, z0, d_lamp, dx, dy")
    p.add_argument("--out", required=True)
    p.add_argument("--samples", type=int, default=2048)
    p.add_argument("--gamma", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--depth-scale", type=float, default=1.0)
    p.add_argument("--darken", action="store_true",
                   help="also emit the gamma-scaled input image")

    p = sub.add_parser("dataset", help="render the paired dataset for a tree of scenes")
    p.add_argument("--input-root", required=True)
    p.add_argument("--out-root", required=True)
    p.add_argument("--policy", help="sampling policy JSON (defaults built in)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--variants", default=",".join(VARIANTS),
                   help="comma-separated subset of warm,white,cool")
    p.add_argument("--samples", type=int, default=2048)
    p.add_argument("--workers", type=int,
                   default=int(os.environ.get(WORKERS_ENV_VAR, "1")))
    p.add_argument("--depth-scale", type=float, default=1.0)
    p.add_argument("--darken", action="store_true")

    p = sub.add_parser("planar", help="render planar supervision targets")
    p.add_argument("--params", required=True)
    p.add_argument("--size", type=int, default=64)
    p.add_argument("--out", required=True,
                   help="output directory for irradiance.pfm/direction.pfm")
    p.add_argument("--samples", type=int, default=512)

    p = sub.add_parser("serve", help="run the HTTP preview service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--assets-dir", help="preload scene bundles from this tree")
    p.add_argument("--max-scenes", type=int, default=16)
    p.add_argument("--preview-samples", type=int, default=256)

    return parser


def _load_params(path: str) -> LightParams:
    with open(path) as f:
        return LightParams.from_dict(json.load(f))


def _cmd_render(args) -> int:
    params = _load_params(args.params)
    scene = load_scene(args.scene_root, args.image_id,
                       depth_scale=args.depth_scale)
    cfg = RenderConfig(n_samples=args.samples,
                       visibility=VisibilityConfig(seed=args.seed))
    provenance = Provenance(image_id=args.image_id, variant="manual",
                            seed=args.seed, policy_digest="-")
    record = generate_pair(scene, params, args.gamma, cfg, provenance)
    report = quality_check(scene, record.residual, QualityThresholds())
    paths = persist_record(record, args.out, report, darken=args.darken)
    print(json.dumps({"verdict": "pass" if report.passed else "fail",
                      "reason": report.reason, "paths": paths}, indent=2))
    return 0


def _cmd_dataset(args) -> int:
    policy = SamplingPolicy()
    if args.policy:
        policy = SamplingPolicy.from_json(Path(args.policy).read_text())
    variants = tuple(v.strip() for v in args.variants.split(",") if v.strip())
    unknown = [v for v in variants if v not in policy.temp_ranges]
    if not variants or unknown:
        print(f"fillight dataset: invalid variants {args.variants!r}",
              file=sys.stderr)
        return 1
    cfg = RenderConfig(n_samples=args.samples)
    summary = run_dataset(args.input_root, args.out_root, policy=policy,
                          seed=args.seed, variants=variants, cfg=cfg,
                          depth_scale=args.depth_scale, darken=args.darken,
                          workers=args.workers)
    print(json.dumps(summary.to_dict(), indent=2, sort_keys=True))
    return 2 if summary.failed else 0


def _cmd_planar(args) -> int:
    params = _load_params(args.params)
    cfg = RenderConfig(n_samples=args.samples)
    targets = render_planar_targets(params, resolution=args.size, cfg=cfg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_pfm(out / "irradiance.pfm", targets.irradiance)
    stacked = concat_target(targets)
    write_pfm(out / "direction.pfm", stacked[..., 3:6])
    print(json.dumps({"irradiance": str(out / "irradiance.pfm"),
                      "direction": str(out / "direction.pfm"),
                      "resolution": targets.resolution}, indent=2))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(assets_dir=args.assets_dir, max_scenes=args.max_scenes,
                     preview_samples=args.preview_samples)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handler = {
        "render": _cmd_render,
        "dataset": _cmd_dataset,
        "planar": _cmd_planar,
        "serve": _cmd_serve,
    }[args.command]
    try:
        return handler(args)
    except (FileNotFoundError, SceneLoadError, ValueError,
            json.JSONDecodeError) as e:
        print(f"fillight {args.command}: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
