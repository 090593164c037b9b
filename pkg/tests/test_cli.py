import json

import numpy as np
import pytest

import fillight as fl
from fillight import pipeline
from fillight.cli import main
from fillight.pfm import read_pfm
from fillight.synthetic import bump_scene


@pytest.fixture
def scene_root(tmp_path):
    root = tmp_path / "scenes"
    pipeline.save_scene(bump_scene(32, coord_scale=16.0, image_id="face"), root)
    return root


@pytest.fixture
def params_file(tmp_path):
    p = fl.LightParams.from_degrees(5000, 45, 1200, 300, 150, -80)
    path = tmp_path / "params.json"
    path.write_text(json.dumps(p.to_dict()))
    return path


def test_usage_error_exits_1(capsys):
    with pytest.raises(SystemExit) as e:
        main(["dataset"])  # missing required flags
    assert e.value.code == 1


def test_unknown_command_exits_1():
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 1


def test_render_command(scene_root, params_file, tmp_path, capsys):
    out = tmp_path / "render-out"
    rc = main(["render", "--scene-root", str(scene_root), "--image-id", "face",
               "--params", str(params_file), "--out", str(out),
               "--samples", "32"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdict"] == "pass"
    for name in ("input.png", "target.png", "residual.png", "residual.pfm",
                 "params.json"):
        assert (out / name).exists()


def test_planar_command(params_file, tmp_path, capsys):
    out = tmp_path / "planar-out"
    rc = main(["planar", "--params", str(params_file), "--size", "16",
               "--out", str(out), "--samples", "64"])
    assert rc == 0
    irr = read_pfm(out / "irradiance.pfm")
    direction = read_pfm(out / "direction.pfm")
    assert irr.shape == (16, 16, 3)
    assert direction.shape == (16, 16, 3)
    assert np.all(direction[..., 2] == 0.0)


def test_dataset_command_success(scene_root, tmp_path, capsys):
    out = tmp_path / "ds"
    rc = main(["dataset", "--input-root", str(scene_root), "--out-root",
               str(out), "--seed", "3", "--samples", "16"])
    assert rc == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["passed"] == 3
    assert (out / "manifest.jsonl").exists()


def test_dataset_command_failures_exit_2(scene_root, tmp_path, capsys):
    (scene_root / "face" / "depth.pfm").write_bytes(b"junk")
    rc = main(["dataset", "--input-root", str(scene_root), "--out-root",
               str(tmp_path / "ds2"), "--samples", "16"])
    assert rc == 2


def test_dataset_bad_variants(scene_root, tmp_path):
    rc = main(["dataset", "--input-root", str(scene_root), "--out-root",
               str(tmp_path / "ds3"), "--variants", "sunset"])
    assert rc == 1


def test_dataset_variant_subset(scene_root, tmp_path, capsys):
    rc = main(["dataset", "--input-root", str(scene_root), "--out-root",
               str(tmp_path / "ds4"), "--variants", "warm", "--samples", "16"])
    assert rc == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["attempted"] == 1


def test_missing_input_root_clean_error(tmp_path, capsys):
    rc = main(["dataset", "--input-root", str(tmp_path / "nope"),
               "--out-root", str(tmp_path / "out")])
    assert rc == 1
    assert "error" in capsys.readouterr().err


def test_bad_params_file_clean_error(scene_root, tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    rc = main(["render", "--scene-root", str(scene_root), "--image-id", "face",
               "--params", str(bad), "--out", str(tmp_path / "o")])
    assert rc == 1
