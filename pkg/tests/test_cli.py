import json

import numpy as np
import pytest

from platepipe.cli import main
from platepipe.raster import RgbImage, load_image, save_rgb


@pytest.fixture
def scene(tmp_path):
    path = tmp_path / "scene.ppm"
    code = main(["synth", "--seed", "3", "--out", str(path)])
    assert code == 0
    truth = (tmp_path / "scene.ppm.truth").read_text().split()
    return path, [int(v) for v in truth]


def test_synth_writes_scene_and_truth(scene):
    path, truth = scene
    img = load_image(path)
    assert (img.width, img.height) == (640, 480)
    assert len(truth) == 4


def test_detect_finds_plate(scene, tmp_path, capsys):
    path, truth = scene
    out = tmp_path / "plate.ppm"
    code = main(["detect", str(path), "--out", str(out)])
    captured = capsys.readouterr()
    assert code == 0
    assert out.exists()
    report = json.loads(captured.out)
    assert report["winner"] is not None
    assert report["stage_counts"]["border"] >= 1
    assert "plate at" in captured.err


def test_detect_default_out_path(scene, tmp_path):
    path, _ = scene
    code = main(["detect", str(path)])
    assert code == 0
    assert (tmp_path / "scene.ppm.plate.ppm").exists()


def test_detect_no_plate_exit_2(tmp_path, capsys):
    path = tmp_path / "black.ppm"
    save_rgb(RgbImage(np.zeros((24, 32, 3), dtype=np.uint8)), path)
    code = main(["detect", str(path)])
    captured = capsys.readouterr()
    assert code == 2
    assert json.loads(captured.out)["winner"] is None
    assert "no plate" in captured.err


def test_detect_dump_stages(scene, tmp_path):
    path, _ = scene
    dump = tmp_path / "stages"
    code = main(["detect", str(path), "--dump-stages", str(dump)])
    assert code == 0
    names = sorted(p.name for p in dump.iterdir())
    assert names == [
        "00-gray.pgm",
        "01-equalized.pgm",
        "02-blur.pgm",
        "03-edge.pgm",
        "04-dilated.pgm",
        "05-components.ppm",
        "06-candidates.ppm",
        "07-plate.ppm",
    ]


def test_detect_with_config(scene, tmp_path, capsys):
    path, _ = scene
    conf = tmp_path / "t.conf"
    conf.write_text("edge.mode=sobel\nedge.threshold=2040\n")
    code = main(["detect", str(path), "--config", str(conf)])
    captured = capsys.readouterr()
    assert code == 2
    assert json.loads(captured.out)["stage_counts"]["edge_pixels"] == 0


def test_bad_config_exit_1(scene, tmp_path, capsys):
    path, _ = scene
    conf = tmp_path / "bad.conf"
    conf.write_text("morph.mask_size=4\n")
    code = main(["detect", str(path), "--config", str(conf)])
    captured = capsys.readouterr()
    assert code == 1
    assert captured.out == ""
    assert "morph.mask_size" in captured.err


def test_missing_input_exit_1(tmp_path, capsys):
    code = main(["detect", str(tmp_path / "missing.ppm")])
    assert code == 1
    assert "error" in capsys.readouterr().err


def test_sweep_tsv_on_stdout(scene, capsys):
    path, _ = scene
    code = main(["sweep", str(path), "--param", "morph.mask_size", "--values", "3,5"])
    captured = capsys.readouterr()
    assert code == 0
    lines = captured.out.splitlines()
    assert lines[0].startswith("morph.mask_size\tedge_pixels")
    assert len(lines) == 3


def test_sweep_bad_param_exit_1(scene, capsys):
    path, _ = scene
    code = main(["sweep", str(path), "--param", "edge.mode", "--values", "1"])
    assert code == 1
    captured = capsys.readouterr()
    assert captured.out == ""


def test_synth_custom_size(tmp_path):
    path = tmp_path / "small.ppm"
    code = main(["synth", "--seed", "9", "--out", str(path), "--size", "320x240"])
    assert code == 0
    img = load_image(path)
    assert (img.width, img.height) == (320, 240)


def test_usage_error_exit_1(capsys):
    assert main(["detect"]) == 1
    assert main(["--help"]) == 0


def test_stdout_is_machine_readable_only(scene, capsys):
    path, _ = scene
    main(["detect", str(path)])
    captured = capsys.readouterr()
    json.loads(captured.out)  # single JSON document, nothing else
