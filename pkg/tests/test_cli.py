import json

import numpy as np
import pytest

from fbmtopo import generate_fbm
from fbmtopo.cli import main


def test_generate_writes_csv(tmp_path):
    out = tmp_path / "series.csv"
    code = main(["generate", "--hurst", "0.6", "--length", "32",
                 "--seed", "4", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("# hurst=0.6")
    assert lines[1] == "index,value,mask"
    assert len(lines) == 2 + 32
    # values round-trip exactly against the library call
    series = generate_fbm(0.6, 32, 4)
    parsed = [float(line.split(",")[1]) for line in lines[2:]]
    assert np.array_equal(np.array(parsed), series.values)


def test_generate_with_q(tmp_path):
    out = tmp_path / "series.csv"
    main(["generate", "--hurst", "0.5", "--length", "50", "--seed", "1",
          "--q", "0.1", "--out", str(out)])
    masks = [int(line.split(",")[2]) for line in out.read_text().splitlines()[2:]]
    assert masks.count(0) == 5


def test_generate_bad_hurst():
    assert main(["generate", "--hurst", "1.5", "--length", "32", "--seed", "0",
                 "--out", "/dev/null"]) == 1


def test_analyze_roundtrip(tmp_path):
    series_path = tmp_path / "series.csv"
    out_path = tmp_path / "summary.json"
    main(["generate", "--hurst", "0.4", "--length", "80", "--seed", "6",
          "--out", str(series_path)])
    code = main(["analyze", str(series_path), "--dim", "2", "--tau", "1",
                 "--out", str(out_path)])
    assert code == 0
    payload = json.loads(out_path.read_text())
    assert payload["n_nominal"] == 79
    assert payload["n_cloud"] == 79
    assert set(payload["measures"]) == {
        "eta0_disappear", "B0", "E0", "eta1_appear", "eta1_disappear",
        "eta1_maximize", "B1", "E1", "n1",
    }


def test_analyze_missing_file():
    assert main(["analyze", "/nonexistent.csv", "--dim", "2", "--tau", "1"]) == 2


def test_analyze_bad_params(tmp_path):
    series_path = tmp_path / "series.csv"
    main(["generate", "--hurst", "0.4", "--length", "30", "--seed", "6",
          "--out", str(series_path)])
    assert main(["analyze", str(series_path), "--dim", "0", "--tau", "1"]) == 1


def test_experiment_end_to_end(tmp_path, capsys):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text(
        "hurst_list = 0.5\ndims = 2\ntaus = 1\nqs = 0\n"
        "n_points = 40\nrealizations = 2\nmaster_seed = 3\ngrid_resolution = 5\n"
    )
    out_dir = tmp_path / "out"
    code = main(["experiment", "--config", str(cfg), "--out", str(out_dir)])
    assert code == 0
    for fname in ("results.csv", "aggregate.csv", "betti_curves.csv", "manifest.json"):
        assert (out_dir / fname).exists()
    assert "2/2 realizations succeeded" in capsys.readouterr().out


def test_experiment_unknown_config_key(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("bogus = 1\n")
    assert main(["experiment", "--config", str(cfg), "--out", str(tmp_path / "o")]) == 1


def test_usage_error_exits_one():
    with pytest.raises(SystemExit) as info:
        main(["generate", "--hurst", "0.5"])  # missing --length
    assert info.value.code == 1
