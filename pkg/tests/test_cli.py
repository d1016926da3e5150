import json
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "treeagents"]


def invoke(*args, **kw):
    return subprocess.run(CLI + list(args), capture_output=True, text=True, **kw)


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "small.cfg"
    path.write_text("levels = 2\nmax_ticks = 30\n")
    return path


def test_run_to_stdout(config_file):
    proc = invoke("run", "--config", str(config_file))
    assert proc.returncode == 0
    lines = proc.stdout.splitlines()
    assert lines[0] == "# schema_version=1"
    assert lines[1].startswith("tick,t_norm,world,delta_world,x_naive")
    assert len(lines) == 2 + 30


def test_run_writes_file_byte_identically(config_file, tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert invoke("run", "--config", str(config_file), "--out", str(out1)).returncode == 0
    assert invoke("run", "--config", str(config_file), "--out", str(out2)).returncode == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_run_seed_changes_noisy_output(config_file, tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    invoke("run", "--config", str(config_file), "--out", str(out1))
    invoke("run", "--config", str(config_file), "--set", "seed=1", "--out", str(out2))
    assert out1.read_bytes() != out2.read_bytes()


def test_run_set_overrides(config_file):
    proc = invoke("run", "--config", str(config_file), "--set", "max_ticks=5")
    assert proc.returncode == 0
    assert len(proc.stdout.splitlines()) == 2 + 5


def test_run_jsonl_output(config_file, tmp_path):
    out = tmp_path / "series.jsonl"
    proc = invoke("run", "--config", str(config_file), "--out", str(out))
    assert proc.returncode == 0
    lines = out.read_text().splitlines()
    header = json.loads(lines[0])
    assert header["schema_version"] == 1
    assert header["config"]["levels"] == 2
    assert len(lines) == 1 + 30


def test_validation_failures_exit_1(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("levels = 0\n")
    proc = invoke("run", "--config", str(bad))
    assert proc.returncode == 1
    assert "levels" in proc.stderr

    unknown = tmp_path / "unknown.cfg"
    unknown.write_text("wibble = 3\n")
    proc = invoke("run", "--config", str(unknown))
    assert proc.returncode == 1
    assert "wibble" in proc.stderr

    proc = invoke("run", "--config", str(tmp_path / "missing.cfg"))
    assert proc.returncode == 1


def test_runtime_abort_exits_2(tmp_path):
    cfg = tmp_path / "runaway.cfg"
    cfg.write_text(
        "levels = 3\neta = 0\nsigma_scale = 10\nalpha_scale = 10\nmax_ticks = 5000\n"
    )
    proc = invoke("run", "--config", str(cfg))
    assert proc.returncode == 2
    assert "tick" in proc.stderr


def test_sweep_summary_and_series(config_file, tmp_path):
    out_dir = tmp_path / "sweep"
    proc = invoke(
        "sweep",
        "--config", str(config_file),
        "--axis", "theta",
        "--values", "0,0.1",
        "--out-dir", str(out_dir),
    )
    assert proc.returncode == 0
    lines = proc.stdout.splitlines()
    assert lines[0].startswith("axis,value,convergence_tick,final_delta_world")
    assert len(lines) == 3
    assert lines[1].startswith("theta,0.0,")
    written = sorted(p.name for p in out_dir.iterdir())
    assert written == ["theta_0.0.csv", "theta_0.1.csv"]


def test_sweep_bad_axis_exits_1(config_file):
    proc = invoke("sweep", "--config", str(config_file), "--axis", "nope", "--values", "1")
    assert proc.returncode == 1
    assert "nope" in proc.stderr


def test_scenarios_writes_eight_csvs(tmp_path):
    out_dir = tmp_path / "scen"
    proc = invoke("scenarios", "--out-dir", str(out_dir))
    assert proc.returncode == 0
    names = sorted(p.name for p in out_dir.iterdir())
    assert names == sorted(
        f"{scenario}_L{levels}.csv"
        for scenario in (
            "noiseless_nohammer", "noisy_nohammer", "noiseless_hammer", "noisy_hammer"
        )
        for levels in (4, 6)
    )
    text = (out_dir / "noiseless_nohammer_L4.csv").read_text()
    assert text.splitlines()[0] == "# schema_version=1"
    assert len(text.splitlines()) == 2 + 810
