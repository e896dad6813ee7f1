import json
import subprocess
import sys

import pytest

from logbm.cli import main


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


@pytest.fixture
def files(tmp_path):
    return {
        "cube2": write(tmp_path, "cube2.json", {"kind": "cube", "dim": 2}),
        "cube3": write(tmp_path, "cube3.json", {"kind": "cube", "dim": 3}),
        "seg": write(tmp_path, "seg.json", {"kind": "segment", "vector": ["1", "0"]}),
        "e1": write(tmp_path, "e1.json", {"kind": "maxForm", "omega": [["1", "0"]]}),
        "bad": write(tmp_path, "bad.json", {"kind": "vertices", "points": [["1/0", "1"], ["-1", "-1"]]}),
        "tmp": tmp_path,
    }


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_theorem_1_4(files, capsys):
    code, out, _ = run(["verify", files["cube2"], files["e1"], "--checks", "theorem_1_4",
                        "--deterministic"], capsys)
    assert code == 0
    doc = json.loads(out)
    r = doc["reports"][0] if "reports" in doc else doc["report"]
    assert r["lhs"] == "4" and r["rhs"] == "4" and r["equality"]
    assert "header" not in doc and doc["schemaVersion"] == 1


def test_verify_float_and_table(files, capsys):
    code, out, _ = run(["verify", files["cube2"], files["seg"], "--checks", "logbm_conjecture",
                        "holder", "--mode", "float", "--format", "table"], capsys)
    assert code == 0
    assert "logbm_conjecture" in out and "holder" in out and "float" in out


def test_bad_spec_exit_2(files, capsys):
    code, _, err = run(["verify", files["bad"], "--checks", "theorem_1_7", "--v", "1,0"], capsys)
    assert code == 2 and "K.points[0][0]" in err and "zero denominator" in err
    code, _, err = run(["verify", files["cube2"], "--checks", "theorem_1_7", "--v", "1,0,0"], capsys)
    assert code == 2 and "--v" in err
    code, _, _ = run(["verify", str(files["tmp"] / "missing.json"), "--checks", "holder"], capsys)
    assert code == 2


def test_unknown_flag_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["verify", "--bogus"])
    assert e.value.code == 2


def test_mixed_volumes(files, capsys):
    code, out, _ = run(["mixed-volumes", files["cube2"], files["seg"], "--format", "table"], capsys)
    assert code == 0 and out.strip() == "4, 2, 0"
    code, out, _ = run(["mixed-volumes", files["cube3"], files["cube3"], "--deterministic"], capsys)
    assert json.loads(out)["mixedVolumes"] == ["8", "8", "8", "8"]


def test_demos(capsys):
    code, out, _ = run(["demo", "false-inequality", "--dim", "2", "3", "--format", "table"], capsys)
    assert code == 0
    assert "n=3: violated: 2 > 3/2" in out and "n=2: holds: 2 <= 2" in out
    code, out, _ = run(["demo", "cube-remark", "--dim", "2", "--trials", "1", "--format", "table"], capsys)
    assert "phi=(1, 1): rem3 8 = 8" in out
    code, out, _ = run(["demo", "hexagon", "--format", "table"], capsys)
    assert code == 0 and "1/10" in out


def test_campaign_deterministic_output(files, capsys):
    out_a = files["tmp"] / "a.json"
    out_b = files["tmp"] / "b.json"
    base = ["campaign", "--dim", "2", "--trials", "3", "--seed", "5", "--deterministic",
            "--checks", "theorem_1_4", "holder"]
    assert main(base + ["--out", str(out_a)]) == 0
    assert main(base + ["--out", str(out_b)]) == 0
    assert out_a.read_bytes() == out_b.read_bytes()
    summary = json.loads(out_a.read_text())["summary"]
    assert summary["perCheck"]["holder"]["violations"] == 0
    code, out, _ = run(["campaign", "--dim", "2", "--trials", "2", "--checks", "holder",
                        "--margins", "--format", "table"], capsys)
    assert code == 0 and "n=2" in out


def test_campaign_config_error(files, capsys):
    cfg = write(files["tmp"], "cfg.json", {"dims": [2], "checks": ["nope"]})
    code, _, err = run(["campaign", "--config", cfg], capsys)
    assert code == 2 and "config" in err


def test_inconsistency_exit_3(files, capsys, monkeypatch):
    import logbm.cli as cli
    from logbm.errors import InternalInconsistency

    def boom(*a, **k):
        raise InternalInconsistency("forced", {"K": "x"})

    monkeypatch.setattr(cli, "mixed_volumes", boom)
    code, _, err = run(["mixed-volumes", files["cube2"], files["seg"]], capsys)
    assert code == 3 and "internal inconsistency" in err


def test_console_script_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "logbm.cli", "demo", "false-inequality",
                           "--format", "table"], capture_output=True, text=True)
    assert proc.returncode == 0 and "violated" in proc.stdout
