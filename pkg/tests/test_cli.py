import json
import subprocess
import sys

import pytest

from blockseries import cli, verify


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize(
    "word, n, expected", [("11", 7, "2"), ("0", 2, "1"), ("1", 0, "0")]
)
def test_count(capsys, word, n, expected):
    code, out, _ = run(capsys, "count", "--word", word, "--base", "2", "--n", str(n))
    assert code == 0 and out.strip() == expected


def test_count_json(capsys):
    code, out, _ = run(capsys, "count", "--word", "011@2", "--n", "3", "--json")
    assert code == 0 and json.loads(out)["count"] == 1


def test_closed_form_text(capsys):
    code, out, _ = run(capsys, "closed-form", "--word", "1", "--base", "2", "--kernel", "deg2")
    assert code == 0
    assert out.strip() == "1/2·gamma + log 2 - 1/2·log pi ≈ 0.409390070086"


def test_closed_form_example_two(capsys):
    code, out, _ = run(capsys, "closed-form", "--word", "0", "--base", "2", "--kernel", "deg3")
    assert code == 0
    assert out.startswith("1/2·gamma - 1/2·log 2 + 1/2·log pi - 1/2 ≈")


def test_closed_form_json_and_base3(capsys):
    code, out, _ = run(capsys, "closed-form", "--word", "1", "--base", "3", "--kernel", "qbase", "--json")
    obj = json.loads(out)
    assert code == 0 and "Psi(1/3)" in obj["render"]
    assert obj["kernel"] == {"type": "qbase", "base": 3}


def test_closed_form_incompatible(capsys):
    code, _, err = run(capsys, "closed-form", "--word", "1", "--base", "3", "--kernel", "deg2")
    assert code == 2 and "base" in err


def test_partial_sum(capsys):
    code, out, _ = run(capsys, "partial-sum", "--word", "1", "--base", "2", "--kernel", "nn1", "--terms", "1e6")
    obj = json.loads(out)
    assert code == 0
    assert abs(obj["value"] - 1.386292) < 1e-5
    assert obj["tail_bound"] <= 2.2e-5
    assert obj["terms"] == 10**6


def test_partial_sum_single_term(capsys):
    code, out, _ = run(capsys, "partial-sum", "--word", "1", "--kernel", "nn1", "--terms", "1")
    assert code == 0 and json.loads(out)["value"] == 0.5


@pytest.mark.parametrize("terms", ["0", "-3", "1.5", "abc"])
def test_bad_terms_is_usage_error(capsys, terms):
    with pytest.raises(SystemExit) as exc:
        cli.main(["partial-sum", "--word", "1", "--kernel", "nn1", "--terms", terms])
    assert exc.value.code == 2


def test_parse_terms():
    assert cli.parse_terms("1e6") == 10**6
    assert cli.parse_terms("2.5E3") == 2500
    assert cli.parse_terms(" 42 ") == 42


def test_digamma(capsys):
    code, out, _ = run(capsys, "digamma", "--p", "1", "--q", "2")
    assert code == 0 and out.strip() == "Psi(1/2) ≈ -1.96351002602"
    code, out, _ = run(capsys, "digamma", "--p", "1", "--q", "1")
    assert out.strip() == "Psi(1) ≈ -0.577215664902"


def test_digamma_gauss_json(capsys):
    code, out, _ = run(capsys, "digamma", "--p", "3", "--q", "4", "--gauss", "--json")
    obj = json.loads(out)
    assert code == 0
    assert abs(obj["gauss"]["value"] - obj["value"]) < 1e-14
    code, _, _ = run(capsys, "digamma", "--p", "5", "--q", "4", "--gauss")
    assert code == 2


def test_transform_forward(capsys):
    code, out, _ = run(capsys, "transform", "--direction", "forward", "--rule", '{"period": ["1"]}', "--length", "5")
    seq = json.loads(out)["sequence"]
    assert code == 0 and seq[4] == "3/1"


def test_transform_round_trip_via_files(capsys, tmp_path):
    src = tmp_path / "r.json"
    src.write_text(json.dumps(["1/2", "-3", "2/3", "0", "5"]))
    code, out, _ = run(capsys, "transform", "--direction", "forward", "--input", str(src))
    fwd = tmp_path / "R.json"
    fwd.write_text(json.dumps(json.loads(out)["sequence"]))
    code, out, _ = run(capsys, "transform", "--direction", "inverse", "--input", str(fwd))
    assert json.loads(out)["sequence"] == ["1/2", "-3/1", "2/3", "0/1", "5/1"]


def test_transform_detect(capsys):
    code, out, _ = run(capsys, "transform", "--direction", "detect", "--word", "0")
    obj = json.loads(out)
    assert code == 0
    assert obj["rule"] == {"preperiod": [], "period": ["0/1", "1/1"]}


def test_transform_usage_errors(capsys):
    assert run(capsys, "transform", "--direction", "forward", "--rule", '{"period": ["1"]}')[0] == 2
    assert run(capsys, "transform", "--direction", "forward")[0] == 2
    assert run(capsys, "transform", "--direction", "detect")[0] == 2


def test_verify_special(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "special")
    assert code == 0
    assert "PASS C07.gauss-digamma[q<=12]" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "special", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["passed"]
    ids = [r["id"] for r in obj["records"]]
    assert ids == sorted(ids)


def test_corrupted_golden_fails(capsys, monkeypatch):
    monkeypatch.setitem(verify.GOLDENS, "logpi", verify.GOLDENS["logpi"] + 1e-9)
    code, out, _ = run(capsys, "verify", "--suite", "special")
    assert code == 1
    assert "FAIL S.log_gamma(1/2)" in out


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "bs.conf"
    cfg.write_text("# defaults\nterms = 1e3\nbase=2\n")
    code, out, _ = run(capsys, "partial-sum", "--word", "1", "--kernel", "deg2", "--config", str(cfg))
    assert code == 0 and json.loads(out)["terms"] == 1000
    # command-line flags win
    code, out, _ = run(capsys, "partial-sum", "--word", "1", "--kernel", "deg2", "--config", str(cfg), "--terms", "10")
    assert json.loads(out)["terms"] == 10
    cfg.write_text("terms\n")
    assert run(capsys, "partial-sum", "--word", "1", "--kernel", "deg2", "--config", str(cfg))[0] == 2


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "blockseries", "partial-sum", "--word", "10", "--kernel", "deg2", "--terms", "3e5"]
    first = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert first == second
