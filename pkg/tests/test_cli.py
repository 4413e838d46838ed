import json

import jsonschema
import pytest

from freesub.cli import main
from freesub.periods import PERIOD_SCHEMA
from freesub.reduce import JSON_SCHEMA


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_counts(capsys):
    code, out, _ = run(capsys, "counts", "--family", "modular3", "--m", "1", "--count", "3")
    assert code == 0 and out.strip() == "5 60 1105"
    code, out, _ = run(capsys, "counts", "--family", "hecke4", "--m", "1", "--count", "3")
    assert code == 0 and out.strip() == "3 24 297"


def test_counts_bad_config_exit2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["counts", "--family", "modular3", "--count", "0"])
    assert exc.value.code == 2


def test_counts_json(capsys):
    code, out, _ = run(capsys, "counts", "--family", "modular3", "--count", "2", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"family": "modular3", "m": 1, "values": [5, 60]}


def test_pade_family_shortcut(capsys):
    code, out, _ = run(capsys, "pade", "--family", "modular3", "--m", "1", "--n", "1")
    assert code == 0
    assert "P: 1 + -7*z" in out
    assert "Q: 1 + -12*z" in out
    assert "residual: 385" in out
    assert "route: closed-form" in out


def test_pade_verify(capsys):
    code, out, _ = run(
        capsys, "pade", "--A", "4", "--B", "6", "--C", "1", "--D", "0", "--n", "3", "--verify"
    )
    assert code == 0
    assert "identity: OK" in out
    assert "gosper: OK" in out


def test_pade_degenerate_fallback_and_exit3(capsys):
    code, out, _ = run(capsys, "pade", "--A", "0", "--B", "1", "--C", "0", "--D", "0", "--n", "2")
    assert code == 0 and "route: oracle" in out
    code, _, err = run(
        capsys,
        "pade",
        "--A", "0", "--B", "1", "--C", "0", "--D", "0",
        "--n", "2",
        "--closed-form-only",
    )
    assert code == 3 and "degenerate" in err


def test_reduce_latex(capsys):
    code, out, _ = run(
        capsys, "reduce", "--family", "modular3", "--p", "7", "--alpha", "5", "--format", "latex"
    )
    assert code == 0
    assert r"\frac{2401}{(1+2z)^5}" in out


def test_reduce_json_schema(capsys):
    code, out, _ = run(
        capsys, "reduce", "--family", "modular3", "--p", "13", "--alpha", "2", "--format", "json"
    )
    assert code == 0
    jsonschema.validate(json.loads(out), JSON_SCHEMA)


def test_reduce_degree_bound_exit4(capsys):
    code, _, err = run(
        capsys,
        "reduce",
        "--family", "modular3", "--p", "7", "--alpha", "5",
        "--length", "8", "--window", "100000",
    )
    assert code == 4
    assert "length" in err  # the message names the knob to raise


def test_pfrac(capsys):
    code, out, _ = run(capsys, "pfrac", "--family", "modular3", "--p", "7", "--alpha", "5")
    assert code == 0
    assert "(1+2z)^1: 16451" in out
    assert "(1+2z)^5: 2401" in out


def test_period_text(capsys):
    code, out, _ = run(capsys, "period", "--family", "modular3", "--p", "13", "--alpha", "1")
    assert code == 0
    assert "period=12" in out and "predicted=12" in out and "match=yes" in out


def test_period_json_schema(capsys):
    code, out, _ = run(
        capsys, "period", "--family", "modular3", "--p", "7", "--alpha", "2", "--format", "json"
    )
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, PERIOD_SCHEMA)
    assert data["period"] == 42 and data["match"] is True


def test_period_horizon_exit5(capsys):
    code, _, err = run(
        capsys,
        "period",
        "--family", "modular3", "--p", "7", "--alpha", "2", "--horizon", "40",
    )
    assert code == 5


def test_lemmas(capsys):
    code, out, _ = run(capsys, "lemmas", "--family", "modular3", "--p", "7", "--n-max", "29")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("n=")]
    assert lines and all(l.endswith("OK") for l in lines)
    assert "evidence, not proof" in out


def test_reproduce_golden_displays(capsys):
    for name in ("free7^5", "free11^5", "free13^5"):
        code, out, _ = run(capsys, "reproduce", name)
        assert code == 0, name
        assert "OK" in out


def test_reproduce_periods17_mismatch_is_reported(capsys):
    # the quoted value for 17^2 is not the minimal period; the preset
    # surfaces the diff and exits 6
    code, out, err = run(capsys, "reproduce", "periods-17", "--tier", "fast")
    assert code == 6
    assert "period=1632" in out and "period=4896" in out
    assert "divide" in err


def test_reproduce_unknown_exit2(capsys):
    code, _, _ = run(capsys, "reproduce", "nonsense")
    assert code == 2


def test_determinism_byte_identical(capsys):
    a = run(capsys, "reduce", "--family", "modular3", "--p", "13", "--alpha", "5", "--format", "json")
    b = run(capsys, "reduce", "--family", "modular3", "--p", "13", "--alpha", "5", "--format", "json")
    assert a == b


def test_env_config_defaults(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"format": "json", "family": "modular3"}))
    monkeypatch.setenv("FREESUB_CONFIG", str(cfg))
    code, out, _ = run(capsys, "counts", "--count", "2")
    assert code == 0
    assert json.loads(out)["values"] == [5, 60]
