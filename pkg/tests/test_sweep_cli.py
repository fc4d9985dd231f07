import csv
import io
import json
import math

import numpy as np
import pytest

from coupledosc.cli import EXIT_CONVERGENCE, EXIT_DOMAIN, EXIT_OK, EXIT_VERIFY, main, read_config
from coupledosc.core import DomainError, OscillatorPair
from coupledosc.gaussian import Temperature
from coupledosc.sweep import (
    CSV_COLUMNS,
    PRESETS,
    Axis,
    SweepSpec,
    grid,
    resolve_point,
    run_point,
    run_sweep,
    write_csv,
)
from coupledosc.verify import run_verify


def _csv(rows):
    fh = io.StringIO()
    write_csv(rows, fh)
    return fh.getvalue()


def test_axis_parsing():
    axis = Axis.parse("g_ratio:0:0.5:6")
    assert axis == Axis("g_ratio", 0.0, 0.5, 6)
    np.testing.assert_allclose(axis.values(), [0, 0.1, 0.2, 0.3, 0.4, 0.5])


@pytest.mark.parametrize("text", ["g_ratio:0:1.0:5", "omega_ratio:0:1:5", "bogus:0:1:3",
                                  "g_ratio:0:0.5", "g_ratio:0:0.5:1", "beta_omega_minus:-1:2:3"])
def test_bad_axes(text):
    with pytest.raises(DomainError):
        Axis.parse(text)


def test_spec_validation():
    with pytest.raises(DomainError):
        SweepSpec(Axis("g_ratio", 0, 0.5, 3), Axis("g_ratio", 0, 0.5, 3))
    with pytest.raises(DomainError):
        SweepSpec(Axis("g_ratio", 0, 0.5, 3), Axis("omega_ratio", 0.1, 1, 3), "entropy")


def test_resolve_point_uses_cell_omega_minus():
    pair, temp = resolve_point({"omega_ratio": 1.0, "g_ratio": 0.5, "beta_omega_minus": 2.0})
    assert pair == OscillatorPair(1.0, 1.0, 0.5)
    assert temp.beta == pytest.approx(2.0 / math.sqrt(0.5), rel=1e-15)


def test_sweep_is_deterministic_and_ordered():
    spec = SweepSpec(Axis("omega_ratio", 0.2, 1.0, 4), Axis("g_ratio", 0.0, 0.9, 5))
    rows = run_sweep(spec)
    assert [(r.axis1, r.axis2) for r in rows[:2]] == [(0.2, 0.0), (0.2, 0.225)]
    assert _csv(rows) == _csv(run_sweep(spec))
    assert _csv(rows).splitlines()[0] == ",".join(CSV_COLUMNS)


def test_parallel_sweep_matches_serial():
    spec = SweepSpec(Axis("g_ratio", 0.0, 0.9, 4), Axis("beta_omega_minus", 0.5, 5.0, 3),
                     fixed={"omega_ratio": 0.5})
    assert _csv(run_sweep(spec, workers=2)) == _csv(run_sweep(spec))


def test_uncoupled_sweep_is_exactly_one():
    spec = SweepSpec(Axis("omega_ratio", 0.05, 1.0, 20), Axis("g_ratio", 0.0, 0.0, 2))
    values = grid(run_sweep(spec), spec)
    assert np.all(values == 1.0)


def test_display_value_clamps_at_one():
    axes = (Axis("g_ratio", 0.0, 0.5, 3), Axis("beta_omega_minus", 0.2, 2.0, 3))
    clamped = run_sweep(SweepSpec(*axes, fixed={"omega_ratio": 1.0}))
    raw = run_sweep(SweepSpec(*axes, clamp_at_one=False, fixed={"omega_ratio": 1.0}))
    assert any(r.value > 1 for r in clamped)
    for c, r in zip(clamped, raw):
        assert c.display_value == min(c.value, 1.0)
        assert r.display_value == r.value
        assert c.entangled == (c.value < 1)


def test_failing_cells_are_reported_not_fatal():
    spec = SweepSpec(Axis("g_ratio", 0.1, 0.5, 2), Axis("beta_omega_minus", 1e-9, 1.0, 2),
                     fixed={"omega_ratio": 1.0})
    rows = run_sweep(spec)
    bad = [r for r in rows if r.error]
    assert len(bad) == 2 and all(math.isnan(r.value) for r in bad)
    assert "DomainError" in bad[0].error
    assert all(not math.isnan(r.value) for r in rows if not r.error)


@pytest.mark.parametrize("quantity", ["log_negativity", "enhancement"])
def test_other_quantities(quantity):
    spec = SweepSpec(Axis("omega_ratio", 0.5, 1.0, 2), Axis("g_ratio", 0.0, 0.5, 2), quantity)
    rows = run_sweep(spec)
    assert rows[0].value == (0.0 if quantity == "log_negativity" else 1.0)
    assert rows[-1].value > 0


def test_run_point_report():
    report = run_point(OscillatorPair(2.0, 1.0, 0.5), Temperature(3.0))
    assert report["input"]["labels_swapped"] is True
    assert report["input"]["omega"] == 2.0
    assert report["witness"]["value"] == pytest.approx(0.8991733765960792, abs=1e-12)
    assert report["negativity"]["log_negativity"] == pytest.approx(0.16801246159945643, abs=1e-12)
    assert run_point(OscillatorPair(1, 1, 0.5))["input"]["beta"] == "inf"


def test_cli_point_json(capsys):
    assert main(["point", "--omega", "1", "--Omega", "2", "--g", "0.5"]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["witness"]["value"] == pytest.approx(0.8408504789262874, abs=1e-12)
    assert out["snr"]["enhancement_over_sql"] > 0


def test_cli_witness_csv(capsys):
    assert main(["witness", "--g-ratio", "0.5", "--form", "g_form", "--format", "csv"]) == EXIT_OK
    header, row = capsys.readouterr().out.splitlines()
    assert header == "value,bound,entangled,form_used"
    assert row.startswith("0.7618016810571") and row.endswith(",g_form")


def test_cli_oracle_cross_check(capsys):
    assert main(["negativity", "--g", "0.5", "--nmax", "24"]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["oracle_log_negativity"] == pytest.approx(out["log_negativity"], abs=1e-9)


def test_cli_invert(capsys):
    code = main(["invert", "--omega", "1", "--Omega", "2",
                 "--omega-minus", "0.9174353409490471", "--omega-plus", "2.0391940553016723"])
    assert code == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["g"] == pytest.approx(0.5, abs=1e-12)
    assert out["witness"]["value"] == pytest.approx(0.8408504789262874, abs=1e-12)


@pytest.mark.parametrize("argv, invariant", [
    (["witness", "--g", "1.5"], "g < g_c"),
    (["witness", "--omega", "-1"], "omega > 0"),
    (["invert", "--omega", "1", "--Omega", "2", "--omega-minus", "0.9", "--omega-plus", "1.95"],
     "omega_minus <= omega and omega_plus >= Omega"),
    (["sweep", "--axis1", "g_ratio:0:1.2:3", "--axis2", "omega_ratio:0.1:1:3"], "0 <= g_ratio < 1"),
])
def test_cli_domain_errors(argv, invariant, capsys):
    assert main(argv) == EXIT_DOMAIN
    err = json.loads(capsys.readouterr().err)["error"]
    assert err["invariant"] == invariant


def test_cli_convergence_error(capsys):
    assert main(["witness", "--g-ratio", "0.8", "--nmax", "6"]) == EXIT_CONVERGENCE
    assert json.loads(capsys.readouterr().err)["error"]["type"] == "ConvergenceError"


def test_cli_refusal_is_a_convergence_error(capsys):
    assert main(["witness", "--g-ratio", "0.95", "--nmax", "24"]) == EXIT_CONVERGENCE
    assert json.loads(capsys.readouterr().err)["error"]["type"] == "OracleRefusedError"


def test_config_file_and_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# resonant pair\nomega = 1\nOmega = 2  # detuned\ng = 0.5\n")
    assert read_config(cfg) == {"omega": 1.0, "Omega": 2.0, "g": 0.5}
    assert main(["witness", "--config", str(cfg)]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["value"] == pytest.approx(0.8408504789262874)
    assert main(["witness", "--config", str(cfg), "--Omega", "1"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["value"] == pytest.approx(0.7618016810571375)


def test_config_rejects_unknown_keys(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("temperature = 3\n")
    assert main(["witness", "--config", str(cfg)]) == EXIT_DOMAIN
    assert "unknown key" in json.loads(capsys.readouterr().err)["error"]["message"]


def test_cli_sweep_files_are_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert main(["sweep", "--preset", "fig2", "--out", str(path)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    rows = list(csv.DictReader(a.open()))
    assert len(rows) == 2500 and set(rows[0]) == set(CSV_COLUMNS)


def test_cli_custom_sweep_json(capsys):
    argv = ["sweep", "--axis1", "g_ratio:0:0.5:2", "--axis2", "beta_omega_minus:1:2:2",
            "--omega", "1", "--Omega", "1", "--format", "json", "--no-clamp"]
    assert main(argv) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["axis1"] == "g_ratio" and len(out["rows"]) == 4
    assert out["rows"][0]["value"] > 1 and out["rows"][0]["display_value"] > 1


def test_presets_cover_figures():
    assert PRESETS["fig1"].axis1.name == "omega_ratio" and PRESETS["fig1"].axis2.count == 50
    assert PRESETS["fig2"].fixed == {"omega_ratio": 1.0}


def test_verify_passes_and_detects_perturbation(tmp_path):
    assert run_verify("quick").passed
    broken = run_verify("quick", xi_minus_offset=1e-3)
    assert not broken.passed
    assert not broken.checks["ground_duan"].passed
    out = tmp_path / "verify.json"
    assert main(["verify", "--preset", "quick", "--out", str(out)]) == EXIT_OK
    report = json.loads(out.read_text())
    assert report["passed"] and report["analytic_only"][0]["oracle"].startswith("refused")


def test_verify_failure_exit_code(monkeypatch, capsys):
    import coupledosc.cli as cli

    monkeypatch.setattr(cli, "run_verify", lambda preset: run_verify(preset, xi_minus_offset=1e-3))
    assert cli.main(["verify", "--preset", "quick"]) == EXIT_VERIFY
    assert json.loads(capsys.readouterr().out)["passed"] is False


def test_missing_config_file(tmp_path, capsys):
    assert main(["witness", "--config", str(tmp_path / "absent.cfg")]) == EXIT_DOMAIN
    assert json.loads(capsys.readouterr().err)["error"]["type"] == "FileNotFoundError"
