import json

import pytest

from cli.app import build_parser, main
from cli.config import Config, load_config
from utils.constants import EXIT_NUMERICAL, EXIT_OK, EXIT_VALIDATION
from utils.errors import ConfigError

DATA = ["--a", "1", "--b", "1", "--phi", "3"]


def _write_config(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_classify_prints_the_verdict(capsys):
    status = main(["classify", *DATA, "--seed-x", "0.1666667", "--section", "pi/2"])
    assert status == EXIT_OK
    assert capsys.readouterr().out.strip() == "Unduloid neck=0.1666667 complete=true"


def test_parabolic_data_is_refused(capsys):
    status = main(["classify", "--a", "1", "--b", "1", "--phi", "-1", "--seed", "equilibrium"])
    assert status == EXIT_VALIDATION
    assert "parabolic character out of scope" in capsys.readouterr().err


def test_orbit_then_verify(tmp_path, capsys):
    out = tmp_path / "orbit.csv"
    assert main(["orbit", *DATA, "--seed", "x=1/6", "--out", str(out)]) == EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    assert summary["closed"]
    assert out.read_text().startswith("s,x,theta,z,kappa1,kappa2,H,K,residual\n")

    assert main(["verify", str(out), *DATA]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["passed"]


def test_verify_with_other_phi_fails(tmp_path, capsys):
    out = tmp_path / "orbit.csv"
    main(["orbit", *DATA, "--seed", "x=1/6", "--out", str(out)])
    capsys.readouterr()
    assert main(["verify", str(out), "--a", "1", "--b", "1", "--phi", "2"]) == EXIT_NUMERICAL
    assert "exceeds" in capsys.readouterr().err


def test_unknown_config_key_writes_nothing(tmp_path, capsys):
    config = _write_config(tmp_path / "run.toml", 'a = 1\nb = 1\nphi = "3"\ncolour = "red"\n')
    out = tmp_path / "orbit.csv"
    status = main(["orbit", "--config", config, "--seed", "x=1/6", "--out", str(out)])
    assert status == EXIT_VALIDATION
    assert "colour" in capsys.readouterr().err
    assert not out.exists()


def test_config_values_and_flag_overrides(tmp_path, capsys):
    config = _write_config(tmp_path / "run.toml", 'a = 1\nb = 1\nphi = "2"\nseeds = ["x=1/6"]\nh_max = 0.01\n')
    assert main(["classify", "--config", config, "--phi", "3"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("Unduloid neck=0.1666667")


def test_missing_phi_is_a_config_error(capsys):
    assert main(["thresholds", "--a", "1", "--b", "1"]) == EXIT_VALIDATION
    assert "missing value for 'phi'" in capsys.readouterr().err


def test_section_needs_seed_x(capsys):
    assert main(["classify", *DATA, "--section", "pi/2"]) == EXIT_VALIDATION


def test_sweep_reports_failures(tmp_path, capsys):
    report = tmp_path / "report.json"
    status = main([
        "classify", *DATA,
        "--seed", "equilibrium", "--seed", "x=1@3*pi/2", "--seed", "x=1/6",
        "--workers", "2", "--report", str(report),
    ])
    assert status == EXIT_NUMERICAL
    captured = capsys.readouterr()
    lines = captured.out.strip().splitlines()
    assert lines[0].startswith("equilibrium: Cylinder")
    assert lines[1].startswith("x=1/6: Unduloid")
    assert "x=1@3*pi/2: NearSingular" in captured.err
    data = json.loads(report.read_text())
    assert data["failures"] == 1
    assert data["families"] == {"Cylinder": 1, "Unduloid": 1}
    assert [record["seed"] for record in data["records"]] == ["equilibrium", "x=1@3*pi/2", "x=1/6"]


def test_thresholds_for_hyperbolic_data(capsys):
    assert main(["thresholds", "--a", "1", "--b", "1", "--phi", "-1.5"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["x_c"] == pytest.approx(4 / 3)
    assert data["x_infty"] == pytest.approx(4 / 3, abs=1e-6)
    assert data["x_plus"] is None


def test_radial_command(tmp_path, capsys):
    out = tmp_path / "radial.csv"
    assert main(["radial", *DATA, "--delta", "0.3", "--n", "64", "--out", str(out)]) == EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    assert summary["delta"] == 0.3
    assert summary["max_ratio"] < 1
    assert summary["contracting"] is True
    assert len(out.read_text().splitlines()) == 66


def test_radial_command_for_hyperbolic_data(tmp_path, capsys):
    out = tmp_path / "radial.csv"
    assert main(["radial", "--a", "1", "--b", "1", "--phi", "-3", "--out", str(out)]) == EXIT_VALIDATION
    assert not out.exists()


def test_mesh_command(tmp_path):
    out = tmp_path / "sphere.obj"
    assert main(["mesh", *DATA, "--seed", "radial", "--segments", "8", "--out", str(out)]) == EXIT_OK
    text = out.read_text()
    assert text.startswith("# generator 3\n# segments 8\n")
    assert "\nf " in text


def test_portrait_command(tmp_path):
    out = tmp_path / "portrait.svg"
    assert main(["portrait", *DATA, "--seed", "equilibrium", "--seed", "x=1/6", "--out", str(out)]) == EXIT_OK
    assert "<svg" in out.read_text()


def test_orbit_needs_a_seed(tmp_path, capsys):
    assert main(["orbit", *DATA, "--out", str(tmp_path / "o.csv")]) == EXIT_VALIDATION
    assert "needs a seed" in capsys.readouterr().err


def test_allow_vanishing_only_where_declared():
    parser = build_parser()
    args = parser.parse_args(["orbit", *DATA, "--allow-vanishing", "--out", "o.csv"])
    assert args.allow_vanishing
    with pytest.raises(SystemExit):
        parser.parse_args(["classify", *DATA, "--allow-vanishing"])


def test_load_config(tmp_path):
    config = load_config(_write_config(tmp_path / "run.toml", 'a = 2\nb = -1\nphi = "0.5"\nrtol = 1e-9\n'))
    assert config == Config(a=2.0, b=-1.0, phi="0.5", seeds=[], tolerances={"rtol": 1e-9})
    inputs = config.resolve()
    assert inputs.settings.rtol == 1e-9
    assert inputs.params.b == -1.0


@pytest.mark.parametrize("text", [
    'a = "one"\n',
    'seeds = "x=1"\n',
    "a = \n",
])
def test_bad_config_files(tmp_path, text):
    with pytest.raises(ConfigError):
        load_config(_write_config(tmp_path / "bad.toml", text))


def test_non_positive_tolerance_is_refused():
    with pytest.raises(ConfigError):
        Config(a=1.0, b=1.0, phi="3", tolerances={"rtol": 0.0}).resolve()


def test_report_with_thresholds(tmp_path, capsys):
    report = tmp_path / "report.json"
    status = main(["classify", *DATA, "--seed", "x=1/6", "--report", str(report), "--with-thresholds"])
    assert status == EXIT_OK
    data = json.loads(report.read_text())
    assert data["thresholds"]["x_plus"] == pytest.approx(1.0, abs=1e-6)
    assert data["thresholds"]["sphere_radius"] == pytest.approx(1.0)
    assert data["thresholds"]["x_infty"] is None
    assert [record["family"] for record in data["records"]] == ["Unduloid"]
