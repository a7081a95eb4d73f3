# SPDX-FileCopyrightText: 2025 Rose Davidson <rose@metaclassical.com>
# SPDX-License-Identifier: MIT
from typer.testing import CliRunner

from squeezesim.cli import app

runner = CliRunner()


def test_run_prints_the_files_it_wrote(out_dir):
    result = runner.invoke(app, ["run", "--scenario", "fig2a", "--set", "points=5", "--out", str(out_dir)])
    assert result.exit_code == 0, result.output
    assert str(out_dir / "fig2a" / "snr_improvement.csv") in result.output
    assert str(out_dir / "fig2a" / "run.txt") in result.output
    assert (out_dir / "fig2a" / "run.txt").exists()


def test_run_with_svg_and_threads(out_dir):
    result = runner.invoke(app, ["-v", "run", "--scenario", "fig2b", "--set", "points=5", "--out", str(out_dir), "--svg", "--threads", "2"])
    assert result.exit_code == 0, result.output
    assert (out_dir / "fig2b" / "snr_vs_tau.svg").exists()
    assert "config.scenario.threads = 2" in (out_dir / "fig2b" / "run.txt").read_text(encoding="utf-8")


def test_config_errors_exit_with_two(out_dir):
    result = runner.invoke(app, ["run", "--scenario", "fig9", "--out", str(out_dir)])
    assert result.exit_code == 2
    assert "Unknown scenario" in result.output


def test_errors_inside_a_scenario_show_the_note(out_dir):
    result = runner.invoke(app, ["run", "--scenario", "figS1a", "--set", "omega_max_fraction=1.5", "--out", str(out_dir)])
    assert result.exit_code == 2
    assert "while running scenario figS1a" in result.output


def test_model_errors_exit_with_one(out_dir):
    arguments = ["run", "--scenario", "custom", "--out", str(out_dir)]
    for setting in ("g=1", "delta_p=10", "delta_s=100", "omega_2pd=5", "kappa_p=0.004", "kappa_s=0.4", "alpha_minus=1", "alpha_plus=0.5", "truncations.pump=4"):
        arguments.extend(("--set", setting))
    result = runner.invoke(app, arguments)
    assert result.exit_code == 1
    assert "top two levels" in result.output


def test_list_scenarios():
    result = runner.invoke(app, ["list-scenarios"])
    assert result.exit_code == 0
    assert "fig1b" in result.output
    assert "tableS1" in result.output


def test_validate_prints_the_resolved_settings(tmp_path, out_dir):
    path = tmp_path / "fig1c.toml"
    path.write_text('[scenario]\nid = "fig1c"\n\n[params]\npoints = 5\n', encoding="utf-8")
    result = runner.invoke(app, ["validate", "--config", str(path), "--set", "c_max=100"])
    assert result.exit_code == 0, result.output
    assert "params.points = 5" in result.output
    assert "params.c_max = 100" in result.output
    assert not (out_dir / "fig1c").exists()


def test_validate_rejects_a_bad_file(tmp_path):
    path = tmp_path / "broken.toml"
    path.write_text("[plot]\nwidth = 3\n", encoding="utf-8")
    result = runner.invoke(app, ["validate", "--config", str(path)])
    assert result.exit_code == 2
    assert "unknown section" in result.output
