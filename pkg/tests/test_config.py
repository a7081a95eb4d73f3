# SPDX-FileCopyrightText: 2025 Rose Davidson <rose@metaclassical.com>
# SPDX-License-Identifier: MIT
import logging
import math
import pathlib

import pytest
from pytest import raises

from squeezesim.config import DEFAULT_OUT, SCHEMAS, parse_config, parse_override
from squeezesim.errors import ConfigError

CUSTOM = """
[scenario]
id = "custom"

[params]
g = 1.0
delta_p = 10.0
delta_s = 100.0
omega_2pd = 5.0
kappa_p = 0.004
kappa_s = 0.4
alpha_minus = 1.0
alpha_plus = 0.5
"""


def write_config(tmp_path: pathlib.Path, text: str) -> pathlib.Path:
    path = tmp_path / "scenario.toml"
    path.write_text(text, encoding="utf-8")
    return path


def test_presets_fill_every_setting():
    config = parse_config(scenario="fig2b", environ={})
    assert config.params["tau_max"] == 10.0
    assert config.params["points"] == 121
    assert config.solver["integrator"] == "rk4"
    assert config.truncations["policy"] == "strict"
    assert config.out == DEFAULT_OUT
    assert config.threads == 1
    assert config.output_dir == DEFAULT_OUT / "fig2b"


def test_scenario_presets_override_solver_defaults():
    config = parse_config(scenario="figS6", environ={})
    assert config.solver["direct_max_dim"] == 400
    assert config.truncations == {"pump": 15, "signal": 10, "policy": "report"}
    assert config.params["ratio"] == 0.7


def test_every_scenario_except_custom_runs_from_its_preset():
    for scenario_id, schema in SCHEMAS.items():
        if scenario_id == "custom":
            assert set(schema.required) == {"g", "delta_p", "delta_s", "omega_2pd", "kappa_p", "kappa_s", "alpha_minus", "alpha_plus"}
        else:
            assert schema.required == ()


def test_custom_needs_its_parameters(tmp_path):
    with raises(ConfigError, match="Scenario custom requires \\[params\\] keys: g, delta_p"):
        parse_config(scenario="custom", environ={})
    config = parse_config(write_config(tmp_path, CUSTOM), environ={})
    assert config.scenario == "custom"
    assert config.params["alpha_plus"] == 0.5
    assert config.params["chi_z"] == 0.0


def test_unknown_key_is_an_error_when_strict():
    with raises(ConfigError, match="has no \\[params\\] key gamma"):
        parse_config(scenario="fig1c", overrides=["gamma=1"], environ={})


def test_unknown_key_is_logged_when_lenient(caplog):
    with caplog.at_level(logging.WARNING, logger="squeezesim.config"):
        config = parse_config(scenario="fig1c", overrides=["scenario.strict=false", "gamma=1", "beta=2"], environ={})
    assert "has no [params] keys beta, gamma; ignoring" in caplog.text
    assert "gamma" not in config.params
    assert not config.strict


@pytest.mark.parametrize(
    ["override", "message"],
    [
        ("points=1.5", "expected an integer"),
        ("c_min=true", "expected a number"),
        ("ratios=[]", "non-empty array"),
        ("ratios=[0.5, true]", "array of numbers"),
        ("solver.integrator=euler", "expected one of rk4, adaptive"),
        ("solver.renormalize=1", "expected true or false"),
    ],
)
def test_values_are_type_checked(override, message):
    with raises(ConfigError, match=message):
        parse_config(scenario="fig1c", overrides=[override], environ={})


def test_integers_widen_to_floats():
    config = parse_config(scenario="fig1c", overrides=["c_max=100", "ratios=[0.5, 1]"], environ={})
    assert config.params["c_max"] == 100.0
    assert isinstance(config.params["c_max"], float)
    assert config.params["ratios"] == (0.5, 1.0)


def test_infinity_in_arrays():
    config = parse_config(scenario="fig2a", overrides=["cooperativities=[5, inf]"], environ={})
    assert config.params["cooperativities"] == (5.0, math.inf)


@pytest.mark.parametrize(
    ["text", "message"],
    [
        ("[scenario]\nid = \n", "is not valid TOML"),
        ("[plot]\nwidth = 3\n", "unknown section \\[plot\\]"),
        ("params = 3\n", "must be a \\[params\\] section"),
        ("[params]\n[params.inner]\nx = 1\n", "must be a plain value"),
        ("[scenario]\ncolour = \"red\"\n", "has no \\[scenario\\] key colour"),
    ],
)
def test_malformed_files(tmp_path, text, message):
    with raises(ConfigError, match=message):
        parse_config(write_config(tmp_path, text), scenario="fig1c", environ={})


def test_missing_file(tmp_path):
    with raises(ConfigError, match="Cannot read config"):
        parse_config(tmp_path / "absent.toml", environ={})


def test_scenario_must_be_known():
    with raises(ConfigError, match="No scenario given"):
        parse_config(environ={})
    with raises(ConfigError, match="Unknown scenario 'fig9'"):
        parse_config(scenario="fig9", environ={})


def test_flag_scenario_wins_over_the_file(tmp_path):
    path = write_config(tmp_path, '[scenario]\nid = "fig1c"\n')
    assert parse_config(path, scenario="fig2a", environ={}).scenario == "fig2a"


@pytest.mark.parametrize(
    ["text", "expected"],
    [
        ("points=5", ("params", "points", 5)),
        ("solver.dt = 0.01", ("solver", "dt", 0.01)),
        ("scenario.out=results", ("scenario", "out", "results")),
        ("truncations.policy=report", ("truncations", "policy", "report")),
    ],
)
def test_parse_override(text, expected):
    assert parse_override(text) == expected


@pytest.mark.parametrize(["text", "message"], [("points", "key=value"), ("=5", "key=value"), ("plot.width=3", "unknown section")])
def test_bad_overrides(text, message):
    with raises(ConfigError, match=message):
        parse_override(text)


def test_threads_and_out_precedence(tmp_path):
    path = write_config(tmp_path, '[scenario]\nid = "fig1c"\nthreads = 2\nout = "from-file"\n')
    from_file = parse_config(path, environ={})
    assert from_file.threads == 2
    assert from_file.out == pathlib.Path("from-file")
    environ = {"SQUEEZESIM_THREADS": "3", "SQUEEZESIM_OUT": "from-env"}
    from_env = parse_config(path, environ=environ)
    assert from_env.threads == 3
    assert from_env.out == pathlib.Path("from-env")
    from_flags = parse_config(path, threads=4, out=tmp_path / "flag", environ=environ)
    assert from_flags.threads == 4
    assert from_flags.out == tmp_path / "flag"


def test_thread_count_is_checked():
    with raises(ConfigError, match="at least one worker thread"):
        parse_config(scenario="fig1c", threads=0, environ={})
    with raises(ConfigError, match="is not an integer"):
        parse_config(scenario="fig1c", environ={"SQUEEZESIM_THREADS": "many"})


def test_snapshot_is_flat():
    snapshot = parse_config(scenario="tableS1", svg=True, environ={}).snapshot()
    assert snapshot["scenario.id"] == "tableS1"
    assert snapshot["scenario.svg"] is True
    assert snapshot["params.r"] == 2.0
    assert snapshot["solver.integrator"] == "rk4"
    assert snapshot["truncations.policy"] == "strict"
