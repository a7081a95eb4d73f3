# SPDX-FileCopyrightText: 2025 Rose Davidson <rose@metaclassical.com>
# SPDX-License-Identifier: MIT
import math

import numpy as np
import pytest
from pytest import raises

from squeezesim.errors import ConfigError
from squeezesim.util import format_key_values, format_value, read_csv, write_csv, write_key_values


@pytest.mark.parametrize(
    ["value", "expected"],
    [
        (True, "true"),
        (False, "false"),
        (None, "none"),
        (3, "3"),
        (np.int64(4), "4"),
        (0.25, "0.25"),
        (np.float64(0.1), "0.10000000000000001"),
        (1.5 - 2j, "1.5-2j"),
        (np.complex128(0.5 + 1j), "0.5+1j"),
        ([1, 0.5], "[1, 0.5]"),
        (("a", None), "[a, none]"),
        ("rk4", "rk4"),
        (math.inf, "inf"),
    ],
)
def test_format_value(value, expected):
    assert format_value(value) == expected


def test_key_values(tmp_path):
    entries = {"scenario": "fig2b", "config.points": 5, "svg": False}
    assert format_key_values(entries) == "scenario = fig2b\nconfig.points = 5\nsvg = false"
    path = tmp_path / "nested" / "run.txt"
    write_key_values(path, entries)
    assert path.read_text(encoding="utf-8").endswith("svg = false\n")


def test_csv_keeps_full_precision(tmp_path):
    path = tmp_path / "table.csv"
    write_csv(path, [("x", "position"), ("y", "value")], [(0.1, 1 / 3), (2, math.inf)], comments=["made by a test"])
    table = read_csv(path)
    assert table.columns == ("x", "y")
    assert table.comments == ("made by a test", "x: position", "y: value")
    assert table.column("y")[0] == 1 / 3
    assert table.column("y")[1] == math.inf
    assert table.rows[0][0] == 0.1


def test_csv_row_length_is_checked(tmp_path):
    with raises(ValueError, match="Row has 1 values"):
        write_csv(tmp_path / "bad.csv", [("x", ""), ("y", "")], [(1.0,)])


def test_missing_column(tmp_path):
    path = tmp_path / "table.csv"
    write_csv(path, [("x", "")], [(1.0,)])
    with raises(ConfigError, match="CSV has no column"):
        read_csv(path).column("y")


@pytest.mark.parametrize(
    ["text", "message"],
    [
        ("# only comments\n", "holds no CSV header"),
        ("x,y\n1,two\n", "not numeric"),
        ("x,y\n1,2,3\n", "has 3 fields"),
    ],
)
def test_read_csv_errors(tmp_path, text, message):
    path = tmp_path / "broken.csv"
    path.write_text(text, encoding="utf-8")
    with raises(ConfigError, match=message):
        read_csv(path)
