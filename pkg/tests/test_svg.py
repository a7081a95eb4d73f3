# SPDX-FileCopyrightText: 2025 Rose Davidson <rose@metaclassical.com>
# SPDX-License-Identifier: MIT
import math

import pytest
from lxml import etree
from pytest import raises

from squeezesim.errors import ConfigError
from squeezesim.svg import PlotSpec, ReferenceLine, emit_svg, render
from squeezesim.util import CsvTable, read_csv, write_csv

SVG_NS = {"svg": "http://www.w3.org/2000/svg"}


@pytest.fixture
def curves():
    rows = tuple((float(c), 1 / (1 + c), math.exp(-c)) for c in (0.1, 1, 10, 100))
    return CsvTable(columns=("C", "xi2", "other"), rows=rows)


def test_render_draws_each_series(curves):
    spec = PlotSpec(title="squeezing", series=(("C", "xi2"), ("C", "other")), log_x=True, references=(ReferenceLine(y=0.5, label="3 dB"),))
    svg = render(curves, spec)
    series = svg.findall("g[@class='series']")
    assert [group.get("data-column") for group in series] == ["xi2", "other"]
    path = series[0].find("path").get("d")
    assert path.startswith("M")
    assert path.count("L") == 3
    assert svg.find("g[@class='reference']").get("data-y") == "0.5"
    assert svg.find("g[@class='ticks']") is not None
    assert svg.find("text[@class='title']").text == "squeezing"


def test_log_axis_skips_non_positive_values():
    table = CsvTable(columns=("x", "y"), rows=((0.0, 1.0), (1.0, 2.0), (10.0, 3.0)))
    path = render(table, PlotSpec(title="t", series=(("x", "y"),), log_x=True)).find("g[@class='series']/path").get("d")
    assert path.count("M") == 1
    assert path.count("L") == 1


def test_contour_paths_are_closed():
    angles = [2 * math.pi * k / 8 for k in range(9)]
    table = CsvTable(columns=("x", "y"), rows=tuple((math.cos(a), 0.3 * math.sin(a)) for a in angles))
    path = render(table, PlotSpec(title="wigner", series=(("x", "y"),), kind="contour")).find("g[@class='series']/path").get("d")
    assert path.endswith("Z")


def test_nothing_plottable():
    table = CsvTable(columns=("x", "y"), rows=((math.nan, math.nan),))
    with raises(ConfigError, match="Nothing plottable"):
        render(table, PlotSpec(title="t", series=(("x", "y"),)))


@pytest.mark.parametrize(
    ["changes", "message"],
    [
        ({"series": ()}, "at least one series"),
        ({"kind": "bar"}, "Unknown plot kind"),
    ],
)
def test_plot_spec_validation(changes, message):
    with raises(ConfigError, match=message):
        PlotSpec(**({"title": "t", "series": (("x", "y"),)} | changes))


def test_emit_svg_writes_next_to_the_csv(tmp_path):
    csv_path = tmp_path / "snr.csv"
    write_csv(csv_path, [("tau", "time"), ("snr", "ratio")], [(1.0, 1.2), (2.0, 1.9)])
    svg_path = emit_svg(csv_path, PlotSpec(title="snr", series=(("tau", "snr"),), x_label="κτ"))
    assert svg_path == tmp_path / "snr.svg"
    tree = etree.parse(str(svg_path))
    assert tree.getroot().tag == "{http://www.w3.org/2000/svg}svg"
    assert tree.find("svg:text[@class='x-label']", SVG_NS).text == "κτ"
    # the CSV itself is untouched
    assert read_csv(csv_path).column("snr")[1] == 1.9
