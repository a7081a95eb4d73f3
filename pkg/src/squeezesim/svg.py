# SPDX-FileCopyrightText: 2025 Rose Davidson <rose@metaclassical.com>
# SPDX-License-Identifier: MIT
from __future__ import annotations

import dataclasses
import logging
import math
import typing

import numpy as np
from lxml import etree

from .errors import ConfigError
from .util import read_csv

if typing.TYPE_CHECKING:
    import pathlib

    from .util import CsvTable

logger = logging.getLogger(__name__)

WIDTH = 640
HEIGHT = 420
MARGIN = 60
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")
AXIS_STYLE = "stroke: black; stroke-width: 1px; fill: none"
REFERENCE_STYLE = "stroke: gray; stroke-width: 1px; stroke-dasharray: 6 4"
LABEL_STYLE = "font-family: sans-serif; font-size: 12px"


@dataclasses.dataclass(kw_only=True, frozen=True)
class ReferenceLine:
    y: float
    label: str


@dataclasses.dataclass(kw_only=True, frozen=True)
class PlotSpec:
    """
    What to draw from a CSV.

    ``series`` pairs an x column with a y column. ``kind="contour"`` draws each pair as a closed
    curve on equal axes, for Wigner-function level sets.
    """

    title: str
    series: tuple[tuple[str, str], ...]
    kind: typing.Literal["line", "contour"] = "line"
    x_label: str = ""
    y_label: str = ""
    log_x: bool = False
    references: tuple[ReferenceLine, ...] = ()

    def __post_init__(self):
        if not self.series:
            raise ConfigError("A plot needs at least one series")
        if self.kind not in ("line", "contour"):
            raise ConfigError(f"Unknown plot kind {self.kind!r}")


@dataclasses.dataclass(frozen=True)
class _Axis:
    low: float
    high: float
    log: bool
    start: float
    length: float
    flip: bool

    def __call__(self, value: float) -> float:
        if self.log:
            value, low, high = math.log10(value), math.log10(self.low), math.log10(self.high)
        else:
            low, high = self.low, self.high
        fraction = (value - low) / (high - low) if high > low else 0.5
        if self.flip:
            fraction = 1 - fraction
        return self.start + fraction * self.length


def _limits(values: np.ndarray, log: bool) -> tuple[float, float]:
    finite = values[np.isfinite(values)]
    if log:
        finite = finite[finite > 0]
    if finite.size == 0:
        raise ConfigError("Nothing plottable: no finite values" + (" above zero on a log axis" if log else ""))
    low, high = float(finite.min()), float(finite.max())
    if not log and low == high:
        low, high = low - 0.5, high + 0.5
    return low, high


def _points(table: CsvTable, spec: PlotSpec) -> list[tuple[str, np.ndarray, np.ndarray]]:
    return [(y_name, table.column(x_name), table.column(y_name)) for x_name, y_name in spec.series]


def _path(xs: np.ndarray, ys: np.ndarray, x_axis: _Axis, y_axis: _Axis, *, closed: bool) -> str:
    commands = []
    pen_down = False
    for x, y in zip(xs, ys, strict=True):
        if not (math.isfinite(x) and math.isfinite(y)) or (x_axis.log and x <= 0):
            pen_down = False
            continue
        commands.append(f"{'L' if pen_down else 'M'}{x_axis(x):.2f},{y_axis(y):.2f}")
        pen_down = True
    if closed and commands:
        commands.append("Z")
    return " ".join(commands)


def _text(x: float, y: float, content: str, **attributes: str) -> etree._Element:
    element = etree.Element("text", {"x": f"{x:.2f}", "y": f"{y:.2f}", "style": LABEL_STYLE, **attributes})
    element.text = content
    return element


def render(table: CsvTable, spec: PlotSpec) -> etree._Element:
    """Build the SVG tree for ``spec`` over the columns of ``table``."""
    series = _points(table, spec)
    all_x = np.concatenate([xs for _, xs, _ in series])
    all_y = np.concatenate([ys for _, _, ys in series] + [np.array([line.y for line in spec.references])])
    x_low, x_high = _limits(all_x, spec.log_x)
    y_low, y_high = _limits(all_y, False)
    plot_width = WIDTH - 2 * MARGIN
    plot_height = HEIGHT - 2 * MARGIN
    if spec.kind == "contour":
        # equal scales on both axes so ellipses keep their shape
        span = max(x_high - x_low, y_high - y_low)
        x_mid, y_mid = (x_low + x_high) / 2, (y_low + y_high) / 2
        x_low, x_high = x_mid - span / 2 * plot_width / plot_height, x_mid + span / 2 * plot_width / plot_height
        y_low, y_high = y_mid - span / 2, y_mid + span / 2
    x_axis = _Axis(x_low, x_high, spec.log_x, MARGIN, plot_width, False)
    y_axis = _Axis(y_low, y_high, False, MARGIN, plot_height, True)

    svg = etree.Element(
        "svg",
        width=str(WIDTH),
        height=str(HEIGHT),
        viewBox=f"0 0 {WIDTH} {HEIGHT}",
        preserveAspectRatio="xMidYMid",
        xmlns="http://www.w3.org/2000/svg",
    )
    svg.append(_text(WIDTH / 2, MARGIN / 2, spec.title, **{"text-anchor": "middle", "class": "title"}))
    svg.append(etree.Element("rect", {"x": str(MARGIN), "y": str(MARGIN), "width": str(plot_width), "height": str(plot_height), "style": AXIS_STYLE}))

    ticks = etree.Element("g", {"class": "ticks"})
    svg.append(ticks)
    for fraction in (0.0, 0.5, 1.0):
        x_value = 10 ** (math.log10(x_low) + fraction * (math.log10(x_high) - math.log10(x_low))) if spec.log_x else x_low + fraction * (x_high - x_low)
        y_value = y_low + fraction * (y_high - y_low)
        ticks.append(_text(x_axis(x_value), HEIGHT - MARGIN + 16, f"{x_value:.3g}", **{"text-anchor": "middle"}))
        ticks.append(_text(MARGIN - 6, y_axis(y_value) + 4, f"{y_value:.3g}", **{"text-anchor": "end"}))
    if spec.x_label:
        svg.append(_text(WIDTH / 2, HEIGHT - 12, spec.x_label, **{"text-anchor": "middle", "class": "x-label"}))
    if spec.y_label:
        svg.append(_text(14, HEIGHT / 2, spec.y_label, **{"text-anchor": "middle", "class": "y-label", "transform": f"rotate(-90 14 {HEIGHT / 2})"}))

    for line in spec.references:
        group = etree.Element("g", {"class": "reference", "data-y": repr(line.y)})
        svg.append(group)
        y = y_axis(line.y)
        group.append(etree.Element("line", x1=str(MARGIN), y1=f"{y:.2f}", x2=str(MARGIN + plot_width), y2=f"{y:.2f}", style=REFERENCE_STYLE))
        group.append(_text(MARGIN + plot_width - 4, y - 4, line.label, **{"text-anchor": "end"}))

    for index, (name, xs, ys) in enumerate(series):
        colour = PALETTE[index % len(PALETTE)]
        group = etree.Element("g", {"class": "series", "data-column": name})
        svg.append(group)
        group.append(
            etree.Element(
                "path",
                {"d": _path(xs, ys, x_axis, y_axis, closed=spec.kind == "contour"), "style": f"stroke: {colour}; stroke-width: 1.5px; fill: none"},
            )
        )
        group.append(_text(MARGIN + 8, MARGIN + 16 + 14 * index, name, style=f"{LABEL_STYLE}; fill: {colour}", **{"class": "legend"}))
    return svg


def emit_svg(csv_path: pathlib.Path, spec: PlotSpec, svg_path: pathlib.Path | None = None) -> pathlib.Path:
    """Render ``csv_path`` to a standalone SVG next to it (or at ``svg_path``)."""
    table = read_csv(csv_path)
    svg_path = svg_path or csv_path.with_suffix(".svg")
    tree = render(table, spec)
    svg_path.write_bytes(etree.tostring(tree, pretty_print=True, xml_declaration=True, encoding="utf-8"))
    logger.info("Wrote %s", svg_path)
    return svg_path
