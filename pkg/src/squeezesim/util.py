# SPDX-FileCopyrightText: 2025 Rose Davidson <rose@metaclassical.com>
# SPDX-License-Identifier: MIT
from __future__ import annotations

import csv
import dataclasses
import io
import logging
import math
import typing

import numpy as np

from .errors import ConfigError

if typing.TYPE_CHECKING:
    import pathlib
    from collections.abc import Iterable, Mapping, Sequence

logger = logging.getLogger(__name__)


@dataclasses.dataclass(kw_only=True, frozen=True)
class CsvTable:
    columns: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]
    comments: tuple[str, ...] = ()

    def column(self, name: str) -> np.ndarray:
        try:
            index = self.columns.index(name)
        except ValueError:
            raise ConfigError(f"CSV has no column {name!r} (columns: {', '.join(self.columns)})") from None
        return np.array([row[index] for row in self.rows])


def format_float(value: float) -> str:
    """
    Render a float with 17 significant digits, so it survives a round trip exactly.

    >>> format_float(0.1)
    '0.10000000000000001'
    >>> format_float(3.0)
    '3'
    """
    return format(float(value), ".17g")


def format_value(value: object) -> str:
    match value:
        case bool():
            return "true" if value else "false"
        case complex():
            return f"{format_float(value.real)}{'+' if value.imag >= 0 or math.isnan(value.imag) else '-'}{format_float(abs(value.imag))}j"
        case float() | np.floating():
            return format_float(float(value))
        case int() | np.integer():
            return str(int(value))
        case np.complexfloating():
            return format_value(complex(value))
        case None:
            return "none"
        case list() | tuple():
            return "[" + ", ".join(format_value(item) for item in value) + "]"
        case _:
            return str(value)


def format_key_values(entries: Mapping[str, object]) -> str:
    """
    One ``key = value`` line per entry.

    >>> print(format_key_values({"solver": "rk4", "dt": 0.5}))
    solver = rk4
    dt = 0.5
    """
    return "\n".join(f"{key} = {format_value(value)}" for key, value in entries.items())


def write_key_values(path: pathlib.Path, entries: Mapping[str, object]):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_key_values(entries) + "\n", encoding="utf-8")
    logger.info("Wrote %s", path)


def write_csv(path: pathlib.Path, columns: Sequence[tuple[str, str]], rows: Iterable[Sequence[object]], comments: Iterable[str] = ()):
    """
    Write a CSV whose header comment block documents every column.

    ``columns`` pairs each column name with the description that goes into the comment block.
    """
    buffer = io.StringIO()
    for comment in comments:
        buffer.write(f"# {comment}\n")
    for name, description in columns:
        buffer.write(f"# {name}: {description}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([name for name, _ in columns])
    for row in rows:
        if len(row) != len(columns):
            raise ValueError(f"Row has {len(row)} values for {len(columns)} columns")
        writer.writerow([format_value(value) for value in row])
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(buffer.getvalue(), encoding="utf-8")
    logger.info("Wrote %s", path)


def read_csv(path: pathlib.Path) -> CsvTable:
    comments = []
    data_lines = []
    with path.open(encoding="utf-8") as handle:
        for line in handle:
            if line.startswith("#"):
                comments.append(line[1:].strip())
            elif line.strip():
                data_lines.append(line)
    if not data_lines:
        raise ConfigError(f"{path} holds no CSV header")
    reader = csv.reader(data_lines)
    columns = tuple(next(reader))
    rows = []
    for number, record in enumerate(reader, start=2):
        if len(record) != len(columns):
            raise ConfigError(f"{path}: data row {number} has {len(record)} fields, header has {len(columns)}")
        try:
            rows.append(tuple(float(field) for field in record))
        except ValueError as exc:
            raise ConfigError(f"{path}: data row {number} is not numeric") from exc
    return CsvTable(columns=columns, rows=tuple(rows), comments=tuple(comments))
