# SPDX-FileCopyrightText: 2025 Rose Davidson <rose@metaclassical.com>
# SPDX-License-Identifier: MIT
import logging
import pathlib
from typing import Annotated, Optional

import typer
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from .config import SCHEMAS, parse_config
from .errors import ConfigError, SqueezeSimError
from .scenarios import run
from .util import format_key_values

app = typer.Typer(no_args_is_help=True)

err_console = Console(stderr=True)

LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


@app.callback()
def callback(
    verbose: Annotated[int, typer.Option("--verbose", "-v", count=True, help="Log more; repeat for debug output")] = 0,
):
    """
    Squeezesim simulates a degenerate parametric amplifier and the qubit readouts it enables.
    """
    logging.basicConfig(level=LOG_LEVELS[min(verbose, len(LOG_LEVELS) - 1)], format="%(levelname)s %(name)s %(message)s")


def _fail(exc: SqueezeSimError) -> typer.Exit:
    err_console.print(f"[bold red]error:[/bold red] {escape(str(exc))}", highlight=False, soft_wrap=True)
    for note in getattr(exc, "__notes__", ()):
        err_console.print(f"  {escape(note)}", highlight=False, soft_wrap=True)
    return typer.Exit(code=2 if isinstance(exc, ConfigError) else 1)


@app.command("run")
def run_scenario(
    scenario: Annotated[Optional[str], typer.Option(help="Scenario id; overrides the config file's [scenario] id")] = None,
    config: Annotated[
        Optional[pathlib.Path],
        typer.Option(help="Path to a TOML scenario config", exists=True, dir_okay=False, readable=True),
    ] = None,
    set_: Annotated[Optional[list[str]], typer.Option("--set", help="Override a setting, as section.key=value or key=value")] = None,
    out: Annotated[Optional[pathlib.Path], typer.Option(help="Root directory for outputs", file_okay=False)] = None,
    svg: Annotated[bool, typer.Option(help="Also render an SVG next to each plotted CSV")] = False,
    threads: Annotated[Optional[int], typer.Option(help="Worker threads for independent points")] = None,
):
    """
    Run one scenario and write its CSVs and run record under OUT/<scenario>/.
    """
    try:
        parsed = parse_config(config, scenario=scenario, overrides=set_ or (), out=out, threads=threads, svg=svg or None)
        record = run(parsed)
    except SqueezeSimError as exc:
        raise _fail(exc) from exc
    for path in record.files:
        typer.echo(str(path))
    typer.echo(str(record.path))
    for message in record.warnings:
        err_console.print(f"[yellow]warning:[/yellow] {escape(message)}", highlight=False, soft_wrap=True)


@app.command("list-scenarios")
def list_scenarios():
    """
    List the scenarios this tool can run.
    """
    table = Table("id", "summary", "slow")
    for scenario_id, schema in SCHEMAS.items():
        table.add_row(scenario_id, schema.summary, "yes" if schema.slow else "")
    Console().print(table)


@app.command(no_args_is_help=True)
def validate(
    config: Annotated[pathlib.Path, typer.Option(help="Path to a TOML scenario config", exists=True, dir_okay=False, readable=True)],
    set_: Annotated[Optional[list[str]], typer.Option("--set", help="Override a setting, as section.key=value or key=value")] = None,
):
    """
    Check a config without running it, and print the resolved settings.
    """
    try:
        parsed = parse_config(config, overrides=set_ or ())
    except SqueezeSimError as exc:
        raise _fail(exc) from exc
    typer.echo(format_key_values(parsed.snapshot()))
