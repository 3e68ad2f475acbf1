"""Command-line entry points (`assess ...`)."""

from __future__ import annotations

import csv
import json
import sys
from pathlib import Path

import click

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from .kb import KbError, builtin_kb, load_kb, validate_kb
from .metrics import MetricsConfig, config_from_mapping
from .pipeline import compute_report, render_report
from .questionnaires import (
    TLX_DIMENSIONS,
    SusResponse,
    TlxResponse,
    sus_adjective,
    sus_score,
    tlx_raw,
    tlx_weighted,
)
from .trace import TraceError, parse_trace


def _load_kb_option(kb_path: str | None):
    if kb_path is None:
        return builtin_kb()
    try:
        return load_kb(Path(kb_path).read_text(encoding="utf-8"))
    except KbError as e:
        raise click.ClickException(str(e))


def _load_config_option(config_path: str | None) -> MetricsConfig:
    if config_path is None:
        return MetricsConfig()
    with open(config_path, "rb") as fh:
        data = tomllib.load(fh)
    try:
        return config_from_mapping(data)
    except ValueError as e:
        raise click.ClickException(str(e))


def _read_trace(trace_path: str) -> str:
    if trace_path == "-":
        return sys.stdin.read()
    return Path(trace_path).read_text(encoding="utf-8")


@click.group()
def main():
    """Ability assessment and assistive-technology recommendation."""


@main.command()
@click.option("--trace", "trace_path", required=True, help="JSONL trace file, or - for stdin")
@click.option("--kb", "kb_path", default=None, help="KB JSON file (default: builtin)")
@click.option("--config", "config_path", default=None, help="metrics config TOML")
@click.option("--out", "out_path", default=None, help="write report here instead of stdout")
def run(trace_path, kb_path, config_path, out_path):
    """Run the full offline pipeline: trace -> profile -> recommendation report."""
    kb = _load_kb_option(kb_path)
    config = _load_config_option(config_path)
    try:
        trace = parse_trace(_read_trace(trace_path))
    except TraceError as e:
        raise click.ClickException(str(e))
    rendered = render_report(compute_report(trace, kb, config))
    if out_path:
        Path(out_path).write_text(rendered, encoding="utf-8")
    else:
        click.echo(rendered, nl=False)


@main.command()
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--data", "data_dir", envvar="ASSESS_DATA_DIR", default="./assess-data",
              show_default=True, help="session event-log directory")
@click.option("--kb", "kb_path", default=None, help="KB JSON file (default: builtin)")
@click.option("--config", "config_path", default=None, help="metrics config TOML")
@click.option("--frontend", "frontend_dir", default=None, help="static wizard bundle directory")
def serve(port, host, data_dir, kb_path, config_path, frontend_dir):
    """Serve the session HTTP API (and the wizard bundle, if provided)."""
    import uvicorn

    from .service import create_app

    app = create_app(data_dir, _load_kb_option(kb_path), _load_config_option(config_path),
                     frontend_dir=frontend_dir)
    uvicorn.run(app, host=host, port=port)


@main.group()
def kb():
    """Knowledge-base utilities."""


@kb.command("validate")
@click.argument("kb_file")
def kb_validate(kb_file):
    """Validate a KB JSON document."""
    try:
        loaded = load_kb(Path(kb_file).read_text(encoding="utf-8"))
    except KbError as e:
        raise click.ClickException(str(e))
    problems = validate_kb(loaded)
    if problems:
        for p in problems:
            click.echo(p, err=True)
        sys.exit(1)
    click.echo("ok")


@main.group()
def trace():
    """Trace utilities."""


@trace.command("validate")
@click.argument("trace_file")
def trace_validate(trace_file):
    """Validate a JSONL trace file (use - for stdin)."""
    try:
        parsed = parse_trace(_read_trace(trace_file))
    except TraceError as e:
        raise click.ClickException(str(e))
    click.echo(
        f"ok: {len(parsed.records)} records, {len(parsed.windows)} windows, "
        f"{len(parsed.manual_entries)} manual entries"
    )


@main.group()
def sus():
    """System Usability Scale scoring."""


@sus.command("score")
@click.option("--in", "in_path", required=True, help="CSV, one respondent per row, 10 columns")
def sus_cmd(in_path):
    results = []
    with open(in_path, newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if not row or not row[0].strip().lstrip("-").isdigit():
                continue  # header or blank
            resp = SusResponse(items=tuple(int(v) for v in row[:10]))
            score = sus_score(resp)
            results.append({"score": score, "adjective": sus_adjective(score)})
    out: dict = {"respondents": results}
    if results:
        mean = sum(r["score"] for r in results) / len(results)
        out.update({"score": mean, "adjective": sus_adjective(mean)})
    click.echo(json.dumps(out, indent=2))


@main.group()
def tlx():
    """NASA TLX workload scoring."""


def _read_tlx_ratings(path: str) -> TlxResponse:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if not rows:
        raise click.ClickException("empty ratings file")
    if rows[0][0].strip() in TLX_DIMENSIONS:  # header row with dimension names
        header, values = rows[0], rows[1]
    else:
        header, values = list(TLX_DIMENSIONS), rows[0]
    return TlxResponse(ratings={h.strip(): float(v) for h, v in zip(header, values)})


@tlx.command("score")
@click.option("--in", "in_path", required=True, help="CSV of six ratings (optional header)")
@click.option("--weights", "weights_path", default=None,
              help="CSV of 15 rows: dimension_a,dimension_b,winner")
def tlx_cmd(in_path, weights_path):
    resp = _read_tlx_ratings(in_path)
    if weights_path:
        with open(weights_path, newline="", encoding="utf-8") as fh:
            weights = tuple(
                (a.strip(), b.strip(), w.strip()) for a, b, w in csv.reader(fh) if a.strip()
            )
        try:
            resp = TlxResponse(ratings=resp.ratings, weights=weights)
        except ValueError as e:
            raise click.ClickException(str(e))
        result = tlx_weighted(resp)
    else:
        result = tlx_raw(resp)
    click.echo(json.dumps({"workload": result.workload, "bands": result.bands}, indent=2))


if __name__ == "__main__":
    main()
