"""
MDSI Command Line Interface
"""
import json
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import click
import numpy as np
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from .. import __version__
from ..core.config import PRESETS, MetricConfig, get_preset, load_config_file
from ..core.errors import MDSIError, MissingLabel, ShapeMismatch
from ..core.models import Dataset, EvalReport
from ..core.pipeline import MDSIMetric, psnr
from ..evaluation.ablation import LINEARITY_GROUP, AblationCell, AblationEngine
from ..evaluation.batch import BatchResult, BatchScorer
from ..evaluation.report import (
    STAT_FIELDS, aggregate_reports, display_value, evaluate as evaluate_scores, report_rows,
    summarize_groups,
)
from ..loaders.image_loader import load_image
from ..loaders.manifest_loader import group_by_distortion, load_manifest
from ..utils.logging import configure_logging

console = Console()

# Exit status for mismatched image sizes; 1 covers every other failure
EXIT_SHAPE_MISMATCH = 2

# Similarity maps written by --dump-maps, when present
DUMPED_MAPS = ("gs", "gs_hat", "cs", "cs_hat", "gcs", "gcs_hat")


def _fail(error: Exception) -> None:
    console.print(f"[red]Error: {escape(str(error))}[/red]")
    sys.exit(EXIT_SHAPE_MISMATCH if isinstance(error, ShapeMismatch) else 1)


def _resolve_config(config_path: Optional[str], preset: Optional[str]) -> MetricConfig:
    if config_path:
        return load_config_file(config_path, default_preset=preset or "mdsi")
    return get_preset(preset or "mdsi")


def config_options(fn):
    fn = click.option("--preset", type=click.Choice(sorted(PRESETS)), default=None,
                      help="Named parameter preset")(fn)
    fn = click.option("--config", "-c", "config_path", type=click.Path(dir_okay=False),
                      help="Flat key = value file overriding MetricConfig fields")(fn)
    return fn


@click.group()
@click.version_option(version=__version__, prog_name="mdsi")
@click.option("--verbose", "-v", is_flag=True, help="Debug logging on stderr")
def cli(verbose):
    """MDSI - full-reference image quality assessment"""
    configure_logging(verbose)


@cli.command()
@click.argument("ref_path", type=click.Path(dir_okay=False))
@click.argument("dist_path", type=click.Path(dir_okay=False))
@config_options
@click.option("--json", "as_json", is_flag=True, help="Print a JSON object")
@click.option("--dump-maps", type=click.Path(file_okay=False), help="Write similarity maps as CSV grids")
@click.option("--baseline", is_flag=True, help="Also report PSNR")
def score(ref_path, dist_path, config_path, preset, as_json, dump_maps, baseline):
    """Score a distorted image against its reference"""
    try:
        config = _resolve_config(config_path, preset)
        ref = load_image(ref_path)
        dist = load_image(dist_path)
        result = MDSIMetric(config).compute(ref, dist, keep_maps=bool(dump_maps))

        written: Dict[str, str] = {}
        if dump_maps:
            written = _dump_maps(result.maps, Path(dump_maps))

        baseline_value = psnr(ref, dist) if baseline else None

        if as_json:
            payload: Dict[str, Any] = result.to_dict()
            if baseline:
                perfect = math.isinf(baseline_value)
                payload["psnr"] = None if perfect else baseline_value
                payload["psnr_perfect"] = perfect
            if written:
                payload["maps"] = written
            click.echo(json.dumps(payload, indent=2))
        else:
            click.echo(f"{result.value:.6f}")
            if baseline:
                shown = "perfect" if math.isinf(baseline_value) else f"{baseline_value:.4f} dB"
                click.echo(f"PSNR {shown}")
            if written:
                console.print(f"[green]✓ Maps saved to {escape(dump_maps)}[/green]")

    except (MDSIError, OSError) as e:
        _fail(e)


def _dump_maps(maps: Dict[str, np.ndarray], directory: Path) -> Dict[str, str]:
    directory.mkdir(parents=True, exist_ok=True)
    written = {}
    for name in DUMPED_MAPS:
        if name in maps:
            target = directory / f"{name}.csv"
            np.savetxt(target, maps[name], delimiter=",", fmt="%.17g")
            written[name] = str(target)
    return written


@cli.command()
@click.argument("manifests", nargs=-1, required=True, type=click.Path(dir_okay=False))
@config_options
@click.option("--json", "as_json", is_flag=True, help="Print a JSON object")
@click.option("--per-distortion", is_flag=True, help="Add per-distortion SRC with avg/min/std")
@click.option("--weighted", is_flag=True, help="Add the dataset size-weighted average")
@click.option("--signed", is_flag=True, help="Keep correlation signs (MDSI correlates negatively with MOS)")
@click.option("--threads", "-t", default=1, show_default=True, type=click.IntRange(min=1))
def evaluate(manifests, config_path, preset, as_json, per_distortion, weighted, signed, threads):
    """Score manifests and report SRC/KRC/PCC/RMSE against MOS"""
    try:
        config = _resolve_config(config_path, preset)
        scorer = BatchScorer([config], threads=threads)

        reports = []
        failures: Dict[str, int] = {}
        groups: Dict[str, Any] = {}
        for manifest in manifests:
            dataset = load_manifest(manifest)
            if not as_json:
                console.print(f"[blue]Scoring {escape(dataset.name)} ({len(dataset)} entries)[/blue]")
            batch = scorer.score(dataset)
            failures[dataset.name] = len(batch.failures)
            reports.append(evaluate_scores(batch.scores, batch.mos, name=dataset.name))

            if per_distortion:
                groups[dataset.name] = _distortion_summary(batch, signed)

        averages = aggregate_reports(reports, signed=signed) if len(reports) > 1 else None
        weighted_averages = aggregate_reports(reports, weighted=True, signed=signed) if weighted else None

        if as_json:
            payload: Dict[str, Any] = {
                "datasets": [_report_dict(r, signed, failures[r.name]) for r in reports],
                "signed": signed,
            }
            if averages is not None:
                payload["average"] = averages
            if weighted_averages is not None:
                payload["weighted_average"] = weighted_averages
            if per_distortion:
                payload["per_distortion"] = groups
            click.echo(json.dumps(payload, indent=2))
            return

        _print_reports(reports, signed, averages, weighted_averages)
        for name, count in failures.items():
            if count:
                console.print(f"[yellow]⚠ {count} entries of {escape(name)} failed and were excluded[/yellow]")
        for name, summary in groups.items():
            _print_groups(name, summary)

    except (MDSIError, OSError) as e:
        _fail(e)


def _report_dict(report: EvalReport, signed: bool, failures: int) -> Dict[str, Any]:
    data = report.to_dict()
    data.update({field: display_value(report, field, signed) for field in STAT_FIELDS})
    data["failures"] = failures
    return data


def _distortion_summary(batch: BatchResult, signed: bool) -> Optional[Dict[str, Any]]:
    entries = batch.entries_ok()
    scores = batch.scores
    try:
        partition = group_by_distortion(Dataset(batch.dataset.name, entries))
    except MissingLabel as e:
        console.print(f"[yellow]⚠ {escape(batch.dataset.name)}: {escape(str(e))}, "
                      f"per-distortion report skipped[/yellow]")
        return None

    position = {id(entry): index for index, entry in enumerate(entries)}
    group_scores = {
        label: [scores[position[id(entry)]] for entry in group.entries]
        for label, group in partition.items()
    }
    group_mos = {label: [entry.mos for entry in group.entries] for label, group in partition.items()}
    summary = summarize_groups(group_scores, group_mos, signed=signed)
    if summary is None:
        return None
    return {
        "src": summary.src_by_group,
        "avg": summary.average,
        "min": summary.minimum,
        "std": summary.std,
    }


def _print_reports(reports, signed, averages, weighted_averages) -> None:
    table = Table(title="Evaluation")
    table.add_column("Dataset", style="cyan")
    table.add_column("N", justify="right")
    for field in STAT_FIELDS:
        table.add_column(field.upper(), style="green", justify="right")
    for row in report_rows(reports, signed):
        table.add_row(*row)
    for label, values in (("Average", averages), ("Weighted average", weighted_averages)):
        if values is not None:
            table.add_row(label, "", *[f"{values[f]:.4f}" for f in STAT_FIELDS], style="bold")
    console.print(table)


def _print_groups(name: str, summary: Optional[Dict[str, Any]]) -> None:
    if summary is None:
        return
    table = Table(title=f"{name}: SRC per distortion")
    labels = list(summary["src"])
    for label in labels:
        table.add_column(label, justify="right")
    for column in ("avg", "min", "std"):
        table.add_column(column, style="bold", justify="right")
    table.add_row(
        *[f"{summary['src'][label]:.4f}" for label in labels],
        *[f"{summary[column]:.4f}" for column in ("avg", "min", "std")],
    )
    console.print(table)


@cli.command()
@click.argument("manifest", type=click.Path(dir_okay=False))
@config_options
@click.option("--json", "as_json", is_flag=True, help="Print a JSON object")
@click.option("--ftest", is_flag=True, help="Pairwise F-test matrix on fitted residuals")
@click.option("--significance", default=0.05, show_default=True, type=click.FloatRange(0, 1, min_open=True, max_open=True))
@click.option("--sensitivity", is_flag=True, help="Add the alpha x C3 parameter grid")
@click.option("--chroma-sweep", is_flag=True, help="Add chromaticity x pooling cells over C3 = 100 .. 1000")
@click.option("--power-sweep", is_flag=True, help="Add outer-power cells reported with LPCC and PCC")
@click.option("--signed", is_flag=True, help="Keep correlation signs")
@click.option("--threads", "-t", default=1, show_default=True, type=click.IntRange(min=1))
def ablate(manifest, config_path, preset, as_json, ftest, significance, sensitivity,
           chroma_sweep, power_sweep, signed, threads):
    """Compare pooling, combination, chromaticity and gradient variants"""
    try:
        base = _resolve_config(config_path, preset)
        dataset = load_manifest(manifest)
        engine = AblationEngine(
            base, threads=threads, sensitivity=sensitivity, ftest=ftest, significance=significance,
            chroma_sweep=chroma_sweep, power_sweep=power_sweep,
        )
        result = engine.run(dataset)
        reports = result.reports or [None] * len(result.cells)

        def shown(value: float) -> Optional[float]:
            if math.isnan(value):
                return None
            return value if signed else abs(value)

        if as_json:
            cells = []
            for cell, value, report in zip(result.cells, result.src, reports):
                entry = {"group": cell.group, "label": cell.label, "src": shown(value)}
                if report is not None:
                    entry.update({f: display_value(report, f, signed) for f in ("lpcc", "pcc")})
                entry["config"] = cell.config.to_flat_dict()
                cells.append(entry)
            payload: Dict[str, Any] = {
                "dataset": dataset.name,
                "n": result.n,
                "failures": result.failures,
                "signed": signed,
                "cells": cells,
            }
            if result.ftest is not None:
                names, matrix = result.ftest
                payload["ftest"] = {"names": names, "matrix": matrix.tolist()}
            click.echo(json.dumps(payload, indent=2))
            return

        table = Table(title=f"Ablation on {dataset.name} ({result.n} pairs)")
        table.add_column("Group", style="cyan")
        table.add_column("Variant")
        table.add_column("SRC", style="green", justify="right")
        for cell, value in zip(result.cells, result.src):
            value = shown(value)
            table.add_row(cell.group, cell.label, "n/a" if value is None else f"{value:.4f}")
        console.print(table)

        linear = [(c, r) for c, r in zip(result.cells, reports) if c.group == LINEARITY_GROUP]
        if linear:
            _print_linearity(linear, signed)

        if result.ftest is not None:
            _print_ftest(*result.ftest)

    except (MDSIError, OSError) as e:
        _fail(e)


def _print_linearity(cells: List[Tuple[AblationCell, Optional[EvalReport]]], signed: bool) -> None:
    table = Table(title="Outer power: linear correlation")
    table.add_column("Variant", style="cyan")
    table.add_column("LPCC", style="green", justify="right")
    table.add_column("PCC", style="green", justify="right")
    for cell, report in cells:
        if report is None:
            table.add_row(cell.label, "n/a", "n/a")
        else:
            table.add_row(cell.label, *[f"{display_value(report, f, signed):.4f}" for f in ("lpcc", "pcc")])
    console.print(table)


def _print_ftest(names: List[str], matrix: np.ndarray) -> None:
    table = Table(title="F-test (+1 row significantly better than column)")
    table.add_column("Variant", style="cyan")
    for index in range(len(names)):
        table.add_column(str(index + 1), justify="right")
    table.add_column("Sum", style="bold", justify="right")
    for index, name in enumerate(names):
        row = [f"{v:+d}" if v else "0" for v in matrix[index]]
        table.add_row(f"{index + 1}. {name}", *row, str(int(matrix[index].sum())))
    console.print(table)


@cli.command()
def presets():
    """List the named parameter presets"""
    table = Table(title="Presets")
    table.add_column("Parameter", style="cyan", no_wrap=True)
    for name in PRESETS:
        table.add_column(name, justify="right", no_wrap=True)
    rows = {
        "alpha": lambda c: f"{c.alpha:g}",
        "C1": lambda c: f"{c.c1:g}",
        "C2": lambda c: f"{c.c2:g}",
        "C3": lambda c: f"{c.c3:g}",
        "gradient": lambda c: c.gradient_variant.value,
        "chroma": lambda c: c.chroma_variant.value,
        "combine": lambda c: c.combine.value,
        "gamma": lambda c: f"{c.gamma:g}",
        "beta": lambda c: f"{c.beta:g}",
        "pooling": lambda c: c.pooling.strategy.value,
        "rho": lambda c: f"{c.pooling.rho:g}",
        "q": lambda c: f"{c.pooling.q:g}",
        "o": lambda c: f"{c.pooling.o:g}",
    }
    for parameter, render in rows.items():
        table.add_row(parameter, *[render(config) for config in PRESETS.values()])
    console.print(table)


if __name__ == '__main__':
    cli()
