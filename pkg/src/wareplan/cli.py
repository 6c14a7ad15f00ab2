"""Command-line surface.

Exit codes: 0 success, 1 validation failure, 2 input error, 3 internal error.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import fileio, report
from .constraints import validate
from .errors import (
    DimensionMismatch,
    InvariantViolation,
    MaskConflict,
    ParseError,
    WareplanError,
)
from .refine import Refiner, apply_refiners
from .scoring import ScoringParams, connectivity, score
from .search import SearchConfig, generate, pareto_front, pareto_sweep, ParetoSet

EXIT_VALIDATION = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

_INPUT_ERRORS = (
    ParseError,
    InvariantViolation,
    DimensionMismatch,
    MaskConflict,
    FileNotFoundError,
    IsADirectoryError,
)


def _guard(fn):
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except SystemExit:
            raise
        except _INPUT_ERRORS as exc:
            click.echo(f"input error: {exc}", err=True)
            sys.exit(EXIT_INPUT)
        except WareplanError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INTERNAL)

    wrapper.__name__ = fn.__name__
    return wrapper


@click.group()
def main():
    """Warehouse layout synthesis engine."""


@main.command()
@click.option("--space", "space_path", required=True, type=click.Path())
@click.option("--alpha", required=True, type=float)
@click.option("--theta", required=True, type=float)
@click.option("--beam", default=1, type=int, show_default=True)
@click.option("--out", "out_path", type=click.Path(), default=None)
@_guard
def solve(space_path, alpha, theta, beam, out_path):
    """Search for the optimal layout under one (alpha, theta) setting."""
    spec = fileio.load_space(space_path)
    result = generate(spec, ScoringParams(alpha=alpha, theta=theta), SearchConfig(beam_size=beam))
    if out_path:
        fileio.save_layout(result, out_path)
        click.echo(f"wrote {out_path}")
    else:
        click.echo(fileio.render_ascii(result.optimal))
    click.echo(
        f"score={result.breakdown.score:.6f} "
        f"n_s={result.n_storage} n_pf={result.n_pick_faces}"
    )


def _run_name(index: int, alpha: float, theta: float) -> str:
    return f"run_{index:03d}_a{alpha:.2f}_t{theta:.2f}.json"


@main.command()
@click.option("--space", "space_path", required=True, type=click.Path())
@click.option("--beam", default=1, type=int, show_default=True)
@click.option("--jobs", default=None, type=int)
@click.option("--out", "out_dir", required=True, type=click.Path())
@_guard
def sweep(space_path, beam, jobs, out_dir):
    """Run the full alpha-theta sweep, one result file per combination."""
    spec = fileio.load_space(space_path)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    pareto = pareto_sweep(spec, SearchConfig(beam_size=beam), jobs=jobs)
    fileio.save_space(spec, out / "space.json")
    for idx, result in enumerate(pareto.candidates):
        fileio.save_layout(result, out / _run_name(idx, result.params.alpha, result.params.theta))
    click.echo(f"wrote {len(pareto.candidates)} runs to {out}")


@main.command()
@click.option("--in", "in_dir", required=True, type=click.Path())
@click.option("--out", "out_path", required=True, type=click.Path())
@_guard
def pareto(in_dir, out_path):
    """Collect sweep runs into a Pareto set plus a table and a figure."""
    in_path = Path(in_dir)
    space_file = in_path / "space.json"
    spec = fileio.load_space(space_file) if space_file.exists() else None
    run_files = sorted(in_path.glob("run_*.json"))
    if not run_files:
        raise ParseError(f"no run files in {in_dir}")
    results = []
    for rf in run_files:
        data = json.loads(rf.read_text())
        results.append(fileio.result_from_dict(data, spec))
    pareto_set = ParetoSet(
        candidates=tuple(results), front=tuple(pareto_front(results))
    )
    fileio.save_pareto(pareto_set, out_path)
    data = fileio.pareto_to_dict(pareto_set)
    base = Path(out_path)
    table_path = base.with_suffix(".csv")
    figure_path = base.with_suffix(".png")
    report.write_pareto_table(data, table_path)
    report.write_pareto_figure(data, figure_path)
    click.echo(f"wrote {out_path}, {table_path}, {figure_path}")


@main.command("validate")
@click.option("--space", "space_path", required=True, type=click.Path())
@click.option("--layout", "layout_path", required=True, type=click.Path())
@_guard
def validate_cmd(space_path, layout_path):
    """Check a layout against every functional and efficiency constraint."""
    spec = fileio.load_space(space_path)
    layout = fileio.import_layout(layout_path, spec)
    rep = validate(layout)
    if rep.valid:
        click.echo("valid")
        return
    for violation in rep.violations:
        cells = ", ".join(str(c) for c in violation.cells[:5])
        more = "..." if len(violation.cells) > 5 else ""
        click.echo(f"{violation.constraint.value}: {violation.message} [{cells}{more}]")
    sys.exit(EXIT_VALIDATION)


@main.command()
@click.option("--layout", "layout_path", required=True, type=click.Path())
@_guard
def render(layout_path):
    """Print the ASCII rendering of a saved layout."""
    layout, _ = fileio.load_layout(layout_path)
    click.echo(fileio.render_ascii(layout))


@main.command()
@click.option("--manual", "manual_path", required=True, type=click.Path())
@click.option("--pareto", "pareto_path", required=True, type=click.Path())
@click.option("--refiners", "refiners_path", type=click.Path(), default=None,
              help="Optional JSON refiner pipeline applied to the candidates first.")
@_guard
def compare(manual_path, pareto_path, refiners_path):
    """Compare a manual layout against a saved Pareto set."""
    manual_layout, _ = fileio.load_layout(manual_path)
    pareto_data = fileio.load_pareto_dict(pareto_path)
    if refiners_path:
        pipeline = [
            Refiner.from_dict(entry)
            for entry in json.loads(Path(refiners_path).read_text())
        ]
        results = [
            fileio.result_from_dict(c) for c in pareto_data["candidates"]
        ]
        passed, _rejected = apply_refiners(results, pipeline)
        pareto_set = ParetoSet(
            candidates=tuple(passed), front=tuple(pareto_front(passed))
        )
        pareto_data = fileio.pareto_to_dict(pareto_set)
    rep = fileio.compare_dicts(
        (manual_layout.n_storage, manual_layout.n_pick_faces), pareto_data
    )
    click.echo(fileio.canonical_json(rep), nl=False)


@main.command()
@click.option("--port", default=8080, type=int, show_default=True)
@click.option("--jobs", default=None, type=int)
@click.option("--data-dir", type=click.Path(), default=None)
@_guard
def serve(port, jobs, data_dir):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(jobs=jobs, data_dir=data_dir), host="0.0.0.0", port=port)


if __name__ == "__main__":
    main()
