"""
Command-line interface for the Dagger Workbench.

Exit status 0 means every verdict matched its expectation (expected failures
on finrel included), 1 an unexpected verdict or a suite error, 2 a usage
error.
"""

import json
import sys
from pathlib import Path
from typing import cast

import click

from dagger_workbench import __version__
from dagger_workbench.core.config import FINREL_SEARCH_BOUND, ModelId, SuiteConfig
from dagger_workbench.core.exceptions import ConfigurationError, SearchBoundError
from dagger_workbench.core.logger import get_logger, set_level
from dagger_workbench.harness import SUITES, emit_report, run_suites
from dagger_workbench.harness.report import ReportFormat, serialize_morphism
from dagger_workbench.models.finrel import (
    axiom_e_witness,
    equaliser_search,
    scalar_field_check_rel,
)

logger = get_logger(__name__)

MODEL_CHOICE = click.Choice([model.value for model in ModelId])
FORMAT_CHOICE = click.Choice(["text", "json"])
REPORT_FORMAT_CHOICE = click.Choice(["text", "json", "summary"])


def parse_dims(value: str) -> tuple[int, int]:
    """Parse ``A..B`` (or a single ``N``) into (dim_min, dim_max)."""
    low, sep, high = value.partition("..")
    try:
        bounds = (int(low), int(high if sep else low))
    except ValueError as e:
        raise click.BadParameter(f"expected A..B, got {value!r}") from e
    return bounds


def parse_suites(value: str | None) -> tuple[str, ...] | None:
    if value is None:
        return None
    return tuple(part.strip() for part in value.split(",") if part.strip())


def _write(data: bytes, out: str | None) -> None:
    if out is None:
        stream = click.get_binary_stream("stdout")
        stream.write(data)
        stream.flush()
    else:
        Path(out).write_bytes(data)
        logger.info(f"report written to {out}")


@click.group()
@click.version_option(__version__, prog_name="dagger-workbench")
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default=None,
    help="Override DAGGER_WORKBENCH_LOG_LEVEL",
)
def main(log_level: str | None) -> None:
    """Verify the dagger-category axioms on concrete models."""
    if log_level is not None:
        set_level(log_level)


@main.command()
@click.option("--model", type=MODEL_CHOICE, default=ModelId.FDHILB_C.value, show_default=True)
@click.option("--dims", default=None, help="Object dimensions as A..B")
@click.option("--trials", type=int, default=None, help="Randomized trials per suite")
@click.option("--seed", type=int, default=None, help="Seed of the suite random streams")
@click.option("--tol", type=float, default=None, help="Numeric tolerance")
@click.option("--suites", default=None, help="Comma-separated suite ids (default: all)")
@click.option(
    "--format",
    "fmt",
    type=REPORT_FORMAT_CHOICE,
    default="text",
    show_default=True,
    help="summary keeps only the machine-independent fields",
)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output file")
def check(
    model: str,
    dims: str | None,
    trials: int | None,
    seed: int | None,
    tol: float | None,
    suites: str | None,
    fmt: str,
    out: str | None,
) -> None:
    """Run verification suites and emit a report."""
    options: dict[str, object] = {"model": model, "suites": parse_suites(suites)}
    if dims is not None:
        options["dim_min"], options["dim_max"] = parse_dims(dims)
    for name, value in (("trials", trials), ("seed", seed), ("tol", tol)):
        if value is not None:
            options[name] = value

    try:
        config = SuiteConfig.build(**options)
        report = run_suites(config)
    except ConfigurationError as e:
        logger.error(f"invalid configuration: {e}")
        raise click.UsageError(str(e)) from e

    _write(emit_report(report, cast(ReportFormat, fmt)), out)
    sys.exit(report.exit_code)


@main.command()
@click.option("--model", type=MODEL_CHOICE, default=ModelId.FINREL.value, show_default=True)
@click.option(
    "--bound",
    type=int,
    default=None,
    help="Largest equaliser apex to enumerate",
)
@click.option("--format", "fmt", type=FORMAT_CHOICE, default="text", show_default=True)
def counterexample(model: str, bound: int | None, fmt: str) -> None:
    """Print the finrel witnesses against (E) and the field structure."""
    if model != ModelId.FINREL.value:
        raise click.UsageError(f"counterexamples are pinned for finrel only, not {model}")
    bound = FINREL_SEARCH_BOUND if bound is None else bound
    f, g = axiom_e_witness()
    try:
        search = equaliser_search(f.payload, g.payload, bound)
    except SearchBoundError as e:
        logger.error(f"search refused: {e}")
        raise click.UsageError(str(e)) from e
    semiring = scalar_field_check_rel()

    payload = {
        "axiom_e": {
            "f": serialize_morphism(f),
            "g": serialize_morphism(g),
            "found": search.found,
            "search_bound": search.search_bound,
            "candidates_examined": search.candidates_examined,
            "cone_columns": search.cone_columns,
        },
        "scalar_field": {
            "is_field": semiring.is_field,
            "one_plus_one": int(semiring.sums[(True, True)]),
            "witness": semiring.witness,
        },
    }
    if fmt == "json":
        data = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        lines = [
            "Axiom (E) witness pair f, g: 2 -> 1",
            serialize_morphism(f).rstrip(),
            serialize_morphism(g).rstrip(),
            f"equaliser with apex <= {search.search_bound}: "
            f"{'found' if search.found else 'none'} "
            f"({search.candidates_examined} candidates, {search.cone_columns} cone columns)",
            f"scalars form a field: {semiring.is_field}; 1 + 1 = "
            f"{int(semiring.sums[(True, True)])}; {semiring.witness or 'inverse found'}",
        ]
        data = "\n".join(lines) + "\n"
    _write(data.encode("utf-8"), None)


@main.command(name="suites")
def list_suites() -> None:
    """List suite ids with their anchors and expectations."""
    for suite_id in sorted(SUITES):
        suite = SUITES[suite_id]
        expectations = " ".join(
            f"{model.value}={suite.expected(model).value}" for model in ModelId
        )
        click.echo(f"{suite_id:<18} {suite.anchor}  [{expectations}]")


if __name__ == "__main__":
    main()
