"""Command-line entry point for the chromatic package."""

import json
from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from enum import Enum
from typing import Annotated, Optional

import typer
from loguru import logger
from pydantic import BaseModel

from chromatic import burnside, cells, closed_forms, coxeter
from chromatic.census import census_naive, census_recursive
from chromatic.errors import ChromaticError
from chromatic.groups import group_spec, standard_group
from chromatic.models import (
    ROW_MODELS,
    CellRow,
    CensusOrbitRow,
    CensusRow,
    CliqueListRow,
    CliqueRow,
    ClosedFormRow,
    ReportRow,
)
from chromatic.output import OutputFormat, render, rows_schema
from chromatic.sequence import TargetKind, chromatic_sequence, class_target, resolve_target
from chromatic.settings import settings
from chromatic.utils import configure_logging, parse_height_range
from chromatic.verify import run_checks

app = typer.Typer(no_args_is_help=True, help="Chromatic Euler characteristics of groups and orbispaces.")

EXIT_COMPUTATION_ERROR = 1
EXIT_USAGE_ERROR = 2
EXIT_VERIFY_FAILED = 3


class CensusMethod(str, Enum):
    """How `census` counts orbits."""

    naive = "naive"
    recursive = "recursive"


class ReportKind(str, Enum):
    """What the TARGET of `report` names."""

    group = "group"
    coxeter = "coxeter"
    closed_form = "closed-form"


JsonOption = Annotated[bool, typer.Option("--json", help="Print JSON instead of a table.")]
CsvOption = Annotated[bool, typer.Option("--csv", help="Print CSV instead of a table.")]
PrimeOption = Annotated[Optional[int], typer.Option("--p", help="The prime p.")]
HeightsOption = Annotated[Optional[str], typer.Option("--n", help="A height `n` or an inclusive range `a..b`.")]


@contextmanager
def _exit_codes() -> Iterator[None]:
    """Turn computation errors into exit code 1, and malformed arguments or unreadable files into exit code 2."""
    try:
        yield
    except ChromaticError as e:
        logger.debug(f"{type(e).__name__}: {e}")
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(code=EXIT_COMPUTATION_ERROR) from None
    except (ValueError, OSError) as e:
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(code=EXIT_USAGE_ERROR) from None


def _emit(rows: Sequence[BaseModel], json_: bool, csv_: bool) -> None:
    """Print rows in the format the flags ask for."""
    if json_ and csv_:
        raise ValueError("Pass at most one of --json and --csv.")
    fmt = OutputFormat.json if json_ else OutputFormat.csv if csv_ else OutputFormat.table
    typer.echo(render(rows, fmt))


def _heights(text: str | None) -> range:
    """Requested heights; none when the option is omitted."""
    return parse_height_range(text) if text else range(0)


def _single_height(text: str) -> int:
    """A height option that must name exactly one height."""
    heights = parse_height_range(text)
    if len(heights) != 1:
        raise ValueError(f"Expected a single height, got {text!r}.")
    return heights[0]


@app.callback()
def main(
    threads: Annotated[Optional[int], typer.Option("--threads", min=1, help="Worker threads.")] = None,
    log_level: Annotated[Optional[str], typer.Option("--log-level", help="Loguru level name.")] = None,
):
    """Apply global options before any command runs."""
    if threads is not None:
        settings.threads = threads
    configure_logging(log_level.upper() if log_level else None)


@app.command()
def census(
    group: Annotated[str, typer.Argument(help="Group spec, e.g. S4, D8, C2xC2 or perm:(0 1 2),(0 1).")],
    p: Annotated[int, typer.Option("--p", help="The prime p.")],
    n: Annotated[int, typer.Option("--n", min=0, help="Tuple length.")],
    reps: Annotated[bool, typer.Option("--reps", help="List one representative per orbit.")] = False,
    method: Annotated[CensusMethod, typer.Option("--method")] = CensusMethod.naive,
    json_: JsonOption = False,
    csv_: CsvOption = False,
):
    """Count conjugation orbits of commuting n-tuples of p-power-order elements."""
    with _exit_codes():
        finite_group = standard_group(group)
        label = group_spec(finite_group)
        if method is CensusMethod.recursive and not reps:
            orbit_count = census_recursive(finite_group, p, n)
            _emit([CensusRow(group=label, prime=p, height=n, orbit_count=orbit_count)], json_, csv_)
            return

        result = census_naive(finite_group, p, n)
        if reps:
            rows = [
                CensusOrbitRow(
                    group=label,
                    prime=p,
                    height=n,
                    representative=", ".join(map(str, rep)) or "()",
                    orbit_size=size,
                    centralizer_order=centralizer.order,
                )
                for rep, size, centralizer in zip(result.orbit_reps, result.orbit_sizes, result.centralizers)
            ]
            _emit(rows, json_, csv_)
            return
        row = CensusRow(group=label, prime=p, height=n, orbit_count=result.orbit_count, tuple_count=result.tuple_count)
        _emit([row], json_, csv_)


@app.command()
def chi(
    kind: Annotated[TargetKind, typer.Argument(help="What TARGET names.")],
    target: Annotated[str, typer.Argument(help="Group spec, class expression, cell structure, graph file or key.")],
    p: PrimeOption = None,
    n: HeightsOption = None,
    json_: JsonOption = False,
    csv_: CsvOption = False,
):
    """The chromatic sequence of a target: orbifold (-1), rational (0) and Morava K(n) Euler characteristics."""
    with _exit_codes():
        rows = chromatic_sequence(resolve_target(kind, target), p, _heights(n))
        _emit(rows, json_, csv_)


@app.command("burnside")
def burnside_command(
    expression: Annotated[
        str,
        typer.Argument(help="Class expression, e.g. 'D8 + D8 - C4'. One starting with `-` goes last, after `--`."),
    ],
    apply_loop: Annotated[bool, typer.Option("--loop", help="Apply the free loop operator first.")] = False,
    shift: Annotated[int, typer.Option("--shift", min=0, help="Apply the p-shift this many times first.")] = 0,
    p: PrimeOption = None,
    n: HeightsOption = None,
    terms: Annotated[bool, typer.Option("--terms", help="Print the resulting class term by term.")] = False,
    json_: JsonOption = False,
    csv_: CsvOption = False,
):
    """Evaluate characters of a class in the orbispace Burnside ring, after optional shift and loop operators."""
    with _exit_codes():
        x = burnside.parse_class_expression(expression)
        if shift:
            if p is None:
                raise ValueError("--shift needs --p.")
            x = burnside.p_shift(x, p, shift)
        if apply_loop:
            x = burnside.loop(x)
        if terms:
            _emit(burnside.class_terms(x), json_, csv_)
            return
        _emit(chromatic_sequence(class_target(x), p, _heights(n)), json_, csv_)


@app.command("coxeter")
def coxeter_command(
    graph: Annotated[str, typer.Argument(help="Edge-list file or JSON graph file.")],
    cliques: Annotated[bool, typer.Option("--cliques", help="List the cliques instead of counting them.")] = False,
    json_: JsonOption = False,
    csv_: CsvOption = False,
):
    """Clique profile of the defining graph of a right-angled Coxeter group."""
    with _exit_codes():
        defining_graph = coxeter.load_graph(graph)
        if cliques:
            rows = [
                CliqueListRow(size=len(clique), vertices=" ".join(map(str, clique)))
                for clique in coxeter.list_cliques(defining_graph)
            ]
        else:
            profile = coxeter.clique_census(defining_graph)
            rows = [CliqueRow(size=size, count=count) for size, count in enumerate(profile.counts)]
        _emit(rows, json_, csv_)


@app.command("cells")
def cells_command(
    name: Annotated[str, typer.Argument(help=f"Built-in ({', '.join(cells.BUILTIN_COMPLEXES)}) or a JSON file.")],
    p: PrimeOption = None,
    n: HeightsOption = None,
    json_: JsonOption = False,
    csv_: CsvOption = False,
):
    """List the cell orbits of a proper cell structure, or its chromatic sequence when --n is given."""
    with _exit_codes():
        if n is not None:
            _emit(chromatic_sequence(resolve_target(TargetKind.cells, name), p, _heights(n)), json_, csv_)
            return
        structure = cells.resolve_cell_structure(name)
        rows = [
            CellRow(
                dim=cell.dim,
                stabilizer=group_spec(cell.stabilizer),
                stabilizer_order=cell.stabilizer.order,
                multiplicity=cell.multiplicity,
            )
            for cell in structure.cells
        ]
        _emit(rows, json_, csv_)


@app.command("closed-form")
def closed_form(
    key: Annotated[Optional[str], typer.Argument(help="Entry key; omit to list entries.")] = None,
    list_: Annotated[bool, typer.Option("--list", help="List the bundled entries.")] = False,
    p: PrimeOption = None,
    n: HeightsOption = None,
    json_: JsonOption = False,
    csv_: CsvOption = False,
):
    """Evaluate a closed-form chromatic Euler characteristic from the bundled constants."""
    with _exit_codes():
        if list_ or key is None:
            rows = [
                ClosedFormRow(
                    key=name,
                    label=entry.label,
                    kind=entry.kind,
                    prime=entry.p,
                    available=entry.available,
                    provenance=entry.provenance,
                )
                for name, entry in sorted(closed_forms.load_constants().items())
            ]
            _emit(rows, json_, csv_)
            return
        _emit(chromatic_sequence(resolve_target(TargetKind.closed_form, key), p, _heights(n)), json_, csv_)


@app.command()
def report(
    kind: Annotated[ReportKind, typer.Argument(help="What TARGET names.")],
    target: Annotated[str, typer.Argument(help="Group spec, graph file or closed-form key.")],
    p: PrimeOption = None,
    n: Annotated[str, typer.Option("--n", help="Height.")] = "1",
    json_: JsonOption = False,
    csv_: CsvOption = False,
):
    """Decompose the Morava K(n) Euler characteristic into summands by class of commuting tuple."""
    with _exit_codes():
        height = _single_height(n)
        match kind:
            case ReportKind.group:
                subject = standard_group(target)
            case ReportKind.coxeter:
                subject = coxeter.load_graph(target)
                p = p or 2
            case _:
                subject = target
                p = p or closed_forms.get_entry(target).p
        if p is None:
            raise ValueError("A prime is needed; pass --p.")

        result = closed_forms.character_report(subject, p, height)
        rows = []
        if result.rational_part is not None:
            rows.append(
                ReportRow(
                    target=result.target,
                    prime=result.prime,
                    height=result.height,
                    description="rational part",
                    count=int(result.rational_part),
                    torus_dim=0,
                )
            )
        rows += [
            ReportRow(
                target=result.target,
                prime=result.prime,
                height=result.height,
                description=summand.description,
                count=summand.count,
                torus_dim=summand.torus_dim,
            )
            for summand in result.summands
        ]
        logger.info(f"{result.target}: chi_K({height}) = {result.chi_kn} over {result.summand_count} summands")
        _emit(rows, json_, csv_)


@app.command()
def schema(
    name: Annotated[Optional[str], typer.Argument(help=f"One of {', '.join(ROW_MODELS)}; omit for all.")] = None,
):
    """Print the JSON schema that `--json` output validates against."""
    with _exit_codes():
        if name is None:
            schemas = {key: rows_schema(model) for key, model in ROW_MODELS.items()}
        elif name in ROW_MODELS:
            schemas = rows_schema(ROW_MODELS[name])
        else:
            raise ValueError(f"Unknown schema {name!r}. Known: {', '.join(ROW_MODELS)}.")
        typer.echo(json.dumps(schemas, indent=2, sort_keys=True))


@app.command()
def verify(
    filter_: Annotated[Optional[str], typer.Option("--filter", help="Substring of check names to run.")] = None,
    json_: JsonOption = False,
    csv_: CsvOption = False,
):
    """Run the regression suite of known values and identities."""
    results = run_checks(filter_)
    if not results:
        typer.echo(f"error: no check matches {filter_!r}", err=True)
        raise typer.Exit(code=EXIT_USAGE_ERROR)
    with _exit_codes():
        _emit(results, json_, csv_)
    if not all(result.passed for result in results):
        raise typer.Exit(code=EXIT_VERIFY_FAILED)


if __name__ == "__main__":
    app()
