"""Command-line harness: generators, condition checks, lemma suite and classification.

Data goes to stdout (or --out); logs, progress bars and errors go to stderr.
Exit codes: 0 success, 1 conditions or lemmas fail, 2 bad input or config.
"""

import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Annotated, Optional

import orjson
import typer
from pydantic import BaseModel

from errors import GeometryError, LemmaPreconditionError, SingularFormError
from quadric_service.quadric import nucleus
from recognize_service.recognize import classify, fit_quadric
from run_config import RunConfig
from settings import configure_logging
from spectrum_service.families import FAMILY_KINDS, generate
from spectrum_service.lemmas import verify_lemma_suite
from spectrum_service.reports import dump_json
from spectrum_service.solid_io import read_point_set, read_solid_set, write_point_set, write_solid_set
from spectrum_service.spectrum import check_conditions, spectrum_summary

logger = logging.getLogger(__name__)

app = typer.Typer(
    help="Finite-geometry checks for solid sets of PG(4,q), q even.",
    no_args_is_help=True,
    add_completion=False,
)

QOption = Annotated[int, typer.Option("--q", help="Field order, a power of two.")]
ModulusOption = Annotated[Optional[str], typer.Option(help="Irreducible modulus in hex, e.g. 13 for x^4+x+1.")]
WorkersOption = Annotated[Optional[int], typer.Option(help="Parallel workers (-1 for every core).")]
CapOption = Annotated[Optional[int], typer.Option("--witness-cap", help="Maximum violation witnesses reported.")]
OutOption = Annotated[Optional[Path], typer.Option(help="Write the output here instead of stdout.")]
InputArgument = Annotated[Path, typer.Argument(help="JSON Lines input file.")]


class FitResult(BaseModel):
    points: int
    form: Optional[str] = None
    nucleus: Optional[str] = None


@app.callback()
def main(verbose: Annotated[bool, typer.Option("--verbose", "-v", help="Debug logging.")] = False):
    configure_logging("DEBUG" if verbose else None)


@contextmanager
def _exit_codes():
    try:
        yield
    except LemmaPreconditionError as e:
        logger.error("%s", e)
        raise typer.Exit(code=1)
    except GeometryError as e:
        logger.error("%s", e)
        raise typer.Exit(code=2)


def _emit(data: bytes, out: Optional[Path]) -> None:
    if out is None:
        typer.echo(data, nl=False)
    else:
        out.write_bytes(data)


@app.command("gen")
def cmd_gen(
    kind: Annotated[str, typer.Argument(help=f"One of: {', '.join(FAMILY_KINDS)}.")],
    q: QOption,
    modulus: ModulusOption = None,
    workers: WorkersOption = None,
    out: OutOption = None,
):
    """Write one of the generated families as JSON Lines."""
    with _exit_codes():
        config = RunConfig.build(q=q, modulus=modulus, workers=workers)
        index = config.index()
        family = generate(kind, index)
        write = write_solid_set if family.record == "dual" else write_point_set
        write(out if out is not None else sys.stdout, family.indices, index)
        census = orjson.dumps(family.census(index), option=orjson.OPT_APPEND_NEWLINE)
        if out is None:
            typer.echo(census, nl=False, err=True)
        else:
            typer.echo(census, nl=False)


@app.command("check")
def cmd_check(
    path: InputArgument,
    q: QOption,
    modulus: ModulusOption = None,
    workers: WorkersOption = None,
    witness_cap: CapOption = None,
    out: OutOption = None,
):
    """Evaluate conditions (I), (II) and (III); exit 1 unless (I) and (II) hold."""
    with _exit_codes():
        config = RunConfig.build(q=q, modulus=modulus, workers=workers, witnessCap=witness_cap)
        index = config.index()
        report = check_conditions(read_solid_set(path, index), index, witness_cap=config.witness_cap)
        _emit(dump_json(report), out)
    if not (report.condI.holds and report.condII.holds):
        raise typer.Exit(code=1)


@app.command("classify")
def cmd_classify(
    path: InputArgument,
    q: QOption,
    modulus: ModulusOption = None,
    workers: WorkersOption = None,
    witness_cap: CapOption = None,
    out: OutOption = None,
):
    """Recover the hyperoval or the quadric behind a solid set; exit 1 when neither applies."""
    with _exit_codes():
        config = RunConfig.build(q=q, modulus=modulus, workers=workers, witnessCap=witness_cap)
        index = config.index()
        verdict = classify(read_solid_set(path, index), index, witness_cap=config.witness_cap)
        _emit(dump_json(verdict.to_payload()), out)
    if verdict.case == "NA":
        raise typer.Exit(code=1)


@app.command("verify-lemmas")
def cmd_verify_lemmas(
    path: InputArgument,
    q: QOption,
    modulus: ModulusOption = None,
    workers: WorkersOption = None,
    witness_cap: CapOption = None,
    out: OutOption = None,
):
    """Run the counting lemma suite; exit 0 only if every entry passes.

    A set failing (I) or (II) gets its condition report instead, with exit 1.
    """
    with _exit_codes():
        config = RunConfig.build(q=q, modulus=modulus, workers=workers, witnessCap=witness_cap)
        index = config.index()
        try:
            report = verify_lemma_suite(read_solid_set(path, index), index, witness_cap=config.witness_cap)
        except LemmaPreconditionError as e:
            if e.report is not None:
                _emit(dump_json(e.report), out)
            raise
        _emit(dump_json(report), out)
    if not report.allPassed:
        raise typer.Exit(code=1)


@app.command("fit-quadric")
def cmd_fit_quadric(
    path: Annotated[Path, typer.Argument(help='JSON Lines of {"point": ...} records.')],
    q: QOption,
    modulus: ModulusOption = None,
    workers: WorkersOption = None,
    witness_cap: CapOption = None,
    out: OutOption = None,
):
    """Fit the unique quadric whose zero set is the given point set; exit 1 if there is none."""
    with _exit_codes():
        config = RunConfig.build(q=q, modulus=modulus, workers=workers, witnessCap=witness_cap)
        index = config.index()
        points = read_point_set(path, index)
        form = fit_quadric(points, index)
        result = FitResult(points=points.count(), form=None if form is None else str(form))
        if form is not None:
            try:
                result.nucleus = str(nucleus(form))
            except SingularFormError as e:
                logger.warning("fitted form has no nucleus: %s", e)
        _emit(dump_json(result), out)
    if form is None:
        raise typer.Exit(code=1)


@app.command("spectrum")
def cmd_spectrum(
    path: InputArgument,
    q: QOption,
    modulus: ModulusOption = None,
    workers: WorkersOption = None,
    witness_cap: CapOption = None,
    out: OutOption = None,
):
    """Print how many points, planes and lines lie in each number of solids of the set."""
    with _exit_codes():
        config = RunConfig.build(q=q, modulus=modulus, workers=workers, witnessCap=witness_cap)
        index = config.index()
        _emit(dump_json(spectrum_summary(read_solid_set(path, index), index)), out)


if __name__ == "__main__":
    app()
