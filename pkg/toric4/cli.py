import json
import sys
from typing import Optional, Sequence

import click
from loguru import logger
from pydantic import ValidationError

from toric4.core.config import settings
from toric4.core.exceptions import InputError, ToricError
from toric4.core.logging import configure_logging
from toric4.models.ring import RingSpec
from toric4.schemas.morphism import MorphismDocument
from toric4.schemas.pair import PairDocument
from toric4.services import charpair, fuzz, reports


class ReportFailure(Exception):
    """Raised after a report has been printed but the command must still exit nonzero."""

    def __init__(self, exit_code: int):
        self.exit_code = exit_code


def _load_json(path: str) -> dict:
    try:
        with click.open_file(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}")


def _load_edges(path: str) -> list:
    return PairDocument.model_validate(_load_json(path)).edges


def _load_pair(path: str):
    return charpair.parse_pair(_load_edges(path))


def _load_morphism(path: str) -> MorphismDocument:
    return MorphismDocument.model_validate(_load_json(path))


def _parse_ring(text: str) -> RingSpec:
    try:
        return RingSpec.parse(text)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--ring")


def _emit(report: dict, fmt: str) -> None:
    if fmt == "text":
        click.echo(reports.render_text(report))
    else:
        click.echo(reports.to_json(report))


format_option = click.option(
    "--format", "fmt", type=click.Choice(["json", "text"]), default=None, help="Report format."
)
ring_option = click.option("--ring", default="z", show_default=True, help="z | q | zmod:<m>")
index_option = click.option("--index", type=int, default=None, help="Edge index used for normalization.")


def _fmt(fmt: Optional[str]) -> str:
    return fmt or settings.DEFAULT_FORMAT


@click.group()
@click.option("--verbose", is_flag=True, help="Log at DEBUG level on stderr.")
def main(verbose: bool):
    """Cohomology rings of 4-dimensional toric orbifolds from characteristic pairs."""
    configure_logging("DEBUG" if verbose else None)


@main.command()
@click.argument("path")
@click.option("--degenerate", is_flag=True, help="Only require primitive vectors.")
@format_option
def validate(path: str, degenerate: bool, fmt: Optional[str]):
    """Validate a characteristic pair."""
    report, ok = reports.validate_report(_load_edges(path), degenerate)
    _emit(report, _fmt(fmt))
    if not ok:
        raise ReportFailure(1)


@main.command()
@click.argument("path")
@ring_option
@format_option
def groups(path: str, ring: str, fmt: Optional[str]):
    """Cohomology groups H^0..H^4."""
    _emit(reports.groups_report(_load_pair(path), _parse_ring(ring)), _fmt(fmt))


@main.command()
@click.argument("path")
@ring_option
@click.option(
    "--theorem", type=click.Choice(["auto", "smooth", "triangle", "pid"]), default="auto", show_default=True
)
@index_option
@format_option
def cup(path: str, ring: str, theorem: str, index: Optional[int], fmt: Optional[str]):
    """Cup-product matrix from the closed-form formulas."""
    _emit(reports.cup_report(_load_pair(path), _parse_ring(ring), theorem, index), _fmt(fmt))


@main.command()
@click.argument("path")
@index_option
@format_option
def oracle(path: str, index: Optional[int], fmt: Optional[str]):
    """Cross-check the cup products against the rational Stanley-Reisner quotient."""
    _emit(reports.oracle_report(_load_pair(path), index), _fmt(fmt))


@main.command()
@click.argument("path")
@click.option("--flavor", type=click.Choice(["auto", "smooth", "half"]), default="auto", show_default=True)
@index_option
@click.option("--shear", type=int, default=None, help="Shear for the half normalization.")
@format_option
def normalize(path: str, flavor: str, index: Optional[int], shear: Optional[int], fmt: Optional[str]):
    """Relabel and change basis into smooth or half form."""
    _emit(reports.normalize_report(_load_pair(path), flavor, index, shear), _fmt(fmt))


@main.command()
@click.argument("path")
@click.option("--morph", "morph_paths", multiple=True, required=True, help="Morphism JSON file; repeatable.")
@format_option
def morph(path: str, morph_paths: Sequence[str], fmt: Optional[str]):
    """Apply a pipeline of toric morphisms."""
    pair = charpair.promote(charpair.parse_degenerate(_load_edges(path)))
    docs = [_load_morphism(p) for p in morph_paths]
    _emit(reports.morph_report(pair, docs), _fmt(fmt))


@main.command()
@click.argument("path")
@click.option("--morph", "morph_path", required=True, help="Morphism JSON file.")
@format_option
def lift(path: str, morph_path: str, fmt: Optional[str]):
    """Solve for the lifting of a toric morphism."""
    _emit(reports.lift_report(_load_pair(path), _load_morphism(morph_path)), _fmt(fmt))


@main.command(name="fuzz")
@click.option("--seed", type=int, default=None, help="Generator seed.")
@click.option("--count", type=click.IntRange(min=1), default=None, help="Cases per check.")
@click.option("--check", "checks", multiple=True, type=click.Choice(list(fuzz.CHECKS)), help="Run only these checks.")
@format_option
def fuzz_command(seed: Optional[int], count: Optional[int], checks: Sequence[str], fmt: Optional[str]):
    """Deterministic property sweep."""
    _emit(fuzz.run_fuzz(seed, count, checks), _fmt(fmt))


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the CLI and return its exit code.

    0 on success, 1 on usage or input errors, 2 when a computation's
    mathematical precondition fails.
    """
    try:
        main.main(args=list(argv) if argv is not None else None, prog_name="toric4", standalone_mode=False)
    except ReportFailure as exc:
        return exc.exit_code
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 1
    except ToricError as exc:
        logger.error(f"{exc.kind}: {exc.message}")
        click.echo(json.dumps(reports.jsonable(exc.to_dict())), err=True)
        return exc.exit_code
    except ValidationError as exc:
        click.echo(json.dumps({"error": "ValidationError", "message": str(exc)}), err=True)
        return 1
    except ValueError as exc:
        click.echo(json.dumps({"error": "ValueError", "message": str(exc)}), err=True)
        return 1
    return 0


def entrypoint() -> None:
    sys.exit(run())
