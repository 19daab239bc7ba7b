"""
symbreak CLI: colourings that break small automorphisms, with JSON output.

Results go to standard output (or --output) as JSON; logs and errors go to
standard error through rich. Exit codes:

    0  success
    1  unexpected error or a theorem violation
    2  invalid input (graph, lists, colouring, options)
    3  size limit or oracle budget exceeded
    4  a supplied colouring fails verification
"""

import logging
import os
import sys
from functools import wraps
from pathlib import Path
from typing import Dict, List, Optional

import click
from pydantic import BaseModel
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape

from symbreak import __version__
from symbreak.config.settings import settings
from symbreak.core.errors import (
    BudgetExceededError,
    SizeLimitError,
    SymbreakError,
    TheoremViolationError,
)
from symbreak.core.graph import Edge, Graph
from symbreak.core.models import ListAssignment

console = Console(stderr=True, soft_wrap=True)
logger = logging.getLogger("symbreak")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_LIMIT = 3
EXIT_NOT_BROKEN = 4


class CliConfig(BaseModel):
    """Options shared by every subcommand."""
    budget: Optional[int] = None
    search_limit: Optional[int] = None
    output: Optional[Path] = None
    verbosity: int = 0
    debug: bool = False

    @property
    def limits(self) -> Dict[str, int]:
        return {} if self.search_limit is None else {"search_limit": self.search_limit}


def setup_logging(config: CliConfig) -> None:
    if config.debug or config.verbosity >= 2:
        level = "DEBUG"
    elif config.verbosity == 1:
        level = "INFO"
    else:
        level = settings.log_level
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=console, show_path=False)],
        force=True,
    )


def emit(config: CliConfig, payload) -> None:
    """Write a JSON result to --output or standard output."""
    from symbreak.tools.colouring_io import to_json

    text = to_json(payload)
    if config.output is None:
        click.echo(text)
    else:
        config.output.write_text(text + "\n", encoding="utf-8")
        logger.info("wrote %s", config.output)


# ---------------------------------------------------------------------------
# Input options
# ---------------------------------------------------------------------------


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise click.BadParameter(f"cannot read {path}: {exc.strerror}") from None


def graph_source(func):
    """Positional inline graph6 GRAPH or --input PATH, exactly one."""

    @click.argument("graph", required=False)
    @click.option("--input", "-i", "input_path", help="Graph file (graph6 or edge list); '-' reads stdin.")
    @click.option(
        "--format", "fmt", type=click.Choice(["auto", "graph6", "edges"]), default="auto",
        show_default=True, help="Graph input format.",
    )
    @wraps(func)
    def wrapper(*args, graph, input_path, fmt, **kwargs):
        from symbreak.tools.graph_io import read_graph

        if (graph is None) == (input_path is None):
            raise click.UsageError("give exactly one graph source: GRAPH or --input")
        if graph is not None:
            g, relabel = read_graph(graph, "graph6" if fmt == "auto" else fmt)
        else:
            g, relabel = read_graph(_read(input_path), fmt)
        report_relabelling(relabel)
        return func(*args, g=g, **kwargs)

    return wrapper


def report_relabelling(relabel: Dict[int, int], shown: int = 20) -> None:
    """Warn when input vertex ids were renumbered; later ids refer to the new numbering."""
    moved = [(old, new) for old, new in sorted(relabel.items()) if old != new]
    if not moved:
        return
    pairs = ", ".join(f"{old}->{new}" for old, new in moved[:shown])
    more = f" (+{len(moved) - shown} more)" if len(moved) > shown else ""
    logger.warning("vertex ids relabelled: %s%s", pairs, more)


def list_source(func):
    """--lists FILE, --uniform K or --random K, exactly one."""

    @click.option("--lists", "lists_path", help="List assignment JSON file.")
    @click.option("--uniform", type=int, help="Give every list the tokens 1..K.")
    @click.option("--random", "random_k", type=int, help="Random K-subsets of the palette.")
    @click.option("--palette", type=int, default=None, help="Palette size for --random.")
    @click.option("--seed", type=int, default=0, show_default=True, help="Seed for --random.")
    @wraps(func)
    def wrapper(*args, lists_path, uniform, random_k, palette, seed, **kwargs):
        sources = [s for s in (lists_path, uniform, random_k) if s is not None]
        if len(sources) != 1:
            raise click.UsageError("give exactly one list source: --lists, --uniform or --random")
        kwargs["list_options"] = (lists_path, uniform, random_k, palette, seed)
        return func(*args, **kwargs)

    return wrapper


def build_lists(g: Graph, list_options, with_vertices: bool = False) -> ListAssignment:
    from symbreak.core.index import random_list_assignment
    from symbreak.tools.colouring_io import load_list_assignment

    lists_path, uniform, random_k, palette, seed = list_options
    if lists_path is not None:
        return load_list_assignment(_read(lists_path))
    if uniform is not None:
        return ListAssignment.uniform(g, uniform, with_vertices)
    if palette is None:
        palette = settings.limits.certify.palette
    return random_list_assignment(g, random_k, palette, seed, with_vertices)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


@click.group()
@click.version_option(__version__, prog_name="symbreak")
@click.option("--budget", type=click.IntRange(min=1), help="Oracle search budget (default SYMBREAK_BUDGET).")
@click.option("--search-limit", type=click.IntRange(min=1), help="Largest order for automorphism search.")
@click.option("--output", "-o", type=click.Path(dir_okay=False, path_type=Path), help="Write JSON here.")
@click.option("--verbose", "-v", count=True, help="More logging (-vv for debug).")
@click.option("--debug", is_flag=True, help="Debug checks and tracebacks.")
@click.pass_context
def cli(ctx, budget, search_limit, output, verbose, debug):
    """symbreak: list colourings that break small automorphisms."""
    if debug:
        os.environ["SYMBREAK_DEBUG"] = "true"
    config = CliConfig(
        budget=budget, search_limit=search_limit, output=output, verbosity=verbose, debug=debug
    )
    setup_logging(config)
    ctx.obj = config


@cli.command()
@graph_source
@click.pass_obj
def autos(config: CliConfig, g: Graph):
    """List every automorphism."""
    from symbreak.core.automorphisms import enumerate_automorphisms

    found = enumerate_automorphisms(g, **config.limits)
    emit(config, {"count": len(found), "automorphisms": [list(p) for p in found]})


@cli.command("small-autos")
@graph_source
@click.pass_obj
def small_autos(config: CliConfig, g: Graph):
    """List the automorphisms moving some vertex to a neighbour."""
    from symbreak.core.automorphisms import small_automorphisms

    found = small_automorphisms(g, **config.limits)
    emit(config, {"count": len(found), "automorphisms": [list(p) for p in found]})


@cli.command()
@graph_source
@click.option("--root", "-r", type=int, required=True, help="Vertex fixed by the stabilizer.")
@click.pass_obj
def orbits(config: CliConfig, g: Graph, root: int):
    """Orbits of the stabilizer of ROOT, ordered by distance."""
    from symbreak.core.automorphisms import vertex_orbits

    partition = vertex_orbits(g, root, **config.limits)
    emit(config, {
        "root": root,
        "orbits": [
            {"distance": partition.distance[min(o)], "vertices": sorted(o)}
            for o in partition.orbits
        ],
    })


@cli.command("color-edges")
@graph_source
@list_source
@click.pass_obj
def color_edges(config: CliConfig, g: Graph, list_options):
    """Edge colouring from 3-lists breaking every small automorphism."""
    from symbreak.core.colouring import theorem_edge_colouring
    from symbreak.tools.colouring_io import colouring_document

    lists = build_lists(g, list_options)
    colouring, traces = theorem_edge_colouring(g, lists, **config.limits)
    doc = colouring_document(colouring).model_dump(mode="json", exclude_none=True)
    doc["verified"] = True
    doc["traces"] = [t.model_dump(mode="json") for t in traces]
    emit(config, doc)


@cli.command("color-total")
@graph_source
@list_source
@click.pass_obj
def color_total(config: CliConfig, g: Graph, list_options):
    """Total colouring from 2-lists breaking every small automorphism."""
    from symbreak.core.colouring import total_colouring
    from symbreak.tools.colouring_io import colouring_document

    lists = build_lists(g, list_options, with_vertices=True)
    c = total_colouring(g, lists, **config.limits)
    doc = colouring_document(c).model_dump(mode="json", exclude_none=True)
    doc["verified"] = True
    emit(config, doc)


@cli.command()
@graph_source
@click.option("--coloring", "coloring_path", required=True, help="Colouring JSON file.")
@click.option("--root", "-r", type=int, default=None, help="Only check automorphisms fixing ROOT.")
@click.option("--total", is_flag=True, help="Check a total colouring (vertices too).")
@click.pass_context
def verify(ctx, g: Graph, coloring_path: str, root: Optional[int], total: bool):
    """Check that a colouring breaks every small automorphism."""
    from symbreak.core import verifier
    from symbreak.tools.colouring_io import load_colouring, load_total_colouring

    config: CliConfig = ctx.obj
    text = _read(coloring_path)
    if root is not None:
        g.check_vertex(root)
    if total:
        c = load_total_colouring(text)
        _reject_foreign_edges(g, c.edges)
        if root is None:
            report = verifier.breaks_all_small_total(g, c, **config.limits)
        else:
            report = verifier.breaks_all_small_total_rooted(g, root, c, **config.limits)
    else:
        edges, _ = load_colouring(text)
        _reject_foreign_edges(g, edges)
        if root is None:
            report = verifier.breaks_all_small(g, edges, **config.limits)
        else:
            report = verifier.breaks_all_small_rooted(g, root, edges, **config.limits)
    emit(config, report)
    if not report.ok:
        logger.warning("automorphism %s preserves the colouring", report.witness)
        ctx.exit(EXIT_NOT_BROKEN)


def _reject_foreign_edges(g: Graph, edges: Dict[Edge, object]) -> None:
    from symbreak.core.errors import GraphFormatError

    foreign = [tuple(e) for e in edges if e.v >= g.n or not g.has_edge(e.u, e.v)]
    if foreign:
        raise GraphFormatError(f"coloured pairs that are not edges: {foreign[:5]}")


@cli.command()
@graph_source
@click.option("--adversarial", is_flag=True, help="Enumerate canonical list patterns.")
@click.option("--spot-checks", type=click.IntRange(min=0), default=None, help="Random 3-list checks.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.pass_obj
def index(config: CliConfig, g: Graph, adversarial: bool, spot_checks: Optional[int], seed: int):
    """Small distinguishing index and small list distinguishing index bounds."""
    from symbreak.core.index import small_distinguishing_index, small_list_distinguishing_index_bounds

    value = small_distinguishing_index(g, budget=config.budget, **config.limits)
    bounds = small_list_distinguishing_index_bounds(
        g, budget=config.budget, adversarial=adversarial, spot_checks=spot_checks, seed=seed,
        index=value, **config.limits,
    )
    emit(config, {
        "small_distinguishing_index": value.model_dump(mode="json"),
        "small_list_distinguishing_index": bounds.model_dump(mode="json"),
    })


@cli.command()
@graph_source
@list_source
@click.pass_obj
def oracle(config: CliConfig, g: Graph, list_options):
    """Exhaustive search for a list colouring breaking every small automorphism."""
    from symbreak.core.index import exists_breaking_colouring
    from symbreak.core.models import colouring_entries

    lists = build_lists(g, list_options)
    lists.require(g, 1)
    found = exists_breaking_colouring(g, lists, budget=config.budget, **config.limits)
    payload = {"exists": found is not None}
    if found is not None:
        payload["edges"] = colouring_entries(found)
    emit(config, payload)


@cli.command()
@click.argument(
    "kind", type=click.Choice(["theorem", "lemma", "total", "reduction", "sharpness", "bound"])
)
@click.option("--max-n", type=click.IntRange(min=2), default=None, help="Largest graph order.")
@click.option("--seeds", type=click.IntRange(min=1), default=None, help="List assignments per case.")
@click.option("--palette", type=click.IntRange(min=3), default=None)
@click.option("--samples", type=click.IntRange(min=1), default=None, help="Samples for 'reduction'.")
@click.pass_context
def certify(ctx, kind: str, max_n: Optional[int], seeds: Optional[int], palette: Optional[int],
            samples: Optional[int]):
    """Run a certification sweep over small graphs."""
    from symbreak.core import certify as sweeps

    config: CliConfig = ctx.obj
    if kind == "reduction":
        summary = sweeps.certify_component_reduction(samples, max_n)
    elif kind == "sharpness":
        summary = sweeps.certify_sharpness(config.budget)
    else:
        corpus = sweeps.connected_corpus(6 if max_n is None else max_n)
        with console.status(f"[bold blue]certifying {kind}...[/bold blue]"):
            if kind == "theorem":
                summary = sweeps.certify_theorem(corpus, seeds, palette)
            elif kind == "lemma":
                summary = sweeps.certify_lemma(corpus, seeds, palette)
            elif kind == "total":
                summary = sweeps.certify_total(corpus, seeds, palette)
            else:
                summary = sweeps.certify_index_bound(corpus, config.budget)
    emit(config, summary)
    if not summary.ok:
        console.print(f"[red]FAIL[/red] {summary.failures} of {summary.cases} cases")
        ctx.exit(EXIT_FAILURE)
    console.print(f"[green]OK[/green] {summary.cases} cases")


@cli.command()
@graph_source
@click.pass_obj
def encode(config: CliConfig, g: Graph):
    """Print the graph in graph6."""
    from symbreak.tools.graph_io import encode_graph6

    click.echo(encode_graph6(g))


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, (SizeLimitError, BudgetExceededError)):
        return EXIT_LIMIT
    if isinstance(exc, TheoremViolationError):
        return EXIT_FAILURE
    if isinstance(exc, (SymbreakError, ValueError)):
        return EXIT_INPUT
    return EXIT_FAILURE


def run(argv: Optional[List[str]] = None) -> int:
    """Run the CLI on argv and return the exit code."""
    try:
        result = cli.main(args=argv, prog_name="symbreak", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.exceptions.Abort:
        console.print("[yellow]Aborted[/yellow]")
        return EXIT_FAILURE
    except click.ClickException as exc:
        exc.show()
        return EXIT_INPUT
    except Exception as exc:
        code = _exit_code(exc)
        label = "error" if code != EXIT_FAILURE else "failure"
        console.print(f"[red]{label}:[/red] {escape(str(exc))}")
        if settings.debug_mode:
            console.print_exception()
        return code
    return result if isinstance(result, int) else EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
