"""
Command line front end.

    saxl-graphs run RECIPE [--all | --base --saxl --reg --prob k=K --isigma --wreath-check] [--json PATH] [--dot PATH]
    saxl-graphs reproduce SUITE [--csv PATH]
    saxl-graphs export RECIPE --format dot|edges --out PATH
    saxl-graphs fixtures

Exit codes: 0 success, 1 mismatch in a reproduced table, 2 usage or parse error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
import traceback
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import pandas as pd

import saxl_graphs.config as cfg
import saxl_graphs.exceptions as sx_e
from saxl_graphs.bases import BaseSearchResult, base_size, irredundant_max, reg
from saxl_graphs.fixtures import list_fixtures
from saxl_graphs.group import PermGroup
from saxl_graphs.prob import prob_report
from saxl_graphs.recipes import Compound, Recipe, evaluate, parse
from saxl_graphs.report import Report, emit, prob_block, skipped
from saxl_graphs.saxl import (
    SaxlGraph,
    common_neighbour_check,
    is_arc_transitive,
    is_complete,
    isigma,
    saxl_graph,
    strong_conjecture_check,
    write_dot,
    write_edges,
)
from saxl_graphs.tables import all_match, reproduce_table
from saxl_graphs.wreath import distinguishing_number, wreath_base_size

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_CAP = 3

SAXL_FIELDS = ("val", "vertices", "diameter", "complete", "cnc", "cnc_strong", "arc_transitive")


@dataclass
class Analyses:
    """Which parts of a report to compute. `prob_k` of 0 means k = b(G)."""

    base: bool = False
    saxl: bool = False
    reg: bool = False
    isigma: bool = False
    wreath: bool = False
    prob_k: Optional[int] = None

    @classmethod
    def everything(cls) -> Analyses:
        return cls(True, True, True, True, True, 0)

    def any(self) -> bool:
        return self.base or self.saxl or self.reg or self.isigma or self.wreath or self.prob_k is not None


class _Session:
    """One group with lazily computed b(G) and Σ(G)."""

    def __init__(self, recipe: Recipe, group: PermGroup, hint_b: Optional[int] = None):
        self.recipe = recipe
        self.group = group
        self.hint_b = hint_b
        self._base: Optional[BaseSearchResult] = None
        self._graph: Optional[SaxlGraph] = None

    @property
    def base(self) -> BaseSearchResult:
        if self._base is None:
            self._base = base_size(self.group, self.hint_b)
        return self._base

    @property
    def graph(self) -> SaxlGraph:
        if self._graph is None:
            self._graph = saxl_graph(self.group, self.base.b, allow_intransitive=True)
        return self._graph


@contextmanager
def _phase(report: Report, name: str) -> Iterator[None]:
    logger.info("Phase %s started", name)
    start = time.perf_counter()
    try:
        yield
    finally:
        report.timings[name] = round(time.perf_counter() - start, 6)
        logger.info("Phase %s finished in %.3f s", name, report.timings[name])


def _reason(error: Exception) -> str:
    return str(error) or type(error).__name__


def _fill_base(session: _Session, report: Report) -> None:
    result = session.base
    report.b = result.b
    report.witness = list(result.witness)


def _fill_saxl(session: _Session, report: Report) -> None:
    graph = session.graph
    report.vertices = graph.vertex_count
    report.val = graph.valency if graph.valency is not None else skipped("graph is not regular")
    connectivity = graph.connectivity()
    report.diameter = connectivity.diameter if connectivity.connected else connectivity.describe()
    report.complete = is_complete(graph)
    report.cnc = common_neighbour_check(graph)
    report.cnc_strong = strong_conjecture_check(graph) if graph.transitive else skipped("intransitive")
    report.arc_transitive = is_arc_transitive(graph)


def _fill_reg(session: _Session, report: Report) -> None:
    report.reg = reg(session.group, session.base.b).reg


def _fill_isigma(session: _Session, report: Report) -> None:
    report.irredundant_max = irredundant_max(session.group)[0]
    report.isigma_complete = isigma(session.group).is_complete()


def _fill_prob(session: _Session, report: Report, k: int, samples: Optional[int]) -> None:
    if k == 0:
        k = session.base.b
    report.prob = prob_block(prob_report(session.group, k, samples))


def _fill_wreath(session: _Session, report: Report) -> None:
    recipe = session.recipe
    if not isinstance(recipe, Compound) or recipe.operator != "wr":
        report.wreath = skipped("not a wreath product recipe")
        return
    component = evaluate(recipe.operands[0])
    top = evaluate(recipe.operands[1])
    d, partition = distinguishing_number(top)
    predicted = wreath_base_size(component, top)
    b = session.base.b
    report.wreath = {
        "component": str(recipe.operands[0]),
        "top": str(recipe.operands[1]),
        "distinguishing_number": d,
        "distinguishing_partition": [sorted(p) for p in partition.nonempty()],
        "predicted_b": predicted,
        "b": b,
        "match": predicted == b,
    }


def run(text: str, analyses: Optional[Analyses] = None, samples: Optional[int] = None, hint_b: Optional[int] = None) -> Report:
    """Build the group a recipe describes and compute the requested invariants.

    A domain error inside one analysis marks its fields as skipped and the
    remaining analyses still run. With no analyses requested, all of them run.

    Raises:
        RecipeParseError: If the recipe does not parse.
        CapExceeded: If building the group exceeds a cap.
    """
    if analyses is None or not analyses.any():
        analyses = Analyses.everything()
    recipe = parse(text)
    report = Report(recipe=text, seed=cfg.SEED, degree=0, order=0, transitive=False)
    with _phase(report, "construct"):
        group = evaluate(recipe)
    session = _Session(recipe, group, hint_b)
    report.degree = group.degree
    report.order = group.order()
    report.transitive = group.is_transitive()
    report.primitive = group.is_primitive()[0] if report.transitive else skipped("intransitive")

    steps = [
        (analyses.base, "base", ("b", "witness"), lambda: _fill_base(session, report)),
        (analyses.saxl, "saxl", SAXL_FIELDS, lambda: _fill_saxl(session, report)),
        (analyses.reg, "reg", ("reg",), lambda: _fill_reg(session, report)),
        (analyses.isigma, "isigma", ("irredundant_max", "isigma_complete"), lambda: _fill_isigma(session, report)),
        (analyses.prob_k is not None, "prob", ("prob",), lambda: _fill_prob(session, report, analyses.prob_k or 0, samples)),
        (analyses.wreath, "wreath", ("wreath",), lambda: _fill_wreath(session, report)),
    ]
    for wanted, name, names, step in steps:
        if not wanted:
            continue
        with _phase(report, name):
            try:
                step()
            except sx_e.DOMAIN_ERRORS as e:
                logger.warning("%s skipped: %s", name, _reason(e))
                report.skip(names, _reason(e))
    return report


def export_graph(text: str, fmt: str, path: str) -> SaxlGraph:
    """Write Σ(G) for a recipe as a DOT file or an edge list."""
    graph = saxl_graph(evaluate(parse(text)), allow_intransitive=True)
    if fmt == "dot":
        write_dot(graph, path)
    elif fmt == "edges":
        write_edges(graph, path)
    else:
        raise sx_e.UnsupportedVariant(f"Unknown export format {fmt!r}, expected dot or edges")
    return graph


# ======================================================================
# Argument parsing


def _prob_k(text: str) -> int:
    """Parse "k=3", "3" or "k=b" (0 stands for b(G))."""
    value = text.split("=", 1)[1] if text.startswith("k=") else text
    if value == "b":
        return 0
    try:
        k = int(value)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected k=<int> or k=b, got {text!r}") from e
    if k < 1:
        raise argparse.ArgumentTypeError(f"k must be at least 1, got {k}")
    return k


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--debug", action="store_true", help="Enable debug output")
    common.add_argument("--seed", type=int, help="Engine seed")
    common.add_argument("--threads", type=int, help="Worker threads for sharded searches")
    common.add_argument("--cap-degree", type=int, help="Largest degree a constructor may produce")
    common.add_argument("--cap-group-order", type=int, help="Largest group whose elements may be streamed")

    parser = argparse.ArgumentParser(prog="saxl-graphs", description="Bases and Saxl graphs of permutation groups")
    commands = parser.add_subparsers(dest="command", required=True)

    run_parser = commands.add_parser("run", parents=[common], help="Compute invariants of one group")
    run_parser.add_argument("recipe", help='Group recipe, e.g. "pgl2:7:pl" or "wr(sym:3; cyc:2)"')
    run_parser.add_argument("--all", action="store_true", help="Run every analysis (the default)")
    run_parser.add_argument("--base", action="store_true", help="Base size and a minimal base")
    run_parser.add_argument("--saxl", action="store_true", help="Saxl graph invariants")
    run_parser.add_argument("--reg", action="store_true", help="Regular orbits on minimal bases")
    run_parser.add_argument("--prob", type=_prob_k, metavar="k=K", help="Non-base probabilities for K-tuples (k=b for b(G))")
    run_parser.add_argument("--isigma", action="store_true", help="Irredundant base graph")
    run_parser.add_argument("--wreath-check", action="store_true", help="Product action base size formula")
    run_parser.add_argument("--hint-b", type=int, help="Expected base size, skips shallower searches")
    run_parser.add_argument("--samples", type=int, help="Monte Carlo sample count")
    run_parser.add_argument("--json", metavar="PATH", help="Write the report to PATH instead of stdout")
    run_parser.add_argument("--dot", metavar="PATH", help="Also write the Saxl graph as DOT")

    reproduce_parser = commands.add_parser("reproduce", parents=[common], help="Recompute a regression table")
    reproduce_parser.add_argument("suite", help="Suite name")
    reproduce_parser.add_argument("--csv", metavar="PATH", help="Also write the table as CSV")

    export_parser = commands.add_parser("export", parents=[common], help="Write the Saxl graph of a group")
    export_parser.add_argument("recipe")
    export_parser.add_argument("--format", choices=["dot", "edges"], default="dot")
    export_parser.add_argument("--out", required=True, metavar="PATH")

    commands.add_parser("fixtures", parents=[common], help="List bundled fixtures")
    return parser


def _analyses(args: argparse.Namespace) -> Analyses:
    if args.all:
        return Analyses.everything()
    return Analyses(args.base, args.saxl, args.reg, args.isigma, args.wreath_check, args.prob)


def _command_run(args: argparse.Namespace) -> int:
    report = run(args.recipe, _analyses(args), args.samples, args.hint_b)
    text = emit(report)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as handle:
            handle.write(text)
        logger.info("Report written to %s", args.json)
    else:
        sys.stdout.write(text)
    if args.dot:
        export_graph(args.recipe, "dot", args.dot)
    return EXIT_OK


def _command_reproduce(args: argparse.Namespace) -> int:
    table = reproduce_table(args.suite)
    with pd.option_context("display.max_colwidth", None, "display.width", 200):
        print(table.to_string(index=False))
    if args.csv:
        table.to_csv(args.csv, index=False)
    return EXIT_OK if all_match(table) else EXIT_MISMATCH


def _command_export(args: argparse.Namespace) -> int:
    graph = export_graph(args.recipe, args.format, args.out)
    print(f"Wrote {graph.vertex_count} vertices to {args.out}")
    return EXIT_OK


def _command_fixtures(args: argparse.Namespace) -> int:
    table = pd.DataFrame(list_fixtures(), columns=["name", "kind", "description"])
    with pd.option_context("display.max_colwidth", None, "display.width", 200):
        print(table.to_string(index=False))
    return EXIT_OK


COMMANDS = {
    "run": _command_run,
    "reproduce": _command_reproduce,
    "export": _command_export,
    "fixtures": _command_fixtures,
}


def _failed(args: argparse.Namespace, code: int) -> int:
    if args.debug:
        traceback.print_exc()
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    logging.basicConfig(level=logging.DEBUG if args.debug else logging.INFO, format="%(levelname)s %(name)s: %(message)s")

    try:
        cfg.load()
        cfg.override(
            degree_cap=args.cap_degree,
            group_order_cap=args.cap_group_order,
            seed=args.seed,
            threads=args.threads,
        )
    except (OSError, ValueError) as e:
        logger.error("Error loading configuration: %s", e)
        return EXIT_USAGE

    try:
        return COMMANDS[args.command](args)
    except sx_e.CapExceeded as e:
        logger.error("Cap exceeded: %s", e)
        return _failed(args, EXIT_CAP)
    except sx_e.DOMAIN_ERRORS as e:
        logger.error("%s: %s", type(e).__name__, e)
        return _failed(args, EXIT_USAGE)
    except OSError as e:
        logger.error("I/O error: %s", e)
        return _failed(args, EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())
