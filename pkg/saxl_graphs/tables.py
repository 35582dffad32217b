""" Regression tables. Each suite is a list of cases with a known value; `reproduce_table` recomputes every case and returns a pandas DataFrame with the columns case, expected, computed and match.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass
from typing import Any, Callable, Optional

import pandas as pd

import saxl_graphs.exceptions as sx_e
from saxl_graphs.bases import base_size, reg
from saxl_graphs.group import PermGroup
from saxl_graphs.protocol.graph import VertexGraph
from saxl_graphs.prob import common_neighbour_thresholds, q_exact, qhat, valency_bound_holds
from saxl_graphs.recipes import build
from saxl_graphs.saxl import (
    SaxlGraph,
    common_neighbour_check,
    irredundant_interval_holds,
    is_arc_transitive,
    is_complete,
    isigma,
    isigma_k,
    same_edges,
    saxl_graph,
    strong_conjecture_check,
)
from saxl_graphs.wreath import distinguishing_number, unique_regular_partition_orbit, wreath_base_size

logger = logging.getLogger(__name__)

COLUMNS = ["case", "expected", "computed", "match"]

DIAG_PLAIN = "diag:T=A5:k=2:outer=0"
DIAG_FULL = "diag:T=A5:k=2:top=sym:2:outer=1"
DIAG_CUBE = "diag:T=A5:k=3:top=sym:3:outer=1"

# primitive groups of the base, diagonal, sporadic and remark suites
PRIMITIVE_RECIPES = [
    "alt:5",
    "sym:5",
    "alt:6",
    "sym:6",
    "psl2:7:pl",
    "glvec:2:3",
    "pgaml2:8:pl",
    "affine:2:3:gl",
    "wr(sym:3; sym:2)",
    "fixture:l2-11-on-11",
    "fixture:l2-19-on-57",
    "fixture:psl2-9-on-15",
    "fixture:psigmal2-9-sublines",
    "fixture:psigmal2-16-sublines",
    "fixture:psigmal2-25-sublines",
    "fixture:l3-4-on-56",
    "fixture:m11-on-165",
    "fixture:m12-on-144",
    DIAG_PLAIN,
    DIAG_FULL,
    DIAG_CUBE,
]

# suite groups with |Ω|^b at most 10^6
PROB_RECIPES = [
    "alt:5",
    "sym:5",
    "alt:6",
    "sym:6",
    "psl2:7:pl",
    "glvec:2:3",
    "glvec:3:2",
    "wr(sym:3; sym:2)",
    "wr(sym:3; cyc:3)",
    "wr(alt:5; cyc:2)",
    "fixture:l2-11-on-11",
    "fixture:l2-19-on-57",
    "fixture:psl2-9-on-15",
    "fixture:psigmal2-9-sublines",
    "fixture:psigmal2-16-sublines",
    "fixture:psigmal2-25-sublines",
    "fixture:pgl2-7-on-14",
    "fixture:l3-4-on-56",
    "fixture:m11-on-165",
    DIAG_PLAIN,
]

# primitive suite groups of degree at most 20
IRREDUNDANT_RECIPES = [
    "psl2:5:pl",
    "alt:5",
    "sym:5",
    "glvec:2:3",
    "glvec:3:2",
    "alt:6",
    "psl2:7:pl",
    "sym:6",
    "pgaml2:8:pl",
    "affine:2:3:gl",
    "wr(sym:3; sym:2)",
    "fixture:l2-11-on-11",
    "fixture:psl2-9-on-15",
    "fixture:psigmal2-9-sublines",
]


@dataclass
class Case:
    name: str
    expected: Any
    compute: Callable[[], Any]


@functools.lru_cache(maxsize=None)
def _group(recipe: str) -> PermGroup:
    return build(recipe)


@functools.lru_cache(maxsize=None)
def _b(recipe: str) -> int:
    return base_size(_group(recipe)).b


@functools.lru_cache(maxsize=None)
def _graph(recipe: str) -> SaxlGraph:
    return saxl_graph(_group(recipe), _b(recipe))


def _components(recipe: str) -> int:
    return _graph(recipe).connectivity().components


def complete_multipartite_parts(graph: VertexGraph) -> Optional[list[int]]:
    """Part sizes if the graph is complete multipartite, else None.

    The graph is complete multipartite iff non-adjacency (together with
    equality) is an equivalence relation; the parts are its classes.
    """
    n = graph.vertex_count
    seen = [False] * n
    sizes: list[int] = []
    for v in range(n):
        if seen[v]:
            continue
        part = [w for w in range(n) if w == v or not graph.is_adjacent(v, w)]
        if any(seen[w] for w in part):
            return None
        for u in part:
            if any(w != u and graph.is_adjacent(u, w) for w in part):
                return None
            seen[u] = True
        sizes.append(len(part))
    return sorted(sizes)


def _wreath_formula_case(component: str, top: str) -> Case:
    recipe = f"wr({component}; {top})"
    return Case(
        f"b({recipe}) = min m with reg(L, m) >= D(P)",
        True,
        lambda: wreath_base_size(_group(component), _group(top)) == _b(recipe),
    )


def _psl2_bases() -> list[Case]:
    expected = [
        ("alt:5", 3),
        ("glvec:2:3", 3),
        ("fixture:l2-11-on-11", 3),
        ("fixture:l2-19-on-57", 3),
        ("sym:5", 4),
        ("alt:6", 4),
        ("sym:6", 5),
        ("fixture:psl2-9-on-15", 4),
        ("fixture:psigmal2-9-sublines", 4),
        ("fixture:psigmal2-16-sublines", 3),
        ("fixture:psigmal2-25-sublines", 3),
    ]
    return [Case(f"b({recipe})", b, functools.partial(_b, recipe)) for recipe, b in expected]


def _diag_small() -> list[Case]:
    plain, full, cube = DIAG_PLAIN, DIAG_FULL, DIAG_CUBE
    return [
        Case(f"b({plain})", 3, lambda: _b(plain)),
        Case(f"complete({plain})", True, lambda: is_complete(_graph(plain))),
        Case(f"b({full})", 4, lambda: _b(full)),
        Case(f"arc_transitive({full})", False, lambda: is_arc_transitive(_graph(full))),
        Case(f"b({cube})", 2, lambda: _b(cube)),
        Case(f"arc_transitive({cube})", True, lambda: is_arc_transitive(_graph(cube))),
        Case(f"reg({cube})", 1, lambda: reg(_group(cube), _b(cube)).reg),
    ]


def _sporadic() -> list[Case]:
    m12 = "fixture:m12-on-144"
    m11 = "fixture:m11-on-165"
    return [
        Case(f"degree({m12})", 144, lambda: _group(m12).degree),
        Case(f"b({m12})", 3, lambda: _b(m12)),
        Case(f"complete({m12})", False, lambda: is_complete(_graph(m12))),
        Case(f"b({m11})", 2, lambda: _b(m11)),
        Case(f"cnc({m11})", True, lambda: common_neighbour_check(_graph(m11))),
    ]


def _wreath() -> list[Case]:
    cases = [
        _wreath_formula_case("sym:3", "sym:2"),
        _wreath_formula_case("alt:5", "cyc:2"),
        _wreath_formula_case("sym:3", "cyc:3"),
    ]
    for recipe, d in (("psl2:5:pl", 3), ("pgaml2:8:pl", 3), ("affine:2:3:gl", 4)):
        cases.append(Case(f"D({recipe})", d, functools.partial(lambda r: distinguishing_number(_group(r))[0], recipe)))
        cases.append(
            Case(f"unique regular orbit({recipe})", True, functools.partial(lambda r: unique_regular_partition_orbit(_group(r)), recipe))
        )
    return cases


def _saxl_remarks() -> list[Case]:
    fano = "fixture:pgl2-7-on-14"
    square = "wr(fixture:pgl2-7-on-14; triv:2)"
    hyperovals = "fixture:l3-4-on-56"
    vectors = "glvec:3:2"
    return [
        Case(f"b({fano})", 3, lambda: _b(fano)),
        Case(f"components({fano})", 2, lambda: _components(fano)),
        Case(f"components({square})", 4, lambda: _components(square)),
        Case(f"b({hyperovals})", 3, lambda: _b(hyperovals)),
        Case(f"arc_transitive({hyperovals})", True, lambda: is_arc_transitive(_graph(hyperovals))),
        Case(f"reg({hyperovals})", 4, lambda: reg(_group(hyperovals), _b(hyperovals)).reg),
        Case(f"parts({vectors})", [2, 2, 2, 2], lambda: complete_multipartite_parts(_graph(vectors))),
    ]


def _prob_consistency() -> list[Case]:
    cases = []
    for recipe in PROB_RECIPES:
        cases.append(
            Case(
                f"q_exact <= qhat({recipe})",
                True,
                functools.partial(lambda r: q_exact(_group(r), _b(r)) <= qhat(_group(r), _b(r)), recipe),
            )
        )
        cases.append(
            Case(
                f"1 - Q <= (val/n)^(b-1)({recipe})",
                True,
                functools.partial(lambda r: valency_bound_holds(_graph(r), q_exact(_group(r), _b(r))), recipe),
            )
        )
        cases.append(Case(f"r >= 2 => diameter <= 2({recipe})", True, functools.partial(_threshold_diameter_holds, recipe)))
    return cases


def _threshold_diameter_holds(recipe: str) -> bool:
    thresholds = common_neighbour_thresholds(_b(recipe), q_exact(_group(recipe), _b(recipe)))
    if not thresholds.diameter_at_most_two:
        return True
    diameter = _graph(recipe).connectivity().diameter
    return diameter is not None and diameter <= 2


def _strong_conjecture() -> list[Case]:
    return [
        Case(
            f"cnc = strong({recipe})",
            True,
            functools.partial(lambda r: common_neighbour_check(_graph(r)) == strong_conjecture_check(_graph(r)), recipe),
        )
        for recipe in PRIMITIVE_RECIPES
    ]


def _irredundant() -> list[Case]:
    cases = []
    for recipe in IRREDUNDANT_RECIPES:
        cases.append(Case(f"isigma complete({recipe})", True, functools.partial(lambda r: isigma(_group(r)).is_complete(), recipe)))
        cases.append(Case(f"sizes = [b, I]({recipe})", True, functools.partial(lambda r: irredundant_interval_holds(_group(r)), recipe)))
        cases.append(
            Case(f"isigma_b = saxl({recipe})", True, functools.partial(lambda r: same_edges(isigma_k(_group(r), _b(r)), _graph(r)), recipe))
        )
    return cases


SUITES: dict[str, Callable[[], list[Case]]] = {
    "psl2-bases": _psl2_bases,
    "diag-small": _diag_small,
    "sporadic": _sporadic,
    "wreath": _wreath,
    "saxl-remarks": _saxl_remarks,
    "prob-consistency": _prob_consistency,
    "strong-conjecture": _strong_conjecture,
    "irredundant": _irredundant,
}


def available_suites() -> list[str]:
    return sorted(SUITES)


def reproduce_table(name: str) -> pd.DataFrame:
    """Recompute every case of a suite.

    A case whose computation raises a domain error is recorded with the
    error as its computed value and counts as a mismatch.

    Raises:
        UnknownSuite: If the suite does not exist.
    """
    if name not in SUITES:
        raise sx_e.UnknownSuite(f"Unknown suite {name!r}; available suites: {', '.join(available_suites())}")
    rows = []
    for case in SUITES[name]():
        logger.info("%s: %s", name, case.name)
        try:
            computed = case.compute()
        except sx_e.DOMAIN_ERRORS as e:
            logger.warning("%s failed: %s", case.name, e)
            computed = f"skipped({type(e).__name__}: {e})"
        rows.append({"case": case.name, "expected": case.expected, "computed": computed, "match": computed == case.expected})
    table = pd.DataFrame(rows, columns=COLUMNS)
    logger.info("%s: %d of %d cases match", name, int(table["match"].sum()), len(table))
    return table


def all_match(table: pd.DataFrame) -> bool:
    return bool(table["match"].all())
