""" Reports written by the command line. A `Report` holds JSON-native values only: every invariant is either a value or the string "skipped(<reason>)", and the probability and wreath blocks are plain dictionaries with exact rationals written as "a/b". `parse(emit(report)) == report` for every report.
"""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from typing import Any, Optional, Union

import saxl_graphs.exceptions as sx_e
from saxl_graphs.prob import MonteCarloEstimate, ProbReport, Thresholds
from saxl_graphs.version import ReportSchema

logger = logging.getLogger(__name__)

Value = Union[None, bool, int, float, str, list, dict]

NOT_REQUESTED = "not requested"


def skipped(reason: str) -> str:
    return f"skipped({reason})"


def is_skipped(value: Any) -> bool:
    return isinstance(value, str) and value.startswith("skipped(") and value.endswith(")")


def fraction_text(value: Optional[Fraction]) -> Optional[str]:
    """"a/b" for a rational, "a" for an integer."""
    if value is None:
        return None
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


@dataclass
class Report:
    """Invariants of one group, as written to JSON.

    Attributes:
        schema (int): Report layout version.
        recipe (str): The recipe as given on the command line.
        seed (int): Engine seed.
        degree (int): |Ω|.
        order (int): |G|.
        transitive (bool): G is transitive.
        primitive (Value): G is primitive, or skipped for intransitive G.
        b (Value): b(G).
        witness (Value): A base of size b(G).
        val (Value): Valency of Σ(G).
        vertices (Value): Number of vertices of Σ(G).
        diameter (Value): Diameter of Σ(G) or "disconnected(c components)".
        complete (Value): Σ(G) is complete.
        cnc (Value): Any two vertices of Σ(G) have a common neighbour.
        cnc_strong (Value): Every neighbourhood meets every almost-regular suborbit; agrees with cnc for primitive G.
        arc_transitive (Value): G is transitive on the arcs of Σ(G).
        reg (Value): Number of regular orbits on Ω^b(G).
        irredundant_max (Value): I(G).
        isigma_complete (Value): IΣ(G) is complete.
        prob (Value): Q, Q̂ and thresholds block.
        wreath (Value): Product action check block.
        timings (dict[str, float]): Seconds per phase; not part of the determinism contract.
    """

    recipe: str
    seed: int
    degree: int
    order: int
    transitive: bool
    primitive: Value = skipped(NOT_REQUESTED)
    b: Value = skipped(NOT_REQUESTED)
    witness: Value = skipped(NOT_REQUESTED)
    val: Value = skipped(NOT_REQUESTED)
    vertices: Value = skipped(NOT_REQUESTED)
    diameter: Value = skipped(NOT_REQUESTED)
    complete: Value = skipped(NOT_REQUESTED)
    cnc: Value = skipped(NOT_REQUESTED)
    cnc_strong: Value = skipped(NOT_REQUESTED)
    arc_transitive: Value = skipped(NOT_REQUESTED)
    reg: Value = skipped(NOT_REQUESTED)
    irredundant_max: Value = skipped(NOT_REQUESTED)
    isigma_complete: Value = skipped(NOT_REQUESTED)
    prob: Value = skipped(NOT_REQUESTED)
    wreath: Value = skipped(NOT_REQUESTED)
    timings: dict[str, float] = field(default_factory=dict)
    schema: int = ReportSchema.current().value

    def skip(self, names: Union[str, tuple[str, ...]], reason: str) -> None:
        """Mark one or more fields as skipped."""
        for name in (names,) if isinstance(names, str) else names:
            setattr(self, name, skipped(reason))

    def skipped_fields(self) -> dict[str, str]:
        return {f.name: getattr(self, f.name) for f in fields(self) if is_skipped(getattr(self, f.name))}

    def deterministic(self) -> dict[str, Value]:
        """All fields except the timings."""
        values = asdict(self)
        del values["timings"]
        return values


def emit(report: Report, timings: bool = True) -> str:
    """The report as indented JSON with sorted keys."""
    values = asdict(report) if timings else report.deterministic()
    return json.dumps(values, indent=2, sort_keys=True) + "\n"


def parse(text: str) -> Report:
    """Read a report written by `emit`.

    Raises:
        UnsupportedVariant: If the schema version is unknown.
    """
    values = json.loads(text)
    schema = values.get("schema")
    if schema not in [s.value for s in ReportSchema]:
        raise sx_e.UnsupportedVariant(f"Unknown report schema {schema!r}")
    values.setdefault("timings", {})
    return Report(**values)


# ======================================================================
# Blocks


def estimate_block(estimate: MonteCarloEstimate) -> dict[str, Value]:
    return {
        "value": estimate.value,
        "samples": estimate.samples,
        "failures": estimate.failures,
        "half_width": estimate.half_width,
        "low": estimate.low,
        "high": estimate.high,
    }


def thresholds_block(thresholds: Thresholds) -> dict[str, Value]:
    return {
        "k": thresholds.k,
        "t": thresholds.t if thresholds.t is not None else "unbounded",
        "r": thresholds.r if thresholds.r is not None else "unbounded",
        "diameter_at_most_two": thresholds.diameter_at_most_two,
        "valency_fraction": fraction_text(thresholds.valency_fraction),
    }


def prob_block(report: ProbReport) -> dict[str, Value]:
    """The probability block; quantities left out by the caps are written as skipped."""
    block: dict[str, Value] = {"k": report.k}
    block["q_exact"] = fraction_text(report.q_exact) if report.q_exact is not None else skipped(report.skipped.get("q_exact", "not computed"))
    block["qhat"] = fraction_text(report.qhat) if report.qhat is not None else skipped(report.skipped.get("qhat", "not computed"))
    block["q_mc"] = estimate_block(report.q_mc) if report.q_mc is not None else skipped("not computed")
    if report.thresholds is not None:
        block["thresholds"] = thresholds_block(report.thresholds)
    else:
        block["thresholds"] = skipped(report.skipped.get("thresholds", "not computed"))
    return block
