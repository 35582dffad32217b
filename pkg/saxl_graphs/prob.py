"""Probability that random tuples fail to be bases.

Q(G, k) is computed exactly from the ordered base count, estimated by
Monte Carlo, and bounded above by Q̂(G, k), the sum of fpr(x)^k over all
elements x of prime order. The thresholds t and r turn a bound on Q into
predictions about common neighbours and valency in Σ(G).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import numpy as np
from sympy import isprime

import saxl_graphs.config as cfg
import saxl_graphs.exceptions as sx_e
from saxl_graphs.bases import count_ordered_bases
from saxl_graphs.group import PermGroup, parallel_map
from saxl_graphs.perm import Permutation
from saxl_graphs.saxl import SaxlGraph

logger = logging.getLogger(__name__)

Z_95 = 1.959963984540054
Probability = Union[Fraction, float, int]


@dataclass
class MonteCarloEstimate:
    """Attributes:
    value (float): Fraction of sampled tuples that are not bases.
    samples (int): Number of tuples drawn.
    failures (int): Tuples with nontrivial pointwise stabilizer.
    half_width (float): Half-width of the 95% Wilson interval.
    """

    value: float
    samples: int
    failures: int
    half_width: float
    low: float
    high: float

    def covers(self, q: Probability) -> bool:
        return self.low <= float(q) <= self.high


@dataclass
class Thresholds:
    """t = max{m : Q < 1/m} and r = max{t, (k−1)(t−1)}; None stands for unbounded (Q = 0).

    `diameter_at_most_two` and `valency_fraction` are predictions to be checked against Σ(G).
    """

    k: int
    t: Optional[int]
    r: Optional[int]
    diameter_at_most_two: bool
    valency_fraction: Fraction

    def valency_bound(self, degree: int) -> Fraction:
        """val is predicted to exceed this."""
        return degree * self.valency_fraction


@dataclass
class ProbReport:
    k: int
    q_exact: Optional[Fraction] = None
    q_mc: Optional[MonteCarloEstimate] = None
    qhat: Optional[Fraction] = None
    thresholds: Optional[Thresholds] = None
    skipped: dict[str, str] = field(default_factory=dict)


def fixed_point_ratio(group: PermGroup, x: Permutation) -> Fraction:
    """|fix(x)| / |Ω|.

    Raises:
        NotInGroup: If x ∉ G.
    """
    if not group.contains(x):
        raise sx_e.NotInGroup(f"{x} is not an element of {group!r}")
    return Fraction(len(x.fixed_points()), group.degree)


def q_exact(group: PermGroup, k: int) -> Fraction:
    """Exact Q(G, k).

    Raises:
        CapExceeded: If |Ω|^k exceeds the tuple cap; use `q_mc` instead.
    """
    total = group.degree**k
    if total > cfg.TUPLE_CAP:
        raise sx_e.CapExceeded(f"|Ω|^k = {total} exceeds the tuple cap {cfg.TUPLE_CAP}; use q_mc")
    return Fraction(total - count_ordered_bases(group, k), total)


def _wilson(failures: int, samples: int) -> tuple[float, float, float]:
    p = failures / samples
    z2 = Z_95 * Z_95
    denominator = 1 + z2 / samples
    centre = (p + z2 / (2 * samples)) / denominator
    half = Z_95 * math.sqrt(p * (1 - p) / samples + z2 / (4 * samples * samples)) / denominator
    return half, max(0.0, centre - half), min(1.0, centre + half)


def q_mc(group: PermGroup, k: int, samples: Optional[int] = None, seed: Optional[int] = None) -> MonteCarloEstimate:
    """Monte Carlo estimate of Q(G, k) from uniform k-tuples (PCG64, seeded).

    Raises:
        InvalidProbability: If samples < 1.
    """
    samples = cfg.MC_SAMPLES if samples is None else samples
    if samples < 1:
        raise sx_e.InvalidProbability(f"Need at least one sample, got {samples}")
    if group.order() == 1:
        return MonteCarloEstimate(0.0, samples, 0, 0.0, 0.0, 0.0)
    rng = np.random.default_rng([cfg.SEED if seed is None else seed, k])
    verdicts: dict[frozenset[int], bool] = {}
    failures = 0
    for _ in range(samples):
        points = frozenset(int(p) for p in rng.integers(group.degree, size=k))
        fails = verdicts.get(points)
        if fails is None:
            fails = group.pointwise_stabilizer(sorted(points)).order() > 1
            verdicts[points] = fails
        failures += fails
    half, low, high = _wilson(failures, samples)
    logger.debug("q_mc(%r, %d): %d/%d failures, %d distinct sets", group, k, failures, samples, len(verdicts))
    return MonteCarloEstimate(failures / samples, samples, failures, half, low, high)


def _prime_order_fix_sum(elements, k: int) -> int:
    total = 0
    for x in elements:
        if x.is_identity() or not isprime(x.order()):
            continue
        total += len(x.fixed_points()) ** k
    return total


def qhat(group: PermGroup, k: int) -> Fraction:
    """Σ fpr(x)^k over all x ∈ G of prime order.

    Elements are streamed from the chain and sharded over the first basic
    transversal, so the exact sum does not depend on the schedule.

    Raises:
        CapExceeded: If |G| exceeds the group order cap.
    """
    if group.order() > cfg.GROUP_ORDER_CAP:
        raise sx_e.CapExceeded(f"|G| = {group.order()} exceeds the group order cap {cfg.GROUP_ORDER_CAP}")
    denominator = group.degree**k
    if group.order() == 1:
        return Fraction(0)
    chain = group.chain
    top = chain.levels[0]
    representatives = [top.transversal(point) for point in top.orbit]

    def shard(u: Permutation) -> int:
        return _prime_order_fix_sum((h * u for h in chain.elements(1)), k)

    total = sum(parallel_map(shard, representatives))
    return Fraction(total, denominator)


def _as_fraction(q: Probability) -> Fraction:
    if isinstance(q, float):
        return Fraction(repr(q))
    return Fraction(q)


def common_neighbour_thresholds(k: int, q: Probability) -> Thresholds:
    """t and r for a value (or upper bound) Q of Q(G, k).

    If r ≥ 2, any r vertices of Σ(G) are predicted to have a common
    neighbour, the diameter to be at most 2 and val > |Ω|(1 − 1/r).

    Raises:
        InvalidProbability: If Q is outside [0, 1).
    """
    q = _as_fraction(q)
    if q < 0 or q >= 1:
        raise sx_e.InvalidProbability(f"Q must lie in [0, 1), got {q}")
    if q == 0:
        return Thresholds(k, None, None, True, Fraction(1))
    t = math.ceil(1 / q) - 1
    r = max(t, (k - 1) * (t - 1))
    return Thresholds(k, t, r, r >= 2, 1 - Fraction(1, r))


def half_valency_predicted(k: int, q: Probability) -> bool:
    """Q(G, k) < 1 − 2^(1−k) predicts val/|Ω| > 1/2."""
    return _as_fraction(q) < 1 - Fraction(1, 2 ** (k - 1))


def valency_bound_holds(graph: SaxlGraph, q: Probability) -> bool:
    """1 − Q(G, b) ≤ (val/|Ω|)^(b−1)."""
    val = graph.valency
    if val is None:
        raise sx_e.IntransitiveGroup("The valency bound needs a regular graph")
    return 1 - _as_fraction(q) <= Fraction(val, graph.vertex_count) ** (graph.b - 1)


def prob_report(group: PermGroup, k: int, samples: Optional[int] = None) -> ProbReport:
    """Every probability quantity for (G, k) that fits within the caps."""
    report = ProbReport(k)
    try:
        report.q_exact = q_exact(group, k)
    except sx_e.CapExceeded as e:
        report.skipped["q_exact"] = str(e)
    try:
        report.qhat = qhat(group, k)
    except sx_e.CapExceeded as e:
        report.skipped["qhat"] = str(e)
    report.q_mc = q_mc(group, k, samples)

    bound = report.q_exact if report.q_exact is not None else report.qhat
    if bound is not None and bound < 1:
        report.thresholds = common_neighbour_thresholds(k, bound)
    else:
        report.skipped["thresholds"] = "no exact value or bound below 1"
    return report
