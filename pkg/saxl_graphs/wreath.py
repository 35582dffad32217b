"""Product action: distinguishing partitions, reg(L, m) and bases of L ≀ P.

A base of L ≀ P on Γ^k is read as a k × b array over Γ: column j is the
point (α_1j, …, α_kj). It is a base exactly when every row is a base of L
and the rows, grouped by their L-orbit on Γ^b, form a distinguishing
partition for P. Hence b(L ≀ P) is the least m with reg(L, m) ≥ D(P)
whenever L is primitive and not regular and P is transitive.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import saxl_graphs.exceptions as sx_e
from saxl_graphs.actions import product_index, wreath_product_action
from saxl_graphs.bases import base_size, is_base, reg_tuples
from saxl_graphs.group import PermGroup

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PartitionOfK:
    """An ordered sequence of disjoint parts covering {0, …, k−1}; parts may be empty.

    Raises:
        InvalidPartition: If the parts overlap or miss a point.
    """

    k: int
    parts: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for part in self.parts:
            if seen & part:
                raise sx_e.InvalidPartition(f"Parts overlap in {sorted(seen & part)}")
            seen |= part
        if seen != set(range(self.k)):
            raise sx_e.InvalidPartition(f"Parts cover {sorted(seen)}, expected 0..{self.k - 1}")

    @classmethod
    def of(cls, k: int, parts: Sequence[Sequence[int]]) -> PartitionOfK:
        return cls(k, tuple(frozenset(p) for p in parts))

    @classmethod
    def from_labels(cls, labels: Sequence[int], m: Optional[int] = None) -> PartitionOfK:
        """Part i holds the points labelled i."""
        m = (max(labels) + 1 if labels else 0) if m is None else m
        return cls(len(labels), tuple(frozenset(j for j, x in enumerate(labels) if x == i) for i in range(m)))

    def nonempty(self) -> list[frozenset[int]]:
        return [p for p in self.parts if p]

    def unordered(self) -> frozenset[frozenset[int]]:
        return frozenset(self.nonempty())

    def refinements(self) -> Iterator[PartitionOfK]:
        """Partitions obtained by splitting one part into two nonempty pieces."""
        for index, part in enumerate(self.parts):
            points = sorted(part)
            if len(points) < 2:
                continue
            first, rest = points[0], points[1:]
            for size in range(0, len(rest)):
                for chosen in itertools.combinations(rest, size):
                    left = frozenset((first,) + chosen)
                    yield PartitionOfK(self.k, self.parts[:index] + (left, part - left) + self.parts[index + 1 :])


def set_partitions(k: int, m: int) -> Iterator[list[int]]:
    """Restricted growth strings of length k using exactly m labels."""
    labels = [0] * k

    def extend(position: int, used: int) -> Iterator[list[int]]:
        if k - position < m - used:
            return
        if position == k:
            if used == m:
                yield list(labels)
            return
        for label in range(min(used + 1, m)):
            labels[position] = label
            yield from extend(position + 1, max(used, label + 1))

    if k == 0:
        if m == 0:
            yield []
        return
    yield from extend(1, 1)


def is_distinguishing(top: PermGroup, partition: PartitionOfK) -> bool:
    """The intersection of the setwise stabilizers of the parts is trivial.

    Raises:
        DegreeMismatch: If P does not act on k points.
    """
    if top.degree != partition.k:
        raise sx_e.DegreeMismatch(f"P has degree {top.degree}, the partition covers {partition.k} points")
    if top.order() == 1:
        return True
    return top.partition_stabilizer_is_trivial(partition.nonempty())


def distinguishing_number(top: PermGroup) -> tuple[int, PartitionOfK]:
    """D(P) and a distinguishing partition with D(P) nonempty parts.

    Partitions are tried by increasing number of parts; for each m, any
    partition whose part sizes force |P| to exceed the number of ordered
    labellings with those sizes is skipped.
    """
    k = top.degree
    order = top.order()
    for m in range(1, k + 1):
        for labels in set_partitions(k, m):
            partition = PartitionOfK.from_labels(labels, m)
            if order > _labellings(partition):
                continue
            if is_distinguishing(top, partition):
                logger.debug("D(%r) = %d, witness %s", top, m, [sorted(p) for p in partition.parts])
                return m, partition
    raise sx_e.InvariantBreach("The partition into singletons must be distinguishing")


def _labellings(partition: PartitionOfK) -> int:
    """Multinomial k! / Π|part|!: an upper bound for the orbit length of a distinguishing partition."""
    total = 1
    remaining = partition.k
    for part in partition.parts:
        total *= _binomial(remaining, len(part))
        remaining -= len(part)
    return total


def _binomial(n: int, r: int) -> int:
    result = 1
    for i in range(r):
        result = result * (n - i) // (i + 1)
    return result


def regular_partition_orbits(top: PermGroup, m: int) -> int:
    """Number of regular P-orbits on ordered partitions of [k] into m possibly empty parts.

    Raises:
        InvariantBreach: If the regular labellings do not split into orbits of length |P|.
    """
    k = top.degree
    verdicts: dict[frozenset[frozenset[int]], bool] = {}
    regular = 0
    for labels in itertools.product(range(m), repeat=k):
        partition = PartitionOfK.from_labels(labels, m)
        key = partition.unordered()
        verdict = verdicts.get(key)
        if verdict is None:
            verdict = is_distinguishing(top, partition)
            verdicts[key] = verdict
        regular += verdict
    orbits, remainder = divmod(regular, top.order())
    if remainder:
        raise sx_e.InvariantBreach(f"{regular} regular labellings is not a multiple of |P| = {top.order()}")
    return orbits


def unique_regular_partition_orbit(top: PermGroup, m: Optional[int] = None) -> bool:
    """P has exactly one regular orbit on ordered partitions into m parts (m = D(P) by default)."""
    d, _ = distinguishing_number(top)
    if m is None:
        m = d
    elif m != d:
        logger.warning("Counting regular partition orbits for m = %d while D(P) = %d", m, d)
    return regular_partition_orbits(top, m) == 1


def wreath_base_size(component: PermGroup, top: PermGroup) -> int:
    """The least m with reg(L, m) ≥ D(P)."""
    if not component.is_transitive() or component.order() == component.degree or not component.is_primitive()[0]:
        logger.warning("%r is not primitive and non-regular; the product action base formula may not apply", component)
    if not top.is_transitive():
        logger.warning("%r is not transitive; the product action base formula may not apply", top)
    d, _ = distinguishing_number(top)
    m = base_size(component).b
    while reg_tuples(component, m) < d:
        m += 1
    return m


@dataclass
class ArrayBaseVerdict:
    """Both readings of a k × b array as a candidate base of L ≀ P.

    Attributes:
        direct (bool): The columns have trivial pointwise stabilizer in L ≀ P.
        rows_are_bases (bool): Every row is a base of L.
        partition (PartitionOfK): Rows grouped by their L-orbit on Γ^b.
        distinguishing (bool): That partition is distinguishing for P.
    """

    direct: bool
    rows_are_bases: bool
    partition: PartitionOfK
    distinguishing: bool

    @property
    def criterion(self) -> bool:
        return self.rows_are_bases and self.distinguishing

    @property
    def agree(self) -> bool:
        return self.direct == self.criterion


def row_partition(component: PermGroup, array: Sequence[Sequence[int]]) -> PartitionOfK:
    labels: list[int] = []
    leaders: list[Sequence[int]] = []
    for row in array:
        for index, leader in enumerate(leaders):
            if component.transporter_exists(leader, row):
                labels.append(index)
                break
        else:
            labels.append(len(leaders))
            leaders.append(row)
    return PartitionOfK.from_labels(labels)


def assemble_base_from_array(
    component: PermGroup, top: PermGroup, array: Sequence[Sequence[int]], wreath: Optional[PermGroup] = None
) -> ArrayBaseVerdict:
    """Test the columns of `array` as a base of L ≀ P directly and through the row criterion.

    Raises:
        DegreeMismatch: If the array does not have k rows of equal length.
    """
    k = top.degree
    if len(array) != k or len({len(row) for row in array}) > 1:
        raise sx_e.DegreeMismatch(f"Expected {k} rows of equal length")
    if wreath is None:
        wreath = wreath_product_action(component, top)
    b = len(array[0])
    columns = [product_index([array[i][j] for i in range(k)], component.degree) for j in range(b)]
    direct = is_base(wreath, columns)
    rows_are_bases = all(is_base(component, row) for row in array)
    partition = row_partition(component, array)
    return ArrayBaseVerdict(direct, rows_are_bases, partition, is_distinguishing(top, partition))
