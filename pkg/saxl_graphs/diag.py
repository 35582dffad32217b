"""Checks specific to diagonal type groups.

For G = T².(O × S_2) and K = Inn(T).O, the set {D, D(1,x), D(1,y)} is a
base exactly when no nonidentity α ∈ K centralizes both x and y and no
α ∈ K inverts both. K is taken as the overgroup of T in small degree, and
its centralizer C_K(x) and inverting coset I_K(x) are found once per x by
streaming K.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence

from sympy import isprime

import saxl_graphs.exceptions as sx_e
from saxl_graphs.bases import is_base
from saxl_graphs.group import PermGroup
from saxl_graphs.perm import Permutation
from saxl_graphs.saxl import SaxlGraph
from saxl_graphs.simple import DiagonalGroup, ElementTable

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TuplePartitionSignature:
    """Multiset of part sizes of the partition of [k] by equal entries, as sorted (size, multiplicity) pairs."""

    counts: tuple[tuple[int, int], ...]

    @property
    def k(self) -> int:
        return sum(size * multiplicity for size, multiplicity in self.counts)


def partition_signature(x: Sequence[int], k: Optional[int] = None) -> TuplePartitionSignature:
    """Signature of a tuple over T: positions j, j' share a part iff x_j = x_j'.

    Raises:
        DegreeMismatch: If k is given and differs from the tuple length.
    """
    if k is not None and len(x) != k:
        raise sx_e.DegreeMismatch(f"Tuple of length {len(x)}, expected {k}")
    sizes = Counter(Counter(x).values())
    return TuplePartitionSignature(tuple(sorted(sizes.items())))


def point_signature(diagonal: DiagonalGroup, point: int) -> TuplePartitionSignature:
    """Signature of (1, s_1, …, s_{k−1}) for the point D(1, s_1, …, s_{k−1})."""
    return partition_signature((0,) + diagonal.label(point), diagonal.k)


class PairCriterion:
    """C_K(x) and I_K(x) for one x, for testing many partners y.

    Attributes:
        table (ElementTable): T.
        x (int): Element index of x.
        centralizer (list[Permutation]): C_K(x).
        inverters (list[Permutation]): {α ∈ K : x^α = x⁻¹}.
    """

    def __init__(self, table: ElementTable, x: int, with_outer: bool = True):
        self.table = table
        self.x = x
        overgroup = table.automorphism_overgroup(with_outer)
        element = table.elements[x]
        inverse = element.inverse()
        self.centralizer: list[Permutation] = []
        self.inverters: list[Permutation] = []
        for alpha in overgroup.elements():
            image = alpha.inverse() * element * alpha
            if image == element:
                self.centralizer.append(alpha)
            if image == inverse:
                self.inverters.append(alpha)
        logger.debug("|C_K(x)| = %d, |I_K(x)| = %d for x of order %d", len(self.centralizer), len(self.inverters), element.order())

    def holds_for(self, y: int) -> bool:
        element = self.table.elements[y]
        inverse = element.inverse()
        for alpha in self.centralizer:
            if not alpha.is_identity() and alpha.inverse() * element * alpha == element:
                return False
        for alpha in self.inverters:
            if alpha.inverse() * element * alpha == inverse:
                return False
        return True


def diag_pair_base_check(table: ElementTable, x: int, y: int, with_outer: bool = True) -> bool:
    """{D, D(1,x), D(1,y)} is a base for T².(O × S_2), with O = Out(T) or 1.

    Raises:
        MissingAutomorphismData: If outer automorphisms are requested for a table without them.
    """
    return PairCriterion(table, x, with_outer).holds_for(y)


def pair_is_base(diagonal: DiagonalGroup, x: int, y: int) -> bool:
    """Direct pointwise stabilizer test of {D, D(1,x), D(1,y)} in a k = 2 diagonal group."""
    if diagonal.k != 2:
        raise sx_e.UnsupportedVariant(f"Pair bases are defined for k = 2, got k = {diagonal.k}")
    points = {0, diagonal.point((x,)), diagonal.point((y,))}
    return is_base(diagonal.group, sorted(points)) if len(points) == 3 else False


def star_witness(table: ElementTable, x: int, with_outer: bool = True) -> Optional[int]:
    """Some y making {D, D(1,x), D(1,y)} a base, or None.

    Raises:
        SameVertex: If x is the identity, since D(1,1) = D.
    """
    if x == 0:
        raise sx_e.SameVertex("x = 1 gives the vertex D itself")
    criterion = PairCriterion(table, x, with_outer)
    for y in range(1, table.order):
        if y != x and criterion.holds_for(y):
            return y
    return None


def star_condition(table: ElementTable, x: int, with_outer: bool = True) -> bool:
    return star_witness(table, x, with_outer) is not None


def conjugation_classes(table: ElementTable, with_outer: bool = True) -> list[list[int]]:
    """K-classes of T, as orbits on element indices."""
    overgroup = table.automorphism_overgroup(with_outer)
    action = PermGroup([table.conjugation(alpha) for alpha in overgroup.generators], order_bound=overgroup.order())
    return action.orbits()


def prime_order_representatives(table: ElementTable, with_outer: bool = True) -> list[int]:
    return [c[0] for c in conjugation_classes(table, with_outer) if isprime(table.element_order(c[0]))]


def semi_frobenius_via_star(table: ElementTable, with_outer: bool = True) -> dict[int, bool]:
    """(⋆) for each prime-order class representative x of T.

    T².(Out(T) × S_2) is semi-Frobenius iff every value is True, for T other than A5 and A6.
    """
    verdicts = {x: star_condition(table, x, with_outer) for x in prime_order_representatives(table, with_outer)}
    logger.info("(⋆) over %d prime-order classes of %s: %s", len(verdicts), table.name, verdicts)
    return verdicts


def neighbour_square_covers(diagonal: DiagonalGroup, graph: SaxlGraph) -> bool:
    """Experimental: N·N = T for N = {t : D(1,t) adjacent to D}, k = 2.

    For T other than A5 and A6 this is equivalent to Σ(G) having diameter at most 2.
    """
    if diagonal.k != 2:
        raise sx_e.UnsupportedVariant("The neighbour square test is defined for k = 2")
    table = diagonal.table
    neighbours = [diagonal.label(v)[0] for v in graph.neighbours(0)]
    products = {table.mul(a, b) for a in neighbours for b in neighbours}
    logger.info("Experimental N² test: |N| = %d, |N²| = %d of %d", len(neighbours), len(products), table.order)
    return len(products) == table.order
