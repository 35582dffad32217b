"""Bundled small simple groups, diagonal type groups and holomorphs.

Each bundled group T comes as a permutation group of small degree together
with an overgroup whose conjugation action on T induces Aut(T). T's elements
are listed once, sorted by their image tuples (so the identity is element 0),
and every action below is expressed on indices into that list.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import saxl_graphs.config as cfg
import saxl_graphs.exceptions as sx_e
from saxl_graphs.actions import affine_group, alternating, cyclic, product_index, psl2_projective, symmetric
from saxl_graphs.group import PermGroup
from saxl_graphs.perm import Permutation

logger = logging.getLogger(__name__)


BUNDLED: dict[str, tuple[Callable[[], PermGroup], Callable[[], PermGroup]]] = {
    "A5": (lambda: alternating(5), lambda: symmetric(5)),
    "A6": (lambda: psl2_projective(9, "psl"), lambda: psl2_projective(9, "pgaml")),
    "L2(7)": (lambda: psl2_projective(7, "psl"), lambda: psl2_projective(7, "pgl")),
    "L2(8)": (lambda: psl2_projective(8, "psl"), lambda: psl2_projective(8, "pgaml")),
    "L2(11)": (lambda: psl2_projective(11, "psl"), lambda: psl2_projective(11, "pgl")),
    "A7": (lambda: alternating(7), lambda: symmetric(7)),
    "C5": (lambda: cyclic(5), lambda: affine_group(5, 1)),
}

ALIASES = {
    "a5": "A5",
    "a6": "A6",
    "l2(9)": "A6",
    "psl2(9)": "A6",
    "l2(7)": "L2(7)",
    "l2_7": "L2(7)",
    "l2(8)": "L2(8)",
    "l2_8": "L2(8)",
    "l2(11)": "L2(11)",
    "l2_11": "L2(11)",
    "a7": "A7",
    "c5": "C5",
}


def canonical_name(name: str) -> str:
    key = ALIASES.get(name.strip().lower(), name.strip())
    if key not in BUNDLED:
        raise sx_e.MissingAutomorphismData(f"No bundled data for {name!r}; available: {sorted(BUNDLED)}")
    return key


class ElementTable:
    """The elements of a small group, indexed, with the automorphisms induced by an overgroup.

    Attributes:
        group (PermGroup): T as a permutation group of small degree.
        overgroup (Optional[PermGroup]): Group normalizing T; None when no automorphism data is known.
        elements (list[Permutation]): Elements of T sorted by image tuple; elements[0] is the identity.
        index (dict[Permutation, int]): Inverse of `elements`.
    """

    def __init__(self, group: PermGroup, overgroup: Optional[PermGroup] = None, name: Optional[str] = None):
        if group.order() > cfg.DEGREE_CAP:
            raise sx_e.CapExceeded(f"|T| = {group.order()} exceeds the degree cap {cfg.DEGREE_CAP}")
        self.group = group
        self.overgroup = overgroup
        self.name = name or group.name or "T"
        self.elements = sorted(group.elements(), key=lambda g: g.images)
        self.index = {g: i for i, g in enumerate(self.elements)}
        self._inverse = [self.index[g.inverse()] for g in self.elements]
        self._automorphisms: Optional[PermGroup] = None
        self._rows: dict[int, list[int]] = {}

    @classmethod
    def bundled(cls, name: str) -> ElementTable:
        key = canonical_name(name)
        build, build_overgroup = BUNDLED[key]
        logger.debug("Building element table for %s", key)
        return cls(build(), build_overgroup(), name=key)

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, a: int, b: int) -> int:
        row = self._rows.get(a)
        if row is not None:
            return row[b]
        return self.index[self.elements[a] * self.elements[b]]

    def row(self, a: int) -> list[int]:
        """Left multiplication by element a, cached."""
        if a not in self._rows:
            x = self.elements[a]
            self._rows[a] = [self.index[x * y] for y in self.elements]
        return self._rows[a]

    def inverse(self, a: int) -> int:
        return self._inverse[a]

    def element_order(self, a: int) -> int:
        return self.elements[a].order()

    def lookup(self, g: Permutation) -> int:
        if g not in self.index:
            raise sx_e.NotInGroup(f"{g} is not an element of {self.name}")
        return self.index[g]

    # ======================================================================
    # Translations and automorphisms as permutations of the element list

    def right_translation(self, x: int) -> Permutation:
        """t ↦ t·x."""
        g = self.elements[x]
        return Permutation([self.index[t * g] for t in self.elements])

    def left_translation(self, x: int) -> Permutation:
        """t ↦ x⁻¹·t."""
        g = self.elements[self._inverse[x]]
        return Permutation([self.index[g * t] for t in self.elements])

    def conjugate(self, t: int, alpha: Permutation) -> int:
        """t^α = α⁻¹ t α for α in the overgroup."""
        return self.index[alpha.inverse() * self.elements[t] * alpha]

    def conjugation(self, alpha: Permutation) -> Permutation:
        alpha_inv = alpha.inverse()
        return Permutation([self.index[alpha_inv * t * alpha] for t in self.elements])

    def automorphism_generators(self) -> list[Permutation]:
        """Generators of Aut(T) as permutations of the element list.

        Raises:
            MissingAutomorphismData: If no overgroup is known.
        """
        if self.overgroup is None:
            raise sx_e.MissingAutomorphismData(f"No automorphism data for {self.name}")
        return [self.conjugation(alpha) for alpha in self.overgroup.generators]

    def automorphism_group(self) -> PermGroup:
        if self._automorphisms is None:
            gens = self.automorphism_generators() + [self.conjugation(g) for g in self.group.generators]
            bound = self.overgroup.order() if self.overgroup is not None else None
            self._automorphisms = PermGroup(gens, order_bound=bound, name=f"Aut({self.name})")
        return self._automorphisms

    def out_order(self) -> int:
        return self.automorphism_group().order() // self.order

    def automorphism_overgroup(self, with_outer: bool = True) -> PermGroup:
        """K = Inn(T).O in small degree: the overgroup itself, or T for O = 1."""
        if not with_outer:
            return self.group
        if self.overgroup is None:
            raise sx_e.MissingAutomorphismData(f"No automorphism data for {self.name}")
        return self.overgroup

    # ======================================================================
    # Checks

    def check_simple(self) -> None:
        """Trivial centre and perfect; raises NotSimple otherwise."""
        if not self.group.has_trivial_center():
            raise sx_e.NotSimple(f"{self.name} has a nontrivial centre")
        if not self.group.is_perfect():
            raise sx_e.NotSimple(f"{self.name} is not perfect")


@dataclass
class DiagonalGroup:
    """A diagonal type group T^k.(O × P) acting on the cosets of the diagonal subgroup.

    Point i is the normalized tuple (s_1, …, s_{k−1}) of element indices with
    index Σ s_j |T|^{k−1−j}, standing for the coset D(1, s_1, …, s_{k−1}).

    Attributes:
        group (PermGroup): The permutation group on |T|^{k−1} points.
        table (ElementTable): Element data of T.
        k (int): Number of simple factors.
        top (PermGroup): P ≤ S_k.
        with_outer (bool): Whether Out(T) acts diagonally.
    """

    group: PermGroup
    table: ElementTable
    k: int
    top: PermGroup
    with_outer: bool
    _labels: Optional[list[tuple[int, ...]]] = field(default=None, repr=False)

    @property
    def degree(self) -> int:
        return self.group.degree

    def point(self, tail: Sequence[int]) -> int:
        """Index of D(1, tail…)."""
        return product_index(tail, self.table.order)

    def label(self, point: int) -> tuple[int, ...]:
        if self._labels is None:
            self._labels = list(itertools.product(range(self.table.order), repeat=self.k - 1))
        return self._labels[point]

    def is_primitive(self) -> bool:
        """P primitive on the k factors, or k = 2 and P = 1."""
        if self.k == 2 and self.top.order() == 1:
            return True
        return self.top.is_transitive() and self.top.is_primitive()[0]


def diagonal_group(table: ElementTable, k: int, top: Optional[PermGroup] = None, with_outer: bool = False) -> DiagonalGroup:
    """Build T^k.(O × P) on the |T|^{k−1} cosets of the diagonal.

    Parameters:
        table (ElementTable): T with automorphism data.
        k (int): Number of factors, at least 2.
        top (Optional[PermGroup]): P ≤ S_k acting on factor positions; trivial when None.
        with_outer (bool): Add Out(T) acting diagonally.

    Raises:
        NotSimple: If T is not nonabelian simple.
        CapExceeded: If |T|^{k−1} exceeds the degree cap.
        MissingAutomorphismData: If outer automorphisms are requested without data.
    """
    if k < 2:
        raise sx_e.UnsupportedVariant(f"Diagonal groups need k >= 2, got {k}")
    if top is None:
        top = PermGroup.trivial(k)
    if top.degree != k:
        raise sx_e.DegreeMismatch(f"Top group has degree {top.degree}, expected {k}")
    table.check_simple()
    n = table.order
    degree = n ** (k - 1)
    if degree > cfg.DEGREE_CAP:
        raise sx_e.CapExceeded(f"|T|^(k-1) = {degree} exceeds the degree cap {cfg.DEGREE_CAP}")

    points = list(itertools.product(range(n), repeat=k - 1))

    def normalized(full: Sequence[int]) -> int:
        head = table.inverse(full[0])
        return product_index([table.mul(head, s) for s in full[1:]], n)

    gens: list[Permutation] = []
    for x in table.group.generators:
        gx = table.lookup(x)
        right = table.right_translation(gx).images
        left = table.left_translation(gx).images
        gens.append(Permutation([product_index([left[s] for s in tail], n) for tail in points]))
        for position in range(k - 1):
            gens.append(
                Permutation(
                    [product_index(tail[:position] + (right[tail[position]],) + tail[position + 1 :], n) for tail in points]
                )
            )

    if with_outer:
        for alpha in table.automorphism_generators():
            images = alpha.images
            gens.append(Permutation([product_index([images[s] for s in tail], n) for tail in points]))

    for sigma in top.generators:
        if sigma.is_identity():
            continue
        moved_images = []
        for tail in points:
            full = (0,) + tail
            moved = [0] * k
            for i, s in enumerate(full):
                moved[sigma.images[i]] = s
            moved_images.append(normalized(moved))
        gens.append(Permutation(moved_images))

    out = table.out_order() if with_outer else 1
    order = n**k * out * top.order()
    group = PermGroup(gens, order=order, name=f"Diag({table.name},k={k})")
    logger.info("Diagonal group of %s with k = %d on %d points, order %d", table.name, k, degree, order)
    return DiagonalGroup(group, table, k, top, with_outer)


def holomorph(table: ElementTable) -> PermGroup:
    """Hol(T) = T ⋊ Aut(T) on T: g sends t to g⁻¹t, α sends t to t^α.

    Raises:
        MissingAutomorphismData: If T has no automorphism data.
    """
    automorphisms = table.automorphism_generators()
    translations = [table.left_translation(table.lookup(x)) for x in table.group.generators]
    order = table.order * table.automorphism_group().order()
    return PermGroup(translations + automorphisms, order=order, name=f"Hol({table.name})")
