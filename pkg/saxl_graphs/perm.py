"""Permutations of {0,…,n−1}.

Permutations act on the right: ``p * q`` first applies ``p`` and then ``q``,
so ``(p * q)(i) == q(p(i))``. This matches the exponential notation
α^{gh} = (α^g)^h used throughout the package.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Iterator, Sequence

import saxl_graphs.exceptions as sx_e

ELEMENT_SEP_RE = r" *[, ] *"
CYCLE_RE = rf"\(( *\d+({ELEMENT_SEP_RE}\d+)* *)?\) *"


class Permutation:
    """A bijection of {0,…,n−1} stored as its image sequence.

    Attributes:
        images (tuple[int, ...]): images[i] is the image of point i.

    Raises:
        MalformedPermutation: If the images do not form a bijection.
    """

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise sx_e.MalformedPermutation(f"Images {images} are not a bijection of 0..{len(images) - 1}")
        self.images = images

    @classmethod
    def _trusted(cls, images: tuple[int, ...]) -> Permutation:
        perm = cls.__new__(cls)
        perm.images = images
        return perm

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        """Build a permutation from disjoint or overlapping cycles, composed left to right.

        Parameters:
            degree (int): Number of points.
            cycles (Iterable[Sequence[int]]): Cycles such as [(0, 1, 2), (3, 4)].

        Returns:
            Permutation: The product of the cycles.
        """
        result = cls.identity(degree)
        for cycle in cycles:
            if not cycle:
                continue
            if max(cycle) >= degree or min(cycle) < 0:
                raise sx_e.PointOutOfRange(f"Cycle {tuple(cycle)} does not fit degree {degree}")
            if len(set(cycle)) != len(cycle):
                raise sx_e.MalformedPermutation(f"Cycle {tuple(cycle)} repeats a point")
            images = list(range(degree))
            for a, b in zip(cycle, cycle[1:]):
                images[a] = b
            images[cycle[-1]] = cycle[0]
            result = result * cls._trusted(tuple(images))
        return result

    @classmethod
    def parse(cls, text: str, degree: int) -> Permutation:
        """Parse cycle notation "(0 1 2)(3 4)" or a space-separated image list.

        Parameters:
            text (str): Permutation text.
            degree (int): Number of points.

        Returns:
            Permutation: Parsed permutation.

        Raises:
            MalformedPermutation: If the text is neither form or the result is not a bijection.
        """
        stripped = text.strip()
        if not stripped or stripped.startswith("("):
            cycles = []
            for match in re.finditer(CYCLE_RE + r"|.", stripped):
                token = match.group().strip()
                if len(token) == 1:
                    raise sx_e.MalformedPermutation(f"Could not parse permutation {text!r}")
                body = token[1:-1].strip()
                if body:
                    cycles.append([int(x) for x in re.split(ELEMENT_SEP_RE, body)])
            return cls.from_cycles(degree, cycles)

        images = [int(x) for x in stripped.replace(",", " ").split()]
        if len(images) != degree:
            raise sx_e.MalformedPermutation(f"Expected {degree} images, got {len(images)}")
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        if len(other.images) != len(self.images):
            raise sx_e.DegreeMismatch(f"Degrees {len(self.images)} and {len(other.images)} differ")
        return Permutation._trusted(tuple(map(other.images.__getitem__, self.images)))

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation._trusted(tuple(inv))

    def __invert__(self) -> Permutation:
        return self.inverse()

    def __pow__(self, exponent: int) -> Permutation:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Permutation.identity(self.degree)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self, by: Permutation) -> Permutation:
        """Return by⁻¹ · self · by."""
        return by.inverse() * self * by

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def support(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i != j]

    def fixed_points(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i == j]

    def smallest_moved_point(self) -> int | None:
        for i, j in enumerate(self.images):
            if i != j:
                return i
        return None

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            nxt = self.images[start]
            while nxt != start:
                seen[nxt] = True
                cycle.append(nxt)
                nxt = self.images[nxt]
            if len(cycle) > 1 or include_fixed:
                out.append(tuple(cycle))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Sorted cycle lengths, fixed points included."""
        return tuple(sorted(len(c) for c in self.cycles(include_fixed=True)))

    def order(self) -> int:
        return math.lcm(*self.cycle_type()) if self.images else 1

    def image_of_set(self, points: Iterable[int]) -> frozenset[int]:
        return frozenset(self.images[p] for p in points)

    def __iter__(self) -> Iterator[int]:
        return iter(self.images)

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


def check_degrees(perms: Sequence[Permutation]) -> int:
    """Return the common degree of a nonempty sequence of permutations.

    Raises:
        DegreeMismatch: If the sequence is empty or degrees differ.
    """
    if not perms:
        raise sx_e.DegreeMismatch("Empty generator list")
    degree = perms[0].degree
    for perm in perms[1:]:
        if perm.degree != degree:
            raise sx_e.DegreeMismatch(f"Degrees {degree} and {perm.degree} differ")
    return degree


def product(perms: Iterable[Permutation], degree: int) -> Permutation:
    result = Permutation.identity(degree)
    for perm in perms:
        result = result * perm
    return result
