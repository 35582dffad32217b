"""Permutation groups and their stabilizer chains.

A `PermGroup` is a generator list plus a lazily built `StabilizerChain`.
Chains come from a randomized Schreier–Sims run. When the order of the
group is known in advance the run stops as soon as the product of the basic
orbit lengths reaches it; otherwise the random phase is followed by a
deterministic pass that sifts every Schreier generator. Random numbers come
from a PCG64 generator seeded from `config.SEED`, so builds are reproducible.

Stabilizers are obtained by base change: a new chain whose base starts with
the requested points is built from uniformly random elements of the known
group, and its tail is the stabilizer.
"""

from __future__ import annotations

import logging
import math
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Iterator, Optional, Sequence, TypeVar

import numpy as np

import saxl_graphs.config as cfg
import saxl_graphs.exceptions as sx_e
from saxl_graphs.perm import Permutation, check_degrees
from saxl_graphs.protocol.objects import PermutationAction

logger = logging.getLogger(__name__)

STALL_ROUNDS = 40
MAX_SIFTS = 500_000
PREFIX_CACHE_SIZE = 64

_T = TypeVar("_T")
_R = TypeVar("_R")


class ProductReplacer:
    """Approximately uniform random elements of ⟨generators⟩ by product replacement ("rattle").

    Attributes:
        reservoir (list[Permutation]): Slot 0 is the running product, the rest hold generators and scratch.
        accumulators (list[Permutation]): Accumulated products returned by sample.
    """

    def __init__(
        self,
        generators: Sequence[Permutation],
        rng: np.random.Generator,
        extra_slots: int = 5,
        accumulators: int = 5,
        scramble: int = 30,
    ):
        identity = Permutation.identity(generators[0].degree)
        self.rng = rng
        self.reservoir = [identity] * extra_slots + list(generators)
        self.accumulators = [identity] * accumulators
        self.position = 0
        for _ in range(max(scramble, 4 * len(generators))):
            self.stir()

    def _pick(self, upper: int) -> int:
        return int(self.rng.integers(upper))

    def stir(self) -> Permutation:
        size = len(self.reservoir)
        i = 1 + self._pick(size - 1)
        j = 1 + self._pick(size - 1)

        p = self.reservoir[i]
        if self._pick(2):
            p = p.inverse()
        self.reservoir[0] = c = self.reservoir[0] * p
        if self._pick(2):
            c = c.inverse()
        self.reservoir[j] = q = self.reservoir[j] * c
        if self._pick(2):
            q = q.inverse()

        self.position = (self.position + 1) % len(self.accumulators)
        self.accumulators[self.position] = r = self.accumulators[self.position] * q
        return r

    def sample(self) -> Permutation:
        return self.stir()


class Level:
    """One level of a stabilizer chain: a base point, the strong generators fixing the earlier base points, and the basic orbit stored as a Schreier vector.

    Attributes:
        base_point (int): Base point of this level.
        generators (list[Permutation]): Strong generators of this level.
        orbit (list[int]): Basic orbit, base point first.
        via (dict[int, int]): Schreier vector; via[γ] is the index of the generator that reached γ, -1 for the base point.
    """

    __slots__ = ("base_point", "degree", "generators", "inverses", "orbit", "via", "_cache")

    def __init__(self, base_point: int, degree: int):
        self.base_point = base_point
        self.degree = degree
        self.generators: list[Permutation] = []
        self.inverses: list[Permutation] = []
        self.orbit = [base_point]
        self.via = {base_point: -1}
        self._cache: dict[int, Permutation] = {}

    def add_generator(self, generator: Permutation) -> None:
        self.generators.append(generator)
        self.inverses.append(generator.inverse())
        self._cache.clear()
        queue = list(self.orbit)
        i = 0
        while i < len(queue):
            point = queue[i]
            i += 1
            for idx, gen in enumerate(self.generators):
                image = gen.images[point]
                if image not in self.via:
                    self.via[image] = idx
                    self.orbit.append(image)
                    queue.append(image)

    def transversal(self, point: int) -> Permutation:
        """Return u with base_point^u = point, traced along the Schreier vector."""
        cached = self._cache.get(point)
        if cached is not None:
            return cached
        word = []
        current = point
        while current != self.base_point:
            idx = self.via[current]
            word.append(idx)
            current = self.inverses[idx].images[current]
        result = Permutation.identity(self.degree)
        for idx in reversed(word):
            result = result * self.generators[idx]
        if len(self._cache) < 4096:
            self._cache[point] = result
        return result

    def strip(self, g: Permutation, beta: int) -> Permutation:
        """Return g · u_β⁻¹, where β = base_point^g."""
        while beta != self.base_point:
            idx = self.via[beta]
            inverse = self.inverses[idx]
            g = g * inverse
            beta = inverse.images[beta]
        return g


def sift(levels: Sequence[Level], g: Permutation) -> tuple[Permutation, int]:
    """Sift g through the levels. Returns the residue and the depth where sifting stopped (len(levels) if it went through)."""
    for depth, level in enumerate(levels):
        beta = g.images[level.base_point]
        if beta not in level.via:
            return g, depth
        g = level.strip(g, beta)
    return g, len(levels)


class StabilizerChain:
    """An immutable stabilizer chain.

    Attributes:
        degree (int): Number of points.
        levels (tuple[Level, ...]): Levels; level i's group fixes the first i base points.
        order (int): Product of the basic orbit lengths.
    """

    def __init__(self, degree: int, levels: Sequence[Level]):
        self.degree = degree
        self.levels = tuple(levels)
        self.order = math.prod(len(level.orbit) for level in self.levels)

    @property
    def base_points(self) -> tuple[int, ...]:
        return tuple(level.base_point for level in self.levels)

    def orbit_sizes(self) -> tuple[int, ...]:
        return tuple(len(level.orbit) for level in self.levels)

    def strong_generators(self) -> list[Permutation]:
        return list(self.levels[0].generators) if self.levels else []

    def contains(self, g: Permutation) -> bool:
        residue, depth = sift(self.levels, g)
        return depth == len(self.levels) and residue.is_identity()

    def tail(self, start: int) -> StabilizerChain:
        return StabilizerChain(self.degree, self.levels[start:])

    def random_element(self, rng: np.random.Generator) -> Permutation:
        g = Permutation.identity(self.degree)
        for level in reversed(self.levels):
            point = level.orbit[int(rng.integers(len(level.orbit)))]
            g = g * level.transversal(point)
        return g

    def elements(self, start: int = 0) -> Iterator[Permutation]:
        """Stream all elements of the group of level `start`, each exactly once."""
        if start >= len(self.levels):
            yield Permutation.identity(self.degree)
            return
        level = self.levels[start]
        reps = [level.transversal(point) for point in level.orbit]
        for h in self.elements(start + 1):
            for u in reps:
                yield h * u


class _ChainBuilder:
    def __init__(self, degree: int, prefix: Sequence[int] = ()):
        self.degree = degree
        self.levels = [Level(point, degree) for point in prefix]

    def size(self) -> int:
        return math.prod(len(level.orbit) for level in self.levels)

    def add(self, h: Permutation) -> None:
        for level in self.levels:
            level.add_generator(h)
            if h.images[level.base_point] != level.base_point:
                return
        point = h.smallest_moved_point()
        if point is None:
            return
        level = Level(point, self.degree)
        level.add_generator(h)
        self.levels.append(level)

    def sift_in(self, g: Permutation) -> bool:
        residue, _ = sift(self.levels, g)
        if residue.is_identity():
            return False
        self.add(residue)
        return True

    def verify_pass(self) -> bool:
        """Sift every Schreier generator once, deepest level first. Returns True if a residue was added."""
        for depth in reversed(range(len(self.levels))):
            level = self.levels[depth]
            below = self.levels[depth + 1 :]
            for point in list(level.orbit):
                u = level.transversal(point)
                for gen in list(level.generators):
                    image = gen.images[point]
                    schreier = u * gen * level.transversal(image).inverse()
                    residue, _ = sift(below, schreier)
                    if not residue.is_identity():
                        self.add(residue)
                        return True
        return False

    def finish(self) -> StabilizerChain:
        return StabilizerChain(self.degree, self.levels)


def build_chain(
    generators: Sequence[Permutation],
    degree: int,
    *,
    order: Optional[int] = None,
    order_bound: Optional[int] = None,
    prefix: Sequence[int] = (),
    sampler: Optional[Callable[[], Permutation]] = None,
    rng: Optional[np.random.Generator] = None,
) -> StabilizerChain:
    """Run Schreier–Sims.

    Parameters:
        generators (Sequence[Permutation]): Generators of the group.
        degree (int): Number of points.
        order (Optional[int]): Exact group order, if known; the random phase stops when it is reached.
        order_bound (Optional[int]): Upper bound on the order; reaching it certifies the chain.
        prefix (Sequence[int]): Points the base must start with.
        sampler (Optional[Callable[[], Permutation]]): Source of random group elements; defaults to product replacement.
        rng (Optional[np.random.Generator]): Random generator for the default sampler.

    Returns:
        StabilizerChain: A verified chain.

    Raises:
        ChainConstructionError: If the claimed order is inconsistent with the generators.
    """
    builder = _ChainBuilder(degree, prefix)
    nontrivial = [g for g in generators if not g.is_identity()]
    for g in nontrivial:
        builder.sift_in(g)

    if order == 1 or (not nontrivial and sampler is None):
        return builder.finish()

    if rng is None:
        rng = np.random.default_rng(cfg.SEED)
    if sampler is None:
        sampler = ProductReplacer(nontrivial, rng).sample

    target = order if order is not None else order_bound
    stall = 0
    sifts = 0
    while True:
        size = builder.size()
        if target is not None and size == target:
            return builder.finish()
        if target is not None and size > target:
            raise sx_e.ChainConstructionError(f"Chain reached size {size} beyond the claimed order {target}")
        if order is None and stall >= STALL_ROUNDS:
            break
        if sifts >= MAX_SIFTS:
            raise sx_e.ChainConstructionError(f"No chain of order {order} after {sifts} random elements")
        sifts += 1
        if builder.sift_in(sampler()):
            stall = 0
        else:
            stall += 1

    while builder.verify_pass():
        pass
    chain = builder.finish()
    logger.debug("Verified chain with base %s and order %d", chain.base_points, chain.order)
    return chain


def parallel_map(function: Callable[[_T], _R], items: Sequence[_T]) -> list[_R]:
    """Map in submission order, sharded over `config.THREADS` workers."""
    if cfg.THREADS > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=cfg.THREADS) as pool:
            return list(pool.map(function, items))
    return [function(item) for item in items]


class UnionFind:
    """Disjoint sets over 0,…,n−1 with path halving."""

    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx < ry:
            self.parent[ry] = rx
        else:
            self.parent[rx] = ry
        return True


class PermGroup(PermutationAction):
    """A permutation group on {0,…,n−1}.

    Instances are immutable; the chain is built once, on first use, under a lock.

    Attributes:
        name (Optional[str]): Label used in logs and reports.

    Raises:
        DegreeMismatch: If generators have different degrees or the list is empty.
    """

    def __init__(
        self,
        generators: Sequence[Permutation],
        *,
        order: Optional[int] = None,
        order_bound: Optional[int] = None,
        chain: Optional[StabilizerChain] = None,
        name: Optional[str] = None,
    ):
        self._degree = check_degrees(list(generators))
        self._generators = tuple(generators)
        self._order_hint = order
        self._order_bound = order_bound
        self._chain = chain
        self._lock = threading.Lock()
        self._prefix_chains: dict[tuple[int, ...], StabilizerChain] = {}
        self.name = name

    @classmethod
    def trivial(cls, degree: int) -> PermGroup:
        identity = Permutation.identity(degree)
        return cls([identity], chain=StabilizerChain(degree, []))

    # ======================================================================
    # Chain access

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    self._chain = build_chain(
                        self._generators,
                        self._degree,
                        order=self._order_hint,
                        order_bound=self._order_bound,
                    )
        return self._chain

    def chain_with_base(self, prefix: Sequence[int]) -> StabilizerChain:
        """Return a chain whose base starts with `prefix` (points may repeat; repeats get trivial levels)."""
        prefix = tuple(prefix)
        chain = self.chain
        if chain.base_points[: len(prefix)] == prefix:
            return chain
        with self._lock:
            cached = self._prefix_chains.get(prefix)
        if cached is not None:
            return cached

        rng = np.random.default_rng([cfg.SEED, *prefix[:16]])
        if chain.order == 1:
            new = build_chain([], self._degree, order=1, prefix=prefix)
        else:
            new = build_chain(
                [],
                self._degree,
                order=chain.order,
                prefix=prefix,
                sampler=lambda: chain.random_element(rng),
                rng=rng,
            )
        with self._lock:
            if len(self._prefix_chains) >= PREFIX_CACHE_SIZE:
                self._prefix_chains.clear()
            self._prefix_chains[prefix] = new
        return new

    # ======================================================================
    # Basic queries

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def generators(self) -> tuple[Permutation, ...]:
        return self._generators

    def order(self) -> int:
        return self.chain.order

    def is_trivial(self) -> bool:
        return all(g.is_identity() for g in self._generators) or self.order() == 1

    def _check_point(self, point: int) -> None:
        if not 0 <= point < self._degree:
            raise sx_e.PointOutOfRange(f"Point {point} outside 0..{self._degree - 1}")

    def contains(self, p: Permutation) -> bool:
        if p.degree != self._degree:
            raise sx_e.DegreeMismatch(f"Permutation of degree {p.degree} tested against a group of degree {self._degree}")
        return self.chain.contains(p)

    def __contains__(self, p: Permutation) -> bool:
        return self.contains(p)

    def moves(self, point: int) -> bool:
        return any(g.images[point] != point for g in self._generators)

    def random_element(self, rng: np.random.Generator) -> Permutation:
        return self.chain.random_element(rng)

    def elements(self) -> Iterator[Permutation]:
        return self.chain.elements()

    # ======================================================================
    # Orbits

    def orbit(self, alpha: int) -> frozenset[int]:
        self._check_point(alpha)
        seen = {alpha}
        queue = [alpha]
        for point in queue:
            for g in self._generators:
                image = g.images[point]
                if image not in seen:
                    seen.add(image)
                    queue.append(image)
        return frozenset(seen)

    def orbits(self) -> list[list[int]]:
        """Orbits as sorted lists, ordered by their smallest point."""
        assigned = [False] * self._degree
        result = []
        for start in range(self._degree):
            if assigned[start]:
                continue
            orbit = sorted(self.orbit(start))
            for point in orbit:
                assigned[point] = True
            result.append(orbit)
        return result

    def orbit_signature(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(orbit) for orbit in self.orbits())

    def is_transitive(self) -> bool:
        return self._degree <= 1 or len(self.orbit(0)) == self._degree

    def is_two_transitive(self) -> bool:
        if not self.is_transitive() or self._degree < 2:
            return False
        return len(self.point_stabilizer(0).orbit(1)) == self._degree - 1

    # ======================================================================
    # Stabilizers

    def point_stabilizer(self, alpha: int) -> PermGroup:
        self._check_point(alpha)
        if not self.moves(alpha):
            return self
        chain = self.chain_with_base((alpha,))
        tail = chain.tail(1)
        generators = tail.strong_generators() or [Permutation.identity(self._degree)]
        return PermGroup(generators, chain=tail)

    def pointwise_stabilizer(self, points: Iterable[int]) -> PermGroup:
        group = self
        for point in points:
            self._check_point(point)
            if group.order() == 1:
                break
            group = group.point_stabilizer(point)
        return group

    def same_subgroup(self, other: PermGroup) -> bool:
        """Equality of subgroups by order plus two-sided generator membership."""
        if self.order() != other.order():
            return False
        return all(other.contains(g) for g in self._generators) and all(self.contains(g) for g in other.generators)

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return all(other.contains(g) for g in self._generators)

    # ======================================================================
    # Transporters

    def transporter(self, source: Sequence[int], target: Sequence[int]) -> Optional[Permutation]:
        """Return some g with source[i]^g = target[i] for all i, or None."""
        if len(source) != len(target):
            raise sx_e.DegreeMismatch(f"Tuples of lengths {len(source)} and {len(target)}")
        prefix: list[int] = []
        wanted: dict[int, int] = {}
        for s, t in zip(source, target):
            self._check_point(s)
            self._check_point(t)
            if s in wanted:
                if wanted[s] != t:
                    return None
                continue
            wanted[s] = t
            prefix.append(s)
        if len(set(wanted.values())) != len(wanted):
            return None

        chain = self.chain_with_base(prefix)
        targets = [wanted[s] for s in prefix]
        factors = []
        for i, level in enumerate(chain.levels[: len(prefix)]):
            image = targets[i]
            if image not in level.via:
                return None
            u = level.transversal(image)
            u_inv = u.inverse()
            targets = [u_inv.images[x] for x in targets]
            factors.append(u)
        g = Permutation.identity(self._degree)
        for u in reversed(factors):
            g = g * u
        return g

    def transporter_exists(self, source: Sequence[int], target: Sequence[int]) -> bool:
        return self.transporter(source, target) is not None

    # ======================================================================
    # Blocks

    def minimal_block(self, alpha: int, beta: int) -> frozenset[int]:
        """Smallest block containing alpha and beta (union-find block algorithm)."""
        self._check_point(alpha)
        self._check_point(beta)
        classes = UnionFind(self._degree)
        classes.union(alpha, beta)
        queue = [(alpha, beta)]
        while queue:
            gamma, delta = queue.pop()
            for g in self._generators:
                x = classes.find(g.images[gamma])
                y = classes.find(g.images[delta])
                if x != y:
                    classes.union(x, y)
                    queue.append((x, y))
        root = classes.find(alpha)
        return frozenset(p for p in range(self._degree) if classes.find(p) == root)

    def is_primitive(self) -> tuple[bool, Optional[frozenset[int]]]:
        """Decide primitivity.

        Returns:
            tuple[bool, Optional[frozenset[int]]]: The verdict and, if imprimitive, a nontrivial block.

        Raises:
            IntransitiveGroup: If the group is not transitive.
        """
        if not self.is_transitive():
            raise sx_e.IntransitiveGroup("Primitivity is defined for transitive groups only")
        if self._degree <= 2:
            return True, None
        stabilizer = self.point_stabilizer(0)
        for orbit in stabilizer.orbits():
            beta = orbit[0]
            if beta == 0:
                continue
            block = self.minimal_block(0, beta)
            if len(block) < self._degree:
                return False, block
        return True, None

    # ======================================================================
    # Backtrack search

    def _partition_stabilizer_elements(self, labels: Sequence[int]) -> Iterator[Permutation]:
        """Stream the elements g with labels[p^g] == labels[p] for all p, identity first."""
        sizes: dict[int, int] = {}
        for label in labels:
            sizes[label] = sizes.get(label, 0) + 1
        prefix = sorted(range(self._degree), key=lambda p: (sizes[labels[p]], p))
        chain = self.chain_with_base(prefix)
        levels = [level for level in chain.levels if len(level.orbit) > 1]

        def search(depth: int, g: Permutation) -> Iterator[Permutation]:
            if depth == len(levels):
                if all(labels[g.images[p]] == labels[p] for p in range(self._degree)):
                    yield g
                return
            level = levels[depth]
            want = labels[level.base_point]
            for delta in level.orbit:
                if labels[g.images[delta]] != want:
                    continue
                yield from search(depth + 1, level.transversal(delta) * g)

        yield from search(0, Permutation.identity(self._degree))

    def partition_labels(self, parts: Sequence[Iterable[int]]) -> list[int]:
        labels = [-1] * self._degree
        for index, part in enumerate(parts):
            for point in part:
                self._check_point(point)
                labels[point] = index
        return labels

    def partition_stabilizer(self, parts: Sequence[Iterable[int]]) -> PermGroup:
        """Intersection of the setwise stabilizers of the parts (points outside every part form one more part)."""
        labels = self.partition_labels(parts)
        elements = list(self._partition_stabilizer_elements(labels))
        generators: list[Permutation] = []
        current: Optional[PermGroup] = None
        for g in elements:
            if g.is_identity():
                continue
            if current is None or not current.contains(g):
                generators.append(g)
                current = PermGroup(generators)
        if not generators:
            return PermGroup.trivial(self._degree)
        return PermGroup(generators, order=len(elements))

    def partition_stabilizer_is_trivial(self, parts: Sequence[Iterable[int]]) -> bool:
        labels = self.partition_labels(parts)
        for g in self._partition_stabilizer_elements(labels):
            if not g.is_identity():
                return False
        return True

    # ======================================================================
    # Subgroups

    def normal_closure(self, generators: Sequence[Permutation]) -> PermGroup:
        gens = [g for g in generators if not g.is_identity()]
        if not gens:
            return PermGroup.trivial(self._degree)
        closure = PermGroup(gens)
        changed = True
        while changed:
            changed = False
            for h in list(gens):
                for s in self._generators:
                    c = h.conjugate(s)
                    if not closure.contains(c):
                        gens.append(c)
                        closure = PermGroup(gens)
                        changed = True
        return closure

    def derived_subgroup(self) -> PermGroup:
        commutators = [
            a.inverse() * b.inverse() * a * b for i, a in enumerate(self._generators) for b in self._generators[i + 1 :]
        ]
        return self.normal_closure(commutators)

    def is_perfect(self) -> bool:
        return self.derived_subgroup().order() == self.order()

    def has_trivial_center(self) -> bool:
        if self.order() > cfg.GROUP_ORDER_CAP:
            raise sx_e.CapExceeded(f"Center test streams {self.order()} elements, above the cap {cfg.GROUP_ORDER_CAP}")
        for g in self.elements():
            if g.is_identity():
                continue
            if all(g * s == s * g for s in self._generators):
                return False
        return True

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        return f"<{label} degree={self._degree} gens={len(self._generators)}>"


def group_from_generators(generators: Sequence[Permutation], **kwargs) -> PermGroup:
    """Build a group from generators and force its chain.

    Raises:
        DegreeMismatch: If degrees differ.
    """
    group = PermGroup(generators, **kwargs)
    _ = group.chain
    return group
