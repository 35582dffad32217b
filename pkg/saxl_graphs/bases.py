"""Bases: exact base size, ordered base counts, reg(G) and irredundant bases.

All searches branch on orbit representatives of the current stabilizer,
largest orbit first, and skip orbits of fixed points. Stabilizers met
twice are recognised through `SubgroupCache`, keyed by order and orbit
partition and confirmed by mutual generator membership.
"""

from __future__ import annotations

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Hashable, Optional, Sequence

import saxl_graphs.config as cfg
import saxl_graphs.exceptions as sx_e
from saxl_graphs.group import PermGroup, parallel_map

logger = logging.getLogger(__name__)


class SubgroupCache:
    """Values attached to subgroups, safe for concurrent use."""

    def __init__(self) -> None:
        self._entries: dict[Hashable, list[tuple[PermGroup, Any]]] = {}
        self._lock = threading.Lock()
        self.hits = 0

    @staticmethod
    def _key(group: PermGroup, extra: Hashable) -> Hashable:
        return (group.order(), group.orbit_signature(), extra)

    def get(self, group: PermGroup, extra: Hashable = None) -> Optional[Any]:
        key = self._key(group, extra)
        with self._lock:
            candidates = list(self._entries.get(key, ()))
        for other, value in candidates:
            if other is group or group.same_subgroup(other):
                with self._lock:
                    self.hits += 1
                return value
        return None

    def put(self, group: PermGroup, value: Any, extra: Hashable = None) -> None:
        key = self._key(group, extra)
        with self._lock:
            self._entries.setdefault(key, []).append((group, value))

    def __len__(self) -> int:
        return sum(len(v) for v in self._entries.values())


@dataclass
class BaseSearchResult:
    """Attributes:
    b (int): Minimal base size.
    witness (tuple[int, ...]): A base of size b.
    nodes_explored (int): Search nodes visited over all depths.
    """

    b: int
    witness: tuple[int, ...]
    nodes_explored: int = 0


@dataclass
class RegularOrbitCount:
    b: int
    ordered_base_count: int
    group_order: int
    reg: int


@dataclass
class _Stats:
    nodes: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)

    def visit(self) -> None:
        with self.lock:
            self.nodes += 1


def _nontrivial_orbits(group: PermGroup) -> list[list[int]]:
    """Orbits of size > 1, largest first (ties by smallest point)."""
    return sorted((o for o in group.orbits() if len(o) > 1), key=lambda o: (-len(o), o[0]))


def _cannot_reach(group: PermGroup, orbits: Sequence[Sequence[int]], m: int) -> bool:
    largest = max(len(o) for o in orbits)
    return group.order() > largest**m


class _BaseSearch:
    def __init__(self) -> None:
        self.failures = SubgroupCache()
        self.stats = _Stats()

    def search(self, group: PermGroup, m: int, parallel: bool = False) -> Optional[list[int]]:
        """Points of a base of size at most m, or None."""
        if group.order() == 1:
            return []
        if m <= 0:
            return None
        failed = self.failures.get(group)
        if failed is not None and failed >= m:
            return None
        orbits = _nontrivial_orbits(group)
        if _cannot_reach(group, orbits, m):
            return None
        if m == 1:
            for orbit in orbits:
                if len(orbit) == group.order():
                    return [orbit[0]]
            self._fail(group, m)
            return None

        def branch(orbit: Sequence[int]) -> Optional[list[int]]:
            self.stats.visit()
            rest = self.search(group.point_stabilizer(orbit[0]), m - 1)
            return None if rest is None else [orbit[0]] + rest

        if parallel and cfg.THREADS > 1 and len(orbits) > 1:
            with ThreadPoolExecutor(max_workers=cfg.THREADS) as pool:
                for found in pool.map(branch, orbits):
                    if found is not None:
                        return found
        else:
            for orbit in orbits:
                found = branch(orbit)
                if found is not None:
                    return found
        self._fail(group, m)
        return None

    def _fail(self, group: PermGroup, m: int) -> None:
        failed = self.failures.get(group)
        if failed is None or failed < m:
            self.failures.put(group, m)


def has_base_of_size(group: PermGroup, m: int) -> tuple[bool, tuple[int, ...]]:
    """Whether some m points have trivial pointwise stabilizer; the witness may be shorter than m.

    Works for intransitive groups and groups with fixed points.
    """
    if m < 0:
        return False, ()
    found = _BaseSearch().search(group, m)
    return (found is not None), tuple(found or ())


def base_lower_bound(group: PermGroup) -> int:
    """Least m with n^m ≥ |G|."""
    order = group.order()
    if order == 1:
        return 0
    m, power = 0, 1
    while power < order:
        power *= group.degree
        m += 1
    return m


def base_size(group: PermGroup, hint: Optional[int] = None) -> BaseSearchResult:
    """Exact b(G) with a witness, by iterative deepening from ⌈log|G| / log n⌉.

    Parameters:
        group (PermGroup): The group.
        hint (Optional[int]): Expected base size; depths below hint − 1 are skipped, and hint − 1 is still searched so minimality stays certified.
    """
    if group.order() == 1:
        return BaseSearchResult(0, (), 0)
    searcher = _BaseSearch()
    lower = max(1, base_lower_bound(group))
    m = max(lower, hint - 1) if hint else lower
    witness = searcher.search(group, m, parallel=True)
    while witness is None:
        m += 1
        witness = searcher.search(group, m, parallel=True)
    m = len(witness)
    while m - 1 >= lower:
        smaller = searcher.search(group, m - 1, parallel=True)
        if smaller is None:
            break
        witness, m = smaller, len(smaller)
    logger.debug("b = %d for %r after %d nodes, witness %s", m, group, searcher.stats.nodes, witness)
    return BaseSearchResult(m, tuple(witness), searcher.stats.nodes)


def is_base(group: PermGroup, points: Sequence[int]) -> bool:
    return group.pointwise_stabilizer(points).order() == 1


# ======================================================================
# Counting


class _Counter:
    def __init__(self, degree: int):
        self.degree = degree
        self.cache = SubgroupCache()

    def count(self, group: PermGroup, k: int) -> int:
        if group.order() == 1:
            return self.degree**k
        if k == 0:
            return 0
        orbits = [o for o in group.orbits() if len(o) > 1]
        if _cannot_reach(group, orbits, k):
            return 0
        if k == 1:
            return sum(len(o) for o in orbits if len(o) == group.order())
        cached = self.cache.get(group, k)
        if cached is not None:
            return cached
        fixed = self.degree - sum(len(o) for o in orbits)
        total = fixed * self.count(group, k - 1) if fixed else 0
        for orbit in orbits:
            total += len(orbit) * self.count(group.point_stabilizer(orbit[0]), k - 1)
        self.cache.put(group, total, k)
        return total


def count_ordered_bases(group: PermGroup, k: int) -> int:
    """Number of k-tuples of points (repeats allowed) with trivial pointwise stabilizer."""
    if k < 0:
        return 0
    counter = _Counter(group.degree)
    if cfg.THREADS > 1 and k >= 2 and group.order() > 1:
        orbits = [o for o in group.orbits() if len(o) > 1]
        fixed = group.degree - sum(len(o) for o in orbits)
        parts = parallel_map(lambda o: len(o) * counter.count(group.point_stabilizer(o[0]), k - 1), orbits)
        total = sum(parts) + (fixed * counter.count(group, k - 1) if fixed else 0)
    else:
        total = counter.count(group, k)
    logger.debug("count(%r, %d) = %d, %d cache hits", group, k, total, counter.cache.hits)
    return total


def reg(group: PermGroup, b: Optional[int] = None) -> RegularOrbitCount:
    """Number of regular orbits of G on Ω^b(G).

    Raises:
        InvariantBreach: If the ordered base count is not divisible by |G|.
    """
    if b is None:
        b = base_size(group).b
    count = count_ordered_bases(group, b)
    quotient, remainder = divmod(count, group.order())
    if remainder:
        raise sx_e.InvariantBreach(f"{count} ordered bases is not a multiple of |G| = {group.order()}")
    return RegularOrbitCount(b, count, group.order(), quotient)


def reg_tuples(group: PermGroup, m: int) -> int:
    """reg(L, m): regular orbits of L on Γ^m."""
    return reg(group, m).reg


# ======================================================================
# Irredundant bases


class _Irredundant:
    def __init__(self) -> None:
        self.longest = SubgroupCache()
        self.sizes = SubgroupCache()

    def maximum(self, group: PermGroup) -> list[int]:
        if group.order() == 1:
            return []
        cached = self.longest.get(group)
        if cached is not None:
            return cached
        best: list[int] = []
        for orbit in _nontrivial_orbits(group):
            tail = self.maximum(group.point_stabilizer(orbit[0]))
            if len(tail) + 1 > len(best):
                best = [orbit[0]] + tail
        self.longest.put(group, best)
        return best

    def all_sizes(self, group: PermGroup) -> frozenset[int]:
        if group.order() == 1:
            return frozenset({0})
        cached = self.sizes.get(group)
        if cached is not None:
            return cached
        sizes: set[int] = set()
        for orbit in _nontrivial_orbits(group):
            sizes.update(1 + s for s in self.all_sizes(group.point_stabilizer(orbit[0])))
        result = frozenset(sizes)
        self.sizes.put(group, result)
        return result


def irredundant_max(group: PermGroup) -> tuple[int, tuple[int, ...]]:
    """I(G) and an irredundant base of that length.

    Raises:
        TrivialGroup: If |G| = 1.
    """
    if group.order() == 1:
        raise sx_e.TrivialGroup("The trivial group has no irredundant bases")
    witness = _Irredundant().maximum(group)
    return len(witness), tuple(witness)


def irredundant_sizes(group: PermGroup) -> frozenset[int]:
    """All lengths of irredundant bases.

    Raises:
        TrivialGroup: If |G| = 1.
        CapExceeded: If the degree exceeds the irredundant search cap.
    """
    if group.order() == 1:
        raise sx_e.TrivialGroup("The trivial group has no irredundant bases")
    if group.degree > cfg.IRREDUNDANT_DEGREE_CAP:
        raise sx_e.CapExceeded(f"Degree {group.degree} exceeds the irredundant search cap {cfg.IRREDUNDANT_DEGREE_CAP}")
    return _Irredundant().all_sizes(group)
