"""Generalised Saxl graphs Σ(G) and irredundant base graphs.

For transitive G the edge set of Σ(G) is a union of orbitals, so it is
stored as a set of selected suborbits of G_α together with a label row
(row[β] = suborbit of β) and the transversal u_v mapping α to v. The
orbital of (v, w) is then row[w^(u_v⁻¹)], and N(v) = N(α)^(u_v).

Intransitive groups fall back to explicit orbits on ordered pairs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

import networkx as nx
import numpy as np

import saxl_graphs.config as cfg
import saxl_graphs.exceptions as sx_e
from saxl_graphs.bases import base_size, has_base_of_size, irredundant_sizes
from saxl_graphs.group import PermGroup, parallel_map
from saxl_graphs.protocol.graph import VertexGraph

logger = logging.getLogger(__name__)

TRANSVERSAL_CACHE_SIZE = 1024


# ======================================================================
# Orbitals


@dataclass
class Suborbit:
    """A G_α-orbit other than {α}.

    Attributes:
        representative (int): Smallest point of the suborbit.
        size (int): Its length.
        paired (int): Index of the suborbit of the reversed orbital.
    """

    representative: int
    size: int
    index: int
    paired: int = -1

    @property
    def self_paired(self) -> bool:
        return self.paired == self.index


class OrbitalDecomposition:
    """The suborbits of a transitive group at a point α.

    Attributes:
        group (PermGroup): The transitive group.
        alpha (int): The base vertex.
        stabilizer (PermGroup): G_α.
        suborbits (list[Suborbit]): Non-diagonal suborbits, ordered by representative.
        row (np.ndarray): row[β] is the suborbit index of β, and −1 at α.
    """

    def __init__(self, group: PermGroup, alpha: int = 0):
        if not group.is_transitive():
            raise sx_e.IntransitiveGroup("Orbital decompositions need a transitive group")
        self.group = group
        self.alpha = alpha
        self.stabilizer = group.point_stabilizer(alpha)
        self._level = group.chain_with_base((alpha,)).levels[0] if group.degree > 1 else None
        self._images: dict[int, np.ndarray] = {}

        self.row = np.full(group.degree, -1, dtype=np.int32)
        self.suborbits: list[Suborbit] = []
        self._members: list[np.ndarray] = []
        for orbit in self.stabilizer.orbits():
            if orbit == [alpha]:
                continue
            index = len(self.suborbits)
            self.suborbits.append(Suborbit(orbit[0], len(orbit), index))
            self._members.append(np.asarray(orbit, dtype=np.int32))
            self.row[orbit] = index

        for suborbit in self.suborbits:
            back = self.transversal(suborbit.representative).inverse()
            suborbit.paired = int(self.row[back.images[alpha]])
        logger.debug("%d suborbits of %r at %d: sizes %s", len(self.suborbits), group, alpha, self.sizes())

    @property
    def degree(self) -> int:
        return self.group.degree

    def sizes(self) -> list[int]:
        return [s.size for s in self.suborbits]

    def members(self, index: int) -> np.ndarray:
        return self._members[index]

    def transversal(self, v: int):
        """u_v with α^(u_v) = v."""
        return self._level.transversal(v)

    def images(self, v: int) -> np.ndarray:
        """Image array of u_v."""
        cached = self._images.get(v)
        if cached is None:
            cached = np.asarray(self.transversal(v).images, dtype=np.int32)
            if len(self._images) >= TRANSVERSAL_CACHE_SIZE:
                self._images.clear()
            self._images[v] = cached
        return cached

    def label(self, v: int, w: int) -> int:
        """Suborbit index of the orbital containing (v, w); −1 on the diagonal."""
        if v == w:
            return -1
        if v == self.alpha:
            return int(self.row[w])
        inverse = self.transversal(v).inverse()
        return int(self.row[inverse.images[w]])

    def labels_of(self, v: int, points: np.ndarray) -> np.ndarray:
        """Suborbit indices of the points u_v(points) relative to α."""
        return self.row[self.images(v)[points]]


class PairOrbitals:
    """Orbits of an arbitrary group on ordered pairs of distinct points."""

    def __init__(self, group: PermGroup):
        n = group.degree
        if n * n > cfg.TUPLE_CAP:
            raise sx_e.CapExceeded(f"{n * n} ordered pairs exceed the tuple cap {cfg.TUPLE_CAP}")
        self.group = group
        self.labels = np.full((n, n), -1, dtype=np.int32)
        self.representatives: list[tuple[int, int]] = []
        generators = [g.images for g in group.generators]
        for u in range(n):
            for v in range(n):
                if u == v or self.labels[u, v] >= 0:
                    continue
                index = len(self.representatives)
                self.representatives.append((u, v))
                self.labels[u, v] = index
                queue = [(u, v)]
                for a, b in queue:
                    for images in generators:
                        x, y = images[a], images[b]
                        if self.labels[x, y] < 0:
                            self.labels[x, y] = index
                            queue.append((x, y))
        logger.debug("%d orbitals of %r on ordered pairs", len(self.representatives), group)

    def label(self, v: int, w: int) -> int:
        return int(self.labels[v, w])


# ======================================================================
# The graph


def is_edge(group: PermGroup, b: int, alpha: int, beta: int) -> bool:
    """{α, β} lies in a base of size b.

    Raises:
        SameVertex: If α = β.
        SaxlGraphUndefined: If b < 2.
    """
    if alpha == beta:
        raise sx_e.SameVertex(f"Vertex {alpha} given twice")
    if b < 2:
        raise sx_e.SaxlGraphUndefined("graph undefined: base size below 2")
    return has_base_of_size(group.pointwise_stabilizer((alpha, beta)), b - 2)[0]


@dataclass
class Connectivity:
    """Distances in a vertex-transitive graph, measured from α.

    Attributes:
        components (int): Number of connected components.
        component_diameter (int): Largest distance from α inside its component.
        distances (dict[int, int]): Distance from α to each reached suborbit.
    """

    components: int
    component_diameter: int
    distances: dict[int, int]

    @property
    def connected(self) -> bool:
        return self.components == 1

    @property
    def diameter(self) -> Optional[int]:
        """None when the graph is disconnected."""
        return self.component_diameter if self.connected else None

    def describe(self) -> str:
        if self.connected:
            return str(self.component_diameter)
        return f"disconnected({self.components} components)"


def distance_classes(decomposition: OrbitalDecomposition, selected: Iterable[int]) -> Connectivity:
    """BFS over suborbits: distance from α is constant on each G_α-orbit."""
    selected = frozenset(selected)
    n = decomposition.degree
    if not selected:
        return Connectivity(n, 0, {})
    neighbourhood = np.concatenate([decomposition.members(i) for i in sorted(selected)])
    distances = {i: 1 for i in selected}
    frontier = set(selected)
    depth = 1
    while frontier:
        depth += 1
        reached = set()
        for index, suborbit in enumerate(decomposition.suborbits):
            if index in distances:
                continue
            labels = decomposition.labels_of(suborbit.representative, neighbourhood)
            if any(int(x) in frontier for x in np.unique(labels)):
                reached.add(index)
        for index in reached:
            distances[index] = depth
        frontier = reached
    component = 1 + sum(decomposition.suborbits[i].size for i in distances)
    if n % component:
        raise sx_e.InvariantBreach(f"Component of size {component} does not divide {n}")
    return Connectivity(n // component, max(distances.values()), distances)


class SaxlGraph(VertexGraph):
    """Σ(G): {α, β} is an edge iff it lies in a base of size b(G).

    Attributes:
        group (PermGroup): G.
        b (int): b(G).
        decomposition (Optional[OrbitalDecomposition]): Suborbits at α for transitive G.
        pairs (Optional[PairOrbitals]): Orbitals on ordered pairs for intransitive G.
        selected (frozenset[int]): Labels of the orbitals contained in the edge set.
    """

    def __init__(
        self,
        group: PermGroup,
        b: int,
        selected: Iterable[int],
        decomposition: Optional[OrbitalDecomposition] = None,
        pairs: Optional[PairOrbitals] = None,
    ):
        self.group = group
        self.b = b
        self.selected = frozenset(selected)
        self.decomposition = decomposition
        self.pairs = pairs
        self._connectivity: Optional[Connectivity] = None
        self._adjacency: Optional[list[frozenset[int]]] = None
        if decomposition is not None:
            self.n_alpha = (
                np.concatenate([decomposition.members(i) for i in sorted(self.selected)])
                if self.selected
                else np.zeros(0, dtype=np.int32)
            )

    @property
    def transitive(self) -> bool:
        return self.decomposition is not None

    @property
    def vertex_count(self) -> int:
        return self.group.degree

    @property
    def alpha(self) -> int:
        return self.decomposition.alpha if self.decomposition is not None else 0

    def orbital(self, u: int, v: int) -> int:
        if self.decomposition is not None:
            return self.decomposition.label(u, v)
        return self.pairs.label(u, v)

    def is_adjacent(self, u: int, v: int) -> bool:
        return u != v and self.orbital(u, v) in self.selected

    def neighbours(self, v: int) -> list[int]:
        if self.decomposition is not None:
            return sorted(int(x) for x in self.decomposition.images(v)[self.n_alpha])
        return sorted(self._explicit()[v])

    def neighbour_set(self, v: int) -> frozenset[int]:
        if self.decomposition is not None:
            return frozenset(int(x) for x in self.decomposition.images(v)[self.n_alpha])
        return self._explicit()[v]

    def _explicit(self) -> list[frozenset[int]]:
        if self._adjacency is None:
            n = self.vertex_count
            self._adjacency = [frozenset(w for w in range(n) if self.is_adjacent(v, w)) for v in range(n)]
        return self._adjacency

    def edges(self) -> Iterator[tuple[int, int]]:
        for v in range(self.vertex_count):
            for w in self.neighbours(v):
                if v < w:
                    yield v, w

    def degrees(self) -> list[int]:
        if self.decomposition is not None:
            return [self.valency] * self.vertex_count
        return [len(a) for a in self._explicit()]

    @property
    def valency(self) -> Optional[int]:
        """Common vertex degree; None if the graph is not regular."""
        if self.decomposition is not None:
            return int(len(self.n_alpha))
        degrees = set(self.degrees())
        return degrees.pop() if len(degrees) == 1 else None

    def almost_regular_suborbits(self) -> list[int]:
        if self.decomposition is None:
            raise sx_e.IntransitiveGroup("Suborbits need a transitive group")
        return [self.decomposition.suborbits[i].representative for i in sorted(self.selected)]

    def connectivity(self) -> Connectivity:
        if self._connectivity is None:
            if self.decomposition is not None:
                self._connectivity = distance_classes(self.decomposition, self.selected)
            else:
                self._connectivity = _explicit_connectivity(self.to_networkx())
        return self._connectivity

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.vertex_count))
        for u, v in self.edges():
            graph.add_edge(u, v, orbital=self.orbital(u, v))
        return graph

    def __repr__(self) -> str:
        return f"<SaxlGraph of {self.group!r} b={self.b} val={self.valency}>"


def _explicit_connectivity(graph: nx.Graph) -> Connectivity:
    components = list(nx.connected_components(graph))
    diameter = max(nx.diameter(graph.subgraph(c)) if len(c) > 1 else 0 for c in components)
    return Connectivity(len(components), diameter, {})


def saxl_graph(group: PermGroup, b: Optional[int] = None, *, allow_intransitive: bool = False) -> SaxlGraph:
    """Build Σ(G) by testing one representative pair per orbital.

    Parameters:
        group (PermGroup): G.
        b (Optional[int]): b(G) if already known.
        allow_intransitive (bool): Skip the warning for intransitive input.

    Raises:
        SaxlGraphUndefined: If b(G) < 2.
    """
    if b is None:
        b = base_size(group).b
    if b < 2:
        raise sx_e.SaxlGraphUndefined("graph undefined: base size below 2")

    if group.is_transitive():
        decomposition = OrbitalDecomposition(group)
        stabilizer = decomposition.stabilizer

        def test(suborbit: Suborbit) -> bool:
            if b == 2:
                return suborbit.size == stabilizer.order()
            return has_base_of_size(stabilizer.point_stabilizer(suborbit.representative), b - 2)[0]

        verdicts = parallel_map(test, decomposition.suborbits)
        selected = [i for i, ok in enumerate(verdicts) if ok]
        graph = SaxlGraph(group, b, selected, decomposition=decomposition)
    else:
        if not allow_intransitive:
            logger.warning("%r is intransitive; testing every orbital on ordered pairs", group)
        pairs = PairOrbitals(group)
        verdicts = parallel_map(lambda pair: is_edge(group, b, *pair), pairs.representatives)
        graph = SaxlGraph(group, b, [i for i, ok in enumerate(verdicts) if ok], pairs=pairs)
    logger.info("Σ(%s): b = %d, valency %s", group.name or "G", b, graph.valency)
    return graph


def almost_regular_suborbits(group: PermGroup, alpha: int = 0) -> list[int]:
    """Representatives of the G_α-orbits whose points are Σ-neighbours of α."""
    graph = saxl_graph(group)
    if alpha == graph.alpha:
        return graph.almost_regular_suborbits()
    neighbours = graph.neighbour_set(alpha)
    stabilizer = group.point_stabilizer(alpha)
    return [orbit[0] for orbit in stabilizer.orbits() if orbit[0] in neighbours]


# ======================================================================
# Properties


def is_complete(graph: SaxlGraph) -> bool:
    """Σ(G) complete, i.e. G semi-Frobenius."""
    if graph.decomposition is not None:
        return len(graph.selected) == len(graph.decomposition.suborbits)
    return len(graph.selected) == len(graph.pairs.representatives)


def _all_pairs_common_neighbour(graph: SaxlGraph) -> bool:
    n = graph.vertex_count
    adjacency = [graph.neighbour_set(v) for v in range(n)]
    return all(adjacency[u] & adjacency[v] for u in range(n) for v in range(u, n))


def common_neighbour_check(graph: SaxlGraph) -> bool:
    """Any two vertices of Σ(G) have a common neighbour."""
    if graph.decomposition is None:
        return _all_pairs_common_neighbour(graph)
    if graph.b >= 3:
        connectivity = graph.connectivity()
        return connectivity.connected and connectivity.component_diameter <= 2
    n_alpha = graph.neighbour_set(graph.alpha)
    if not n_alpha:
        return False
    return all(n_alpha & graph.neighbour_set(s.representative) for s in graph.decomposition.suborbits)


def is_arc_transitive(graph: SaxlGraph) -> bool:
    if graph.decomposition is None:
        return False
    if len(graph.selected) != 1:
        return False
    (index,) = graph.selected
    return graph.decomposition.suborbits[index].self_paired


def is_locally_faithful(graph: SaxlGraph) -> bool:
    """The pointwise stabilizer of N(α) in G_α is trivial."""
    if graph.decomposition is None:
        raise sx_e.IntransitiveGroup("Local faithfulness needs a transitive group")
    neighbours = graph.neighbours(graph.alpha)
    return graph.decomposition.stabilizer.pointwise_stabilizer(neighbours).order() == 1


def isolated_vertex_criterion(group: PermGroup, alpha: int = 0, b: Optional[int] = None) -> bool:
    """α is the only isolated vertex of Σ(G_α), where G_α acts on all of Ω with base size b(G) − 1.

    Raises:
        BaseSizeTooSmall: If b(G) < 3.
    """
    if b is None:
        b = base_size(group).b
    if b < 3:
        raise sx_e.BaseSizeTooSmall(f"The isolated vertex criterion needs b(G) >= 3, got {b}")
    stabilizer = group.point_stabilizer(alpha)
    local = saxl_graph(stabilizer, b - 1, allow_intransitive=True)
    isolated = [v for v, d in enumerate(local.degrees()) if d == 0]
    logger.debug("Σ(G_%d) has isolated vertices %s", alpha, isolated)
    return isolated == [alpha]


def orbital_diameter(group: PermGroup) -> int:
    """Largest diameter of an (undirected) orbital graph.

    Raises:
        ImprimitiveGroup: If G is not primitive.
    """
    if not group.is_transitive() or not group.is_primitive()[0]:
        raise sx_e.ImprimitiveGroup(f"{group!r} is not primitive, so some orbital graph is disconnected")
    decomposition = OrbitalDecomposition(group)
    largest = 0
    for index, suborbit in enumerate(decomposition.suborbits):
        connectivity = distance_classes(decomposition, {index, suborbit.paired})
        if not connectivity.connected:
            raise sx_e.InvariantBreach(f"Orbital graph {index} of a primitive group is disconnected")
        largest = max(largest, connectivity.component_diameter)
    return largest


def strong_conjecture_check(graph: SaxlGraph) -> bool:
    """For every β, N(β) meets every almost-regular G_α-orbit."""
    decomposition = graph.decomposition
    if decomposition is None:
        raise sx_e.IntransitiveGroup("The strong conjecture check needs a transitive group")
    wanted = graph.selected
    if not wanted:
        return False
    n_alpha = graph.n_alpha
    for beta in [graph.alpha] + [s.representative for s in decomposition.suborbits]:
        seen = set(int(x) for x in np.unique(decomposition.row[decomposition.images(beta)[n_alpha]]))
        if not wanted <= seen:
            return False
    return True


@dataclass
class CliqueSearch:
    found: bool
    clique: list[int]

    @property
    def verdict(self) -> str:
        return "found" if self.found else "inconclusive"


def clique_through_edge(graph: SaxlGraph, r: int) -> CliqueSearch:
    """Greedy search for an (r+1)-clique through the edge from α to its smallest neighbour.

    A failed greedy search proves nothing.
    """
    alpha = graph.alpha
    neighbours = graph.neighbours(alpha)
    if not neighbours:
        return CliqueSearch(False, [alpha])
    clique = [alpha, neighbours[0]]
    candidates = graph.neighbour_set(alpha) & graph.neighbour_set(neighbours[0])
    while len(clique) < r + 1 and candidates:
        pick = min(candidates)
        clique.append(pick)
        candidates = candidates & graph.neighbour_set(pick)
    return CliqueSearch(len(clique) >= r + 1, clique)


def dirac_condition(graph: SaxlGraph) -> bool:
    """val > |Ω|/2."""
    val = graph.valency
    return val is not None and 2 * val > graph.vertex_count


def two_transitive_agreement(graph: SaxlGraph) -> bool:
    """complete ∧ arc-transitive ⇔ 2-transitive."""
    return (is_complete(graph) and is_arc_transitive(graph)) == graph.group.is_two_transitive()


# ======================================================================
# Irredundant base graphs


class MultipartiteGraph(VertexGraph):
    """Complete multipartite graph given by a part label per vertex."""

    def __init__(self, parts: Sequence[Sequence[int]], degree: int):
        self.parts = [sorted(p) for p in parts]
        self.part_of = [-1] * degree
        for index, part in enumerate(self.parts):
            for point in part:
                self.part_of[point] = index

    @property
    def vertex_count(self) -> int:
        return len(self.part_of)

    def is_adjacent(self, u: int, v: int) -> bool:
        return self.part_of[u] != self.part_of[v]

    def neighbours(self, v: int) -> list[int]:
        return [w for w in range(self.vertex_count) if self.part_of[w] != self.part_of[v]]

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.vertex_count):
            for v in range(u + 1, self.vertex_count):
                if self.is_adjacent(u, v):
                    yield u, v

    def is_complete(self) -> bool:
        return all(len(p) == 1 for p in self.parts)

    def is_edgeless(self) -> bool:
        return len(self.parts) <= 1


class EdgeSetGraph(VertexGraph):
    """A graph with an explicit edge set."""

    def __init__(self, degree: int, edges: Iterable[tuple[int, int]]):
        self._degree = degree
        self._edges = frozenset((min(u, v), max(u, v)) for u, v in edges)
        self._adjacency: list[set[int]] = [set() for _ in range(degree)]
        for u, v in self._edges:
            self._adjacency[u].add(v)
            self._adjacency[v].add(u)

    @property
    def vertex_count(self) -> int:
        return self._degree

    def is_adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edges

    def neighbours(self, v: int) -> list[int]:
        return sorted(self._adjacency[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._edges))


def isigma(group: PermGroup) -> MultipartiteGraph:
    """IΣ(G): α ~ β iff G_α ≠ G_β. Regular groups give the edgeless graph."""
    n = group.degree
    if n == 1:
        return MultipartiteGraph([[0]], 1)
    if group.is_transitive():
        stabilizer = group.point_stabilizer(0)
        block = sorted(p for p in range(n) if not stabilizer.moves(p))
        level = group.chain_with_base((0,)).levels[0]
        parts: list[list[int]] = []
        assigned = [False] * n
        for v in range(n):
            if assigned[v]:
                continue
            images = level.transversal(v).images
            part = sorted(images[p] for p in block)
            for p in part:
                assigned[p] = True
            parts.append(part)
        return MultipartiteGraph(parts, n)

    stabilizers = [group.point_stabilizer(v) for v in range(n)]
    parts = []
    leaders: list[int] = []
    for v in range(n):
        for index, leader in enumerate(leaders):
            if stabilizers[v].same_subgroup(stabilizers[leader]):
                parts[index].append(v)
                break
        else:
            leaders.append(v)
            parts.append([v])
    return MultipartiteGraph(parts, n)


def _close_pairs(group: PermGroup, pairs: Iterable[tuple[int, int]]) -> set[tuple[int, int]]:
    closed: set[tuple[int, int]] = set()
    for start in pairs:
        start = (min(start), max(start))
        if start in closed:
            continue
        closed.add(start)
        queue = [start]
        for u, v in queue:
            for g in group.generators:
                x, y = g.images[u], g.images[v]
                image = (min(x, y), max(x, y))
                if image not in closed:
                    closed.add(image)
                    queue.append(image)
    return closed


def isigma_k(group: PermGroup, k: int) -> EdgeSetGraph:
    """IΣ_k(G): α ~ β iff both lie in a common irredundant base of size k.

    Irredundant bases are enumerated up to G-conjugacy (orbit representatives
    of each successive stabilizer) and the resulting pairs are closed under G.

    Raises:
        CapExceeded: If the degree exceeds the irredundant search cap.
    """
    if group.degree > cfg.IRREDUNDANT_DEGREE_CAP:
        raise sx_e.CapExceeded(f"Degree {group.degree} exceeds the irredundant search cap {cfg.IRREDUNDANT_DEGREE_CAP}")
    pairs: set[tuple[int, int]] = set()

    def descend(subgroup: PermGroup, prefix: list[int]) -> None:
        if len(prefix) == k:
            if subgroup.order() == 1:
                pairs.update((prefix[i], prefix[j]) for i in range(k) for j in range(i + 1, k))
            return
        if subgroup.order() == 1:
            return
        for orbit in subgroup.orbits():
            if len(orbit) > 1:
                descend(subgroup.point_stabilizer(orbit[0]), prefix + [orbit[0]])

    if group.order() > 1:
        descend(group, [])
    return EdgeSetGraph(group.degree, _close_pairs(group, pairs))


def irredundant_interval_holds(group: PermGroup) -> bool:
    """irredundant_sizes(G) is exactly the interval [b(G), I(G)]."""
    sizes = irredundant_sizes(group)
    return sizes == frozenset(range(min(sizes), max(sizes) + 1)) and min(sizes) == base_size(group).b


def same_edges(first: VertexGraph, second: VertexGraph) -> bool:
    """Both graphs have the same vertices and the same edges."""
    if first.vertex_count != second.vertex_count:
        return False
    return set(first.edges()) == set(second.edges())


# ======================================================================
# Export


def write_dot(graph: SaxlGraph, path: str) -> None:
    nx.nx_pydot.write_dot(graph.to_networkx(), path)
    logger.info("Wrote %s", path)


def write_edges(graph: SaxlGraph, path: str) -> None:
    """One "u v orbital" line per edge, u < v."""
    nx.write_edgelist(graph.to_networkx(), path, data=["orbital"])
    logger.info("Wrote %s", path)
