import itertools

import networkx as nx
import pytest

import saxl_graphs.exceptions as sx_e
from saxl_graphs.actions import alternating, cyclic, dihedral, linear_on_nonzero, pairs_action, psl2_projective, symmetric
from saxl_graphs.bases import base_size, is_base, reg
from saxl_graphs.fixtures import fixture, list_fixtures
from saxl_graphs.group import PermGroup
from saxl_graphs.perm import Permutation
from saxl_graphs.protocol.graph import VertexGraph
from saxl_graphs.recipes import build
from saxl_graphs.saxl import (
    OrbitalDecomposition,
    almost_regular_suborbits,
    clique_through_edge,
    common_neighbour_check,
    dirac_condition,
    irredundant_interval_holds,
    is_arc_transitive,
    is_complete,
    is_edge,
    is_locally_faithful,
    isigma,
    isigma_k,
    isolated_vertex_criterion,
    orbital_diameter,
    same_edges,
    saxl_graph,
    strong_conjecture_check,
    two_transitive_agreement,
    write_dot,
    write_edges,
)
from saxl_graphs.tables import PRIMITIVE_RECIPES, PROB_RECIPES


def brute_saxl_edges(group):
    """Pairs lying in some base of size b(G), by trying every completion."""
    b = base_size(group).b
    n = group.degree
    edges = set()
    for u, v in itertools.combinations(range(n), 2):
        rest = [p for p in range(n) if p not in (u, v)]
        if any(is_base(group, (u, v) + extra) for extra in itertools.combinations(rest, b - 2)):
            edges.add((u, v))
    return edges


@pytest.mark.parametrize(
    "group",
    [symmetric(4), alternating(5), dihedral(6), dihedral(5), linear_on_nonzero(3, 2), psl2_projective(5, "psl")],
    ids=["S4", "A5", "D12", "D10", "GL2(3)", "L2(5)"],
)
def test_against_brute_force(group):
    graph = saxl_graph(group)
    assert set(graph.edges()) == brute_saxl_edges(group)
    for u, v in itertools.combinations(range(group.degree), 2):
        assert graph.is_adjacent(u, v) == is_edge(group, graph.b, u, v)


def test_sharply_three_transitive_group_is_complete():
    graph = saxl_graph(psl2_projective(7, "pgl"))
    assert graph.b == 3
    assert graph.valency == 7
    assert is_complete(graph) and is_arc_transitive(graph)
    assert graph.connectivity().diameter == 1
    assert common_neighbour_check(graph)
    assert is_locally_faithful(graph)
    assert strong_conjecture_check(graph)
    assert dirac_condition(graph)
    assert two_transitive_agreement(graph)
    assert isinstance(graph, VertexGraph)


def test_undefined_below_base_size_two():
    with pytest.raises(sx_e.SaxlGraphUndefined) as info:
        saxl_graph(cyclic(6))
    assert "base size below 2" in str(info.value)


def test_antipodal_points_are_not_adjacent():
    graph = saxl_graph(dihedral(6))
    assert graph.b == 2
    assert graph.neighbours(0) == [1, 2, 4, 5]
    assert not is_complete(graph) and not is_arc_transitive(graph)
    assert graph.connectivity().describe() == "2"
    assert almost_regular_suborbits(dihedral(6)) == [1, 2]


def test_complete_multipartite_linear_group():
    group = linear_on_nonzero(3, 2)
    graph = saxl_graph(group)
    assert graph.b == 2 and graph.valency == 6
    assert same_edges(graph, isigma(group))
    assert sorted(len(p) for p in isigma(group).parts) == [2, 2, 2, 2]


def test_intransitive_group():
    group = PermGroup([Permutation.from_cycles(5, [(0, 1)]), Permutation.from_cycles(5, [(2, 3)])])
    graph = saxl_graph(group, allow_intransitive=True)
    assert not graph.transitive
    assert set(graph.edges()) == {(0, 2), (0, 3), (1, 2), (1, 3)}
    assert graph.degrees() == [2, 2, 2, 2, 0]
    assert graph.valency is None
    assert graph.connectivity().describe() == "disconnected(2 components)"
    assert not is_complete(graph)
    assert not common_neighbour_check(graph)


def test_same_vertex():
    with pytest.raises(sx_e.SameVertex):
        is_edge(symmetric(4), 3, 1, 1)


def test_edge_needs_base_size_two():
    with pytest.raises(sx_e.SaxlGraphUndefined):
        is_edge(cyclic(6), 1, 0, 3)


def test_suborbits_and_pairing():
    decomposition = OrbitalDecomposition(pairs_action(symmetric(5)).group)
    assert sorted(decomposition.sizes()) == [3, 6]
    assert all(s.self_paired for s in decomposition.suborbits)
    assert decomposition.label(0, 0) == -1
    with pytest.raises(sx_e.IntransitiveGroup):
        OrbitalDecomposition(PermGroup([Permutation.from_cycles(3, [(0, 1)])]))


def test_fano_fixture_is_disconnected():
    graph = saxl_graph(fixture("pgl2-7-on-14"))
    assert graph.b == 3
    assert graph.connectivity().components == 2
    assert graph.connectivity().diameter is None
    assert not common_neighbour_check(graph)


def test_isolated_vertex_criterion():
    assert isolated_vertex_criterion(symmetric(4))
    with pytest.raises(sx_e.BaseSizeTooSmall):
        isolated_vertex_criterion(dihedral(6))


def test_orbital_diameter():
    assert orbital_diameter(symmetric(5)) == 1
    assert orbital_diameter(pairs_action(symmetric(5)).group) == 2
    with pytest.raises(sx_e.ImprimitiveGroup):
        orbital_diameter(dihedral(6))


def test_clique_search():
    graph = saxl_graph(symmetric(5))
    found = clique_through_edge(graph, 4)
    assert found.verdict == "found" and len(found.clique) == 5
    assert clique_through_edge(graph, 5).verdict == "inconclusive"


def test_isigma():
    assert isigma(alternating(5)).is_complete()
    assert isigma(cyclic(6)).is_edgeless()
    assert not list(isigma(cyclic(6)).edges())
    intransitive = PermGroup([Permutation.from_cycles(4, [(0, 1)])])
    assert isigma(intransitive).parts == [[0, 1], [2, 3]]


@pytest.mark.parametrize("group", [symmetric(4), alternating(5), dihedral(6), linear_on_nonzero(2, 3)])
def test_isigma_at_base_size_is_saxl_graph(group):
    b = base_size(group).b
    assert same_edges(isigma_k(group, b), saxl_graph(group, b))
    assert irredundant_interval_holds(group)


def test_isigma_k_above_base_size():
    # GL3(2) on 7 points has irredundant bases of size 3 only
    assert not list(isigma_k(linear_on_nonzero(2, 3), 4).edges())
    with pytest.raises(sx_e.CapExceeded):
        isigma_k(symmetric(30), 2)


def test_export(tmp_path):
    graph = saxl_graph(psl2_projective(7, "pgl"))
    edges_path = tmp_path / "sigma.edges"
    write_edges(graph, str(edges_path))
    lines = edges_path.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 28
    assert lines[0].split()[:2] == ["0", "1"]

    dot_path = tmp_path / "sigma.dot"
    write_dot(graph, str(dot_path))
    read_back = nx.Graph(nx.nx_pydot.read_dot(str(dot_path)))
    assert read_back.number_of_edges() == 28


@pytest.mark.slow
def test_m12_on_144():
    graph = saxl_graph(fixture("m12-on-144"))
    assert graph.b == 3
    assert not is_complete(graph)


SLOW_RECIPES = {
    "fixture:m12-on-144",
    "fixture:m11-on-165",
    "fixture:l3-4-on-56",
    "fixture:psigmal2-25-sublines",
    "fixture:affine-3a6",
    "diag:T=A5:k=3:top=sym:3:outer=1",
}
CORPUS = sorted({f"fixture:{name}" for name, _, _ in list_fixtures()} | set(PRIMITIVE_RECIPES) | set(PROB_RECIPES))


def is_block_system(group, parts):
    as_sets = {frozenset(p) for p in parts}
    return all(g.image_of_set(p) in as_sets for g in group.generators for p in parts)


@pytest.mark.parametrize(
    "recipe", [pytest.param(r, marks=pytest.mark.slow) if r in SLOW_RECIPES else r for r in CORPUS]
)
def test_corpus_invariants(recipe):
    group = build(recipe)
    graph = saxl_graph(group, allow_intransitive=True)
    edges = set(graph.edges())
    assert edges

    for g in group.generators:
        assert {tuple(sorted((g(u), g(v)))) for u, v in edges} == edges

    if graph.b >= 3:
        pairs = [(graph.alpha, w) for w in graph.neighbours(graph.alpha)] if graph.transitive else edges
        for u, v in pairs:
            assert graph.neighbour_set(u) & graph.neighbour_set(v)

    if not graph.transitive:
        return
    assert set(graph.degrees()) == {graph.valency}
    assert is_locally_faithful(graph)
    assert two_transitive_agreement(graph)
    assert is_block_system(group, isigma(group).parts)
    if reg(group, graph.b).reg == 1:
        assert is_arc_transitive(graph)
    if group.is_primitive()[0]:
        assert graph.connectivity().connected
        assert common_neighbour_check(graph) == strong_conjecture_check(graph)
