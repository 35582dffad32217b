import itertools
import math

import numpy as np
import pytest

import saxl_graphs.config as cfg
import saxl_graphs.exceptions as sx_e
from saxl_graphs.actions import alternating, cyclic, dihedral, linear_on_nonzero, psl2_projective, symmetric, trivial
from saxl_graphs.bases import (
    SubgroupCache,
    base_lower_bound,
    base_size,
    count_ordered_bases,
    has_base_of_size,
    irredundant_max,
    irredundant_sizes,
    is_base,
    reg,
    reg_tuples,
)
from saxl_graphs.group import PermGroup
from saxl_graphs.perm import Permutation
from saxl_graphs.saxl import irredundant_interval_holds


def random_groups(count, degrees, seed):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.choice(degrees))
        yield PermGroup([Permutation(rng.permutation(n)), Permutation(rng.permutation(n))])


def fixes_all(g, points):
    return all(g(p) == p for p in points)


def brute_base_size(group):
    moving = [g for g in group.elements() if not g.is_identity()]
    for m in range(group.degree + 1):
        for points in itertools.combinations(range(group.degree), m):
            if not any(fixes_all(g, points) for g in moving):
                return m
    raise AssertionError("no base")


def brute_count(group, k):
    moving = [g for g in group.elements() if not g.is_identity()]
    return sum(
        1 for points in itertools.product(range(group.degree), repeat=k) if not any(fixes_all(g, points) for g in moving)
    )


@pytest.mark.parametrize("seed", range(3))
def test_against_brute_force(seed):
    for group in random_groups(40, [3, 4, 5], seed):
        result = base_size(group)
        assert result.b == brute_base_size(group)
        assert len(result.witness) == result.b
        assert is_base(group, result.witness)
        assert count_ordered_bases(group, result.b) == brute_count(group, result.b)
        if group.order() > 1:
            sizes = irredundant_sizes(group)
            assert min(sizes) == result.b
            assert max(sizes) == irredundant_max(group)[0]


@pytest.mark.parametrize("n", range(2, 9))
def test_symmetric_and_alternating(n):
    assert base_size(symmetric(n)).b == n - 1
    assert reg(symmetric(n)).reg == 1
    if n >= 4:
        assert base_size(alternating(n)).b == n - 2


@pytest.mark.parametrize("n", range(2, 5))
def test_linear_group_on_vectors(n):
    group = linear_on_nonzero(2, n)
    result = base_size(group)
    assert result.b == n
    assert is_base(group, result.witness)


def test_regular_groups():
    assert base_size(cyclic(6)).b == 1
    assert reg(cyclic(6)).reg == 1
    assert count_ordered_bases(cyclic(6), 2) == 36


def test_sharply_three_transitive():
    group = psl2_projective(7, "pgl")
    counted = reg(group)
    assert counted.b == 3
    assert counted.ordered_base_count == 8 * 7 * 6
    assert counted.reg == 1
    # 4-tuples with at least three distinct points
    assert reg_tuples(group, 4) == (8**4 - 8 - 28 * 14) // 336


def test_reg_counts_orbits_of_bases():
    # A5 on 5 points: every 3 distinct points form a base
    counted = reg(alternating(5))
    assert (counted.b, counted.ordered_base_count, counted.reg) == (3, 60, 1)
    assert reg_tuples(symmetric(3), 2) == 1
    assert reg_tuples(symmetric(3), 3) == 4


def test_hint_keeps_minimality():
    for hint in (2, 5, 8):
        assert base_size(symmetric(6), hint=hint).b == 5


def test_intransitive_and_fixed_points():
    group = PermGroup([Permutation.from_cycles(5, [(0, 1)]), Permutation.from_cycles(5, [(2, 3)])])
    assert base_size(group).b == 2
    found, witness = has_base_of_size(group, 2)
    assert found and is_base(group, witness)
    assert has_base_of_size(group, 1) == (False, ())
    assert count_ordered_bases(group, 2) == 2 * 2 * 2


def test_trivial_group():
    result = base_size(trivial(3))
    assert (result.b, result.witness) == (0, ())
    assert base_lower_bound(trivial(3)) == 0
    with pytest.raises(sx_e.TrivialGroup):
        irredundant_max(trivial(3))
    with pytest.raises(sx_e.TrivialGroup):
        irredundant_sizes(trivial(3))


def test_irredundant():
    assert irredundant_max(symmetric(5))[0] == 4
    assert irredundant_sizes(symmetric(4)) == frozenset({3})
    assert irredundant_sizes(dihedral(6)) == frozenset({2})
    length, witness = irredundant_max(alternating(5))
    assert length == 3 and is_base(alternating(5), witness)


@pytest.mark.parametrize("seed", range(3))
def test_irredundant_sizes_form_an_interval(seed):
    for group in random_groups(15, list(range(2, 11)), seed):
        if group.order() > 1:
            assert irredundant_interval_holds(group)


def test_irredundant_cap():
    cfg.override(irredundant_degree_cap=6)
    with pytest.raises(sx_e.CapExceeded):
        irredundant_sizes(symmetric(7))


def test_lower_bound():
    assert base_lower_bound(symmetric(5)) == math.ceil(math.log(120, 5))
    assert base_lower_bound(cyclic(7)) == 1


def test_threads_do_not_change_results():
    group = psl2_projective(9, "pgaml")
    single = (base_size(group).b, count_ordered_bases(group, 3))
    cfg.override(threads=4)
    assert (base_size(group).b, count_ordered_bases(group, 3)) == single


def test_subgroup_cache():
    cache = SubgroupCache()
    cache.put(alternating(5), "a5")
    same = PermGroup([Permutation.from_cycles(5, [(0, 1, 2)]), Permutation.from_cycles(5, [(2, 3, 4)])])
    assert cache.get(same) == "a5"
    assert cache.get(symmetric(5)) is None
    assert cache.get(alternating(5), extra=1) is None
    assert len(cache) == 1 and cache.hits == 1
