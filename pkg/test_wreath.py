import numpy as np
import pytest

import saxl_graphs.exceptions as sx_e
from saxl_graphs.actions import alternating, cyclic, psl2_projective, symmetric, trivial, wreath_product_action
from saxl_graphs.bases import base_size
from saxl_graphs.wreath import (
    PartitionOfK,
    assemble_base_from_array,
    distinguishing_number,
    is_distinguishing,
    regular_partition_orbits,
    set_partitions,
    unique_regular_partition_orbit,
    wreath_base_size,
)


def test_partition_validation():
    assert PartitionOfK.of(3, [[0], [], [1, 2]]).nonempty() == [frozenset({0}), frozenset({1, 2})]
    with pytest.raises(sx_e.InvalidPartition):
        PartitionOfK.of(3, [[0, 1], [1, 2]])
    with pytest.raises(sx_e.InvalidPartition):
        PartitionOfK.of(3, [[0], [2]])


def test_partition_from_labels_and_refinements():
    partition = PartitionOfK.from_labels([1, 0, 1])
    assert partition.parts == (frozenset({1}), frozenset({0, 2}))
    assert PartitionOfK.from_labels([0, 0], m=3).parts[2] == frozenset()
    assert len(list(PartitionOfK.of(3, [[0, 1, 2]]).refinements())) == 3


def test_set_partitions():
    assert len(list(set_partitions(4, 2))) == 7
    assert len(list(set_partitions(5, 3))) == 25
    assert list(set_partitions(0, 0)) == [[]]
    assert list(set_partitions(2, 3)) == []


@pytest.mark.parametrize(
    "top, expected",
    [
        (symmetric(4), 4),
        (alternating(4), 3),
        (cyclic(2), 2),
        (cyclic(3), 2),
        (cyclic(7), 2),
        (trivial(3), 1),
    ],
    ids=["S4", "A4", "C2", "C3", "C7", "1"],
)
def test_distinguishing_number(top, expected):
    d, partition = distinguishing_number(top)
    assert d == expected
    assert len(partition.nonempty()) == d
    assert is_distinguishing(top, partition)


def test_is_distinguishing_checks_degree():
    with pytest.raises(sx_e.DegreeMismatch):
        is_distinguishing(symmetric(3), PartitionOfK.of(2, [[0], [1]]))


def test_regular_partition_orbits():
    assert regular_partition_orbits(symmetric(3), 3) == 1
    assert unique_regular_partition_orbit(symmetric(3))
    # sizes (1, 2) and (2, 1) give two regular orbits of C3
    assert regular_partition_orbits(cyclic(3), 2) == 2
    assert not unique_regular_partition_orbit(cyclic(3))


@pytest.mark.parametrize(
    "component, top, expected",
    [
        (symmetric(3), cyclic(2), 3),
        (symmetric(3), cyclic(3), 3),
        (alternating(5), cyclic(2), 4),
        (psl2_projective(5, "psl"), cyclic(2), 3),
    ],
    ids=["S3 wr C2", "S3 wr C3", "A5 wr C2", "L2(5) wr C2"],
)
def test_wreath_base_size_matches_search(component, top, expected):
    assert wreath_base_size(component, top) == expected
    assert base_size(wreath_product_action(component, top)).b == expected


def test_array_criterion_examples():
    component, top = symmetric(3), cyclic(2)
    same = assemble_base_from_array(component, top, [[0, 1, 2], [0, 1, 2]])
    assert same.rows_are_bases and not same.distinguishing
    assert not same.direct and same.agree
    split = assemble_base_from_array(component, top, [[0, 1, 2], [0, 0, 1]])
    assert split.criterion and split.direct
    assert split.partition.nonempty() == [frozenset({0}), frozenset({1})]


@pytest.mark.parametrize(
    "component, top",
    [(symmetric(3), cyclic(2)), (symmetric(3), cyclic(3)), (cyclic(4), symmetric(2))],
    ids=["S3 wr C2", "S3 wr C3", "C4 wr S2"],
)
def test_array_criterion_agrees_with_direct_test(component, top):
    rng = np.random.default_rng(3)
    wreath = wreath_product_action(component, top)
    for _ in range(60):
        b = int(rng.integers(1, 4))
        array = rng.integers(component.degree, size=(top.degree, b)).tolist()
        assert assemble_base_from_array(component, top, array, wreath).agree


def test_array_shape():
    with pytest.raises(sx_e.DegreeMismatch):
        assemble_base_from_array(symmetric(3), cyclic(2), [[0, 1, 2]])
    with pytest.raises(sx_e.DegreeMismatch):
        assemble_base_from_array(symmetric(3), cyclic(2), [[0, 1, 2], [0, 1]])
