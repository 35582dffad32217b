import pytest

import saxl_graphs.config as cfg
import saxl_graphs.exceptions as sx_e
from saxl_graphs.actions import (
    affine_group,
    alternating,
    coset_action,
    cyclic,
    linear_on_nonzero,
    pairs_action,
    product_action_is_primitive,
    psl2_projective,
    set_action,
    symmetric,
    trivial,
    wreath_product_action,
)
from saxl_graphs.group import PermGroup
from saxl_graphs.perm import Permutation


def recomputed_order(group):
    """Order from a fresh chain that does not trust the constructor's claim."""
    return PermGroup(list(group.generators)).order()


@pytest.mark.parametrize(
    "q, variant, order",
    [
        (4, "psl", 60),
        (5, "psl", 60),
        (5, "pgl", 120),
        (7, "psl", 168),
        (8, "psigmal", 1512),
        (9, "psl", 360),
        (9, "pgl", 720),
        (9, "psigmal", 720),
        (9, "m10", 720),
        (9, "pgaml", 1440),
        (11, "psl", 660),
        (16, "pgaml", 16320),
    ],
)
def test_projective_line_orders(q, variant, order):
    group = psl2_projective(q, variant)
    assert group.degree == q + 1
    assert group.order() == order
    assert recomputed_order(group) == order
    assert group.is_two_transitive()


def test_m10_differs_from_pgl_and_psigmal():
    m10 = psl2_projective(9, "m10")
    assert not m10.same_subgroup(psl2_projective(9, "pgl"))
    assert not m10.same_subgroup(psl2_projective(9, "psigmal"))
    assert psl2_projective(9, "psl").is_subgroup_of(m10)


def test_projective_line_errors():
    with pytest.raises(sx_e.UnsupportedVariant):
        psl2_projective(3)
    with pytest.raises(sx_e.UnsupportedVariant):
        psl2_projective(7, "psigmal")
    with pytest.raises(sx_e.UnsupportedVariant):
        psl2_projective(8, "m10")
    with pytest.raises(sx_e.UnsupportedVariant):
        psl2_projective(7, "psu")
    with pytest.raises(sx_e.NotPrime):
        psl2_projective(6)


def test_linear_on_nonzero():
    group = linear_on_nonzero(2, 3)
    assert group.degree == 7
    assert recomputed_order(group) == 168
    assert group.is_two_transitive()
    assert linear_on_nonzero(3, 2).degree == 8
    assert recomputed_order(linear_on_nonzero(3, 2)) == 48


def test_affine_groups():
    group = affine_group(3, 2)
    assert group.degree == 9
    assert group.order() == recomputed_order(group) == 432
    special = affine_group(4, 2, special=True)
    assert special.degree == 16
    assert recomputed_order(special) == 16 * 60
    with pytest.raises(sx_e.SingularMatrix):
        affine_group(3, 2, matrices=[[[1, 1], [1, 1]]])


def test_affine_group_from_matrices():
    # a Singer cycle of GF(4) over GF(2) acting on GF(2)^2
    group = affine_group(2, 2, matrices=[[[0, 1], [1, 1]]])
    assert group.order() == 12
    assert group.is_two_transitive()


def test_pairs_action():
    induced = pairs_action(symmetric(5))
    assert induced.group.degree == 10
    assert induced.points[:3] == [(0, 1), (0, 2), (0, 3)]
    assert induced.faithful and induced.group.order() == 120
    assert induced.group.is_primitive()[0]
    with pytest.raises(sx_e.DegreeMismatch):
        pairs_action(trivial(1))


def test_pairs_action_kernel():
    induced = pairs_action(symmetric(2))
    assert induced.group.degree == 1
    assert induced.kernel_order == 2 and not induced.faithful


def test_set_action():
    induced = set_action(alternating(5), [0, 1])
    assert induced.group.degree == 10
    assert induced.points[0] == frozenset({0, 1})
    assert induced.faithful


def test_coset_action():
    s3 = [Permutation.from_cycles(4, [(0, 1)]), Permutation.from_cycles(4, [(0, 1, 2)])]
    induced = coset_action(symmetric(4), s3)
    assert induced.group.degree == 4
    assert induced.points[0].is_identity()
    assert induced.group.order() == 24
    with pytest.raises(sx_e.NotASubgroup):
        coset_action(alternating(4), s3)


def test_coset_action_of_trivial_subgroup_is_regular():
    induced = coset_action(alternating(4), [Permutation.identity(4)])
    group = induced.group
    assert group.degree == group.order() == 12
    assert group.point_stabilizer(0).is_trivial()


def test_coset_action_cap():
    cfg.override(degree_cap=5)
    with pytest.raises(sx_e.CapExceeded):
        coset_action(symmetric(4), [Permutation.identity(4)])


def test_wreath_product_action():
    group = wreath_product_action(symmetric(3), cyclic(2))
    assert group.degree == 9
    assert group.order() == recomputed_order(group) == 72
    assert product_action_is_primitive(symmetric(3), cyclic(2))
    assert not product_action_is_primitive(cyclic(3), cyclic(2))
    assert not product_action_is_primitive(symmetric(3), trivial(2))


def test_direct_power_from_trivial_top():
    group = wreath_product_action(symmetric(3), trivial(2))
    assert group.order() == recomputed_order(group) == 36
    assert group.is_transitive()


def test_wreath_product_cap():
    cfg.override(degree_cap=100)
    with pytest.raises(sx_e.CapExceeded):
        wreath_product_action(symmetric(5), cyclic(3))
    with pytest.raises(sx_e.CapExceeded):
        psl2_projective(101)


def test_wreath_product_point_component():
    with pytest.raises(sx_e.UnsupportedVariant):
        wreath_product_action(trivial(1), cyclic(2))
