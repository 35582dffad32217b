"""Bases, generalised Saxl graphs and related invariants of finite permutation groups.

Groups are built from recipes (`build("psl2:7:pl")`) or directly with the
constructors in `saxl_graphs.actions`. The configuration is not loaded on
import; call `saxl_graphs.config.load()` to read the user's config.ini.
"""

from __future__ import annotations

from saxl_graphs.actions import (
    affine_group,
    alternating,
    coset_action,
    cyclic,
    dihedral,
    linear_on_nonzero,
    pairs_action,
    psl2_projective,
    set_action,
    symmetric,
    trivial,
    wreath_product_action,
)
from saxl_graphs.bases import (
    base_size,
    count_ordered_bases,
    has_base_of_size,
    irredundant_max,
    irredundant_sizes,
    is_base,
    reg,
    reg_tuples,
)
from saxl_graphs.diag import diag_pair_base_check, star_condition
from saxl_graphs.field import FiniteField, field_of_order
from saxl_graphs.group import PermGroup, group_from_generators
from saxl_graphs.perm import Permutation
from saxl_graphs.prob import common_neighbour_thresholds, q_exact, q_mc, qhat
from saxl_graphs.recipes import build, parse
from saxl_graphs.report import Report
from saxl_graphs.saxl import (
    SaxlGraph,
    common_neighbour_check,
    is_arc_transitive,
    is_complete,
    isigma,
    isigma_k,
    saxl_graph,
)
from saxl_graphs.simple import ElementTable, diagonal_group, holomorph
from saxl_graphs.tables import reproduce_table
from saxl_graphs.wreath import distinguishing_number, wreath_base_size

__all__ = [
    "ElementTable",
    "FiniteField",
    "PermGroup",
    "Permutation",
    "Report",
    "SaxlGraph",
    "affine_group",
    "alternating",
    "base_size",
    "build",
    "common_neighbour_check",
    "common_neighbour_thresholds",
    "coset_action",
    "count_ordered_bases",
    "cyclic",
    "diag_pair_base_check",
    "diagonal_group",
    "dihedral",
    "distinguishing_number",
    "field_of_order",
    "group_from_generators",
    "has_base_of_size",
    "holomorph",
    "irredundant_max",
    "irredundant_sizes",
    "is_arc_transitive",
    "is_base",
    "is_complete",
    "isigma",
    "isigma_k",
    "linear_on_nonzero",
    "pairs_action",
    "parse",
    "psl2_projective",
    "q_exact",
    "q_mc",
    "qhat",
    "reg",
    "reg_tuples",
    "reproduce_table",
    "saxl_graph",
    "set_action",
    "star_condition",
    "symmetric",
    "trivial",
    "wreath_base_size",
    "wreath_product_action",
]
