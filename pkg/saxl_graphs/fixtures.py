"""Fixtures: bundled generator files and groups constructed in code.

Generator files live below ``config.FIXTURE_PATH`` and are listed in its
``manifest.ini``. Constructed fixtures are built from the projective,
linear and coset machinery, with subgroups found by seeded searches, so
no hand-typed generators are needed beyond the Mathieu groups.
"""

from __future__ import annotations

import configparser
import logging
import os
from typing import Callable, Optional, Sequence

import numpy as np

import saxl_graphs.config as cfg
import saxl_graphs.exceptions as sx_e
from saxl_graphs.actions import (
    affine_group,
    coset_action,
    gl_generators,
    induced_action,
    psl2_projective,
    vector_index,
    vectors,
)
from saxl_graphs.field import Matrix, field_of_order, make_field, mat_inv, transpose, vec_mat
from saxl_graphs.fileio import read_gens
from saxl_graphs.group import PermGroup
from saxl_graphs.perm import Permutation

logger = logging.getLogger(__name__)

SEARCH_ATTEMPTS = 2000


def _manifest() -> configparser.ConfigParser:
    manifest = configparser.ConfigParser()
    manifest.read(os.path.join(cfg.FIXTURE_PATH, "manifest.ini"), encoding="utf-8")
    return manifest


def fixture_path(name: str) -> str:
    """Resolve a generator file by path, manifest name or file name below the fixture directory.

    Raises:
        FixtureNotFound: If nothing matches.
    """
    if os.path.isfile(name):
        return name
    manifest = _manifest()
    key = name[:-5] if name.endswith(".gens") else name
    if manifest.has_section(key) and manifest[key].get("file"):
        return os.path.join(cfg.FIXTURE_PATH, manifest[key]["file"])
    candidate = os.path.join(cfg.FIXTURE_PATH, name)
    if os.path.isfile(candidate):
        return candidate
    target = key + ".gens"
    for root, _, files in os.walk(cfg.FIXTURE_PATH):
        if target in files:
            return os.path.join(root, target)
    raise sx_e.FixtureNotFound(f"No generator file {name!r} in {cfg.FIXTURE_PATH}")


def _known_order(path: str) -> Optional[int]:
    manifest = _manifest()
    for section in manifest.sections():
        entry = manifest[section]
        if entry.get("file") and os.path.normpath(os.path.join(cfg.FIXTURE_PATH, entry["file"])) == os.path.normpath(path):
            return entry.getint("order")
    return None


def load_gens(name: str) -> PermGroup:
    """A group from a ``.gens`` file; the manifest order, if any, speeds up the chain."""
    path = fixture_path(name)
    generators = read_gens(path)
    return PermGroup(generators, order=_known_order(path), name=os.path.basename(path)[:-5])


# ======================================================================
# Searches


def _element_of_order(group: PermGroup, order: int, rng: np.random.Generator) -> Permutation:
    for _ in range(SEARCH_ATTEMPTS):
        g = group.random_element(rng)
        g_order = g.order()
        if g_order % order == 0:
            return g ** (g_order // order)
    raise sx_e.FixtureSearchFailed(f"No element of order {order} found in {group!r}")


def find_a5(group: PermGroup, seed: Optional[int] = None) -> list[Permutation]:
    """Generators x, y of a subgroup A5 with x² = y³ = (xy)⁵ = 1, by seeded random search.

    Raises:
        FixtureSearchFailed: If no such pair turns up.
    """
    rng = np.random.default_rng(cfg.SEED if seed is None else seed)
    bound = group.order()
    for _ in range(SEARCH_ATTEMPTS):
        x = _element_of_order(group, 2, rng)
        y = _element_of_order(group, 3, rng)
        if (x * y).order() != 5:
            continue
        if PermGroup([x, y], order_bound=bound).order() == 60:
            return [x, y]
    raise sx_e.FixtureSearchFailed(f"No A5 found in {group!r}")


def centralizer_by_enumeration(group: PermGroup, x: Permutation) -> PermGroup:
    """C_G(x) by streaming the elements of G.

    Raises:
        CapExceeded: If |G| exceeds the group order cap.
    """
    if group.order() > cfg.GROUP_ORDER_CAP:
        raise sx_e.CapExceeded(f"|G| = {group.order()} exceeds the group order cap {cfg.GROUP_ORDER_CAP}")
    generators: list[Permutation] = []
    current: Optional[PermGroup] = None
    count = 0
    for g in group.elements():
        if g * x != x * g:
            continue
        count += 1
        if g.is_identity():
            continue
        if current is None or not current.contains(g):
            generators.append(g)
            current = PermGroup(generators)
    if not generators:
        return PermGroup.trivial(group.degree)
    return PermGroup(generators, order=count)


# ======================================================================
# Geometry helpers


def _projective_points(q: int, n: int) -> tuple[list[tuple[int, ...]], dict[tuple[int, ...], int]]:
    """Points of PG(n−1, q) as vectors whose first nonzero coordinate is 1."""
    points = [tuple(v) for v in vectors(field_of_order(q), n) if any(v) and v[next(i for i, c in enumerate(v) if c)] == 1]
    return points, {p: i for i, p in enumerate(points)}


def _normalize(field, v: Sequence[int]) -> tuple[int, ...]:
    lead = next(c for c in v if c)
    scale = field.inv(lead)
    return tuple(field.mul(scale, c) for c in v)


def _projective_permutation(field, matrix: Matrix, points, index) -> Permutation:
    return Permutation([index[_normalize(field, vec_mat(field, list(p), matrix))] for p in points])


def _hyperoval(field) -> list[tuple[int, ...]]:
    """{(1, t, t²)} together with (0, 0, 1) and the nucleus (0, 1, 0)."""
    conic = [(1, t, field.mul(t, t)) for t in range(field.q)]
    return conic + [(0, 0, 1), (0, 1, 0)]


# ======================================================================
# Constructed fixtures


def pgl2_7_on_14() -> PermGroup:
    """L3(2) on the points and lines of the Fano plane, with the polarity v ↔ v^⊥."""
    field = make_field(2)
    space = [tuple(v) for v in vectors(field, 3)[1:]]
    index = {v: i for i, v in enumerate(space)}

    gens = []
    for m in gl_generators(field, 3):
        m_inv_t = transpose(mat_inv(field, m))
        points = [index[tuple(vec_mat(field, list(v), m))] for v in space]
        lines = [7 + index[tuple(vec_mat(field, list(w), m_inv_t))] for w in space]
        gens.append(Permutation(points + lines))
    polarity = Permutation([7 + i for i in range(7)] + list(range(7)))
    gens.append(polarity)
    return PermGroup(gens, order=336, name="PGL2(7) on 14")


def psl3_4_on_points() -> tuple[PermGroup, list[tuple[int, ...]], dict[tuple[int, ...], int]]:
    field = make_field(2, 2)
    points, index = _projective_points(4, 3)
    gens = [_projective_permutation(field, m, points, index) for m in gl_generators(field, 3, special=True)]
    return PermGroup(gens, order=20160, name="L3(4) on 21"), points, index


def l3_4_on_56() -> PermGroup:
    """L3(4) on the orbit of a hyperoval of PG(2,4)."""
    field = make_field(2, 2)
    group, _, index = psl3_4_on_points()
    seed = frozenset(index[p] for p in _hyperoval(field))
    action = induced_action(group, seed, lambda s, g: g.image_of_set(s), name="L3(4) on 56")
    if action.group.degree != 56:
        raise sx_e.InvariantBreach(f"Hyperoval orbit has {action.group.degree} members, expected 56")
    return action.group


def subline(q: int) -> list[int]:
    """Projective points of PG(1, q0) ⊂ PG(1, q) for q = q0²: ∞ and the subfield GF(q0)."""
    field = field_of_order(q)
    if field.f % 2:
        raise sx_e.UnsupportedVariant(f"GF({q}) has no subfield of index 2")
    return [0] + [1 + a for a in field.subfield(field.f // 2)]


def subline_action(q: int, variant: str = "psigmal") -> PermGroup:
    group = psl2_projective(q, variant)
    action = set_orbit_action(group, subline(q), f"{variant}2({q}) on sublines")
    return action


def set_orbit_action(group: PermGroup, points: Sequence[int], name: str) -> PermGroup:
    return induced_action(group, frozenset(points), lambda s, g: g.image_of_set(s), name=name).group


def subline_stabilizer(q: int, variant: str = "psl") -> PermGroup:
    """Setwise stabilizer of the subline in the projective group."""
    group = psl2_projective(q, variant)
    return group.partition_stabilizer([subline(q)])


def psl2_9_on_15() -> PermGroup:
    group = psl2_projective(9, "psl")
    return coset_action(group, subline_stabilizer(9).generators).group


def l2_on_a5_cosets(q: int) -> PermGroup:
    group = psl2_projective(q, "psl")
    action = coset_action(group, find_a5(group))
    action.group.name = f"L2({q}) on {action.group.degree}"
    return action.group


def m11_on_165() -> PermGroup:
    m11 = load_gens("m11")
    rng = np.random.default_rng(cfg.SEED)
    involution = _element_of_order(m11, 2, rng)
    centralizer = centralizer_by_enumeration(m11, involution)
    if centralizer.order() != 48:
        raise sx_e.InvariantBreach(f"Involution centralizer of order {centralizer.order()}, expected 48")
    action = coset_action(m11, centralizer.generators)
    action.group.name = "M11 on 165"
    return action.group


def m12_on_144() -> PermGroup:
    m12 = load_gens("m12")
    action = coset_action(m12, load_gens("l211-in-m12").generators)
    action.group.name = "M12 on 144"
    return action.group


def hyperoval_stabilizer_matrices() -> list[Matrix]:
    """Generators of 3.A6 ≤ SL3(4): the stabilizer of the 18 nonzero vectors on a hyperoval."""
    field = make_field(2, 2)
    space = vectors(field, 3)[1:]
    matrices = gl_generators(field, 3, special=True)
    gens = [Permutation([vector_index(field, vec_mat(field, v, m)) - 1 for v in space]) for m in matrices]
    sl3 = PermGroup(gens, order=60480, name="SL3(4) on 63")
    part = [
        vector_index(field, [field.mul(s, c) for c in p]) - 1 for p in _hyperoval(field) for s in field.nonzero()
    ]
    stabilizer = sl3.partition_stabilizer([part])
    if stabilizer.order() != 1080:
        raise sx_e.InvariantBreach(f"Hyperoval stabilizer of order {stabilizer.order()}, expected 1080")
    basis = [vector_index(field, row) - 1 for row in ([1, 0, 0], [0, 1, 0], [0, 0, 1])]
    return [[list(space[g.images[b]]) for b in basis] for g in stabilizer.generators]


def affine_3a6() -> PermGroup:
    return affine_group(4, 3, hyperoval_stabilizer_matrices())


CONSTRUCTED: dict[str, Callable[[], PermGroup]] = {
    "pgl2-7-on-14": pgl2_7_on_14,
    "l3-4-on-56": l3_4_on_56,
    "psigmal2-9-sublines": lambda: subline_action(9),
    "psigmal2-16-sublines": lambda: subline_action(16),
    "psigmal2-25-sublines": lambda: subline_action(25),
    "psl2-9-on-15": psl2_9_on_15,
    "l2-11-on-11": lambda: l2_on_a5_cosets(11),
    "l2-19-on-57": lambda: l2_on_a5_cosets(19),
    "m11-on-165": m11_on_165,
    "m12-on-144": m12_on_144,
    "affine-3a6": affine_3a6,
}


def fixture(name: str) -> PermGroup:
    """A constructed fixture or a bundled generator file, by name.

    Raises:
        FixtureNotFound: If the name is unknown.
    """
    key = name.strip().lower()
    if key in CONSTRUCTED:
        logger.info("Constructing fixture %s", key)
        group = CONSTRUCTED[key]()
        group.name = group.name or key
        return group
    return load_gens(name)


def list_fixtures() -> list[tuple[str, str, str]]:
    """(name, kind, description) for every manifest entry."""
    manifest = _manifest()
    return [
        (section, manifest[section].get("kind", "gens"), manifest[section].get("description", ""))
        for section in manifest.sections()
    ]
