"""Constructors for permutation actions.

Point orders are fixed per constructor:

* projective line over GF(q): point 0 is [1:0], point 1 + a is [a:1] for the field code a;
* vectors of GF(q)^n: lexicographic, v_0 most significant; nonzero vectors drop the zero vector;
* cosets and induced actions: breadth-first discovery order from the trivial coset or the seed;
* product action on Γ^k: (γ_0, …, γ_{k−1}) ↦ Σ γ_i n^{k−1−i}.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Callable, Hashable, Optional, Sequence

import saxl_graphs.config as cfg
import saxl_graphs.exceptions as sx_e
from saxl_graphs.field import FiniteField, Matrix, field_of_order, identity_matrix, mat_det, vec_mat
from saxl_graphs.group import PermGroup
from saxl_graphs.perm import Permutation

logger = logging.getLogger(__name__)

PROJECTIVE_VARIANTS = ("psl", "pgl", "psigmal", "pgaml", "m10")


@dataclass
class InducedAction:
    """The image of an action together with its point labels.

    Attributes:
        group (PermGroup): The permutation group induced on the points.
        points (list): Label of each point (a coset representative, a pair, a set, …).
        kernel_order (int): Order of the kernel of the action.
    """

    group: PermGroup
    points: list
    kernel_order: int

    @property
    def faithful(self) -> bool:
        return self.kernel_order == 1


def _check_degree(degree: int) -> None:
    if degree > cfg.DEGREE_CAP:
        raise sx_e.CapExceeded(f"Degree {degree} exceeds the degree cap {cfg.DEGREE_CAP}")


# ======================================================================
# Named families


def symmetric(n: int) -> PermGroup:
    if n < 1:
        raise sx_e.UnsupportedVariant(f"Symmetric group needs n >= 1, got {n}")
    gens = [Permutation.identity(n)]
    if n >= 2:
        gens = [Permutation.from_cycles(n, [(0, 1)]), Permutation.from_cycles(n, [tuple(range(n))])]
    return PermGroup(gens, order=math.factorial(n), name=f"S{n}")


def alternating(n: int) -> PermGroup:
    if n < 1:
        raise sx_e.UnsupportedVariant(f"Alternating group needs n >= 1, got {n}")
    if n < 3:
        return PermGroup([Permutation.identity(n)], order=1, name=f"A{n}")
    long_cycle = tuple(range(n)) if n % 2 else tuple(range(1, n))
    gens = [Permutation.from_cycles(n, [(0, 1, 2)]), Permutation.from_cycles(n, [long_cycle])]
    return PermGroup(gens, order=math.factorial(n) // 2, name=f"A{n}")


def cyclic(n: int) -> PermGroup:
    if n < 1:
        raise sx_e.UnsupportedVariant(f"Cyclic group needs n >= 1, got {n}")
    return PermGroup([Permutation.from_cycles(n, [tuple(range(n))])], order=n, name=f"C{n}")


def dihedral(n: int) -> PermGroup:
    """Symmetries of the regular n-gon on its vertices."""
    if n < 1:
        raise sx_e.UnsupportedVariant(f"Dihedral group needs n >= 1, got {n}")
    rotation = Permutation([(i + 1) % n for i in range(n)])
    reflection = Permutation([(-i) % n for i in range(n)])
    order = 2 * n if n >= 3 else math.factorial(n)
    return PermGroup([rotation, reflection], order=order, name=f"D{2 * n}")


def trivial(n: int) -> PermGroup:
    return PermGroup.trivial(n)


# ======================================================================
# Projective line


def projective_point(field: FiniteField, x: int, y: int) -> int:
    """Index of [x:y]."""
    if y == 0:
        return 0
    return 1 + field.div(x, y)


def projective_matrix(field: FiniteField, matrix: Matrix) -> Permutation:
    """The permutation of PG(1,q) induced by [x:y] ↦ [x:y]·M."""
    (a, b), (c, d) = matrix
    images = [projective_point(field, a, b)]
    for x in range(field.q):
        images.append(projective_point(field, field.add(field.mul(a, x), c), field.add(field.mul(b, x), d)))
    return Permutation(images)


def projective_frobenius(field: FiniteField) -> Permutation:
    return Permutation([0] + [1 + field.frobenius(x) for x in range(field.q)])


def psl2_projective(q: int, variant: str = "psl") -> PermGroup:
    """A group with socle L_2(q) on the q + 1 points of the projective line.

    Parameters:
        q (int): Prime power, at least 4.
        variant (str): One of "psl", "pgl", "psigmal", "pgaml", "m10".

    Raises:
        UnsupportedVariant: If q < 4 or the variant does not exist for q.
        NotPrime: If q is not a prime power.
    """
    variant = variant.lower()
    if variant not in PROJECTIVE_VARIANTS:
        raise sx_e.UnsupportedVariant(f"Unknown projective variant {variant!r}, expected one of {PROJECTIVE_VARIANTS}")
    if q < 4:
        raise sx_e.UnsupportedVariant(f"Projective line groups need q >= 4, got {q}")
    field = field_of_order(q)
    if variant in ("psigmal", "pgaml") and field.f == 1:
        raise sx_e.UnsupportedVariant(f"q = {q} is prime, so there are no field automorphisms")
    if variant == "m10" and q != 9:
        raise sx_e.UnsupportedVariant("The M10-type extension exists for q = 9 only")
    _check_degree(q + 1)

    gens = []
    for t in field.additive_basis():
        gens.append(projective_matrix(field, [[1, t], [0, 1]]))
        gens.append(projective_matrix(field, [[1, 0], [t, 1]]))
    mu = field.primitive_element
    delta = projective_matrix(field, [[mu, 0], [0, 1]])
    frobenius = projective_frobenius(field)

    psl_order = q * (q * q - 1) // math.gcd(2, q - 1)
    pgl_order = q * (q * q - 1)
    if variant in ("pgl", "pgaml"):
        gens.append(delta)
    if variant in ("psigmal", "pgaml"):
        gens.append(frobenius)
    if variant == "m10":
        gens.append(delta * frobenius)

    order = {
        "psl": psl_order,
        "pgl": pgl_order,
        "psigmal": psl_order * field.f,
        "pgaml": pgl_order * field.f,
        "m10": 2 * psl_order,
    }[variant]
    labels = {"psl": "PSL", "pgl": "PGL", "psigmal": "PSigmaL", "pgaml": "PGammaL", "m10": "M10"}
    return PermGroup(gens, order=order, name=f"{labels[variant]}2({q})")


# ======================================================================
# Vector spaces


def vector_index(field: FiniteField, v: Sequence[int]) -> int:
    index = 0
    for c in v:
        index = index * field.q + c
    return index


def vectors(field: FiniteField, n: int) -> list[list[int]]:
    return [list(v) for v in itertools.product(range(field.q), repeat=n)]


def vector_permutation(field: FiniteField, matrix: Matrix, space: Sequence[Sequence[int]]) -> Permutation:
    return Permutation([vector_index(field, vec_mat(field, list(v), matrix)) for v in space])


def check_invertible(field: FiniteField, matrices: Sequence[Matrix]) -> None:
    for matrix in matrices:
        if mat_det(field, matrix) == 0:
            raise sx_e.SingularMatrix(f"Matrix {matrix} is singular over {field!r}")


def gl_generators(field: FiniteField, n: int, special: bool = False) -> list[Matrix]:
    """Elementary transvections I + t·E_ij over an additive basis, plus diag(μ, 1, …, 1) unless special."""
    gens = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for t in field.additive_basis():
                m = identity_matrix(n)
                m[i][j] = t
                gens.append(m)
    if not special and field.q > 2:
        m = identity_matrix(n)
        m[0][0] = field.primitive_element
        gens.append(m)
    if not gens:
        gens.append(identity_matrix(n))
    return gens


def gl_order(q: int, n: int) -> int:
    return math.prod(q**n - q**i for i in range(n))


def linear_on_nonzero(q: int, n: int, matrices: Optional[Sequence[Matrix]] = None) -> PermGroup:
    """A linear group acting on the q^n − 1 nonzero vectors (GL_n(q) when no matrices are given)."""
    field = field_of_order(q)
    _check_degree(q**n - 1)
    order = None
    if matrices is None:
        matrices = gl_generators(field, n)
        order = gl_order(q, n)
    check_invertible(field, matrices)
    space = vectors(field, n)[1:]
    gens = [Permutation([vector_index(field, vec_mat(field, v, m)) - 1 for v in space]) for m in matrices]
    return PermGroup(gens, order=order, name=f"GL{n}({q})" if order else None)


def affine_group(q: int, n: int, matrices: Optional[Sequence[Matrix]] = None, special: bool = False) -> PermGroup:
    """V ⋊ H on the q^n vectors of V = GF(q)^n, H generated by the given matrices (GL or SL when none are given).

    Raises:
        SingularMatrix: If a matrix is not invertible.
        CapExceeded: If q^n exceeds the degree cap.
    """
    field = field_of_order(q)
    _check_degree(q**n)
    if matrices is None:
        matrices = gl_generators(field, n, special=special)
    check_invertible(field, matrices)
    space = vectors(field, n)

    linear = [vector_permutation(field, m, space) for m in matrices]
    linear_order = PermGroup(linear).order()
    translations = []
    for i in range(n):
        for t in field.additive_basis():
            shift = [0] * n
            shift[i] = t
            translations.append(
                Permutation([vector_index(field, [field.add(a, b) for a, b in zip(v, shift)]) for v in space])
            )
    return PermGroup(translations + linear, order=q**n * linear_order, name=f"AffineGroup({q},{n})")


# ======================================================================
# Induced actions


def induced_action(
    group: PermGroup,
    seed: Hashable,
    act: Callable[[Hashable, Permutation], Hashable],
    name: Optional[str] = None,
) -> InducedAction:
    """The action of `group` on the orbit of `seed` under `act(obj, g)`.

    Raises:
        CapExceeded: If the orbit grows beyond the degree cap.
    """
    points = [seed]
    index = {seed: 0}
    for obj in points:
        for g in group.generators:
            image = act(obj, g)
            if image not in index:
                index[image] = len(points)
                points.append(image)
                if len(points) > cfg.DEGREE_CAP:
                    raise sx_e.CapExceeded(f"Orbit exceeds the degree cap {cfg.DEGREE_CAP}")
    gens = [Permutation([index[act(obj, g)] for obj in points]) for g in group.generators]
    order = group.order()
    image = PermGroup(gens, order_bound=order, name=name)
    kernel_order = order // image.order()
    if kernel_order != 1:
        logger.warning("Action on %d points is not faithful: kernel of order %d", len(points), kernel_order)
    return InducedAction(image, points, kernel_order)


def set_action(group: PermGroup, points: Sequence[int], name: Optional[str] = None) -> InducedAction:
    """Action on the orbit of a point set."""
    return induced_action(group, frozenset(points), lambda s, g: g.image_of_set(s), name=name)


def pairs_action(group: PermGroup) -> InducedAction:
    """Action on the unordered pairs of distinct points, pairs listed lexicographically.

    Raises:
        DegreeMismatch: If the degree is below 2.
    """
    n = group.degree
    if n < 2:
        raise sx_e.DegreeMismatch("Pairs need at least 2 points")
    _check_degree(n * (n - 1) // 2)
    pairs = list(itertools.combinations(range(n), 2))
    index = {pair: i for i, pair in enumerate(pairs)}

    def image(pair: tuple[int, int], g: Permutation) -> int:
        a, b = g.images[pair[0]], g.images[pair[1]]
        return index[(a, b) if a < b else (b, a)]

    gens = [Permutation([image(pair, g) for pair in pairs]) for g in group.generators]
    order = group.order()
    induced = PermGroup(gens, order_bound=order)
    kernel_order = order // induced.order()
    if kernel_order != 1:
        logger.warning("Action on pairs is not faithful: kernel of order %d", kernel_order)
    return InducedAction(induced, pairs, kernel_order)


def coset_key(subgroup: PermGroup, base: Sequence[int], g: Permutation) -> tuple[int, ...]:
    """Canonical label of the right coset Hg: the least image of `base` under the elements of Hg.

    `base` must be a base of a group containing H and g.
    """
    chain = subgroup.chain_with_base(base)
    for level in chain.levels[: len(base)]:
        if len(level.orbit) > 1:
            best = min(level.orbit, key=g.images.__getitem__)
            g = level.transversal(best) * g
    return tuple(g.images[b] for b in base)


def coset_action(group: PermGroup, subgroup_generators: Sequence[Permutation]) -> InducedAction:
    """The action of G on the right cosets of H = ⟨subgroup_generators⟩.

    Points are labelled by coset representatives; point 0 is H itself.

    Raises:
        NotASubgroup: If a generator of H is outside G.
        CapExceeded: If |G:H| exceeds the degree cap.
    """
    for h in subgroup_generators:
        if not group.contains(h):
            raise sx_e.NotASubgroup(f"{h} is not an element of the group")
    subgroup = PermGroup(subgroup_generators, order_bound=group.order())
    index = group.order() // subgroup.order()
    _check_degree(index)
    base = group.chain.base_points

    identity = Permutation.identity(group.degree)
    representatives = [identity]
    keys = {coset_key(subgroup, base, identity): 0}
    images: list[list[int]] = [[] for _ in group.generators]
    for rep in representatives:
        for i, s in enumerate(group.generators):
            moved = rep * s
            key = coset_key(subgroup, base, moved)
            if key not in keys:
                keys[key] = len(representatives)
                representatives.append(moved)
            images[i].append(keys[key])
    if len(representatives) != index:
        raise sx_e.InvariantBreach(f"Found {len(representatives)} cosets, expected {index}")

    gens = [Permutation(row) for row in images]
    induced = PermGroup(gens, order_bound=group.order())
    kernel_order = group.order() // induced.order()
    if kernel_order != 1:
        logger.warning("Coset action of degree %d is not faithful: kernel of order %d", index, kernel_order)
    logger.info("Coset action of degree %d built", index)
    return InducedAction(induced, representatives, kernel_order)


# ======================================================================
# Product action


def product_index(gamma: Sequence[int], n: int) -> int:
    index = 0
    for g in gamma:
        index = index * n + g
    return index


def wreath_product_action(component: PermGroup, top: PermGroup) -> PermGroup:
    """L ≀ P in product action on Γ^k, where L acts on Γ and P on k coordinates.

    An intransitive top group gives the corresponding subgroup, e.g. the direct
    power L^k for the trivial group on k points.

    Raises:
        CapExceeded: If |Γ|^k exceeds the degree cap.
        UnsupportedVariant: If Γ is a single point and P is nontrivial, so the action is not faithful.
    """
    n, k = component.degree, top.degree
    if n == 1 and any(not sigma.is_identity() for sigma in top.generators):
        raise sx_e.UnsupportedVariant("A component of degree 1 leaves the top group acting trivially")
    _check_degree(n**k)
    if not top.is_transitive():
        logger.warning("Top group is intransitive on %d coordinates; building the corresponding subgroup", k)
    tuples = list(itertools.product(range(n), repeat=k))
    gens = []
    for i in range(k):
        for z in component.generators:
            if z.is_identity():
                continue
            gens.append(
                Permutation([product_index(t[:i] + (z.images[t[i]],) + t[i + 1 :], n) for t in tuples])
            )
    for sigma in top.generators:
        if sigma.is_identity():
            continue
        images = []
        for t in tuples:
            moved = [0] * k
            for i, gamma in enumerate(t):
                moved[sigma.images[i]] = gamma
            images.append(product_index(moved, n))
        gens.append(Permutation(images))
    if not gens:
        gens = [Permutation.identity(n**k)]
    order = component.order() ** k * top.order()
    return PermGroup(gens, order=order, name=f"Wreath({component.name or n},{top.name or k})")


def product_action_is_primitive(component: PermGroup, top: PermGroup) -> bool:
    """L ≀ P in product action is primitive iff L is primitive and not regular and P is transitive."""
    if not component.is_transitive() or not top.is_transitive():
        return False
    if component.order() == component.degree:
        return False
    return component.is_primitive()[0]
