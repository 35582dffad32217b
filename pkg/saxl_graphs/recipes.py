"""One-line group recipes.

Grammar::

    recipe   := family ":" arg (":" arg)*          e.g. sym:5, psl2:7:pl, affine:2:3:gl
              | "diag:" key "=" value (":" key "=" value)*
              | "pairs(" recipe ")"
              | "coset(" recipe ";" recipe ")"     second recipe generates the subgroup
              | "orbit(" recipe ";" points ")"     points separated by commas or spaces
              | "wr(" recipe ";" recipe ")"

Families: sym, alt, cyc, dih, triv, psl2, pgl2, psigmal2, pgaml2, m10, glvec,
affine, diag, hol, gens, fixture.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from typing import Union

import saxl_graphs.config as cfg
import saxl_graphs.exceptions as sx_e
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
from saxl_graphs.field import field_of_order
from saxl_graphs.fileio import read_matrices
from saxl_graphs.fixtures import fixture, fixture_path, load_gens
from saxl_graphs.group import PermGroup
from saxl_graphs.simple import ElementTable, diagonal_group, holomorph

logger = logging.getLogger(__name__)

SMALL_FAMILIES = {"sym": symmetric, "alt": alternating, "cyc": cyclic, "dih": dihedral, "triv": trivial}
PROJECTIVE_FAMILIES = {"psl2": "psl", "pgl2": "pgl", "psigmal2": "psigmal", "pgaml2": "pgaml", "m10": "m10"}
COMPOUND = ("pairs", "coset", "orbit", "wr")
FAMILIES = tuple(SMALL_FAMILIES) + tuple(PROJECTIVE_FAMILIES) + ("glvec", "affine", "diag", "hol", "gens", "fixture")


@dataclass
class Named:
    family: str
    args: list[str]
    position: int = 0

    def __str__(self) -> str:
        return ":".join([self.family] + self.args)


@dataclass
class Compound:
    operator: str
    operands: list["Recipe"]
    raw: str = ""
    position: int = 0

    def __str__(self) -> str:
        inner = "; ".join(str(o) for o in self.operands)
        if self.raw:
            inner = f"{inner}; {self.raw}"
        return f"{self.operator}({inner})"


@dataclass
class Diagonal:
    simple: str
    k: int
    top: "Recipe | None" = None
    outer: bool = False
    position: int = 0

    def __str__(self) -> str:
        parts = [f"diag:T={self.simple}", f"k={self.k}"]
        if self.top is not None:
            parts.append(f"top={self.top}")
        parts.append(f"outer={int(self.outer)}")
        return ":".join(parts)


Recipe = Union[Named, Compound, Diagonal]


@dataclass
class _Parser:
    text: str
    pos: int = 0

    def error(self, message: str, position: int | None = None) -> sx_e.RecipeParseError:
        position = self.pos if position is None else position
        return sx_e.RecipeParseError(f"{message} in {self.text!r}", position)

    def skip_spaces(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, char: str) -> None:
        self.skip_spaces()
        if self.peek() != char:
            raise self.error(f"Expected {char!r}")
        self.pos += 1

    def word(self) -> str:
        self.skip_spaces()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] in "_-"):
            self.pos += 1
        if start == self.pos:
            raise self.error("Expected a family name")
        return self.text[start : self.pos].lower()

    def raw(self) -> str:
        """Text up to the next ';' or ')' outside parentheses."""
        start = self.pos
        depth = 0
        while self.pos < len(self.text):
            char = self.text[self.pos]
            if char == "(":
                depth += 1
            elif char == ")":
                if depth == 0:
                    break
                depth -= 1
            elif char == ";" and depth == 0:
                break
            self.pos += 1
        return self.text[start : self.pos].strip()

    def recipe(self) -> Recipe:
        self.skip_spaces()
        start = self.pos
        name = self.word()
        self.skip_spaces()
        if name in COMPOUND:
            self.expect("(")
            first = self.recipe()
            if name == "pairs":
                self.expect(")")
                return Compound(name, [first], position=start)
            self.expect(";")
            self.skip_spaces()
            if name == "orbit":
                points = self.raw()
                self.expect(")")
                return Compound(name, [first], raw=points, position=start)
            second = self.recipe()
            self.expect(")")
            return Compound(name, [first, second], position=start)

        if name not in FAMILIES:
            raise self.error(f"Unknown family {name!r}", start)
        if self.peek() != ":":
            raise self.error(f"Family {name!r} needs arguments")
        self.pos += 1
        body_start = self.pos
        body = self.raw()
        if not body:
            raise self.error(f"Family {name!r} needs arguments", body_start)
        if name == "diag":
            return self.diagonal(body, start, body_start)
        if name in ("gens", "fixture"):
            return Named(name, [body], position=start)
        return Named(name, [a.strip() for a in body.split(":")], position=start)

    def diagonal(self, body: str, start: int, body_start: int) -> Diagonal:
        values: dict[str, str] = {}
        last = None
        for segment in body.split(":"):
            if "=" in segment:
                key, value = segment.split("=", 1)
                last = key.strip().lower()
                values[last] = value.strip()
            elif last is not None:
                values[last] += ":" + segment.strip()
            else:
                raise self.error(f"Expected key=value in {segment!r}", body_start)
        unknown = set(values) - {"t", "k", "top", "outer"}
        if unknown:
            raise self.error(f"Unknown diagonal keys {sorted(unknown)}", body_start)
        if "t" not in values or "k" not in values:
            raise self.error("Diagonal recipes need T= and k=", body_start)
        top = _Parser(values["top"]).parse() if "top" in values else None
        return Diagonal(
            values["t"],
            _int(values["k"], self, body_start),
            top,
            values.get("outer", "0") not in ("0", "false", "no"),
            position=start,
        )

    def parse(self) -> Recipe:
        recipe = self.recipe()
        self.skip_spaces()
        if self.pos != len(self.text):
            raise self.error("Unexpected trailing text")
        return recipe


def _int(text: str, parser: _Parser, position: int) -> int:
    try:
        return int(text)
    except ValueError as e:
        raise parser.error(f"Expected an integer, got {text!r}", position) from e


def parse(text: str) -> Recipe:
    """Parse a recipe.

    Raises:
        RecipeParseError: With the column of the offending token.
    """
    return _Parser(text).parse()


def _resolve_file(name: str) -> str:
    if os.path.isfile(name):
        return name
    candidate = os.path.join(cfg.FIXTURE_PATH, name)
    if os.path.isfile(candidate):
        return candidate
    return fixture_path(name)


def _points(raw: str) -> list[int]:
    try:
        return [int(x) for x in raw.replace(",", " ").split()]
    except ValueError as e:
        raise sx_e.RecipeParseError(f"Points must be integers, got {raw!r}", 0) from e


def _named(recipe: Named) -> PermGroup:
    family, args = recipe.family, recipe.args
    parser = _Parser(str(recipe))

    def arg(i: int) -> int:
        if i >= len(args):
            raise parser.error(f"{family} needs {i + 1} arguments", recipe.position)
        return _int(args[i], parser, recipe.position)

    if family in SMALL_FAMILIES:
        return SMALL_FAMILIES[family](arg(0))
    if family in PROJECTIVE_FAMILIES:
        action = args[1].lower() if len(args) > 1 else "pl"
        if action != "pl":
            raise sx_e.UnsupportedVariant(f"Only the projective line action 'pl' is available, got {action!r}")
        return psl2_projective(arg(0), PROJECTIVE_FAMILIES[family])
    if family == "glvec":
        return linear_on_nonzero(arg(0), arg(1))
    if family == "affine":
        q, n = arg(0), arg(1)
        complement = args[2].lower() if len(args) > 2 else "gl"
        if complement in ("gl", "sl"):
            return affine_group(q, n, special=complement == "sl")
        matrices = read_matrices(_resolve_file(":".join(args[2:])), field_of_order(q).q)
        return affine_group(q, n, matrices)
    if family == "hol":
        return holomorph(ElementTable.bundled(args[0]))
    if family == "gens":
        return load_gens(_resolve_file(args[0]))
    if family == "fixture":
        return fixture(args[0])
    raise parser.error(f"Unknown family {family!r}", recipe.position)


def evaluate(recipe: Recipe) -> PermGroup:
    """Build the permutation group a parsed recipe describes."""
    if isinstance(recipe, Named):
        group = _named(recipe)
    elif isinstance(recipe, Diagonal):
        top = evaluate(recipe.top) if recipe.top is not None else None
        group = diagonal_group(ElementTable.bundled(recipe.simple), recipe.k, top, recipe.outer).group
    elif recipe.operator == "pairs":
        group = pairs_action(evaluate(recipe.operands[0])).group
    elif recipe.operator == "coset":
        outer = evaluate(recipe.operands[0])
        group = coset_action(outer, evaluate(recipe.operands[1]).generators).group
    elif recipe.operator == "orbit":
        group = set_action(evaluate(recipe.operands[0]), _points(recipe.raw)).group
    else:
        group = wreath_product_action(evaluate(recipe.operands[0]), evaluate(recipe.operands[1]))
    group.name = str(recipe)
    logger.debug("Recipe %s gives degree %d", recipe, group.degree)
    return group


def build(text: str) -> PermGroup:
    """Parse and evaluate a recipe."""
    return evaluate(parse(text))
