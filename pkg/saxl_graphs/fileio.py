"""Generator and matrix file formats.

A ``.gens`` file has the degree on its first line and one permutation per
following nonempty line, either as ``n`` space-separated images (0-indexed)
or in cycle notation ``(a b c)(d e)``. Lines starting with ``#`` are ignored.

A matrix file holds square matrices over GF(q) as rows of field-element
indices; matrices are separated by blank lines.
"""

from __future__ import annotations

import logging
import os
from typing import Sequence

import saxl_graphs.exceptions as sx_e
from saxl_graphs.perm import Permutation

logger = logging.getLogger(__name__)


def _content_lines(text: str) -> list[str]:
    return [line.strip() for line in text.splitlines() if not line.strip().startswith("#")]


def parse_gens(text: str) -> list[Permutation]:
    """Parse the contents of a ``.gens`` file.

    Raises:
        MalformedPermutation: If the degree line or a permutation line is malformed.
    """
    lines = [line for line in _content_lines(text) if line]
    if not lines:
        raise sx_e.MalformedPermutation("Empty generator file")
    try:
        degree = int(lines[0])
    except ValueError as e:
        raise sx_e.MalformedPermutation(f"First line must be the degree, got {lines[0]!r}") from e
    if degree < 1:
        raise sx_e.MalformedPermutation(f"Degree must be positive, got {degree}")
    generators = [Permutation.parse(line, degree) for line in lines[1:]]
    return generators or [Permutation.identity(degree)]


def read_gens(path: str) -> list[Permutation]:
    if not os.path.exists(path):
        raise sx_e.FixtureNotFound(f"Generator file {path} does not exist")
    with open(path, "r", encoding="utf-8") as f:
        generators = parse_gens(f.read())
    logger.debug("Read %d generators of degree %d from %s", len(generators), generators[0].degree, path)
    return generators


def format_gens(generators: Sequence[Permutation], comment: str = "") -> str:
    lines = []
    if comment:
        lines.extend(f"# {line}" for line in comment.splitlines())
    lines.append(str(generators[0].degree))
    lines.extend(str(g) for g in generators)
    return "\n".join(lines) + "\n"


def write_gens(path: str, generators: Sequence[Permutation], comment: str = "") -> None:
    directory = os.path.dirname(path)
    if directory and not os.path.exists(directory):
        os.makedirs(directory)
    with open(path, "w", encoding="utf-8") as f:
        f.write(format_gens(generators, comment))


def parse_matrices(text: str, field_size: int) -> list[list[list[int]]]:
    """Parse blank-line separated square matrices of field-element indices.

    Raises:
        SingularMatrix: If a block is not square or an entry is out of range. Invertibility is checked by the caller.
    """
    matrices: list[list[list[int]]] = []
    current: list[list[int]] = []
    for line in _content_lines(text) + [""]:
        if not line:
            if current:
                matrices.append(current)
                current = []
            continue
        row = [int(x) for x in line.replace(",", " ").split()]
        if any(not 0 <= x < field_size for x in row):
            raise sx_e.SingularMatrix(f"Row {row} has entries outside GF({field_size})")
        current.append(row)
    for matrix in matrices:
        if any(len(row) != len(matrix) for row in matrix):
            raise sx_e.SingularMatrix(f"Matrix {matrix} is not square")
    return matrices


def read_matrices(path: str, field_size: int) -> list[list[list[int]]]:
    if not os.path.exists(path):
        raise sx_e.FixtureNotFound(f"Matrix file {path} does not exist")
    with open(path, "r", encoding="utf-8") as f:
        return parse_matrices(f.read(), field_size)


def format_matrices(matrices: Sequence[Sequence[Sequence[int]]]) -> str:
    blocks = ["\n".join(" ".join(str(x) for x in row) for row in matrix) for matrix in matrices]
    return "\n\n".join(blocks) + "\n"
