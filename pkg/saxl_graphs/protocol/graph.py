""" Vertex graph protocol. This is a protocol for the graphs built on a permutation domain: the generalised Saxl graph and the irredundant base graphs."""
from __future__ import annotations

from typing import Iterator, Protocol, runtime_checkable


@runtime_checkable
class VertexGraph(Protocol):
    """Vertex graph protocol. Vertices are the points 0,…,n−1."""

    @property
    def vertex_count(self) -> int:
        ...

    def is_adjacent(self, u: int, v: int) -> bool:
        ...

    def neighbours(self, v: int) -> list[int]:
        ...

    def edges(self) -> Iterator[tuple[int, int]]:
        ...
