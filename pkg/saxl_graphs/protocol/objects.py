""" Permutation action protocol. This is a protocol for anything that acts on {0,…,n−1} by permutations: groups, but also the bundled simple groups whose elements are enumerated once."""
from abc import abstractmethod
from typing import Iterator, Protocol, Sequence, runtime_checkable

from saxl_graphs.perm import Permutation


@runtime_checkable
class PermutationAction(Protocol):
    """Permutation action protocol. This is a protocol for objects exposing a degree, generators and an order."""

    @property
    @abstractmethod
    def degree(self) -> int:
        ...

    @property
    @abstractmethod
    def generators(self) -> Sequence[Permutation]:
        ...

    @abstractmethod
    def order(self) -> int:
        ...

    @abstractmethod
    def elements(self) -> Iterator[Permutation]:
        ...
