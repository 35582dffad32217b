""" Report schema versions. The JSON reports written by the command line carry a `schema` field so that consumers can tell which layout they are reading. Only one layout exists so far.
"""

from __future__ import annotations
from enum import Enum


class ReportSchema(Enum):
    """Report schema version written into every JSON report.

    Attributes:
        V1 (int): First layout: flat invariants plus `prob`, `wreath` and `timings` blocks.
    """

    V1 = 1

    @classmethod
    def current(cls) -> ReportSchema:
        return cls.V1
