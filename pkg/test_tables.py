import pytest

import saxl_graphs.exceptions as sx_e
import saxl_graphs.tables as tables
from saxl_graphs.saxl import EdgeSetGraph
from saxl_graphs.tables import COLUMNS, Case, all_match, available_suites, complete_multipartite_parts, reproduce_table


def test_available_suites():
    assert available_suites() == sorted(
        ["psl2-bases", "diag-small", "sporadic", "wreath", "saxl-remarks", "prob-consistency", "strong-conjecture", "irredundant"]
    )


def test_unknown_suite():
    with pytest.raises(sx_e.UnknownSuite) as info:
        reproduce_table("nope")
    assert "psl2-bases" in str(info.value)


def test_complete_multipartite_parts():
    square = EdgeSetGraph(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
    assert complete_multipartite_parts(square) == [2, 2]
    path = EdgeSetGraph(4, [(0, 1), (1, 2), (2, 3)])
    assert complete_multipartite_parts(path) is None
    assert complete_multipartite_parts(EdgeSetGraph(3, [])) == [3]


def test_failing_case_is_recorded(monkeypatch):
    def broken():
        raise sx_e.CapExceeded("degree 10 exceeds the degree cap 5")

    monkeypatch.setitem(tables.SUITES, "broken", lambda: [Case("ok", 1, lambda: 1), Case("capped", 2, broken)])
    table = reproduce_table("broken")
    assert list(table.columns) == COLUMNS
    assert list(table["match"]) == [True, False]
    assert table["computed"][1] == "skipped(CapExceeded: degree 10 exceeds the degree cap 5)"
    assert not all_match(table)


def test_irredundant_suite():
    table = reproduce_table("irredundant")
    assert len(table) == 42
    assert all_match(table), table.to_string()


@pytest.mark.slow
@pytest.mark.parametrize(
    "suite", ["psl2-bases", "wreath", "saxl-remarks", "prob-consistency", "strong-conjecture", "sporadic", "diag-small"]
)
def test_suite_matches(suite):
    table = reproduce_table(suite)
    assert all_match(table), table.to_string()
