"""Backtracking searches against enumeration oracles and verifiers."""

from __future__ import annotations

import pytest

from diffcover.core import Form, Kind, ResidueArray
from diffcover.search import (
    BudgetExhausted,
    InfeasibleFixedColumns,
    NoSolution,
    OrderTooLarge,
    SearchConfig,
    enumerate_third_columns,
    search_hdm,
    search_third_column,
)
from diffcover.tables import odd_even_column
from diffcover.verify import BadHole, verify_dca, verify_hdm

from conftest import B_REDUCED_COLUMNS


def assemble(order: int, col2: tuple[int, ...]) -> ResidueArray:
    rows = zip(range(order), odd_even_column(order), col2)
    return ResidueArray.from_rows(Kind.DCA, order, rows, form=Form.REDUCED)


def test_order_six_default_columns_match_golden():
    # The default fixed columns at order 6 are exactly the golden array's.
    assert odd_even_column(6) == B_REDUCED_COLUMNS[1]
    solutions = search_third_column(SearchConfig(6))
    assert B_REDUCED_COLUMNS[2] in solutions


def test_search_equals_enumeration_at_order_six():
    assert search_third_column(SearchConfig(6)) == enumerate_third_columns(6)


@pytest.mark.parametrize("order", [8, 10])
def test_search_equals_enumeration(order):
    # Pruning soundness: the capacity-pruned search agrees with the
    # unpruned filter over all permutations.
    pruned = search_third_column(SearchConfig(order))
    unpruned = enumerate_third_columns(order)
    assert pruned == unpruned
    assert pruned  # solutions exist at these orders


def test_solutions_verify_strict():
    for col2 in search_third_column(SearchConfig(8)):
        assert verify_dca(assemble(8, col2), strict=True).passed


def test_lexicographic_and_deterministic():
    first = search_third_column(SearchConfig(8))
    second = search_third_column(SearchConfig(8))
    assert first == second == sorted(first)


def test_budget_exhausted():
    with pytest.raises(BudgetExhausted):
        search_third_column(SearchConfig(6, node_budget=1))


def test_partial_results_returned_when_budget_hits_late():
    # Enough budget for the first solutions but not the whole tree.
    full = search_third_column(SearchConfig(8))
    clipped = search_third_column(SearchConfig(8, node_budget=2000))
    assert clipped == full[: len(clipped)]
    assert clipped


def test_result_limit():
    full = search_third_column(SearchConfig(8))
    assert search_third_column(SearchConfig(8, result_limit=1)) == full[:1]


def test_infeasible_fixed_columns():
    ident = tuple(range(6))
    with pytest.raises(InfeasibleFixedColumns):
        search_third_column(SearchConfig(6, col0=ident, col1=ident))


def test_fixed_column_validation():
    with pytest.raises(ValueError):
        search_third_column(SearchConfig(6, col0=(0, 1, 2, 3, 4, 4)))
    with pytest.raises(ValueError):
        search_third_column(SearchConfig(7))
    with pytest.raises(ValueError):
        SearchConfig(6, node_budget=0)


def test_enumerate_order_too_large():
    with pytest.raises(OrderTooLarge):
        enumerate_third_columns(14)


def test_status_stream():
    events = []
    search_third_column(SearchConfig(6, status_interval=5), status=events.append)
    assert events
    assert all(set(e) == {"nodes", "depth", "solutions"} for e in events)
    assert events[-1]["solutions"] == 1


def test_search_hdm_ten_two():
    arr = search_hdm(10, 2)
    assert (arr.order, arr.hole, arr.columns, arr.rows) == (10, 2, 4, 8)
    assert verify_hdm(arr).passed
    assert arr.column(3) == (0,) * 8
    assert arr.column(0) == (1, 2, 3, 4, 6, 7, 8, 9)


def test_search_hdm_deterministic():
    assert search_hdm(10, 2) == search_hdm(10, 2)


def test_search_hdm_no_solution():
    # All non-hole residues are odd, so their differences land in the hole.
    with pytest.raises(NoSolution):
        search_hdm(10, 5)


def test_search_hdm_budget():
    with pytest.raises(BudgetExhausted):
        search_hdm(14, 2, SearchConfig(14, node_budget=3))


def test_search_hdm_bad_hole():
    with pytest.raises(BadHole):
        search_hdm(10, 3)
    with pytest.raises(BadHole):
        search_hdm(10, 10)


def test_order_fourteen_pipeline_ingredient():
    cols = search_third_column(SearchConfig(14, result_limit=1))
    assert len(cols) == 1
    assert verify_dca(assemble(14, cols[0]), strict=True).passed
