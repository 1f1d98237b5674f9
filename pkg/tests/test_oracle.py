import pytest

from hedonic_graphs.exceptions import OracleBudgetExceededError
from hedonic_graphs.game import compare
from hedonic_graphs.oracle import count_oracle_calls

L, C, R = 0, 1, 2


def test_counter_counts_compare_calls(parliament3):
    with count_oracle_calls() as counter:
        compare(parliament3, C, frozenset({L, C}), frozenset({C}))
        compare(parliament3, L, frozenset({L, C}), frozenset({L}))

    assert counter.calls == 2


def test_counters_nest(parliament3):
    with count_oracle_calls() as outer:
        compare(parliament3, C, frozenset({L, C}), frozenset({C}))
        with count_oracle_calls() as inner:
            compare(parliament3, C, frozenset({L, C}), frozenset({C}))

    assert inner.calls == 1
    assert outer.calls == 2


def test_calls_outside_a_counter_are_not_recorded(parliament3):
    with count_oracle_calls() as counter:
        pass
    compare(parliament3, C, frozenset({L, C}), frozenset({C}))

    assert counter.calls == 0


def test_limit_raises_budget_error(parliament3):
    with pytest.raises(OracleBudgetExceededError):
        with count_oracle_calls(limit=1):
            compare(parliament3, C, frozenset({L, C}), frozenset({C}))
            compare(parliament3, C, frozenset({L, C}), frozenset({C}))
