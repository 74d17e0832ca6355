from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import binom, euler_oracle, rank_oracle

from sympower.betti import (
    BettiTable,
    beh_check,
    betti_formula,
    betti_pd1,
    betti_pd2,
    betti_table,
    bound_report,
    expected_pd,
    fiber_bound,
    lower_bound,
    rees_mu,
    render_tables,
    upper_bound,
)
from sympower.resolution import defect_ranks


def test_formula_examples():
    assert betti_formula((6, 7, 2), 2, 2, 3) == 14
    assert betti_formula((6, 7, 2), 2, 2, 0) == 21
    assert betti_formula((6, 7, 2), 2, 3, 0) == 56
    assert [betti_formula((6, 7, 2), 2, 2, t) for t in range(5)] == [21, 42, 33, 14, 3]


def test_formula_rejects_wrong_length():
    with pytest.raises(ValueError):
        betti_formula((6, 7, 2), 1, 2, 0)


def test_pd1_examples():
    assert betti_pd1(3, 2, 2, 1) == 6
    assert betti_pd1(3, 2, 2, 0) == binom(3 + 2 - 1, 2)
    assert betti_pd1(3, 2, 2, 2) == 1
    with pytest.raises(ValueError):
        betti_pd1(3, 2, 2, 3)


def test_pd2_examples():
    assert betti_pd2((6, 7, 2), 2, 2) == 33
    assert betti_pd2((6, 7, 2), 2, 3) == 14
    assert betti_pd2((6, 7, 2), 2, 4) == 3
    with pytest.raises(ValueError):
        betti_pd2((6, 7, 2), 2, 5)


def test_expected_pd():
    assert expected_pd((6, 7, 2), 2, 2) == 4
    assert expected_pd((4, 4, 1), 2, 3) == 6
    assert expected_pd((3, 2), 1, 5) == 2


def test_upper_bound():
    assert upper_bound((6, 7, 2), 2, 2) == 171
    assert upper_bound((6, 7, 2), 2, 3) == 1330
    assert upper_bound((3, 2), 1, 2) == 21
    assert upper_bound((1, 3, 3, 1), 3, 2) == binom(8 + 4, 2)


def test_lower_bound():
    assert lower_bound((6, 7, 2), 2, 2, 2) == 21
    assert lower_bound((6, 7, 2), 2, 2, 3) == 7
    assert lower_bound((3, 2), 1, 2, 2) == 1
    assert lower_bound((1, 3, 3, 1), 3, 2, 1) is None


def test_example_sandwich():
    rep = bound_report((6, 7, 2), 2)
    rec = {r.t: r for r in rep.records}
    assert (rec[2].lower, rec[2].value, rec[2].upper) == (21, 33, 171)
    assert (rec[3].lower, rec[3].value, rec[3].upper) == (7, 14, 171)
    assert rep.overall


def test_closed_forms_agree_with_formula_exhaustively():
    for j in range(1, 5):
        for b0, b1 in product(range(1, 9), repeat=2):
            for t in range(0, min(b1, j) + 1):
                assert betti_pd1(b0, b1, j, t) == betti_formula((b0, b1), 1, j, t)
        for beta in product(range(1, 9), repeat=3):
            for t in range(0, 2 * j + 1):
                assert betti_pd2(beta, j, t) == betti_formula(beta, 2, j, t)


def test_sandwich_sweep():
    for p in (1, 2, 3):
        for beta in product(range(1, 9), repeat=p + 1):
            for j in range(1, 5):
                assert bound_report(beta, j).overall


def test_rees_mu():
    assert rees_mu(3, 2) == 6
    assert rees_mu(6, 2) == 21
    assert rees_mu(4, 0) == 1


def test_beh_check():
    table = BettiTable("sym", 2, [betti_pd1(5, 4, 2, t) for t in range(3)])
    assert table.values == [15, 20, 6]
    v = beh_check(table, 4, 4)
    assert v.hypothesis and v.ok
    assert [row[2] for row in v.per_t] == [1, 4, 6]
    v = beh_check(betti_table((3, 2), 2), 3, 2)
    assert not v.hypothesis
    v = beh_check(betti_table((3, 2), 2), 0, 2)
    assert v.ok and v.hypothesis


def test_fiber_bound():
    assert fiber_bound(2, 1, 3).composite_beta1 == 7
    table = betti_table((3, 2), 2)
    assert fiber_bound(1, 1, 0, table=table).ok
    d = 2
    v = fiber_bound(1, 0, d, table=table, j=2)
    assert [row[2] for row in v.per_t] == [binom(d, t) for t in range(3)]
    assert v.ok
    assert len(fiber_bound(1, 0, d, t=1, table=table).per_t) == 1


def test_table_labels_and_export():
    tb = betti_table((6, 7, 2), 2, "power")
    assert tb.title == "I^2"
    assert tb.to_dict() == {"label": "power", "j": 2, "values": [21, 42, 33, 14, 3], "pd": 4, "source": "formula"}
    assert betti_table((6, 7, 2), 3, "rees").title == "R_3(M)"
    with pytest.raises(ValueError):
        betti_table((6, 7, 2), 2, "other")


def test_render_layout():
    text = render_tables([betti_table((6, 7, 2), 2), betti_table((6, 7, 2), 3)])
    lines = text.splitlines()
    assert lines[0].split() == ["t", "S_2(M)", "S_3(M)"]
    assert lines[3].split() == ["2", "33", "168"]
    assert lines[7].split() == ["6", "4"]


# -- properties ---------------------------------------------------------------

betas = st.lists(st.integers(1, 7), min_size=2, max_size=5)


@settings(max_examples=80, deadline=None)
@given(betas, st.integers(1, 4))
def test_formula_matches_generating_function(beta, j):
    p = len(beta) - 1
    values = [betti_formula(beta, p, j, t) for t in range(j * p + 1)]
    oracle = rank_oracle(beta, j)
    oracle += [0] * (len(values) - len(oracle))
    assert values == oracle


@settings(max_examples=80, deadline=None)
@given(betas, st.integers(1, 4))
def test_alternating_sum(beta, j):
    tb = betti_table(beta, j)
    chi = sum((-1) ** t * v for t, v in enumerate(tb.values))
    assert chi == euler_oracle(beta, j)
    r0 = defect_ranks(beta).r0
    if r0 >= 0:
        assert chi == binom(r0 + j - 1, j)
