from __future__ import annotations

import math

import pytest

from sympower.matrix import PolyMatrix
from sympower.poly import RingConfig
from sympower.resolution import make_resolution
from sympower.swcheck import GradeTable, check_swj, format_grade, j_feasible_range, pd1_grade_criterion
from sympower.sympow import assemble_complex, verify_dd_zero, verify_minimal

R3 = RingConfig(("x", "y", "z"))


def pd1(rows):
    return make_resolution(R3, [PolyMatrix.from_rows(R3, rows)], minimal=True)


def by_ideal(report):
    return {v.ideal: v for v in report.verdicts}


def test_example_pd1_sw2(res_monomial):
    rep = check_swj(res_monomial, 2)
    assert rep.overall
    v = by_ideal(rep)
    assert (v["I_2(phi_1)"].computed, v["I_2(phi_1)"].required) == (1, 1)
    assert (v["I_1(phi_1)"].computed, v["I_1(phi_1)"].required) == (2, 2)


def test_example_product_sw3_fails(res_product):
    rep = check_swj(res_product, 3)
    assert not rep.overall
    [fail] = rep.failures()
    assert (fail.condition, fail.ideal, fail.computed, fail.required) == ("even-grade(i=2)", "I_1(phi_2)", 4, 6)
    assert "grade I_1(phi_2) = 4 < 6" in rep.to_text()


def test_example_squarefree(res_squarefree):
    grades = GradeTable(res_squarefree)
    rep2 = check_swj(res_squarefree, 2, grades)
    assert rep2.overall
    v = by_ideal(rep2)
    assert v["I_2(phi_2)"].computed == 4
    assert v["I_5(phi_1)"].computed == 2 and v["I_5(phi_1)"].required == 1
    assert v["I_4(phi_1)"].computed == 3 and v["I_4(phi_1)"].required == 2
    rep3 = check_swj(res_squarefree, 3, grades)
    assert not rep3.overall
    assert [f.ideal for f in rep3.failures()] == ["I_2(phi_2)"]
    # the shared table computed each minors ideal once
    assert set(grades.computed()) == {(1, 5), (1, 4), (1, 3), (2, 2)}


def test_unit_ideal_rendering(res_monomial):
    rep = check_swj(res_monomial, 3)
    v = by_ideal(rep)["I_0(phi_1)"]
    assert v.computed == math.inf and v.passed
    assert format_grade(v.computed) == "∞ (unit ideal)"
    assert "∞ (unit ideal)" in rep.to_text()
    assert rep.to_dict()["verdicts"][2]["computed"] == "inf"


def test_characteristic_condition():
    ring = RingConfig(("x", "y", "z"), 3)
    res = make_resolution(ring, [PolyMatrix.from_rows(ring, [["x", "y"], ["y", "z"], ["z", "x"]])])
    assert check_swj(res, 2).overall
    rep = check_swj(res, 3)
    assert [v.condition for v in rep.failures()] == ["char"]


def test_pd1_criterion(res_monomial):
    rep = pd1_grade_criterion(res_monomial)
    assert rep.overall
    assert [(v.required, v.computed) for v in rep.verdicts] == [(2, 2), (1, 1)]


def test_pd1_criterion_generic_forms():
    rep = pd1_grade_criterion(pd1([["x", "y"], ["y", "z"], ["z", "x"]]), up_to=2)
    assert rep.overall and len(rep.verdicts) == 2


def test_pd1_criterion_repeated_column():
    rep = pd1_grade_criterion(pd1([["x", "x"], ["y", "y"], ["z", "z"]]))
    assert not rep.overall
    assert [v.passed for v in rep.verdicts] == [True, False]
    assert rep.verdicts[-1].computed == 0


def test_pd1_criterion_needs_pd1(res_product):
    with pytest.raises(ValueError):
        pd1_grade_criterion(res_product)


def test_feasibility_examples(res_product, res_squarefree, res_monomial):
    rep = j_feasible_range(res_product)
    assert rep.max_j == 2 and rep.dim == 4 and rep.dim_source == "variable count"
    assert not rep.feasible(3)
    assert j_feasible_range(res_squarefree).max_j == 2
    assert j_feasible_range((6, 7, 2), dim=5).max_j == 2
    assert j_feasible_range(res_monomial).max_j is None
    assert j_feasible_range((2, 5), dim=3).max_j == 3
    assert j_feasible_range(res_product, dim=9).dim_source == "override"


def test_feasibility_odd_cases():
    rep = j_feasible_range((1, 3, 3, 2), dim=9)
    cases = {j: case for j, _, case, _ in rep.rows}
    assert cases[1] == "p odd, min = j: j <= dim/p"
    assert cases[2] == "p odd, min = beta_p: j <= (dim - beta_p)/(p - 1); p odd, min = j: j <= dim/p"
    assert cases[3] == "p odd, min = beta_p: j <= (dim - beta_p)/(p - 1)"
    # 2j + 2 <= 9 for j >= 2
    assert rep.max_j == 3


def test_feasibility_matches_expected_pd():
    from sympower.sympow import expected_length

    for beta in [(1, 3, 3, 1), (2, 5), (6, 7, 2), (3, 5, 4, 2), (1, 1)]:
        for dim in range(0, 10):
            rep = j_feasible_range(beta, dim=dim)
            top = rep.max_j if rep.max_j is not None else 12
            for j in range(1, top + 1):
                assert expected_length(beta, j) <= dim
            if rep.max_j is not None:
                assert expected_length(beta, rep.max_j + 1) > dim


@pytest.mark.parametrize("name", ["res_monomial", "res_product", "res_squarefree"])
def test_sw_implies_predicted_length(name, request):
    res = request.getfixturevalue(name)
    grades = GradeTable(res)
    for j in range(1, 4):
        if check_swj(res, j, grades).overall:
            c = assemble_complex(res, j)
            assert verify_dd_zero(c).ok and verify_minimal(c).ok
            assert c.predicted_length == c.realized_length


@pytest.mark.parametrize("name", ["res_monomial", "res_product", "res_squarefree"])
def test_sw_monotone_in_j(name, request):
    res = request.getfixturevalue(name)
    grades = GradeTable(res)
    passes = [check_swj(res, j, grades).overall for j in range(1, 5)]
    assert passes[0]
    for k in range(1, len(passes)):
        if passes[k]:
            assert all(passes[1:k])


def test_report_schema(res_monomial):
    d = check_swj(res_monomial, 2).to_dict()
    assert list(d) == ["j", "overall", "verdicts"]
    assert list(d["verdicts"][0]) == ["condition", "ideal", "required", "computed", "pass"]
