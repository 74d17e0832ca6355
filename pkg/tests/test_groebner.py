from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import brute_force_dimension

from sympower.groebner import (
    GradeError,
    GroebnerCache,
    buchberger,
    grade,
    krull_dimension,
    max_independent_set,
    monomial_dimension,
)
from sympower.matrix import Ideal, PolyMatrix, ResourceGuardError, minors_ideal
from sympower.poly import Polynomial, RingConfig, parse_polynomial

R = RingConfig(("x", "y", "z"))


def I(*texts, ring=R):
    return Ideal(ring, [parse_polynomial(t, ring) for t in texts])


def basis_strings(gb):
    return [str(g) for g in gb.basis]


def test_basis_drops_redundant_generator():
    assert sorted(basis_strings(buchberger(I("x^2", "z", "y*z")))) == ["x^2", "z"]


def test_principal_ideal_is_monic():
    assert basis_strings(buchberger(I("3*x^2*y - 6*z"))) == ["x^2*y - 2*z"]


def test_unit_ideal():
    gb = buchberger(I("x", "x + 1"))
    assert gb.is_unit()
    assert basis_strings(gb) == ["1"]


def test_generators_reduce_to_zero():
    ideal = I("x^2*y - z^2", "x*y^2 - y*z", "x*z - y^3")
    gb = buchberger(ideal)
    assert all(gb.contains(g) for g in ideal.generators)


def test_order_stable():
    ideal = I("x^2*y - z^2", "x*y^2 - y*z", "x*z - y^3")
    assert buchberger(ideal).basis == buchberger(ideal).basis


def test_dimension_examples():
    assert krull_dimension(I("z", "x^2")) == 1
    assert max_independent_set(I("z", "x^2")) == ("y",)
    assert krull_dimension(I("x^3*z^2", "y*z^2", "x^2*z")) == 2
    assert set(max_independent_set(I("x^3*z^2", "y*z^2", "x^2*z"))) == {"x", "y"}
    assert krull_dimension(Ideal.zero(R)) == 3
    assert krull_dimension(Ideal.unit(R)) == -1


def test_grade_examples(res_monomial, res_product):
    phi = res_monomial.phi(1)
    assert grade(minors_ideal(phi, 1)).grade == 2
    assert grade(minors_ideal(phi, 2)).grade == 1
    assert grade(minors_ideal(res_product.phi(2), 1)).grade == 4


def test_grade_conventions():
    unit = grade(Ideal.unit(R))
    assert unit.grade == math.inf and unit.dimension == -1 and not unit.is_proper
    assert grade(Ideal.zero(R)).grade == 0
    with pytest.raises(GradeError):
        grade(I("x + 1", "y"))


def test_generic_3x2_grades():
    ring = RingConfig(tuple(f"a{i}" for i in range(6)))
    m = PolyMatrix.from_rows(ring, [["a0", "a1"], ["a2", "a3"], ["a4", "a5"]])
    assert grade(minors_ideal(m, 1)).grade == 6
    assert grade(minors_ideal(m, 2)).grade == 2


def test_spair_budget():
    ideal = I("x^2*y - z^2", "x*y^2 - y*z", "x*z - y^3")
    with pytest.raises(ResourceGuardError):
        buchberger(ideal, spair_budget=1)


def test_cache_roundtrip(tmp_path):
    cache = GroebnerCache(tmp_path)
    ideal = I("x^2*y - z^2", "x*y^2 - y*z")
    gb = buchberger(ideal, cache=cache)
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    assert files[0].read_text().splitlines() == basis_strings(gb)
    assert cache.get(ideal).basis == gb.basis


def test_finite_field():
    ring = RingConfig(("x", "y"), 2)
    gb = buchberger(I("x^2 + y", "x*y + x", ring=ring))
    assert all(gb.contains(g) for g in I("x^2 + y", "x*y + x", ring=ring).generators)


def random_monomial_ideal(rng, n):
    gens = []
    for _ in range(rng.randint(1, 5)):
        exp = [0] * n
        for v in rng.sample(range(n), rng.randint(1, min(3, n))):
            exp[v] = rng.randint(1, 3)
        gens.append(tuple(exp))
    return gens


def test_monomial_dimension_matches_brute_force_up_to_six_vars():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(1, 6)
        gens = random_monomial_ideal(rng, n)
        ring = RingConfig(tuple(f"x{i}" for i in range(n)))
        ideal = Ideal(ring, [Polynomial(ring, {g: 1}) for g in gens])
        assert krull_dimension(ideal) == brute_force_dimension(gens, n)
        assert monomial_dimension(gens, n) == brute_force_dimension(gens, n)


# -- properties ---------------------------------------------------------------

polys = st.sampled_from(["x", "y", "z", "x*y", "y*z - x^2", "x^2", "z^3 - y", "x*z", "y^2 - x*z"])


@settings(max_examples=40, deadline=None)
@given(st.lists(polys, min_size=1, max_size=3, unique=True), st.lists(polys, max_size=2, unique=True))
def test_grade_monotone_under_inclusion(small, extra):
    a = I(*small)
    b = I(*(small + extra))
    gb_b = buchberger(b)
    assert all(gb_b.contains(g) for g in a.generators)
    assert grade(a).grade <= grade(b).grade


@settings(max_examples=40, deadline=None)
@given(st.lists(polys, min_size=1, max_size=4, unique=True))
def test_basis_is_reduced(texts):
    gb = buchberger(I(*texts))
    leads = gb.leading_monomials()
    for k, g in enumerate(gb.basis):
        assert g.leading_coefficient() == 1
        for m in g.terms:
            for l, lm in enumerate(leads):
                if l != k:
                    assert not all(a <= b for a, b in zip(lm, m))
