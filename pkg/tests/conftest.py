from __future__ import annotations

import pytest

from sympower import fixture_path, load_resolution


@pytest.fixture(scope="session")
def res_monomial():
    return load_resolution(fixture_path("monomial_pd1"))


@pytest.fixture(scope="session")
def res_product():
    return load_resolution(fixture_path("product_pd2"))


@pytest.fixture(scope="session")
def res_squarefree():
    return load_resolution(fixture_path("squarefree_pd2"))
