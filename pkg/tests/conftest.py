"""
Shared fixtures: the model spaces used across the suite and seeded
generators.
"""

import numpy as np
import pytest

from core.spaces import (
    EuclideanSpace,
    HyperbolicSpace,
    ProductSpace,
    TreeSpace,
    build_tree_space,
    random_tree_spec,
    tripod_spec,
)


@pytest.fixture
def r1() -> EuclideanSpace:
    return EuclideanSpace(1)


@pytest.fixture
def r2() -> EuclideanSpace:
    return EuclideanSpace(2)


@pytest.fixture
def r3() -> EuclideanSpace:
    return EuclideanSpace(3)


@pytest.fixture
def h2() -> HyperbolicSpace:
    return HyperbolicSpace(2)


@pytest.fixture
def tripod() -> TreeSpace:
    """Unit tripod: legs hub-a, hub-b, hub-c of length 1"""
    return build_tree_space(tripod_spec((1.0, 1.0, 1.0)))


@pytest.fixture
def random_tree() -> TreeSpace:
    return build_tree_space(random_tree_spec(20, seed=7))


@pytest.fixture
def line_times_tripod(r1, tripod) -> ProductSpace:
    return ProductSpace(r1, tripod)


@pytest.fixture(params=["r3", "h2", "random_tree", "line_times_tripod"])
def cat0_space(request):
    """The four spaces of the axiom suite"""
    return request.getfixturevalue(request.param)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)
