import numpy as np
import pytest

from steklov import DomainKind, make_builtin


@pytest.fixture(scope="session")
def disk():
    return make_builtin("disk")


@pytest.fixture(scope="session")
def kite_bounded():
    return make_builtin("kite")


@pytest.fixture(scope="session")
def kite_exterior():
    return make_builtin("kite", kind=DomainKind.UNBOUNDED_EXTERIOR)


@pytest.fixture(scope="session")
def g1_curve():
    return make_builtin("g1")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
