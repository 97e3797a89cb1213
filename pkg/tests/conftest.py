import pytest
from hypothesis import settings

from tamerep.chars import TameCharacter
from tamerep.ff import make_field
from tamerep.induce import build_residual_rep

settings.register_profile("deterministic", derandomize=True)
settings.load_profile("deterministic")


@pytest.fixture(scope="session")
def F3():
    return make_field(3, 1)


@pytest.fixture(scope="session")
def F5():
    return make_field(5, 1)


@pytest.fixture(scope="session")
def F13():
    return make_field(13, 1)


@pytest.fixture(scope="session")
def rep_o_8_19_17():
    return build_residual_rep(TameCharacter(8, 19, 17, 1), 13)


@pytest.fixture(scope="session")
def rep_s_8_19_17():
    return build_residual_rep(TameCharacter(8, 19, 17, -1), 13)
