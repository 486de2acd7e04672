import pytest
from hypothesis import settings

from canon import Bounds, EquationalSystem, Signature, parse_formula, preset
from canon.fixtures import abstract_fixture
from canon.terms import parse_term_order

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=60)
settings.load_profile("repo")


def fs(*texts):
    """A presentation from formula strings."""
    return frozenset(parse_formula(t) for t in texts)


@pytest.fixture(scope="session")
def tally():
    return Signature.tally()


@pytest.fixture(scope="session")
def even():
    return fs("4 = 2", "4 = 0")


@pytest.fixture(scope="session")
def completion_sys(tally):
    return EquationalSystem(tally, preset("completion"), Bounds(7, 5))


@pytest.fixture(scope="session")
def rpo_sys(tally):
    return EquationalSystem(tally, preset("example_rpo"), Bounds(9, 5))


@pytest.fixture(scope="session")
def constants_sig():
    return Signature.parse("s/1 a/0 b/0 c/0")


@pytest.fixture(scope="session")
def constants_order(constants_sig):
    return parse_term_order("s > a > b > c", constants_sig)


@pytest.fixture(scope="session")
def constants_sys(constants_sig, constants_order):
    return EquationalSystem(constants_sig, preset("completion", constants_order), Bounds(4, 5))


@pytest.fixture(scope="session")
def counterexample():
    return abstract_fixture("counterexample")


@pytest.fixture(scope="session")
def oscillation():
    return abstract_fixture("oscillation")


@pytest.fixture(scope="session")
def fan():
    return abstract_fixture("fan")


@pytest.fixture(scope="session")
def unique_needed():
    return abstract_fixture("unique_needed")
