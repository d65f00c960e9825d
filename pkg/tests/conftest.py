import random

import pytest

from mobius.generators import diamond
from mobius.posets import poset_from_relations


@pytest.fixture
def chain3():
    return poset_from_relations(["a", "b", "c"], [("a", "b"), ("b", "c")])


@pytest.fixture
def chain2():
    return poset_from_relations(["a", "b"], [("a", "b")])


@pytest.fixture
def dia():
    return diamond()


@pytest.fixture
def rng():
    return random.Random(20261019)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
