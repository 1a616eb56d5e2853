import json
from fractions import Fraction

import pytest
from hypothesis import settings

from gradedsim import parse

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

PQ_DAWR = {
    "kind": "dawr",
    "states": ["p", "q"],
    "alphabet": ["a"],
    "accepting": ["p", "q"],
    "transitions": [
        {"from": "p", "symbol": "a", "to": "p", "reward": 2},
        {"from": "q", "symbol": "a", "to": "q", "reward": 1},
    ],
}

UV_LTS = {
    "kind": "ltsr",
    "states": ["u", "v"],
    "alphabet": ["a"],
    "transitions": [
        {"from": "u", "symbol": "a", "to": "u", "reward": 2},
        {"from": "v", "symbol": "a", "to": "v", "reward": 1},
    ],
}

XY_LMP = {
    "kind": "lmp",
    "states": ["x", "y", "z"],
    "alphabet": ["a"],
    "transitions": [
        {"from": "x", "symbol": "a", "distribution": {"x": "1/1"}},
        {"from": "y", "symbol": "a", "distribution": {"y": "3/4"}},
    ],
}


@pytest.fixture
def pq():
    return parse(json.dumps(PQ_DAWR))


@pytest.fixture
def uv():
    return parse(json.dumps(UV_LTS))


@pytest.fixture
def xy():
    return parse(json.dumps(XY_LMP))


def F(s):
    return Fraction(s)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
