import random

import pytest

from ckarith.varieties import EllipticCurve
from oracles import CORPUS

_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture(params=CORPUS, ids=lambda ab: "a=%d,b=%d" % ab)
def curve(request):
    return EllipticCurve(*request.param)


@pytest.fixture
def corpus_curves():
    return [EllipticCurve(a, b) for a, b in CORPUS]


@pytest.fixture
def rng():
    return random.Random(20261016)


# ---------------------------------------------------------------- acceptance report


@pytest.fixture
def acceptance_log(request):
    log = request.config.stash.setdefault(_ACCEPTANCE, [])

    def record(number, description, passed):
        line = "[%s] criterion %s: %s" % ("PASS" if passed else "FAIL", number, description)
        log.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
