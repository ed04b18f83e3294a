import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from msat.builtins import builtin_doctrine


@pytest.fixture(scope="session")
def trivial():
    return builtin_doctrine("trivial")


@pytest.fixture(scope="session")
def monoid():
    return builtin_doctrine("monoid")


@pytest.fixture(scope="session")
def group():
    return builtin_doctrine("group")


@pytest.fixture(scope="session")
def action():
    return builtin_doctrine("group-action")


@pytest.fixture(scope="session")
def ring_module():
    return builtin_doctrine("ring-module")


@pytest.fixture(scope="session")
def operad3():
    return builtin_doctrine("operad-nonsigma", level_cap=3)


@pytest.fixture(scope="session")
def operad_sym():
    return builtin_doctrine("operad-symmetric", level_cap=3)


@pytest.fixture(scope="session")
def ocat():
    return builtin_doctrine("ocat", objects=("x", "y"), edges=(("f", "x", "x"),))
