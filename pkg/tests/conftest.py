"""
Pytest configuration and fixtures for assocmink tests.
"""

import logging
import tempfile
from fractions import Fraction

import pytest

from assocmink.application import AssocMinkApplication
from assocmink.models import CoxeterPartition
from assocmink.subsets import mask_of

# Subsets of [3] in the order used for the pentagon tables
PENTAGON_ORDER = [[1], [2], [3], [1, 2], [1, 3], [2, 3], [1, 2, 3]]


def values_in_order(table, order):
    """Entries of a subset-keyed dict listed in the given subset order."""
    return [table[mask_of(s)] for s in order]


def fractions(*values):
    return [Fraction(v) for v in values]


@pytest.fixture
def temp_dir():
    """Provide temporary directory for tests."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield tmpdir


@pytest.fixture
def app(temp_dir):
    """Provide assocmink application instance."""
    return AssocMinkApplication(data_dir=temp_dir)


@pytest.fixture
def pentagon():
    """n=3 with every label down."""
    return CoxeterPartition(3)


@pytest.fixture
def pentagon_up():
    """n=3 with Up={2}."""
    return CoxeterPartition(3, (2,))


@pytest.fixture
def hexagon():
    """n=4 with Up={2}."""
    return CoxeterPartition(4, (2,))


@pytest.fixture
def hexagon_two_ups():
    """n=4 with Up={2,3}."""
    return CoxeterPartition(4, (2, 3))


@pytest.fixture
def restore_logging():
    """Undo the root logger changes made by the CLI."""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers = handlers
    root.setLevel(level)
