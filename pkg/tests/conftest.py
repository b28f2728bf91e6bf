import pytest

from rpconf.context import ring_for


@pytest.fixture
def ring():
    return ring_for
