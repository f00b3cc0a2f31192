from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpus import fixture  # noqa: E402


@pytest.fixture
def k5():
    return fixture("k5_onecross")


@pytest.fixture
def c4():
    return fixture("c4")


@pytest.fixture
def triangle():
    return fixture("triangle")
