import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest

import golden
from tropsched import load_instance


@pytest.fixture(scope="session")
def doc():
    return load_instance(golden.fixture("vaccination.inst"))


@pytest.fixture(scope="session")
def inst(doc):
    return doc.instance
