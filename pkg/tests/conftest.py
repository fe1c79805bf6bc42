import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).parent / "data"


def pytest_collection_modifyitems(config, items):
    if os.environ.get("CHORDLAB_SLOW"):
        return
    skip = pytest.mark.skip(reason="exhaustive n=7 / size-5 run; set CHORDLAB_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def data_dir():
    return DATA
