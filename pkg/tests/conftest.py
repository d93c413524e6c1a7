from __future__ import annotations

import os
import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

# PACT_SEED seeds the randomized property suites only; exact constructions
# never consult it.
SEED = int(os.environ.get("PACT_SEED", "20240817"))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(SEED)


def pytest_report_header(config):
    return f"pact property-suite seed: {SEED} (set PACT_SEED to change)"
