import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make oracles importable

from bayespoker.decision import CurveParams
from bayespoker.matrices import estimate_all

REPO_ROOT = Path(__file__).resolve().parents[1]
TUNED_CURVES_PATH = REPO_ROOT / "data" / "curves_tuned.json"


@pytest.fixture(scope="session")
def mset_small():
    """Quick matrices for unit tests; big enough for stable common rows."""
    return estimate_all(200_000, seed=42)


@pytest.fixture(scope="session")
def mset_1m():
    """Acceptance-grade matrices: one million deals."""
    return estimate_all(1_000_000, seed=7)


@pytest.fixture(scope="session")
def default_curves():
    return CurveParams.default()


@pytest.fixture(scope="session")
def tuned_curves():
    if TUNED_CURVES_PATH.exists():
        return CurveParams.load(TUNED_CURVES_PATH)
    return CurveParams.default()


@pytest.fixture()
def rng():
    return np.random.default_rng(12345)
