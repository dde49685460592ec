import json
from pathlib import Path

import numpy as np
import pytest

import mub6

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "schemas"


@pytest.fixture(scope="session")
def f6():
    return mub6.fourier_f6(0.0, 0.0)


@pytest.fixture(scope="session")
def s6mat():
    return mub6.s6()


@pytest.fixture(scope="session")
def b6_generic():
    # midpoint of the admissible arc, away from the degenerate theta = pi
    theta = 0.5 * (mub6.B6_THETA_MIN + np.pi)
    return mub6.b6(theta)


@pytest.fixture(scope="session")
def m6_sample():
    return mub6.m6(0.9 * np.pi)


def load_schema(name):
    return json.loads((SCHEMA_DIR / name).read_text())


@pytest.fixture(scope="session")
def schemas():
    return {p.name: json.loads(p.read_text()) for p in SCHEMA_DIR.glob("*.schema.json")}
