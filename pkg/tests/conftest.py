import os

import numpy as np
import pytest

HERE = os.path.dirname(__file__)
REPO = os.path.dirname(HERE)


@pytest.fixture(scope="session")
def dataset_path() -> str:
    """Bundled Cleveland-format file; override with HEARTML_DATA."""
    return os.environ.get("HEARTML_DATA", os.path.join(REPO, "data", "cleveland.csv"))


@pytest.fixture(scope="session")
def clean_records(dataset_path):
    from heartml import load_and_clean

    records, dropped = load_and_clean(dataset_path)
    return records, dropped


def random_binary_problem(seed: int, n: int = 80, d: int = 13, noise: float = 0.3):
    """Linearly structured toy classification problem."""
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n, d))
    w = rng.normal(size=d)
    y = ((x @ w + noise * rng.normal(size=n)) > 0).astype(np.int64)
    if y.min() == y.max():  # force both classes
        y[0] = 1 - y[0]
    return x, y


@pytest.fixture
def toy_problem():
    return random_binary_problem(7)
