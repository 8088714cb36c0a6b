from __future__ import annotations

import math
from pathlib import Path

import numpy as np
import pytest

from interceptgraph import Dataset, LayoutConfig, make_item, parse_json

REPO_ROOT = Path(__file__).resolve().parent.parent
DEMO_JSON = REPO_ROOT / "data" / "demo_players.json"
DEMO_CSV = REPO_ROOT / "data" / "demo_players.csv"


@pytest.fixture(scope="session")
def demo_dataset() -> Dataset:
    return parse_json(DEMO_JSON.read_bytes())


@pytest.fixture
def fig4a_dataset() -> Dataset:
    # two items spanning [33, 40]: changes of +2 and +3
    return Dataset((make_item("A", 33, 35), make_item("B", 37, 40)))


@pytest.fixture
def small_config() -> LayoutConfig:
    return LayoutConfig(R=100.0, r_rise=50.0, r_drop=50.0,
                        canvas_width=300.0, canvas_height=300.0)


def random_dataset(rng: np.random.Generator, n: int, span_values=(0.0, 100.0)) -> Dataset:
    lo, hi = span_values
    initial = rng.uniform(lo, hi, n)
    final = rng.uniform(lo, hi, n)
    items = tuple(
        make_item(f"i{j:04d}", initial[j], final[j]) for j in range(n)
    )
    return Dataset(items)


@pytest.fixture(params=["numba", "numpy"])
def kernel_backend(request, monkeypatch):
    """Run a test under both batch-kernel implementations."""
    from interceptgraph import _kernels

    if request.param == "numba" and not _kernels.HAS_NUMBA:
        pytest.skip("numba not installed")
    monkeypatch.setenv(
        "INTERCEPT_GRAPH_NUMBA", "1" if request.param == "numba" else "0"
    )
    assert _kernels.active_backend() == request.param
    return request.param


def assert_close(actual: float, expected: float, tol: float) -> None:
    assert abs(actual - expected) <= tol, f"{actual} != {expected} (tol {tol})"


def angle_between(a: tuple[float, float], b: tuple[float, float]) -> float:
    dot = a[0] * b[0] + a[1] * b[1]
    cross = a[0] * b[1] - a[1] * b[0]
    return abs(math.atan2(cross, dot))
