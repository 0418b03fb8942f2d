import numpy as np
import pytest

from augmented_queues.datasets import write_csv, write_mnist_csv
from augmented_queues.stream import DataKind, load_dataset


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def blobs_csv(tmp_path):
    """Three well-separated 8x8 'images' classes, 60 examples each, pixel range 0..255."""
    gen = np.random.default_rng(7)
    X, y = [], []
    for c in range(3):
        centre = np.zeros((8, 8))
        centre[c * 2 : c * 2 + 3, :] = 200.0
        for _ in range(60):
            X.append(np.clip(centre + gen.normal(0, 20, size=(8, 8)), 0, 255).round().ravel())
            y.append(c + 1)
    path = tmp_path / "blobs.csv"
    write_csv(path, np.array(X), np.array(y))
    return path


@pytest.fixture
def blobs(blobs_csv):
    return load_dataset(blobs_csv, DataKind.image(8, 8))


@pytest.fixture(scope="session")
def mnist_csv(tmp_path_factory):
    pytest.importorskip("mlxtend")
    path = tmp_path_factory.mktemp("data") / "mnist.csv"
    write_mnist_csv(path)
    return path


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record a criterion's outcome; the line is printed in the terminal summary."""

    def report(number, title, ok, detail=""):
        ACCEPTANCE_LINES.append((number, f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}  {detail}"))
        assert ok, f"criterion {number} failed: {detail}"

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
