from pathlib import Path

import pytest

from polyorigami.mesh_io import load_obj

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def solid():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = load_obj(DATA / f"{name}.obj")
        return cache[name]

    return get


ACCEPTANCE_RESULTS: list[tuple[int, str, bool]] = []


class _Criterion:
    def __init__(self, number, text):
        self.number, self.text = number, text

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        ACCEPTANCE_RESULTS.append((self.number, self.text, exc_type is None))
        return False


@pytest.fixture
def criterion():
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, text, ok in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}")
