import numpy as np
import pytest

from sfwarp import stft, synth

ACCEPTANCE_LINES = []


def record_criterion(number, name, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {name} -- {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def params():
    return stft.FramingParams()


@pytest.fixture(scope="session")
def vowel():
    return synth.vowel(100.0)


def interior_rel_error(x, y, margin=400):
    n = min(len(x), len(y))
    a = np.asarray(x)[margin:n - margin]
    b = np.asarray(y)[margin:n - margin]
    return float(np.linalg.norm(a - b) / np.linalg.norm(a))
