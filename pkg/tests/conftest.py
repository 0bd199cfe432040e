import numpy as np
import pytest

from gmhd2d.spectral import ScalarField, VectorField, get_grid


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def field_of(n, fn):
    """ScalarField sampled from ``fn(x, y)`` on the n x n grid."""
    g = get_grid(n)
    x, y = g.x
    return ScalarField.from_values(g, fn(x, y))


def vector_of(n, f1, f2):
    g = get_grid(n)
    x, y = g.x
    return VectorField.from_values(g, f1(x, y), f2(x, y))


def rel_err(a, b):
    a, b = np.asarray(a), np.asarray(b)
    scale = np.abs(b).max()
    if scale == 0:
        return float(np.abs(a).max())
    return float(np.abs(a - b).max() / scale)


# -- acceptance report -------------------------------------------------------

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def report():
    """Record the one-line verdict of an acceptance criterion."""

    def _report(number: int, passed: bool, detail: str):
        ACCEPTANCE_LINES[number] = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"
        return passed

    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
