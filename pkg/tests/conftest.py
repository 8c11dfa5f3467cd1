"""Independent oracles shared by the test modules.

These re-derive the functionals with plain Python loops (or exact
rationals) so they share no code path with the numpy implementation.
"""
from fractions import Fraction

import pytest

ACCEPTANCE_LINES = []


def naive_quotient(values, p):
    n = len(values)
    m = sum(values) / n
    dev = sum(abs(v - m) ** p for v in values)
    var = sum(abs(values[i] - values[j]) ** p for i in range(n) for j in range(i + 1, n))
    return dev / var


def exact_quotient(values, p: int) -> Fraction:
    """Exact rational quotient for rational values and integer p."""
    values = [Fraction(v) for v in values]
    n = len(values)
    m = sum(values) / n
    dev = sum(abs(v - m) ** p for v in values)
    var = sum(abs(values[i] - values[j]) ** p for i in range(n) for j in range(i + 1, n))
    return dev / var


def naive_lemma_quotient(values, p):
    v = sorted(values, reverse=True)
    n = len(v)
    m = sum(v) / n
    q = p - 1
    num = (v[0] - m) ** q + (m - v[-1]) ** q
    den = sum((v[0] - x) ** q + (x - v[-1]) ** q for x in v)
    return num / den


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
