import random
import time
from dataclasses import dataclass
from fractions import Fraction

import pytest

from latcert.exactmath import Polynomial
from latcert.gf2codes import extended_quadratic_residue_32, reed_muller_2_5
from latcert.lattice32 import Shell, build_shell
from latcert.sphercode import (
    ALL,
    InnerProductHistogram,
    InvarianceReport,
    check_distance_invariance,
    histogram,
)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_fraction(rng: random.Random, span: int = 20, max_den: int = 12) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))


def random_polynomial(rng: random.Random, max_degree: int) -> Polynomial:
    deg = rng.randint(0, max_degree)
    coeffs = [random_fraction(rng) for _ in range(deg + 1)]
    if all(c == 0 for c in coeffs):
        coeffs[-1] = Fraction(1)
    return Polynomial(coeffs)


@dataclass(frozen=True)
class TimedPass:
    """A heavy pair-pass result together with the wall time it took, so the
    acceptance tests can assert the stated runtime budgets no matter which
    test triggered the shared fixture."""

    result: object
    seconds: float


def _timed(fn) -> TimedPass:
    t0 = time.monotonic()
    out = fn()
    return TimedPass(out, time.monotonic() - t0)


@pytest.fixture(scope="session")
def rm_code():
    return reed_muller_2_5()


@pytest.fixture(scope="session")
def xqr_code():
    return extended_quadratic_residue_32()


@pytest.fixture(scope="session")
def rm_shell(rm_code) -> TimedPass:
    return _timed(lambda: build_shell(rm_code))


@pytest.fixture(scope="session")
def xqr_shell(xqr_code) -> TimedPass:
    return _timed(lambda: build_shell(xqr_code))


@pytest.fixture(scope="session")
def rm_hist(rm_shell) -> TimedPass:
    return _timed(lambda: histogram(rm_shell.result))


@pytest.fixture(scope="session")
def xqr_hist(xqr_shell) -> TimedPass:
    return _timed(lambda: histogram(xqr_shell.result))


@pytest.fixture(scope="session")
def rm_full_invariance(rm_shell) -> TimedPass:
    return _timed(lambda: check_distance_invariance(rm_shell.result, sample=ALL))


@pytest.fixture(scope="session")
def xqr_full_invariance(xqr_shell) -> TimedPass:
    return _timed(lambda: check_distance_invariance(xqr_shell.result, sample=ALL))
