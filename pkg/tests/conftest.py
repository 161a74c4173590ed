"""Shared fixtures: dense lattice spectra are expensive, so build each once."""

import time

import numpy as np
import pytest
from hypothesis import settings

from magbounds.eig import eigenvalues
from magbounds.lattice import GaugeField, assemble_magnetic, build_domain

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE_LINES: dict[int, tuple[bool, str]] = {}
# (shape, n, bc, B) -> seconds spent in the dense solve
SOLVE_SECONDS: dict[tuple, float] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_LINES):
        ok, detail = ACCEPTANCE_LINES[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def _solve(shape, n, bc, gauge):
    start = time.perf_counter()
    domain = build_domain(shape, n, bc)
    spec = eigenvalues(assemble_magnetic(domain, gauge).matrix)
    SOLVE_SECONDS[(shape, n, bc, gauge.B)] = time.perf_counter() - start
    return domain, spec


@pytest.fixture(scope="session")
def square_b200_dirichlet():
    return _solve("square", 64, "dirichlet", GaugeField("homogeneous_symmetric", B=200.0))


@pytest.fixture(scope="session")
def square_b200_neumann():
    return _solve("square", 64, "neumann", GaugeField("homogeneous_symmetric", B=200.0))


@pytest.fixture(scope="session")
def square_b50_dirichlet():
    return _solve("square", 64, "dirichlet", GaugeField("homogeneous_symmetric", B=50.0))


@pytest.fixture(scope="session")
def square_free_64():
    return _solve("square", 64, "dirichlet", GaugeField())


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
