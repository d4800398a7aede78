import os

import hypothesis
import numpy as np
import pytest

from polyround.generators import corpus
from polyround.polytope import HPolytope

hypothesis.settings.register_profile("default", max_examples=40, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=5, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=300, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES: list[str] = []


def unit_square() -> HPolytope:
    I = np.eye(2)
    return HPolytope(np.vstack([I, -I]), np.ones(4))


def unit_cube(d: int = 3) -> HPolytope:
    I = np.eye(d)
    return HPolytope(np.vstack([I, -I]), np.ones(2 * d))


def corner_triangle() -> HPolytope:
    """x1 >= 0, x2 >= 0, x1 + x2 <= 1."""
    return HPolytope([[-1.0, 0.0], [0.0, -1.0], [1.0, 1.0]], [0.0, 0.0, 1.0])


def equilateral_triangle() -> np.ndarray:
    return np.array([[0.0, 0.0], [1.0, 0.0], [0.5, np.sqrt(3.0) / 2.0]])


def random_polytope(rng: np.random.Generator, d: int, m: int) -> HPolytope:
    """m random facets around the origin, clipped to the box [-3, 3]^d."""
    N = rng.normal(size=(m, d))
    b = rng.uniform(0.3, 1.5, size=m)
    I = np.eye(d)
    box = np.vstack([I, -I])
    return HPolytope(np.vstack([N, box]), np.concatenate([b, np.full(2 * d, 3.0)]))


@pytest.fixture(scope="session")
def standard_corpus():
    return corpus()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
