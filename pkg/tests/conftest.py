from __future__ import annotations

import random
from fractions import Fraction

import pytest

from nonresonance.arrangement import builtin_arrangement
from nonresonance.exactnum import QMatrix
from nonresonance.lattice import build_lattice
from nonresonance.oscomplex import EndoSystem, WeightSystem

CORPUS = ("cdo-ex1", "cdo-ex2", "braid-a3", "generic(4)", "generic(5)", "generic(6)")

EX1_WEIGHTS = ("1/2", "1/2", "1/2", "1/2", "-2")
EX2_WEIGHTS = ("-5/3", "1/3", "-5/3", "1/3", "7/3", "1/3")


def W(*ws) -> WeightSystem:
    return WeightSystem(Fraction(w) for w in ws)


def random_weights(rng: random.Random, m: int, denominators=(1, 2, 3, 4, 5, 7)) -> WeightSystem:
    """Zero-sum rational weights with small heights; integers show up often enough to hit resonance."""
    ws = [Fraction(rng.randint(-9, 9), rng.choice(denominators)) for _ in range(m - 1)]
    ws.append(-sum(ws, Fraction(0)))
    return WeightSystem(ws)


def random_diagonal_rank2(rng: random.Random, m: int) -> EndoSystem:
    a, b = random_weights(rng, m).weights, random_weights(rng, m).weights
    return EndoSystem(QMatrix([[x, 0], [0, y]]) for x, y in zip(a, b))


@pytest.fixture(scope="session")
def corpus():
    return {name: builtin_arrangement(name) for name in CORPUS}


@pytest.fixture(scope="session")
def lattices(corpus):
    return {name: build_lattice(A) for name, A in corpus.items()}


# lines appended by the acceptance module, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
