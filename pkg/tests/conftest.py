"""Shared fixtures; collects acceptance verdicts for the terminal summary."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from scfact.rings import BooleanRing, ModularRing, QuadraticField, RationalField
from scfact.sequences import Constant, Periodic

ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        name, ok = ACCEPTANCE[num]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {num:2d}. {name}")


def random_element(ring, rng: random.Random):
    if isinstance(ring, ModularRing):
        return ring(rng.randrange(ring.m))
    if isinstance(ring, QuadraticField):
        return ring((Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-2, 2))))
    if isinstance(ring, BooleanRing):
        return ring({i for i in range(ring.size) if rng.random() < 0.5})
    return ring(Fraction(rng.randint(-4, 4), rng.randint(1, 3)))


def random_sequence(ring, rng: random.Random):
    if rng.random() < 0.5:
        return Constant(random_element(ring, rng))
    return Periodic([random_element(ring, rng) for _ in range(rng.randint(2, 4))])


@pytest.fixture
def Q():
    return RationalField()
