"""Shared helpers: seeded rational alcove points with wall margins."""

from __future__ import annotations

import random
from fractions import Fraction as Q

import pytest

from flatvol import build_root_system
from flatvol.exact import vec


def rational_alcove_point(rs, rng: random.Random, denom: int = 40, margin=Q(1, 20)):
    """Random rational interior alcove point with <alpha, mu> in
    [margin, 1 - margin] for every positive root."""
    while True:
        coords = vec([Q(rng.randint(1, denom - 1), denom) for _ in range(rs.rank)])
        mu = rs.from_weight_coords(coords)
        pairings = [rs.ip(a, mu) for a in rs.positive_roots]
        if all(margin <= p <= 1 - margin for p in pairings):
            return mu


def rational_triple(rs, rng: random.Random, denom: int = 40, margin=Q(1, 20)):
    return tuple(rational_alcove_point(rs, rng, denom, margin) for _ in range(3))


@pytest.fixture(scope="session")
def a1():
    return build_root_system("A1")


@pytest.fixture(scope="session")
def a2():
    return build_root_system("A2")


@pytest.fixture(scope="session")
def b2():
    return build_root_system("B2")


@pytest.fixture(scope="session")
def g2():
    return build_root_system("G2")
