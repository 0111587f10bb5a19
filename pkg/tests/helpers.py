"""Small shared builders for the test suite.

Random instances here are deliberately hand-rolled rather than routed
through the package's own generators, so the property tests exercise the
library against independently constructed inputs.
"""

import random
from fractions import Fraction

from dintervals import Point, PointSet, TraceSet


def p6() -> PointSet:
    """Two levels, coords 0/1/2 on each: the running example ground set."""
    coords = (Fraction(0), Fraction(1), Fraction(2))
    return PointSet(2, (coords, coords))


def random_ground(rng: random.Random, d: int, max_per_level: int = 6) -> PointSet:
    levels = []
    for _ in range(d):
        n = rng.randrange(0, max_per_level + 1)
        denom = rng.choice([1, 1, 2, 3])
        coords = rng.sample(range(-8, 9), n)
        levels.append(tuple(sorted(Fraction(c, denom) for c in coords)))
    return PointSet(d, tuple(levels))


def random_trace(rng: random.Random, ground: PointSet, empty_bias: float = 0.3) -> TraceSet:
    runs = []
    for lvl in range(1, ground.d + 1):
        n = len(ground.level_coords(lvl))
        if n == 0 or rng.random() < empty_bias:
            runs.append(None)
            continue
        first = rng.randrange(n)
        runs.append((first, rng.randrange(first, n)))
    return TraceSet(ground, tuple(runs))


def random_family(rng: random.Random, ground: PointSet, size: int) -> list[TraceSet]:
    return [random_trace(rng, ground) for _ in range(size)]


def random_subset(rng: random.Random, ground: PointSet) -> list[Point]:
    pts = list(ground.points())
    return rng.sample(pts, rng.randrange(0, len(pts) + 1)) if pts else []
