import random
from fractions import Fraction

import pytest

from udnorm.norms import PolygonError, SymmetricPolygon, polygon_from_hull, square
from udnorm.ratlin import Vec2


def octagon() -> SymmetricPolygon:
    return SymmetricPolygon.from_pairs([
        (Vec2.of(1, 0), 1), (Vec2.of(0, 1), 1),
        (Vec2.of(1, 1), Fraction(7, 5)), (Vec2.of(-1, 1), Fraction(7, 5)),
    ])


def twelve_gon() -> SymmetricPolygon:
    return SymmetricPolygon.from_pairs([
        (Vec2.of(1, 0), 1), (Vec2.of(0, 1), 1),
        (Vec2.of(2, 1), Fraction(11, 5)), (Vec2.of(1, 2), Fraction(11, 5)),
        (Vec2.of(-1, 2), Fraction(11, 5)), (Vec2.of(-2, 1), Fraction(11, 5)),
    ])


def random_polygon(rng: random.Random, max_coord: int = 6,
                   points: int = 5) -> SymmetricPolygon:
    """Random valid symmetric polygon: hull of a symmetrized random point set."""
    while True:
        pts = []
        for _ in range(points):
            x = Fraction(rng.randint(-max_coord, max_coord), rng.randint(1, 3))
            y = Fraction(rng.randint(-max_coord, max_coord), rng.randint(1, 3))
            if x == 0 and y == 0:
                continue
            pts.append(Vec2(x, y))
        sym = pts + [-p for p in pts]
        try:
            return polygon_from_hull(sym)
        except PolygonError:
            continue


@pytest.fixture
def square_ball():
    return square()


@pytest.fixture(name="octagon")
def octagon_fixture():
    return octagon()


@pytest.fixture(name="twelve_gon")
def twelve_gon_fixture():
    return twelve_gon()
