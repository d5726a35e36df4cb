import numpy as np
import pytest

from errors import DimensionMismatchError, EmptyBaseError, ParseError
from geometry import (
    TowerDescriptor,
    add,
    ball,
    ball_enumerate,
    bounding_box,
    box_cells,
    format_vector,
    norm,
    parse_vector,
    tower_contains,
    unit,
)


def test_norm():
    assert norm((3, -4)) == 4
    assert norm((0, 0, 0)) == 0
    assert norm((-7,)) == 7


def test_ball_sizes():
    assert len(ball(1, 2)) == 9
    assert len(ball(2, 1)) == 5
    assert ball(0, 3) == ((0, 0, 0),)
    # two far apart centres give two disjoint 3x3 blocks
    assert len(ball_enumerate(1, [(0, 0), (3, 0)])) == 18
    # overlapping blocks merge
    assert len(ball_enumerate(1, [(0, 0), (1, 0)])) == 12


def test_ball_is_sorted_and_contains_centres():
    cells = ball_enumerate(2, [(5, -1)])
    assert list(cells) == sorted(cells)
    assert (5, -1) in cells
    assert all(norm((a - 5, b + 1)) <= 2 for a, b in cells)


def test_ball_of_empty_set():
    with pytest.raises(EmptyBaseError):
        ball_enumerate(1, [])


def test_vector_arithmetic():
    assert add((1, 2), (3, -5)) == (4, -3)
    assert unit(3, 1, 4) == (0, 4, 0)
    with pytest.raises(DimensionMismatchError):
        add((1, 2), (1,))


def test_bounding_box_and_box_cells():
    lo, hi = bounding_box([(1, 5), (-2, 3), (0, 7)])
    assert lo == (-2, 3)
    assert hi == (1, 7)
    assert box_cells((0, 0), (1, 1)) == ((0, 0), (0, 1), (1, 0), (1, 1))


def test_tower_membership():
    tower = TowerDescriptor(1, 2, ((0, 0),))
    # unbounded along the tower axis
    assert tower_contains(tower, (2, 1000))
    assert tower_contains(tower, (-2, -1000))
    assert not tower_contains(tower, (3, 0))
    assert tower.contains((1, 7))


def test_tower_with_several_base_vectors():
    tower = TowerDescriptor(0, 0, ((0, 0, 0), (0, 5, 5)))
    assert tower_contains(tower, (99, 5, 5))
    assert not tower_contains(tower, (0, 5, 4))


def test_tower_needs_a_base():
    with pytest.raises(EmptyBaseError):
        TowerDescriptor(0, 1, ())


def test_format_and_parse_vectors():
    assert format_vector((3, -4)) == '(3,-4)'
    assert parse_vector('(3,-4)') == (3, -4)
    assert parse_vector(' ( 7 ) ') == (7,)
    with pytest.raises(ParseError):
        parse_vector('3,-4')
    with pytest.raises(ParseError) as info:
        parse_vector('(1,2)', dim=3, line=12)
    assert 'line 12' in str(info.value)


def random_vectors(rng, dim, count, spread=6):
    return [tuple(int(a) for a in rng.integers(-spread, spread + 1, size=dim)) for _ in range(count)]


def test_single_ball_has_odd_side():
    rng = np.random.default_rng(3)
    for dim in range(1, 5):
        for k in range(4):
            v = random_vectors(rng, dim, 1)[0]
            cells = ball_enumerate(k, [v])
            assert len(cells) == (2 * k + 1) ** dim
            assert len(set(cells)) == len(cells)


def test_balls_grow_and_sit_in_every_tower():
    rng = np.random.default_rng(8)
    for _ in range(50):
        dim = int(rng.integers(1, 4))
        k = int(rng.integers(0, 3))
        base = random_vectors(rng, dim, int(rng.integers(1, 4)))
        inner = set(ball_enumerate(k, base))
        assert inner <= set(ball_enumerate(k + 1, base))
        for j in range(dim):
            tower = TowerDescriptor(j, k, tuple(base))
            assert all(tower_contains(tower, u) for u in inner)


def test_tower_membership_ignores_moves_along_its_axis():
    rng = np.random.default_rng(21)
    for _ in range(100):
        dim = int(rng.integers(1, 4))
        j = int(rng.integers(0, dim))
        tower = TowerDescriptor(j, int(rng.integers(0, 3)), tuple(random_vectors(rng, dim, 2)))
        u = random_vectors(rng, dim, 1, spread=9)[0]
        inside = tower_contains(tower, u)
        for length in (1, -1, 1000, -1000):
            assert tower_contains(tower, add(u, unit(dim, j, length))) == inside
