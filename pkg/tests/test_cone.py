import random
from fractions import Fraction

import pytest

from oracles import in_cone, leibniz_det, parallelepiped, random_pointed_cone, random_simplicial_cone
from toricres.cone import (
    ConeError,
    Cone,
    contains,
    faces,
    gorenstein_functional,
    height_functional,
    is_full_dimensional,
    make_cone,
    meet_properly,
    multiplicity,
    parallelepiped_points,
    placing_triangulation,
)

E3 = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
C113 = [(1, 0, 0), (0, 1, 0), (1, 1, 3)]
E4 = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)]
SQUARE = [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]


def test_make_cone_drops_redundant_and_primitivizes():
    assert make_cone([(1, 0), (0, 1), (1, 1)]).rays == ((0, 1), (1, 0))
    assert make_cone([(2, 0), (0, 3)]).rays == ((0, 1), (1, 0))
    assert make_cone([(1, 1), (2, 2), (1, 0)]).rays == ((1, 0), (1, 1))


def test_make_cone_errors():
    with pytest.raises(ConeError):
        make_cone([(1, 0), (-1, 0), (0, 1)])
    with pytest.raises(ConeError):
        make_cone([], 2)


def test_make_cone_rays_are_sorted():
    c = make_cone([(1, 1, 3), (0, 1, 0), (1, 0, 0)])
    assert list(c.rays) == sorted(c.rays)


def test_full_dimensional():
    assert is_full_dimensional(make_cone(E3))
    assert not is_full_dimensional(make_cone([(1, 0, 0), (0, 1, 0)]))
    assert is_full_dimensional(make_cone(E4 + [(1, 3, 4, 7)]))


def test_faces_counts():
    assert len(faces(make_cone([(1, 0), (1, 2)]))) == 4
    assert len(faces(make_cone(E3))) == 8
    assert len(faces(make_cone([(1, 2)]))) == 2
    with pytest.raises(ConeError):
        faces(make_cone(SQUARE))


def test_multiplicity_examples():
    assert multiplicity(make_cone(E3)) == 1
    assert multiplicity(make_cone(C113)) == 3
    assert multiplicity(make_cone(E4 + [(1, 3, 4, 7)])) == 7
    # lower-dimensional: index of the generated sublattice in its saturation
    assert multiplicity(make_cone([(1, 0, 0), (1, 2, 0)])) == 2
    with pytest.raises(ConeError):
        multiplicity(make_cone(SQUARE))


def test_parallelepiped_examples():
    assert parallelepiped_points(make_cone(E3)) == [(0, 0, 0)]
    assert sorted(parallelepiped_points(make_cone(C113))) == [(0, 0, 0), (1, 1, 1), (1, 1, 2)]
    pts = parallelepiped_points(make_cone(E4 + [(1, 1, 2, 3)]))
    assert sorted(pts) == [(0, 0, 0, 0), (1, 1, 1, 1), (1, 1, 2, 2)]
    assert pts[0] == (0, 0, 0, 0)


def test_parallelepiped_matches_box_enumeration():
    rng = random.Random(11)
    for _ in range(25):
        d = rng.randint(2, 3)
        c = random_simplicial_cone(rng, d, 3)
        assert sorted(parallelepiped_points(c)) == parallelepiped(list(c.rays))
        assert len(parallelepiped_points(c)) == multiplicity(c) == abs(leibniz_det(c.rays))


def test_height_functional_examples():
    assert height_functional(make_cone(E3)) == (1, 1, 1)
    assert height_functional(make_cone([(1, 0, 0), (0, 1, 0), (1, 1, 1)])) == (1, 1, -1)
    assert height_functional(make_cone([(1, 0), (1, 2)])) == (1, 0)
    with pytest.raises(ConeError):
        height_functional(make_cone(SQUARE))


def test_gorenstein_functional_examples():
    assert gorenstein_functional(make_cone(E3)) == ((1, 1, 1), 1)
    assert gorenstein_functional(make_cone(SQUARE)) == ((0, 0, 1), 1)
    assert gorenstein_functional(make_cone(C113)) == ((1, 1, Fraction(-1, 3)), 3)
    # (1,0,1) forces m_3 = 0 while (0,2,1) forces m_3 = -1
    c = make_cone([(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 2, 1)])
    assert len(c.rays) == 4
    assert gorenstein_functional(c) is None


def test_gorenstein_functional_is_one_on_rays():
    rng = random.Random(3)
    for _ in range(40):
        c = random_pointed_cone(rng, 3, 3, 4, nonneg=True)
        g = gorenstein_functional(c)
        if g is None:
            continue
        m, index = g
        assert all(sum(a * b for a, b in zip(m, r)) == 1 for r in c.rays)
        assert all((index * x).denominator == 1 for x in m)
        assert all(any((k * x).denominator != 1 for x in m) for k in range(1, index))


def test_contains_examples():
    c = make_cone(C113)
    assert contains(c, (1, 1, 1))
    assert not contains(c, (0, 0, 1))
    assert all(contains(c, r) for r in c.rays)


def test_contains_matches_caratheodory_oracle():
    rng = random.Random(7)
    for _ in range(30):
        c = random_pointed_cone(rng, 3, 3, 5)
        for _ in range(8):
            v = tuple(rng.randint(-3, 3) for _ in range(3))
            assert contains(c, v) == in_cone(list(c.rays), v), (c, v)


def test_placing_triangulation_cells_are_simplices_of_rays():
    c = make_cone(SQUARE)
    cells = placing_triangulation(c)
    assert len(cells) == 2
    assert all(len(cell) == 3 for cell in cells)


def test_meet_properly():
    a = make_cone([(1, 0), (1, 1)])
    b = make_cone([(1, 1), (0, 1)])
    assert meet_properly(a, b)
    assert not meet_properly(make_cone([(1, 0), (0, 1)]), make_cone([(1, 1), (1, -1)]))
    # two diagonals of the unit square cross in their relative interiors
    d1 = make_cone([(0, 0, 1), (1, 1, 1)])
    d2 = make_cone([(1, 0, 1), (0, 1, 1)])
    assert not meet_properly(d1, d2)


def test_cone_is_frozen():
    c = make_cone(E3)
    assert isinstance(c, Cone)
    with pytest.raises(AttributeError):
        c.rank = 4
