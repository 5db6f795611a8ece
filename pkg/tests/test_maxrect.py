import pytest

from rectcover.constants import BOTTOM, LEFT, RIGHT, TOP
from rectcover.exceptions import NotContainedError
from rectcover.geom import Rect, polygon_from_rects, polygon_from_vertices
from rectcover.instances import gen_random
from rectcover.maxrect import (
    RectFamily,
    blockers,
    enumerate_maximal,
    extension,
    is_maximal,
    is_vertically_blocked,
)

L_SHAPE = [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]
U_SHAPE = [(0, 0), (3, 0), (3, 2), (2, 2), (2, 1), (1, 1), (1, 2), (0, 2)]


def brute_force_maximal(poly):
    """Every integer rectangle inside poly that cannot grow by one unit"""
    x1, y1, x2, y2 = poly.bbox
    found = []
    for a in range(x1, x2):
        for b in range(a + 1, x2 + 1):
            for c in range(y1, y2):
                for d in range(c + 1, y2 + 1):
                    r = Rect(a, c, b, d)
                    if not poly.contains_rect(r):
                        continue
                    grown = [
                        (a - 1, c, b, d), (a, c - 1, b, d), (a, c, b + 1, d), (a, c, b, d + 1),
                    ]
                    if not any(
                        x1 <= g[0] and g[2] <= x2 and y1 <= g[1] and g[3] <= y2 and poly.contains_rect(Rect(*g))
                        for g in grown
                    ):
                        found.append(r)
    return sorted(found)


class TestEnumerateMaximal:
    def test_l_shape(self):
        """Test the two bars of the L shape"""
        fam = enumerate_maximal(polygon_from_vertices(L_SHAPE))
        assert list(fam) == [Rect(0, 0, 1, 2), Rect(0, 0, 2, 1)]

    def test_u_shape(self):
        """Test the base and the two arms of the U shape"""
        fam = enumerate_maximal(polygon_from_vertices(U_SHAPE))
        assert list(fam) == [Rect(0, 0, 1, 2), Rect(0, 0, 3, 1), Rect(2, 0, 3, 2)]

    def test_rectangle_is_its_own_family(self):
        """Test that a rectangular polygon has one maximal rectangle"""
        poly = polygon_from_vertices([(0, 0), (4, 0), (4, 3), (0, 3)])
        assert list(enumerate_maximal(poly)) == [Rect(0, 0, 4, 3)]

    def test_cross(self):
        """Test the two crossing bars of a plus sign"""
        poly = polygon_from_rects([Rect(1, 0, 2, 3), Rect(0, 1, 3, 2)])
        assert list(enumerate_maximal(poly)) == [Rect(0, 1, 3, 2), Rect(1, 0, 2, 3)]

    @pytest.mark.parametrize("n_vertices", [6, 8, 10])
    @pytest.mark.parametrize("seed", [0, 1, 2, 3])
    def test_matches_brute_force(self, n_vertices, seed):
        """Test enumeration against an exhaustive integer search on random polygons"""
        poly = gen_random(n_vertices, 6, seed)
        fam = enumerate_maximal(poly)
        assert list(fam) == brute_force_maximal(poly)
        assert all(is_maximal(poly, r) for r in fam)

    @pytest.mark.parametrize("n_vertices", [4, 6, 8, 10, 12])
    @pytest.mark.parametrize("seed", range(40))
    def test_matches_brute_force_on_a_twelve_grid(self, n_vertices, seed):
        """Test enumeration against the exhaustive search on two hundred random polygons"""
        poly = gen_random(n_vertices, 12, seed)
        assert list(enumerate_maximal(poly)) == brute_force_maximal(poly)


class TestRectFamily:
    @pytest.fixture
    def l_shape(self):
        """Create the L-shaped polygon"""
        return polygon_from_vertices(L_SHAPE)

    def test_duplicate_raises_error(self, l_shape):
        """Test that a family cannot repeat a rectangle"""
        with pytest.raises(ValueError, match="duplicate"):
            RectFamily([Rect(0, 0, 1, 2), Rect(0, 0, 1, 2)], l_shape)

    def test_outside_rect_raises_error(self, l_shape):
        """Test that members must lie inside the polygon"""
        with pytest.raises(NotContainedError):
            RectFamily([Rect(1, 1, 2, 2)], l_shape)

    def test_indexing(self, l_shape):
        """Test stable indices, subsets and removal"""
        fam = enumerate_maximal(l_shape)
        assert fam.index_of(Rect(0, 0, 2, 1)) == 1
        assert list(fam.without(0)) == [Rect(0, 0, 2, 1)]
        assert list(fam.subset([1, 0])) == [Rect(0, 0, 2, 1), Rect(0, 0, 1, 2)]
        assert list(fam.with_rect(Rect(0, 0, 1, 1)))[-1] == Rect(0, 0, 1, 1)
        with pytest.raises(ValueError, match="not a family member"):
            fam.index_of(Rect(0, 0, 1, 1))


class TestBlockersAndExtension:
    @pytest.fixture
    def l_shape(self):
        """Create the L-shaped polygon"""
        return polygon_from_vertices(L_SHAPE)

    def test_maximal_rect_is_blocked_on_every_side(self, l_shape):
        """Test blockers of a maximal rectangle, corner points dropped"""
        found = blockers(l_shape, Rect(0, 0, 1, 2))
        assert found.all_sides_blocked()
        assert found.top == [(0, 1)]
        assert found.right == [(1, 2)]

    def test_non_maximal_rect_has_free_side(self, l_shape):
        """Test that the unit square in the corner of the L is free on two sides"""
        found = blockers(l_shape, Rect(0, 0, 1, 1))
        assert found.right == []
        assert found.top == []
        assert not is_maximal(l_shape, Rect(0, 0, 1, 1))

    def test_blockers_outside_raises_error(self, l_shape):
        """Test that blockers need a contained rectangle"""
        with pytest.raises(NotContainedError):
            blockers(l_shape, Rect(0, 0, 2, 2))

    def test_extension(self, l_shape):
        """Test growing the unit square in each direction"""
        square = Rect(0, 0, 1, 1)
        assert extension(l_shape, square, TOP) == Rect(0, 0, 1, 2)
        assert extension(l_shape, square, RIGHT) == Rect(0, 0, 2, 1)
        assert extension(l_shape, square, LEFT) == square
        assert extension(l_shape, square, BOTTOM) == square

    def test_unsupported_direction(self, l_shape):
        """Test that an unknown direction raises a ValueError"""
        with pytest.raises(ValueError, match="Unsupported direction"):
            extension(l_shape, Rect(0, 0, 1, 1), "up")

    def test_vertically_blocked(self):
        """Test that the base of the U is blocked and the middle bar of an S is not"""
        u_shape = polygon_from_vertices(U_SHAPE)
        assert is_vertically_blocked(u_shape, Rect(0, 0, 3, 1))
        s_shape = polygon_from_rects([Rect(0, 2, 2, 3), Rect(0, 1, 3, 2), Rect(1, 0, 3, 1)])
        assert is_maximal(s_shape, Rect(0, 1, 3, 2))
        assert not is_vertically_blocked(s_shape, Rect(0, 1, 3, 2))
