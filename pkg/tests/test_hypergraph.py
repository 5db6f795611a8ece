import pytest

from rectcover.builder import build_complete_support
from rectcover.exceptions import EmptyKernelError
from rectcover.geom import Point, Rect, polygon_from_vertices
from rectcover.hypergraph import (
    BoundaryWitnessExtractor,
    CornerWitnessExtractor,
    CoverTarget,
    HyperedgeIndex,
    InteriorWitnessExtractor,
    SupportGraph,
    WitnessExtractorFactory,
    forced_support_edges,
    hyperedge,
    intersection_support,
    is_proper,
    kernel,
    star_graph,
    verify_support,
    witness_points,
)
from rectcover.instances import gen_random
from rectcover.maxrect import RectFamily, enumerate_maximal

L_SHAPE = [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]
U_SHAPE = [(0, 0), (3, 0), (3, 2), (2, 2), (2, 1), (1, 1), (1, 2), (0, 2)]


@pytest.fixture
def l_shape():
    """Create the L-shaped polygon"""
    return polygon_from_vertices(L_SHAPE)


@pytest.fixture
def l_family(l_shape):
    """Create the maximal family of the L shape"""
    return enumerate_maximal(l_shape)


class TestSupportGraph:
    def test_edges_are_canonical(self):
        """Test that edges are deduplicated, ordered and sorted"""
        graph = SupportGraph(3, ((2, 0), (0, 2), (1, 0)))
        assert graph.edges == ((0, 1), (0, 2))
        assert graph.neighbors(0) == [1, 2]
        assert graph.degree(1) == 1

    def test_loop_raises_error(self):
        """Test that loops are rejected"""
        with pytest.raises(ValueError, match="loop"):
            SupportGraph(2, ((1, 1),))

    def test_out_of_range_raises_error(self):
        """Test that edges must stay inside the vertex range"""
        with pytest.raises(ValueError, match="out of range"):
            SupportGraph(2, ((0, 2),))

    def test_networkx_round_trip(self):
        """Test conversion to and from networkx"""
        graph = SupportGraph(4, ((0, 1), (2, 3)), (0, 3))
        again = SupportGraph.from_networkx(graph.to_networkx(), graph.outer)
        assert again == graph

    def test_star_graph(self):
        """Test the star around a center"""
        assert star_graph(3, 1).edges == ((0, 1), (1, 2))


class TestWitnessExtractorFactory:
    def test_extractor_classes(self, l_shape, l_family):
        """Test that each target maps to its extractor"""
        get = WitnessExtractorFactory.get_witness_extractor
        assert isinstance(get(l_shape, l_family, "boundary"), BoundaryWitnessExtractor)
        assert isinstance(get(l_shape, l_family, CoverTarget.CORNER), CornerWitnessExtractor)
        assert isinstance(get(l_shape, l_family, "interior"), InteriorWitnessExtractor)

    def test_unsupported_target_raises_error(self, l_shape, l_family):
        """Test that an unknown target raises a ValueError"""
        with pytest.raises(ValueError, match="Unsupported cover target"):
            WitnessExtractorFactory.get_witness_extractor(l_shape, l_family, "volume")


class TestWitnessPoints:
    def test_boundary_witnesses(self, l_shape, l_family):
        """Test vertices, side-line crossings and midpoints of the L shape"""
        witnesses = witness_points(l_shape, l_family, CoverTarget.BOUNDARY)
        assert len(witnesses) == 16
        assert Point.from_grid(1, 0) in witnesses.points
        assert Point(3, 0) in witnesses.points

    def test_corner_witnesses(self, l_shape, l_family):
        """Test that corner witnesses are the vertices"""
        witnesses = witness_points(l_shape, l_family, CoverTarget.CORNER)
        assert sorted(witnesses.points) == sorted(Point.from_grid(x, y) for x, y in L_SHAPE)

    def test_interior_witnesses(self, l_shape, l_family):
        """Test that interior witnesses skip the notch of the L"""
        witnesses = witness_points(l_shape, l_family, CoverTarget.INTERIOR)
        assert len(witnesses) == 21
        assert Point(3, 3) not in witnesses.points

    def test_hyperedge(self, l_family):
        """Test the rectangles holding a point"""
        assert hyperedge(l_family, Point.from_grid(1, 1)) == frozenset({0, 1})
        assert hyperedge(l_family, Point.from_grid(2, 0)) == frozenset({1})


class TestHyperedgeIndex:
    def test_groups(self, l_shape, l_family):
        """Test that witnesses fall into three distinct hyperedges"""
        index = HyperedgeIndex.build(l_shape, l_family, CoverTarget.BOUNDARY)
        assert set(index.groups) == {frozenset({0}), frozenset({1}), frozenset({0, 1})}
        assert index.multi_edges() == [frozenset({0, 1})]
        assert len(index.groups[frozenset({0, 1})]) == 6

    def test_column_masks(self, l_shape, l_family):
        """Test that the column masks together hold every witness"""
        index = HyperedgeIndex.build(l_shape, l_family, CoverTarget.BOUNDARY)
        masks = index.column_masks()
        assert masks[0] | masks[1] == (1 << 16) - 1
        assert bin(masks[0] & masks[1]).count("1") == 6


class TestVerifySupport:
    def test_empty_graph_is_not_a_support(self, l_shape, l_family):
        """Test that each shared witness is reported"""
        violations = verify_support(l_shape, l_family, SupportGraph(2))
        assert len(violations) == 6
        assert violations[0].point == Point(0, 0)
        assert violations[0].components == ((0,), (1,))

    def test_single_edge_is_a_support(self, l_shape, l_family):
        """Test that joining the two bars fixes every witness"""
        assert verify_support(l_shape, l_family, SupportGraph(2, ((0, 1),))) == []

    def test_vertex_count_mismatch(self, l_shape, l_family):
        """Test that the graph must match the family size"""
        with pytest.raises(ValueError, match="vertices"):
            verify_support(l_shape, l_family, SupportGraph(3))

    def test_intersection_support(self, l_shape, l_family):
        """Test that the intersection graph of the L is a single edge"""
        graph = intersection_support(l_shape, l_family)
        assert graph.edges == ((0, 1),)
        assert forced_support_edges(l_shape, l_family) == {(0, 1)}

    @pytest.mark.parametrize("seed", range(5))
    def test_refined_grid_gives_the_same_verdicts(self, seed):
        """Test that scaling the polygon by four never changes whether a graph is a support"""
        poly = gen_random(10, 8, seed)
        fam = enumerate_maximal(poly)
        scaled = polygon_from_vertices([(4 * x, 4 * y) for x, y in poly.vertices])
        scaled_fam = RectFamily([Rect(4 * r.x1, 4 * r.y1, 4 * r.x2, 4 * r.y2) for r in fam], scaled)
        graph = build_complete_support(poly)
        candidates = [graph] + [
            SupportGraph(graph.n, tuple(e for e in graph.edges if e != dropped)) for dropped in graph.edges
        ]
        for candidate in candidates:
            assert bool(verify_support(poly, fam, candidate)) == bool(verify_support(scaled, scaled_fam, candidate))


class TestKernel:
    def test_u_shape_kernel(self):
        """Test that the base of the U is its kernel"""
        poly = polygon_from_vertices(U_SHAPE)
        fam = enumerate_maximal(poly)
        assert kernel(poly, fam) == frozenset({1})
        assert is_proper(poly, fam)

    def test_no_shared_witness_gives_whole_family(self):
        """Test that the two arms of the U alone have the whole family as kernel"""
        poly = polygon_from_vertices(U_SHAPE)
        fam = RectFamily([Rect(0, 0, 1, 2), Rect(2, 0, 3, 2)], poly)
        assert kernel(poly, fam) == frozenset({0, 1})

    def test_empty_kernel_raises_error(self):
        """Test that properness needs a kernel"""
        poly = polygon_from_vertices(U_SHAPE)
        fam = RectFamily([Rect(0, 0, 1, 2), Rect(0, 0, 2, 1), Rect(2, 0, 3, 2), Rect(1, 0, 3, 1)], poly)
        assert kernel(poly, fam) == frozenset()
        with pytest.raises(EmptyKernelError):
            is_proper(poly, fam)
