from itertools import combinations

import numpy as np
import pytest

from rectcover.builder import (
    build_complete_support,
    build_kernel_less_support,
    delete_vertex_support,
    horizontal_rtree,
    partition_kernel_family,
    rewire_leaf,
    subfamily_support,
    type_leaf_family,
    vertically_blocked_indices,
)
from rectcover.constants import CORNER_DIRECTIONS, NORTH_EAST
from rectcover.exceptions import (
    InvalidInputSupportError,
    NotInKernelError,
    NotMaximalMemberError,
    NotProperError,
)
from rectcover.geom import Rect, polygon_from_rects, polygon_from_vertices
from rectcover.hypergraph import SupportGraph, forced_support_edges, verify_support
from rectcover.instances import (
    LeafAttachmentInstance,
    gen_beta,
    gen_biclique_boundary,
    gen_interior_biclique,
    gen_leaf_attachment,
    gen_random,
)
from rectcover.maxrect import RectFamily, enumerate_maximal
from rectcover.planar import is_planar, planar_with_face

L_SHAPE = [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]
U_SHAPE = [(0, 0), (3, 0), (3, 2), (2, 2), (2, 1), (1, 1), (1, 2), (0, 2)]


def assert_planar_support(poly, fam, graph):
    assert graph.n == len(fam)
    assert verify_support(poly, fam, graph) == []
    assert is_planar(graph)
    assert planar_with_face(graph, graph.outer)
    assert not any(d.startswith("forced non-planar edge") for d in graph.diagnostics)


def assert_complete_support(poly, graph):
    fam = enumerate_maximal(poly)
    assert_planar_support(poly, fam, graph)
    assert graph.outer == vertically_blocked_indices(poly, fam)
    assert "outer face claim dropped" not in graph.diagnostics


class TestHorizontalRTree:
    def test_l_shape_slabs(self):
        """Test that the L splits into its base and its upper arm"""
        tree = horizontal_rtree(polygon_from_vertices(L_SHAPE))
        assert tree.nodes == [Rect(0, 0, 2, 1), Rect(0, 1, 1, 2)]
        assert tree.parent == {0: None, 1: 0}
        assert tree.leaf_order == [1]

    def test_u_shape_slabs(self):
        """Test that both arms of the U hang off its base"""
        tree = horizontal_rtree(polygon_from_vertices(U_SHAPE))
        assert tree.nodes == [Rect(0, 0, 3, 1), Rect(0, 1, 1, 2), Rect(2, 1, 3, 2)]
        assert tree.children(0) == [1, 2]
        assert tree.leaf_order == [2, 1]
        assert len(tree) == 3


class TestTypeLeafFamily:
    def test_upper_arm_of_the_l(self):
        """Test that the column of the L is the Type-1 root of its upper slab"""
        poly = polygon_from_vertices(L_SHAPE)
        smaller = polygon_from_rects([Rect(0, 0, 2, 1)])
        typed = type_leaf_family(smaller, enumerate_maximal(smaller), poly, enumerate_maximal(poly),
                                 Rect(0, 1, 1, 2), Rect(0, 0, 2, 1))
        assert typed.family == [Rect(0, 0, 1, 2)]
        assert typed.type1 == [Rect(0, 0, 1, 2)]
        assert typed.type2 == []
        assert typed.root == Rect(0, 0, 1, 2)
        assert typed.image == {Rect(0, 0, 1, 2): Rect(0, 0, 2, 1)}


class TestLeafAttachment:
    @pytest.fixture
    def attached(self):
        """Create the leaf attachment fixture typed against the polygon without its bottom slab"""
        bundle = gen_leaf_attachment()
        labels = bundle.labels
        smaller = polygon_from_rects(LeafAttachmentInstance.PIECES[1:])
        small_fam = enumerate_maximal(smaller)
        typed = type_leaf_family(smaller, small_fam, bundle.polygon, enumerate_maximal(bundle.polygon),
                                 labels["A"], labels["B"])
        small_graph = build_complete_support(smaller)
        small_edges = {tuple(sorted((small_fam[i], small_fam[j]))) for i, j in small_graph.edges}
        return labels, typed, small_edges

    def test_types(self, attached):
        """Test that the staircases are Type-1 and the spikes Type-2"""
        labels, typed, _ = attached
        assert typed.root == labels["A_up"]
        assert set(typed.type1) == {labels[n] for n in ("A_up", "C", "D", "E", "F", "G", "H")}
        assert set(typed.type2) == {labels[n] for n in ("I", "J", "K", "L", "M", "N", "O")}

    def test_images(self, attached):
        """Test that Type-1 images reach the far wall and Type-2 images are truncations"""
        labels, typed, _ = attached
        assert typed.image[labels["A_up"]] == labels["B"]
        assert typed.image[labels["C"]] == Rect(0, 4, 8, 20)
        assert typed.image[labels["E"]] == Rect(0, 4, 16, 12)
        assert typed.image[labels["F"]] == Rect(20, 4, 36, 12)
        assert typed.image[labels["H"]] == Rect(28, 4, 36, 20)
        assert typed.image[labels["J"]] == Rect(6, 4, 7, 22)
        assert typed.image[labels["M"]] == Rect(21, 4, 22, 15)

    def test_type1_path_and_type2_parents(self, attached):
        """Test the path through the root, the image edges and the reattached spikes"""
        labels, typed, small_edges = attached
        diagnostics = []
        kept, added = rewire_leaf(typed, small_edges, labels["A"], diagnostics)
        added = {frozenset(e) for e in added}
        path = ["C", "D", "E", "A_up", "F", "G", "H"]
        assert {frozenset((labels[a], labels[b])) for a, b in zip(path, path[1:])} <= added
        assert {frozenset((labels[n], typed.image[labels[n]])) for n in path} <= added
        parents = [("C", "I"), ("D", "K"), ("F", "M"), ("G", "N")]
        assert {frozenset((labels[p], labels[c])) for p, c in parents} <= added
        assert not any(frozenset((labels[a], labels[b])) in added for a, b in [("C", "J"), ("D", "L"), ("G", "O")])
        assert diagnostics == []

    def test_truncations_take_over_their_images(self, attached):
        """Test that no edge of the rewired support still names a Type-2 image"""
        labels, typed, small_edges = attached
        kept, added = rewire_leaf(typed, small_edges, labels["A"], [])
        images = {typed.image[c] for c in typed.type2}
        assert not any(a in images or b in images for a, b in kept | added)


class TestBuildCompleteSupport:
    def test_l_shape(self):
        """Test that the two bars of the L are joined"""
        poly = polygon_from_vertices(L_SHAPE)
        graph = build_complete_support(poly)
        assert graph.edges == ((0, 1),)
        assert_planar_support(poly, enumerate_maximal(poly), graph)

    def test_u_shape(self):
        """Test that the U support holds both forced edges with every rectangle outside"""
        poly = polygon_from_vertices(U_SHAPE)
        fam = enumerate_maximal(poly)
        graph = build_complete_support(poly)
        assert forced_support_edges(poly, fam) <= set(graph.edges)
        assert graph.outer == vertically_blocked_indices(poly, fam) == (0, 1, 2)
        assert_planar_support(poly, fam, graph)

    def test_single_rectangle(self):
        """Test the support of a rectangular polygon"""
        poly = polygon_from_vertices([(0, 0), (3, 0), (3, 2), (0, 2)])
        graph = build_complete_support(poly)
        assert graph == SupportGraph(1, (), graph.outer)

    @pytest.mark.parametrize("n_vertices", [6, 8])
    @pytest.mark.parametrize("seed", range(6))
    def test_random_small_polygons(self, n_vertices, seed):
        """Test planar supports on small random polygons"""
        poly = gen_random(n_vertices, 8, seed)
        assert_complete_support(poly, build_complete_support(poly))

    @pytest.mark.parametrize("seed", range(4))
    def test_random_ten_vertex_polygons(self, seed):
        """Test that supports on larger random polygons are planar with the blocked rectangles outside"""
        poly = gen_random(10, 8, seed)
        assert_complete_support(poly, build_complete_support(poly))

    @pytest.mark.parametrize("n_vertices", [12, 14, 16])
    @pytest.mark.parametrize("seed", range(5))
    def test_random_large_polygons(self, n_vertices, seed):
        """Test that the slab induction never forces a non-planar edge or loses the outer face"""
        poly = gen_random(n_vertices, 12, seed)
        assert_complete_support(poly, build_complete_support(poly))

    def test_leaf_attachment_polygon(self):
        """Test the complete support of the leaf attachment fixture"""
        poly = gen_leaf_attachment().polygon
        assert_complete_support(poly, build_complete_support(poly))

    @pytest.mark.parametrize("bundle", [gen_beta(2), gen_interior_biclique(3), gen_biclique_boundary()],
                             ids=["beta", "interior-biclique", "biclique"])
    def test_instance_families(self, bundle):
        """Test supports of the named instance families"""
        poly = bundle.polygon
        assert verify_support(poly, enumerate_maximal(poly), build_complete_support(poly)) == []


class TestKernelPartition:
    @pytest.fixture
    def biclique(self):
        """Create the biclique fixture with the kernel square appended last"""
        bundle = gen_biclique_boundary()
        return bundle.polygon, bundle.family.with_rect(bundle.labels["R_c"])

    def test_bars_split_around_the_kernel(self, biclique):
        """Test that the four columns are vertical and the four rows horizontal"""
        poly, fam = biclique
        part = partition_kernel_family(poly, fam, 8)
        assert part.vertical == [0, 1, 2, 3]
        assert part.horizontal == [4, 5, 6, 7]
        assert part.vertical_max == [0, 1, 2, 3]
        assert part.horizontal_min == [7, 6, 5, 4]
        assert all(part.corners[d] == [] for d in CORNER_DIRECTIONS)
        assert part.dominators == {}
        assert part.members() == list(range(8))

    def test_center_out_of_range(self, biclique):
        """Test that the center must index the family"""
        poly, fam = biclique
        with pytest.raises(NotInKernelError):
            partition_kernel_family(poly, fam, 9)

    def test_center_outside_kernel(self):
        """Test that an arm of the U is not a kernel rectangle"""
        poly = polygon_from_vertices(U_SHAPE)
        with pytest.raises(NotInKernelError):
            partition_kernel_family(poly, enumerate_maximal(poly), 0)

    def test_family_not_proper(self):
        """Test that two separated arms cannot be partitioned"""
        poly = polygon_from_vertices(U_SHAPE)
        fam = RectFamily([Rect(0, 0, 1, 2), Rect(2, 1, 3, 2)], poly)
        with pytest.raises(NotProperError):
            partition_kernel_family(poly, fam, 0)

    def test_kernel_less_support(self, biclique):
        """Test the support of the eight bars once the kernel square is gone"""
        poly, fam = biclique
        graph = build_kernel_less_support(poly, fam, 8)
        bars = fam.without(8)
        assert graph.n == 8
        assert verify_support(poly, bars, graph) == []
        assert is_planar(graph)

    def test_corner_joins_aligned_inner_column(self):
        """Test that a corner meeting a top-aligned inner column is joined to it directly"""
        rects = [
            Rect(4, -4, 8, 20),
            Rect(12, -4, 14, 20),
            Rect(-4, 8, 24, 12),
            Rect(6, 16, 24, 24),
            Rect(0, 0, 20, 20),
        ]
        poly = polygon_from_rects(rects)
        fam = RectFamily(rects, poly)
        part = partition_kernel_family(poly, fam, 4)
        assert part.vertical_max == [0, 1]
        assert part.horizontal_min == [2]
        assert part.corners[NORTH_EAST] == [3]
        graph = build_kernel_less_support(poly, fam, 4)
        assert graph.edges == ((0, 3),)
        assert not any(d.startswith("completion edge") for d in graph.diagnostics)


class TestDeleteVertexSupport:
    @pytest.fixture
    def u_shape(self):
        """Create the U polygon, its family and complete support"""
        poly = polygon_from_vertices(U_SHAPE)
        return poly, enumerate_maximal(poly), build_complete_support(poly)

    @pytest.mark.parametrize("victim", [0, 1, 2])
    def test_delete_each_rectangle(self, u_shape, victim):
        """Test that removing any rectangle leaves a planar support"""
        poly, fam, graph = u_shape
        result = delete_vertex_support(poly, fam, graph, victim)
        rest = fam.without(victim)
        assert verify_support(poly, rest, result) == []
        assert is_planar(result)

    def test_invalid_input_support(self, u_shape):
        """Test that a graph missing forced edges is rejected"""
        poly, fam, _ = u_shape
        with pytest.raises(InvalidInputSupportError):
            delete_vertex_support(poly, fam, SupportGraph(3), 0)

    def test_victim_out_of_range(self, u_shape):
        """Test that the victim must index the family"""
        poly, fam, graph = u_shape
        with pytest.raises(ValueError, match="out of range"):
            delete_vertex_support(poly, fam, graph, 3)


class TestSubfamilySupport:
    def test_vertices_follow_subset_order(self):
        """Test that vertex i of the result is member i of the subset"""
        poly = polygon_from_vertices(U_SHAPE)
        fam = enumerate_maximal(poly)
        graph = subfamily_support(poly, fam.subset([2, 1]))
        assert graph.n == 2
        assert graph.edges == ((0, 1),)

    def test_non_maximal_member_raises_error(self):
        """Test that every member must be maximal"""
        poly = polygon_from_vertices(L_SHAPE)
        with pytest.raises(NotMaximalMemberError):
            subfamily_support(poly, RectFamily([Rect(0, 0, 1, 1)], poly))

    @pytest.mark.parametrize("seed", range(4))
    def test_random_subfamilies(self, seed):
        """Test planar supports for proper subfamilies of random polygons"""
        poly = gen_random(8, 8, seed)
        fam = enumerate_maximal(poly)
        subsets = [s for size in range(1, len(fam)) for s in combinations(range(len(fam)), size)]
        for indices in subsets[:12]:
            sub = fam.subset(indices)
            graph = subfamily_support(poly, sub)
            assert verify_support(poly, sub, graph) == []
            assert is_planar(graph)
            assert not any(d.startswith("forced non-planar edge") for d in graph.diagnostics)

    @pytest.mark.parametrize("n_vertices", [12, 16])
    @pytest.mark.parametrize("seed", range(50))
    def test_sampled_subfamilies_of_larger_polygons(self, n_vertices, seed):
        """Test ten sampled subfamilies per polygon for planar supports without forced edges"""
        poly = gen_random(n_vertices, 12, seed)
        fam = enumerate_maximal(poly)
        rng = np.random.default_rng(seed)
        for _ in range(10):
            size = int(rng.integers(1, len(fam) + 1))
            indices = sorted(int(i) for i in rng.choice(len(fam), size=size, replace=False))
            sub = fam.subset(indices)
            graph = subfamily_support(poly, sub)
            assert verify_support(poly, sub, graph) == []
            assert is_planar(graph)
            assert not any(d.startswith("forced non-planar edge") for d in graph.diagnostics)
