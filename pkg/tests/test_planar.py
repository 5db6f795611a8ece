import networkx as nx
import pytest

from rectcover.exceptions import NotRootError
from rectcover.hypergraph import SupportGraph
from rectcover.planar import (
    LrColoring,
    NonPlanar,
    coloring_violations,
    dfs_orient,
    fork_constraints,
    is_planar,
    lr_coloring,
    lr_planarity,
    planar_with_face,
    shortcut_cotree,
)


def as_support(graph: nx.Graph) -> SupportGraph:
    return SupportGraph.from_networkx(nx.convert_node_labels_to_integers(graph))


class TestDfsOrient:
    @pytest.fixture
    def k4(self):
        """Create the complete graph on four vertices"""
        return as_support(nx.complete_graph(4))

    def test_tree_and_cotree_edges(self, k4):
        """Test the deterministic orientation of K4 from vertex 0"""
        orient = dfs_orient(k4, 0)
        assert orient.tree_edges == [(0, 1), (1, 2), (2, 3)]
        assert orient.cotree_edges == [(2, 0), (3, 0), (3, 1)]
        assert orient.height == {0: 0, 1: 1, 2: 2, 3: 3}
        assert orient.subtree_child(0, 3) == 1

    def test_lowpoints(self, k4):
        """Test lowpoints of tree and cotree edges"""
        orient = dfs_orient(k4, 0)
        assert orient.lowpt((1, 2)) == 0
        assert orient.lowpt((2, 3)) == 0
        assert orient.lowpt((3, 1)) == 1
        assert orient.lowpt((0, 1)) == 0

    def test_unreached_vertices(self):
        """Test that other components are listed as unreached"""
        orient = dfs_orient(SupportGraph(4, ((0, 1),)), 0)
        assert orient.unreached == (2, 3)

    def test_root_out_of_range(self, k4):
        """Test that the root must be a vertex"""
        with pytest.raises(ValueError, match="out of range"):
            dfs_orient(k4, 7)


class TestLrPlanarity:
    def test_k4_is_planar(self):
        """Test that K4 has a left-right coloring"""
        result = lr_planarity(as_support(nx.complete_graph(4)))
        assert isinstance(result, LrColoring)
        assert result

    @pytest.mark.parametrize("graph", [
        nx.complete_graph(5),
        nx.complete_bipartite_graph(3, 3),
        nx.petersen_graph(),
    ])
    def test_kuratowski_graphs_are_not_planar(self, graph):
        """Test K5, K3,3 and the Petersen graph"""
        result = lr_planarity(as_support(graph))
        assert isinstance(result, NonPlanar)
        assert not result
        assert result.fork in result.reason

    def test_components_are_tested_separately(self):
        """Test a planar and a non-planar disjoint union"""
        assert is_planar(as_support(nx.disjoint_union(nx.complete_graph(4), nx.complete_graph(4))))
        assert not is_planar(as_support(nx.disjoint_union(nx.path_graph(3), nx.complete_graph(5))))

    @pytest.mark.parametrize("graph", [
        nx.octahedral_graph(),
        nx.icosahedral_graph(),
        nx.dodecahedral_graph(),
        nx.wheel_graph(9),
    ], ids=["octahedron", "icosahedron", "dodecahedron", "wheel"])
    def test_triangulations_and_polyhedra_are_planar(self, graph):
        """Test maximal planar graphs and other polyhedral graphs"""
        assert is_planar(as_support(graph))

    def test_triangulation_plus_an_edge_is_not_planar(self):
        """Test that no edge fits into a triangulation"""
        graph = nx.icosahedral_graph()
        u, v = next((u, v) for u in graph for v in graph if u < v and not graph.has_edge(u, v))
        graph.add_edge(u, v)
        assert not is_planar(as_support(graph))

    @pytest.mark.parametrize("seed", range(24))
    def test_agrees_with_networkx(self, seed):
        """Test random graphs against the networkx planarity check"""
        n = 6 + seed % 5
        m = min(n * (n - 1) // 2, 2 * n + seed % 7)
        graph = nx.gnm_random_graph(n, m, seed=seed)
        expected, _ = nx.check_planarity(graph)
        assert is_planar(as_support(graph)) == expected

    def test_coloring_satisfies_every_fork(self):
        """Test that the returned coloring meets each fork constraint"""
        graph = as_support(nx.grid_2d_graph(3, 4))
        orient = dfs_orient(graph, 0)
        coloring = lr_coloring(orient)
        assert isinstance(coloring, LrColoring)
        assert fork_constraints(orient)
        assert coloring_violations(orient, coloring) == []


class TestShortcutCotree:
    @pytest.fixture
    def k4_orientation(self):
        """Create the DFS orientation of K4 from vertex 0 and its coloring"""
        orient = dfs_orient(as_support(nx.complete_graph(4)), 0)
        return orient, lr_coloring(orient)

    def test_back_edges_move_to_the_child(self, k4_orientation):
        """Test that removing the root of K4 leaves the triangle on the rest"""
        orient, coloring = k4_orientation
        assert shortcut_cotree(orient, coloring, 0) == {(1, 2), (2, 3), (1, 3)}

    def test_non_root_raises_error(self, k4_orientation):
        """Test that only the DFS root can be shortcut"""
        orient, coloring = k4_orientation
        with pytest.raises(NotRootError):
            shortcut_cotree(orient, coloring, 1)


class TestPlanarWithFace:
    def test_cycle_on_one_face(self):
        """Test that all vertices of a cycle share a face"""
        assert planar_with_face(as_support(nx.cycle_graph(4)), range(4))

    def test_k4_face_holds_three_vertices(self):
        """Test that K4 has a triangular face but no face with all four vertices"""
        k4 = as_support(nx.complete_graph(4))
        assert planar_with_face(k4, [0, 1, 2])
        assert not planar_with_face(k4, [0, 1, 2, 3])

    def test_k23_is_not_outerplanar(self):
        """Test that K2,3 cannot put all five vertices on one face"""
        assert not planar_with_face(as_support(nx.complete_bipartite_graph(2, 3)), range(5))

    def test_empty_face_is_plain_planarity(self):
        """Test that no face vertices reduces to planarity"""
        assert planar_with_face(as_support(nx.complete_graph(4)), [])
        assert not planar_with_face(as_support(nx.complete_graph(5)), [])

    def test_face_vertex_out_of_range(self):
        """Test that face vertices must exist"""
        with pytest.raises(ValueError, match="out of range"):
            planar_with_face(SupportGraph(2, ((0, 1),)), [5])
