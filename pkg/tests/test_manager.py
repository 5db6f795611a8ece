import json
import os
import tempfile

import pytest

from rectcover import RectCoverManager
from rectcover.exceptions import BadParameterError
from rectcover.geom import Rect, polygon_from_vertices
from rectcover.hypergraph import CoverTarget, verify_support
from rectcover.loaders import write_text
from rectcover.maxrect import RectFamily

U_SHAPE = [[0, 0], [3, 0], [3, 2], [2, 2], [2, 1], [1, 1], [1, 2], [0, 2]]


class TestRectCoverManager:
    @pytest.fixture
    def temp_polygon_path(self):
        """Create a temporary U polygon file"""
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "u.json")
            write_text(path, json.dumps({"vertices": U_SHAPE, "expected": {"theta_b": 3}}))
            yield path

    @pytest.fixture
    def manager(self, temp_polygon_path):
        """Create a RectCoverManager from the U polygon file"""
        return RectCoverManager(path=temp_polygon_path)

    def test_initialization_from_file(self, manager):
        """Test that the polygon, family and expected metrics are loaded"""
        assert len(manager.polygon) == 8
        assert manager.family is None
        assert manager.expected == {"theta_b": 3}
        assert len(manager.maximal_family) == 3
        assert manager.get_family() is manager.maximal_family

    def test_needs_polygon_or_path(self):
        """Test that a manager without input raises a ValueError"""
        with pytest.raises(ValueError, match="needs a polygon"):
            RectCoverManager()

    def test_explicit_family(self):
        """Test that a given family replaces the maximal one"""
        poly = polygon_from_vertices([tuple(v) for v in U_SHAPE])
        fam = RectFamily([Rect(0, 0, 1, 2), Rect(0, 0, 2, 1)], poly)
        manager = RectCoverManager(polygon=poly, family=fam)
        assert manager.get_family() is fam
        assert manager.non_maximal_members() == [1]

    def test_support_is_cached(self, manager):
        """Test that the complete support is built once"""
        first = manager.support()
        assert manager.support() is first
        assert verify_support(manager.polygon, manager.maximal_family, first) == []

    def test_subset_support(self, manager):
        """Test a support for two of the three rectangles"""
        graph = manager.support([1, 2])
        assert graph.n == 2
        assert verify_support(manager.polygon, manager.select([1, 2]), graph) == []

    def test_select_out_of_range(self, manager):
        """Test that subset indices must exist"""
        with pytest.raises(ValueError, match="out of range"):
            manager.select([0, 5])

    def test_covers(self, manager):
        """Test local and exact covers against the expected optimum"""
        local = manager.local_cover(CoverTarget.BOUNDARY, 1)
        exact = manager.exact_cover("boundary")
        assert len(exact) == manager.expected["theta_b"]
        assert len(local) >= len(exact)
        assert manager.local_cover("boundary", 1) is local

    def test_locality_out_of_range(self, manager):
        """Test that k outside the configured range is rejected"""
        with pytest.raises(BadParameterError):
            manager.local_cover("boundary", 0)

    def test_witnesses(self, manager):
        """Test witness extraction per target"""
        assert len(manager.witnesses("corner")) == 8

    def test_to_document(self, manager):
        """Test that the document round-trips the vertices and expectations"""
        doc = manager.to_document()
        assert doc.vertices == U_SHAPE
        assert doc.expected == {"theta_b": 3}

    def test_describe(self, manager, capsys):
        """Test the printed summary"""
        manager.describe()
        out = capsys.readouterr().out
        assert "* polygon with 8 vertices in [0,3]x[0,2]" in out
        assert "3 maximal rectangles" in out
        assert "expected theta_b = 3" in out
