import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

from config import settings
from rectcover.builder import build_complete_support, subfamily_support
from rectcover.data_models import PolygonDocument
from rectcover.exceptions import BadParameterError
from rectcover.geom import SimplePolygon
from rectcover.hypergraph import CoverTarget, SupportGraph, WitnessSet, witness_points
from rectcover.loaders import LoaderFactory, InstanceLoader, document_from_polygon, polygon_from_document
from rectcover.maxrect import RectFamily, enumerate_maximal, is_maximal
from rectcover.solver import CoverSolution, exact_cover, local_search_cover

logger = logging.getLogger(__name__)


class RectCoverManager:
    """
    Facade over one polygon: its maximal family, witnesses, supports and covers.

    Results are computed on first use and cached.
    """

    def __init__(self,
                 polygon: Optional[SimplePolygon] = None,
                 family: Optional[RectFamily] = None,
                 path: Optional[Union[str, Path]] = None,
                 loader: Optional[InstanceLoader] = None,
                 expected: Optional[Dict[str, int]] = None,
                 ):
        self.path = path
        self.expected = dict(expected or {})
        if polygon is None:
            if path is None and loader is None:
                raise ValueError("RectCoverManager needs a polygon or a path to a polygon file")
            self.loader = loader or LoaderFactory.create_loader(path, "polygon")
            doc = self.loader.load()
            polygon, family = polygon_from_document(doc)
            self.expected.update(doc.expected)
        self.polygon = polygon
        self.family = family

        self._maximal: Optional[RectFamily] = None
        self._witnesses: Dict[CoverTarget, WitnessSet] = {}
        self._support: Optional[SupportGraph] = None
        self._subset_supports: Dict[tuple, SupportGraph] = {}
        self._covers: Dict[tuple, CoverSolution] = {}

    @property
    def maximal_family(self) -> RectFamily:
        if self._maximal is None:
            self._maximal = enumerate_maximal(self.polygon)
        return self._maximal

    def get_family(self) -> RectFamily:
        """The explicit family when one was given, else every maximal rectangle"""
        return self.family if self.family is not None else self.maximal_family

    def witnesses(self, target=CoverTarget.BOUNDARY) -> WitnessSet:
        target = CoverTarget(target)
        if target not in self._witnesses:
            self._witnesses[target] = witness_points(self.polygon, self.get_family(), target)
        return self._witnesses[target]

    def complete_support(self) -> SupportGraph:
        if self._support is None:
            self._support = build_complete_support(self.polygon)
        return self._support

    def select(self, indices: Optional[Sequence[int]] = None) -> RectFamily:
        """
        Subfamily of the maximal family by index, or the explicit family.

        Raises:
            ValueError: on out-of-range indices
        """
        if indices is None:
            return self.get_family()
        fam = self.maximal_family
        for i in indices:
            if not 0 <= i < len(fam):
                raise ValueError(f"Rectangle index {i} out of range for {len(fam)} maximal rectangles")
        return fam.subset(sorted(set(indices)))

    def support(self, indices: Optional[Sequence[int]] = None) -> SupportGraph:
        """Planar support of the selected family; the complete support when it is the whole maximal family"""
        fam = self.select(indices)
        if list(fam) == list(self.maximal_family):
            return self.complete_support()
        key = tuple(fam)
        if key not in self._subset_supports:
            self._subset_supports[key] = subfamily_support(self.polygon, fam)
        return self._subset_supports[key]

    def local_cover(self, target=CoverTarget.BOUNDARY, k: int = 1) -> CoverSolution:
        if not 1 <= k <= settings.MAX_LOCAL_SEARCH_K:
            raise BadParameterError(f"Locality k must be between 1 and {settings.MAX_LOCAL_SEARCH_K}, got {k}")
        key = ("local", CoverTarget(target), k)
        if key not in self._covers:
            self._covers[key] = local_search_cover(self.polygon, target, k, self.maximal_family)
        return self._covers[key]

    def exact_cover(self, target=CoverTarget.BOUNDARY, node_limit: Optional[int] = None) -> CoverSolution:
        node_limit = settings.DEFAULT_NODE_LIMIT if node_limit is None else node_limit
        key = ("exact", CoverTarget(target), node_limit)
        if key not in self._covers:
            self._covers[key] = exact_cover(self.polygon, target, node_limit, self.maximal_family)
        return self._covers[key]

    def non_maximal_members(self) -> List[int]:
        return [i for i, r in enumerate(self.get_family()) if not is_maximal(self.polygon, r)]

    def to_document(self) -> PolygonDocument:
        return document_from_polygon(self.polygon, self.family, self.expected)

    def describe(self) -> None:
        x1, y1, x2, y2 = self.polygon.bbox
        print(f"* polygon with {len(self.polygon)} vertices in [{x1},{x2}]x[{y1},{y2}]")
        print(f"  - {len(self.maximal_family)} maximal rectangles")
        if self.family is not None:
            print(f"  - explicit family of {len(self.family)} rectangles")
        for name, value in sorted(self.expected.items()):
            print(f"  - expected {name} = {value}")
        return
