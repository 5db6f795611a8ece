# hypergraph.py
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Set, Tuple, Type

import networkx as nx
import numpy as np

from rectcover.exceptions import EmptyKernelError
from rectcover.geom import Point, SimplePolygon
from rectcover.maxrect import RectFamily

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


class CoverTarget(str, Enum):
    BOUNDARY = "boundary"
    CORNER = "corner"
    INTERIOR = "interior"


@dataclass(frozen=True)
class WitnessSet:
    """Finite test points at which hyperedges are evaluated"""
    points: Tuple[Point, ...]
    target: CoverTarget

    def __len__(self):
        return len(self.points)


def canonical_edges(edges: Iterable[Edge]) -> Tuple[Edge, ...]:
    return tuple(sorted({(min(i, j), max(i, j)) for i, j in edges}))


@dataclass(frozen=True)
class SupportGraph:
    """
    Simple graph over the indices of a RectFamily.

    Attributes:
        n: number of vertices
        edges: sorted pairs (i, j) with i < j
        outer: vertices claimed to lie on one common face
        diagnostics: notes left by the construction (fallback edges and the like)
    """
    n: int
    edges: Tuple[Edge, ...] = ()
    outer: Tuple[int, ...] = ()
    diagnostics: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        edges = canonical_edges(self.edges)
        for i, j in edges:
            if i == j:
                raise ValueError(f"SupportGraph cannot hold the loop ({i},{j})")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"Edge ({i},{j}) out of range for {self.n} vertices")
        for v in self.outer:
            if not 0 <= v < self.n:
                raise ValueError(f"Outer vertex {v} out of range for {self.n} vertices")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "outer", tuple(self.outer))
        object.__setattr__(self, "diagnostics", tuple(self.diagnostics))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph

    @classmethod
    def from_networkx(cls, graph: nx.Graph, outer: Iterable[int] = (), diagnostics: Iterable[str] = ()) -> "SupportGraph":
        return cls(graph.number_of_nodes(), tuple(graph.edges()), tuple(outer), tuple(diagnostics))

    def neighbors(self, v: int) -> List[int]:
        return sorted({j for i, j in self.edges if i == v} | {i for i, j in self.edges if j == v})

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))


@dataclass(frozen=True)
class SupportViolation:
    """A witness whose hyperedge induces a disconnected subgraph"""
    point: Point
    components: Tuple[Tuple[int, ...], ...]


# Abstract Base Class for witness extraction
class WitnessExtractor(ABC):
    """
    Abstract base class for discretizing a cover target into witness points.
    """

    target: CoverTarget

    def __init__(self, polygon: SimplePolygon, family: RectFamily):
        self.polygon = polygon
        self.family = family

    @abstractmethod
    def extract_points(self) -> List[Point]:
        pass

    def extract(self) -> WitnessSet:
        return WitnessSet(points=tuple(sorted(set(self.extract_points()))), target=self.target)


class BoundaryWitnessExtractor(WitnessExtractor):
    """
    Polygon vertices, every crossing of a rectangle side-line with the
    boundary, and the midpoint between consecutive crossings on each side.
    """

    target = CoverTarget.BOUNDARY

    def extract_points(self) -> List[Point]:
        rect_xs = {c for r in self.family for c in (r.x1, r.x2)}
        rect_ys = {c for r in self.family for c in (r.y1, r.y2)}
        points = []
        for (ax, ay), (bx, by) in self.polygon.sides:
            if ay == by:
                lo, hi = min(ax, bx), max(ax, bx)
                events = sorted({lo, hi} | {x for x in rect_xs if lo <= x <= hi})
                points.extend(Point.from_grid(x, ay) for x in events)
                points.extend(Point(a + b, 2 * ay) for a, b in zip(events, events[1:]))
            else:
                lo, hi = min(ay, by), max(ay, by)
                events = sorted({lo, hi} | {y for y in rect_ys if lo <= y <= hi})
                points.extend(Point.from_grid(ax, y) for y in events)
                points.extend(Point(2 * ax, a + b) for a, b in zip(events, events[1:]))
        return points


class CornerWitnessExtractor(WitnessExtractor):
    """The polygon's vertices"""

    target = CoverTarget.CORNER

    def extract_points(self) -> List[Point]:
        return [Point.from_grid(x, y) for x, y in self.polygon.vertices]


class InteriorWitnessExtractor(WitnessExtractor):
    """
    One point per face (vertex, edge, cell) of the arrangement of polygon and
    rectangle side-lines that lies in the polygon.
    """

    target = CoverTarget.INTERIOR

    @staticmethod
    def _faces(coords: Set[int]) -> List[int]:
        lines = sorted(coords)
        return sorted({2 * c for c in lines} | {a + b for a, b in zip(lines, lines[1:])})

    def extract_points(self) -> List[Point]:
        hxs = self._faces(set(self.polygon.xs) | {c for r in self.family for c in (r.x1, r.x2)})
        hys = self._faces(set(self.polygon.ys) | {c for r in self.family for c in (r.y1, r.y2)})
        raster = self.polygon.raster
        return [Point(hx, hy) for hx in hxs for hy in hys if raster.contains_box(hx, hy, hx, hy)]


class WitnessExtractorFactory:
    """
    Factory for witness extractors, keyed by cover target.
    """
    _extractor_mapping: Dict[CoverTarget, Type[WitnessExtractor]] = {
        CoverTarget.BOUNDARY: BoundaryWitnessExtractor,
        CoverTarget.CORNER: CornerWitnessExtractor,
        CoverTarget.INTERIOR: InteriorWitnessExtractor,
    }

    @classmethod
    def register_extractor(cls, target: CoverTarget, extractor_class: Type[WitnessExtractor]) -> None:
        cls._extractor_mapping[target] = extractor_class

    @staticmethod
    def get_witness_extractor(polygon: SimplePolygon, family: RectFamily, target) -> WitnessExtractor:
        """
        Get the extractor for a cover target.

        Raises:
            ValueError: If the target is not supported
        """
        try:
            key = CoverTarget(target)
        except ValueError:
            key = None
        extractor_class = WitnessExtractorFactory._extractor_mapping.get(key)
        if not extractor_class:
            raise ValueError(
                f"Unsupported cover target: {target}. "
                f"Supported cover targets: {[t.value for t in WitnessExtractorFactory._extractor_mapping]}"
            )
        return extractor_class(polygon, family)


def witness_points(poly: SimplePolygon, fam: RectFamily, target) -> WitnessSet:
    return WitnessExtractorFactory.get_witness_extractor(poly, fam, target).extract()


def hyperedge(fam: RectFamily, p: Point) -> FrozenSet[int]:
    return frozenset(i for i, r in enumerate(fam) if r.contains_point(p))


class HyperedgeIndex:
    """
    Witness x rectangle containment matrix with witnesses grouped by hyperedge.
    """

    def __init__(self, fam: RectFamily, witnesses: WitnessSet):
        self.family = fam
        self.witnesses = witnesses
        m, n = len(witnesses.points), len(fam)
        if m == 0 or n == 0:
            self.matrix = np.zeros((m, n), dtype=bool)
            return
        pts = np.array([[p.hx, p.hy] for p in witnesses.points], dtype=np.int64)
        px, py = pts[:, 0:1], pts[:, 1:2]
        d = fam.doubled
        self.matrix = (d[:, 0] <= px) & (px <= d[:, 2]) & (d[:, 1] <= py) & (py <= d[:, 3])

    @classmethod
    def build(cls, poly: SimplePolygon, fam: RectFamily, target) -> "HyperedgeIndex":
        return cls(fam, witness_points(poly, fam, target))

    def hyperedge_at(self, row: int) -> FrozenSet[int]:
        return frozenset(int(i) for i in np.flatnonzero(self.matrix[row]))

    @cached_property
    def groups(self) -> Dict[FrozenSet[int], List[int]]:
        """Distinct hyperedges mapped to the witness rows producing them"""
        groups: Dict[FrozenSet[int], List[int]] = {}
        for row in range(self.matrix.shape[0]):
            groups.setdefault(self.hyperedge_at(row), []).append(row)
        return groups

    def multi_edges(self) -> List[FrozenSet[int]]:
        """Distinct hyperedges of size at least two, smallest first"""
        return sorted((h for h in self.groups if len(h) >= 2), key=lambda h: (len(h), sorted(h)))

    def column_masks(self) -> List[int]:
        """Per-rectangle bitmask over witness rows"""
        masks = []
        for col in range(self.matrix.shape[1]):
            mask = 0
            for row in np.flatnonzero(self.matrix[:, col]):
                mask |= 1 << int(row)
            masks.append(mask)
        return masks


def disconnected_components(graph: nx.Graph, members: Iterable[int]) -> List[Tuple[int, ...]]:
    comps = nx.connected_components(graph.subgraph(members))
    return sorted(tuple(sorted(c)) for c in comps)


def verify_support(poly: SimplePolygon, fam: RectFamily, graph: SupportGraph, target=CoverTarget.BOUNDARY) -> List[SupportViolation]:
    """
    Check that every witness hyperedge induces a connected subgraph.

    Returns:
        One SupportViolation per failing witness, in witness order; empty when
        the graph is a support.
    """
    if graph.n != len(fam):
        raise ValueError(f"Graph has {graph.n} vertices but the family has {len(fam)} members")
    index = HyperedgeIndex.build(poly, fam, target)
    nx_graph = graph.to_networkx()
    violations = []
    for h in index.multi_edges():
        comps = disconnected_components(nx_graph, h)
        if len(comps) > 1:
            for row in index.groups[h]:
                violations.append(SupportViolation(index.witnesses.points[row], tuple(comps)))
    violations.sort(key=lambda v: v.point)
    if violations:
        logger.debug("support check found %d violating witnesses", len(violations))
    return violations


def kernel(poly: SimplePolygon, fam: RectFamily) -> FrozenSet[int]:
    """
    Intersection of all boundary hyperedges with at least two members.

    When no such hyperedge exists the whole family is returned.
    """
    index = HyperedgeIndex.build(poly, fam, CoverTarget.BOUNDARY)
    rows = index.matrix[index.matrix.sum(axis=1) >= 2]
    if rows.shape[0] == 0:
        logger.info("no shared boundary witness, kernel is the whole family of %d", len(fam))
        return frozenset(range(len(fam)))
    return frozenset(int(i) for i in np.flatnonzero(rows.all(axis=0)))


def is_proper(poly: SimplePolygon, fam: RectFamily) -> bool:
    """
    Every member shares some boundary witness with the whole kernel.

    Raises:
        EmptyKernelError: if the kernel is empty
    """
    ker = sorted(kernel(poly, fam))
    if not ker:
        raise EmptyKernelError("Properness is undefined for a family with an empty kernel")
    index = HyperedgeIndex.build(poly, fam, CoverTarget.BOUNDARY)
    with_kernel = index.matrix[:, ker].all(axis=1)
    return all(bool((with_kernel & index.matrix[:, i]).any()) for i in range(len(fam)))


def forced_support_edges(poly: SimplePolygon, fam: RectFamily, target=CoverTarget.BOUNDARY) -> Set[Edge]:
    """Pairs (i, j) forming the whole hyperedge of some witness"""
    index = HyperedgeIndex.build(poly, fam, target)
    forced = set()
    for h in index.groups:
        if len(h) == 2:
            i, j = sorted(h)
            forced.add((i, j))
    return forced


def intersection_support(poly: SimplePolygon, fam: RectFamily, target=CoverTarget.BOUNDARY) -> SupportGraph:
    """Graph joining every pair of rectangles that share a witness"""
    index = HyperedgeIndex.build(poly, fam, target)
    shared = index.matrix.T.astype(np.int64) @ index.matrix.astype(np.int64)
    edges = [(i, j) for i in range(len(fam)) for j in range(i + 1, len(fam)) if shared[i, j] > 0]
    return SupportGraph(len(fam), tuple(edges))


def star_graph(n: int, center: int) -> SupportGraph:
    return SupportGraph(n, tuple((center, v) for v in range(n) if v != center))
