# geom.py
"""Exact integer geometry for simple orthogonal polygons and rectangles.

Polygons and rectangles live on the integer grid. Points are stored on the
doubled grid (every coordinate multiplied by two) so that midpoints of integer
segments stay integral.
"""

import logging
import numbers
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from shapely.geometry import box
from shapely.ops import unary_union

from rectcover.exceptions import (
    CollinearRedundantVertexError,
    DegenerateRectError,
    NotOrthogonalError,
    PolygonError,
    SelfIntersectingError,
    TooFewVerticesError,
)

logger = logging.getLogger(__name__)

Interval = Tuple[int, int]


@dataclass(frozen=True, order=True)
class Point:
    """Point on the doubled grid (hx = 2x, hy = 2y)"""
    hx: int
    hy: int

    @classmethod
    def from_grid(cls, x: int, y: int) -> "Point":
        return cls(2 * int(x), 2 * int(y))

    @property
    def x(self) -> float:
        return self.hx / 2

    @property
    def y(self) -> float:
        return self.hy / 2

    def as_grid(self) -> Tuple[float, float]:
        return (self.x, self.y)

    def __str__(self):
        return f"({self.x:g},{self.y:g})"


def _as_int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise DegenerateRectError(f"{what} must be an integer, got {value!r}")
    return int(value)


@dataclass(frozen=True, order=True)
class Rect:
    """Closed axis-parallel rectangle [x1,x2]x[y1,y2] with integer corners"""
    x1: int
    y1: int
    x2: int
    y2: int

    def __post_init__(self):
        for name in ("x1", "y1", "x2", "y2"):
            object.__setattr__(self, name, _as_int(getattr(self, name), name))
        if self.x1 >= self.x2 or self.y1 >= self.y2:
            raise DegenerateRectError(
                f"Rectangle needs positive width and height: {self.x1},{self.y1},{self.x2},{self.y2}"
            )

    @property
    def width(self) -> int:
        return self.x2 - self.x1

    @property
    def height(self) -> int:
        return self.y2 - self.y1

    @property
    def area(self) -> int:
        return self.width * self.height

    @property
    def center2(self) -> Point:
        """Center of the rectangle on the doubled grid"""
        return Point(self.x1 + self.x2, self.y1 + self.y2)

    def corners(self) -> Tuple[Point, Point, Point, Point]:
        return (
            Point.from_grid(self.x1, self.y1),
            Point.from_grid(self.x2, self.y1),
            Point.from_grid(self.x2, self.y2),
            Point.from_grid(self.x1, self.y2),
        )

    def contains_point(self, p: Point) -> bool:
        return 2 * self.x1 <= p.hx <= 2 * self.x2 and 2 * self.y1 <= p.hy <= 2 * self.y2

    def contains_rect(self, other: "Rect") -> bool:
        return (
            self.x1 <= other.x1 and other.x2 <= self.x2
            and self.y1 <= other.y1 and other.y2 <= self.y2
        )

    def intersects(self, other: "Rect") -> bool:
        """Closed intersection test, touching rectangles intersect"""
        return (
            self.x1 <= other.x2 and other.x1 <= self.x2
            and self.y1 <= other.y2 and other.y1 <= self.y2
        )

    def to_list(self) -> List[int]:
        return [self.x1, self.y1, self.x2, self.y2]

    def __str__(self):
        return f"[{self.x1},{self.x2}]x[{self.y1},{self.y2}]"


class IntersectionTag(str, Enum):
    DISJOINT = "disjoint"
    CORNER = "corner"
    PIERCING = "piercing"
    # nested or T-shaped; never between two maximal rectangles of one polygon
    OVERLAP = "overlap"


@dataclass(frozen=True)
class IntersectionKind:
    """Pattern in which two rectangles meet.

    ``vertical`` names the narrower, taller rectangle of a piercing pair
    ("a" or "b"); it is None for every other tag and for identical rectangles.
    """
    tag: IntersectionTag
    aligned: bool = False
    vertical: Optional[str] = None


@dataclass(frozen=True)
class Corner:
    """Polygon vertex with its convexity"""
    x: int
    y: int
    convex: bool

    @property
    def point(self) -> Point:
        return Point.from_grid(self.x, self.y)


@dataclass(frozen=True)
class SimplePolygon:
    """Simple orthogonal polygon.

    ``vertices`` are integer grid coordinates in counterclockwise order, starting
    at the lexicographically smallest vertex. Build instances with
    :func:`polygon_from_vertices` or :func:`polygon_from_rects`.
    """
    vertices: Tuple[Tuple[int, int], ...]
    convex: Tuple[bool, ...]

    @property
    def sides(self) -> List[Tuple[Tuple[int, int], Tuple[int, int]]]:
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    @property
    def corners(self) -> List[Corner]:
        return [Corner(x, y, c) for (x, y), c in zip(self.vertices, self.convex)]

    @property
    def bbox(self) -> Tuple[int, int, int, int]:
        xs = [x for x, _ in self.vertices]
        ys = [y for _, y in self.vertices]
        return (min(xs), min(ys), max(xs), max(ys))

    @cached_property
    def raster(self) -> "PolygonRaster":
        return PolygonRaster(self)

    @cached_property
    def xs(self) -> List[int]:
        return sorted({x for x, _ in self.vertices})

    @cached_property
    def ys(self) -> List[int]:
        return sorted({y for _, y in self.vertices})

    def contains_rect(self, r: Rect) -> bool:
        return self.raster.contains_box(2 * r.x1, 2 * r.y1, 2 * r.x2, 2 * r.y2)

    def contains_point(self, p: Point) -> bool:
        return self.raster.contains_box(p.hx, p.hy, p.hx, p.hy)

    def to_list(self) -> List[List[int]]:
        return [[x, y] for x, y in self.vertices]

    def __len__(self):
        return len(self.vertices)


class PolygonRaster:
    """Compressed-grid raster of a polygon on the doubled grid.

    Cell (i, j) spans [xs[i], xs[i+1]] x [ys[j], ys[j+1]] where xs/ys are the
    doubled polygon coordinates; ``inside[i, j]`` says whether the cell lies in
    the polygon. A summed-area table answers full-cell queries in O(1).
    """

    def __init__(self, polygon: SimplePolygon):
        self.xs = np.array([2 * x for x in polygon.xs], dtype=np.int64)
        self.ys = np.array([2 * y for y in polygon.ys], dtype=np.int64)
        self.inside = np.zeros((len(self.xs) - 1, len(self.ys) - 1), dtype=bool)

        vertical_sides = [
            (2 * a[0], 2 * min(a[1], b[1]), 2 * max(a[1], b[1]))
            for a, b in polygon.sides if a[0] == b[0]
        ]
        for j in range(len(self.ys) - 1):
            cy = (self.ys[j] + self.ys[j + 1]) // 2
            crossings = sorted(x for x, lo, hi in vertical_sides if lo < cy < hi)
            # even-odd scanline over the row
            for k in range(0, len(crossings) - 1, 2):
                i0 = int(np.searchsorted(self.xs, crossings[k]))
                i1 = int(np.searchsorted(self.xs, crossings[k + 1]))
                self.inside[i0:i1, j] = True

        self.table = np.zeros((self.inside.shape[0] + 1, self.inside.shape[1] + 1), dtype=np.int64)
        self.table[1:, 1:] = self.inside.astype(np.int64).cumsum(axis=0).cumsum(axis=1)

    def _count(self, i0: int, i1: int, j0: int, j1: int) -> int:
        t = self.table
        return int(t[i1, j1] - t[i0, j1] - t[i1, j0] + t[i0, j0])

    @staticmethod
    def _slots(lo: int, hi: int, lines: np.ndarray) -> List[List[int]]:
        """Cells a closed [lo, hi] range needs, each slot satisfied by any listed cell"""
        n_cells = len(lines) - 1
        if lo < hi:
            i0 = int(np.searchsorted(lines, lo, side="right")) - 1
            i1 = int(np.searchsorted(lines, hi, side="left"))
            return [[i] for i in range(i0, i1)]
        k = int(np.searchsorted(lines, lo, side="left"))
        if k < len(lines) and lines[k] == lo:
            return [[i for i in (k - 1, k) if 0 <= i < n_cells]]
        return [[k - 1]]

    def contains_box(self, hx1: int, hy1: int, hx2: int, hy2: int) -> bool:
        """Whether the closed box [hx1,hx2]x[hy1,hy2] (doubled units) lies in the polygon"""
        if hx1 > hx2 or hy1 > hy2:
            return False
        if hx1 < self.xs[0] or hx2 > self.xs[-1] or hy1 < self.ys[0] or hy2 > self.ys[-1]:
            return False
        if hx1 < hx2 and hy1 < hy2:
            i0 = int(np.searchsorted(self.xs, hx1, side="right")) - 1
            i1 = int(np.searchsorted(self.xs, hx2, side="left"))
            j0 = int(np.searchsorted(self.ys, hy1, side="right")) - 1
            j1 = int(np.searchsorted(self.ys, hy2, side="left"))
            return self._count(i0, i1, j0, j1) == (i1 - i0) * (j1 - j0)

        x_slots = self._slots(hx1, hx2, self.xs)
        y_slots = self._slots(hy1, hy2, self.ys)
        for x_slot in x_slots:
            for y_slot in y_slots:
                if not any(self.inside[i, j] for i in x_slot for j in y_slot):
                    return False
        return True


def _segments_touch(s, t) -> bool:
    # axis-parallel segments coincide with their bounding boxes
    (ax, ay), (bx, by) = s
    (cx, cy), (dx, dy) = t
    return (
        max(min(ax, bx), min(cx, dx)) <= min(max(ax, bx), max(cx, dx))
        and max(min(ay, by), min(cy, dy)) <= min(max(ay, by), max(cy, dy))
    )


def _as_vertex_list(vertices: Iterable) -> List[Tuple[int, int]]:
    coords = []
    for v in vertices:
        if isinstance(v, Point):
            if v.hx % 2 or v.hy % 2:
                raise PolygonError(f"Polygon vertex {v} is not on the integer grid")
            coords.append((v.hx // 2, v.hy // 2))
            continue
        x, y = v
        if isinstance(x, bool) or isinstance(y, bool) \
                or not isinstance(x, numbers.Integral) or not isinstance(y, numbers.Integral):
            raise PolygonError(f"Polygon vertex {v!r} must have integer coordinates")
        coords.append((int(x), int(y)))
    if len(coords) > 1 and coords[0] == coords[-1]:
        coords.pop()
    return coords


def polygon_from_vertices(vertices: Sequence) -> SimplePolygon:
    """
    Validate a vertex cycle and build a normalized SimplePolygon.

    Args:
        vertices: (x, y) integer pairs or grid Points, in either orientation.
            A closing vertex equal to the first one is dropped.

    Returns:
        SimplePolygon: counterclockwise, starting at the lexicographically smallest vertex.

    Raises:
        TooFewVerticesError, SelfIntersectingError, NotOrthogonalError,
        CollinearRedundantVertexError
    """
    coords = _as_vertex_list(vertices)
    n = len(coords)
    if n < 4:
        raise TooFewVerticesError(f"A polygon needs at least 4 vertices, got {n}")
    if len(set(coords)) != n:
        raise SelfIntersectingError("Polygon repeats a vertex")

    for i in range(n):
        (ax, ay), (bx, by) = coords[i], coords[(i + 1) % n]
        if ax != bx and ay != by:
            raise NotOrthogonalError(f"Side {coords[i]} -> {coords[(i + 1) % n]} is not axis-parallel")

    for i in range(n):
        prev, cur, nxt = coords[i - 1], coords[i], coords[(i + 1) % n]
        incoming_horizontal = prev[1] == cur[1]
        outgoing_horizontal = cur[1] == nxt[1]
        if incoming_horizontal == outgoing_horizontal:
            raise CollinearRedundantVertexError(f"Vertex {cur} joins two parallel sides")

    sides = [(coords[i], coords[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            if _segments_touch(sides[i], sides[j]):
                raise SelfIntersectingError(f"Sides {sides[i]} and {sides[j]} intersect")

    area2 = sum(coords[i][0] * coords[(i + 1) % n][1] - coords[(i + 1) % n][0] * coords[i][1] for i in range(n))
    if area2 < 0:
        coords.reverse()
    start = coords.index(min(coords))
    coords = coords[start:] + coords[:start]

    convex = []
    for i in range(n):
        (px, py), (cx, cy), (nx, ny) = coords[i - 1], coords[i], coords[(i + 1) % n]
        cross = (cx - px) * (ny - cy) - (cy - py) * (nx - cx)
        convex.append(cross > 0)

    return SimplePolygon(vertices=tuple(coords), convex=tuple(convex))


def _drop_collinear(coords: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
    changed = True
    while changed and len(coords) > 2:
        changed = False
        out = []
        n = len(coords)
        for i in range(n):
            prev, cur, nxt = coords[i - 1], coords[i], coords[(i + 1) % n]
            if cur == prev:
                changed = True
                continue
            if (prev[0] == cur[0] == nxt[0]) or (prev[1] == cur[1] == nxt[1]):
                changed = True
                continue
            out.append(cur)
        coords = out
    return coords


def polygon_from_rects(rects: Iterable[Rect]) -> SimplePolygon:
    """
    Build the polygon whose region is the union of the given rectangles.

    Raises:
        PolygonError: if the union is disconnected, has holes or pinches
    """
    rects = list(rects)
    if not rects:
        raise PolygonError("Cannot build a polygon from zero rectangles")
    shape = unary_union([box(r.x1, r.y1, r.x2, r.y2) for r in rects])
    if shape.geom_type != "Polygon" or len(shape.interiors) > 0:
        raise PolygonError(f"Union of rectangles is not a simple polygon ({shape.geom_type})")
    coords = [(int(round(x)), int(round(y))) for x, y in list(shape.exterior.coords)[:-1]]
    return polygon_from_vertices(_drop_collinear(coords))


def boundary_contains(p: Point, poly: SimplePolygon) -> bool:
    """Whether p lies on the polygon boundary"""
    for (ax, ay), (bx, by) in poly.sides:
        if ay == by:
            if p.hy == 2 * ay and 2 * min(ax, bx) <= p.hx <= 2 * max(ax, bx):
                return True
        elif p.hx == 2 * ax and 2 * min(ay, by) <= p.hy <= 2 * max(ay, by):
            return True
    return False


def rect_contains(p: Point, r: Rect) -> bool:
    return r.contains_point(p)


def boundary_segments(poly: SimplePolygon, horizontal: bool, coord: int, lo: int, hi: int) -> List[Interval]:
    """
    Intersect the boundary with an axis-parallel segment.

    Args:
        poly: the polygon
        horizontal: True for the segment y=coord, x in [lo, hi]; False for x=coord, y in [lo, hi]
        coord: fixed coordinate of the segment
        lo, hi: range along the segment

    Returns:
        Maximal closed intervals (possibly single points) of the segment lying on the boundary, sorted.
    """
    pieces = []
    for (ax, ay), (bx, by) in poly.sides:
        side_horizontal = ay == by
        if horizontal:
            if side_horizontal and ay == coord:
                a, b = max(lo, min(ax, bx)), min(hi, max(ax, bx))
                if a <= b:
                    pieces.append((a, b))
            elif not side_horizontal and lo <= ax <= hi and min(ay, by) <= coord <= max(ay, by):
                pieces.append((ax, ax))
        else:
            if not side_horizontal and ax == coord:
                a, b = max(lo, min(ay, by)), min(hi, max(ay, by))
                if a <= b:
                    pieces.append((a, b))
            elif side_horizontal and lo <= ay <= hi and min(ax, bx) <= coord <= max(ax, bx):
                pieces.append((ay, ay))
    return merge_intervals(pieces)


def merge_intervals(pieces: Iterable[Interval]) -> List[Interval]:
    merged: List[List[int]] = []
    for a, b in sorted(pieces):
        if merged and a <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    return [(a, b) for a, b in merged]


def intervals_share_point(first: Sequence[Interval], second: Sequence[Interval]) -> bool:
    return any(max(a, c) <= min(b, d) for a, b in first for c, d in second)


def pierce_less(a: Rect, b: Rect) -> bool:
    """a pierces b as the narrower rectangle: a's vertical sides cross b's horizontal sides"""
    return (
        a != b
        and b.x1 <= a.x1 and a.x2 <= b.x2
        and a.y1 <= b.y1 and b.y2 <= a.y2
    )


def classify_intersection(a: Rect, b: Rect) -> IntersectionKind:
    """
    Classify how two rectangles meet (closed-set semantics).

    Corner means each rectangle holds a corner of the other and neither holds
    the other, which includes contact along an edge or at a single point.
    Nested and T-shaped overlaps are tagged OVERLAP.
    """
    if not a.intersects(b):
        return IntersectionKind(IntersectionTag.DISJOINT)
    if a == b:
        return IntersectionKind(IntersectionTag.PIERCING, aligned=True, vertical=None)

    if pierce_less(a, b):
        vertical = "a"
    elif pierce_less(b, a):
        vertical = "b"
    elif (
        not a.contains_rect(b) and not b.contains_rect(a)
        and any(a.contains_point(p) for p in b.corners())
        and any(b.contains_point(p) for p in a.corners())
    ):
        return IntersectionKind(IntersectionTag.CORNER)
    else:
        return IntersectionKind(IntersectionTag.OVERLAP)

    aligned = a.x1 == b.x1 or a.x2 == b.x2 or a.y1 == b.y1 or a.y2 == b.y2
    return IntersectionKind(IntersectionTag.PIERCING, aligned=aligned, vertical=vertical)


def convex_corners(poly: SimplePolygon) -> List[Corner]:
    return [c for c in poly.corners if c.convex]


def concave_corners(poly: SimplePolygon) -> List[Corner]:
    return [c for c in poly.corners if not c.convex]
