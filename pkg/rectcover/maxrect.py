# maxrect.py
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Sequence

import numpy as np

from rectcover.constants import BOTTOM, DIRECTIONS, LEFT, RIGHT, TOP
from rectcover.exceptions import NotContainedError
from rectcover.geom import (
    Interval,
    Rect,
    SimplePolygon,
    boundary_segments,
    intervals_share_point,
)

logger = logging.getLogger(__name__)


@dataclass(init=True)
class BlockerSet:
    """Boundary pieces touching each side of a rectangle, corner points excluded"""
    top: List[Interval] = field(default_factory=list)
    bottom: List[Interval] = field(default_factory=list)
    left: List[Interval] = field(default_factory=list)
    right: List[Interval] = field(default_factory=list)

    def side(self, direction: str) -> List[Interval]:
        return getattr(self, direction)

    def all_sides_blocked(self) -> bool:
        return all(self.side(d) for d in DIRECTIONS)


class RectFamily:
    """
    Ordered set of rectangles inside one polygon, with stable indices.

    Raises:
        ValueError: on duplicate rectangles
        NotContainedError: if a rectangle leaves the polygon
    """

    def __init__(self, rects: Iterable[Rect], polygon: SimplePolygon):
        self.rects = tuple(rects)
        self.polygon = polygon
        self._index: Dict[Rect, int] = {r: i for i, r in enumerate(self.rects)}
        if len(self._index) != len(self.rects):
            raise ValueError("RectFamily cannot hold duplicate rectangles")
        for r in self.rects:
            if not polygon.contains_rect(r):
                raise NotContainedError(f"Rectangle {r} is not contained in the polygon")

    def __len__(self):
        return len(self.rects)

    def __iter__(self) -> Iterator[Rect]:
        return iter(self.rects)

    def __getitem__(self, i: int) -> Rect:
        return self.rects[i]

    def __contains__(self, r: Rect) -> bool:
        return r in self._index

    def __eq__(self, other):
        if not isinstance(other, RectFamily):
            return NotImplemented
        return self.rects == other.rects and self.polygon == other.polygon

    def __repr__(self):
        return f"RectFamily({', '.join(str(r) for r in self.rects)})"

    def index_of(self, r: Rect) -> int:
        try:
            return self._index[r]
        except KeyError:
            raise ValueError(f"Rectangle {r} is not a family member") from None

    def subset(self, indices: Iterable[int]) -> "RectFamily":
        return RectFamily([self.rects[i] for i in indices], self.polygon)

    def without(self, index: int) -> "RectFamily":
        return RectFamily([r for i, r in enumerate(self.rects) if i != index], self.polygon)

    def with_rect(self, r: Rect) -> "RectFamily":
        return RectFamily(self.rects + (r,), self.polygon)

    @cached_property
    def doubled(self) -> np.ndarray:
        """(n, 4) int64 array of doubled x1, y1, x2, y2"""
        if not self.rects:
            return np.zeros((0, 4), dtype=np.int64)
        return 2 * np.array([r.to_list() for r in self.rects], dtype=np.int64)


def _require_contained(poly: SimplePolygon, r: Rect) -> None:
    if not poly.contains_rect(r):
        raise NotContainedError(f"Rectangle {r} is not contained in the polygon")


def _drop_corner_points(pieces: List[Interval], lo: int, hi: int) -> List[Interval]:
    return [(a, b) for a, b in pieces if not (a == b and a in (lo, hi))]


def blockers(poly: SimplePolygon, r: Rect) -> BlockerSet:
    """
    Compute the blockers of r on each of its sides.

    Each list holds the maximal closed pieces of the boundary on that side.
    Pieces consisting of a single corner point of r are dropped.

    Raises:
        NotContainedError: if r is not inside poly
    """
    _require_contained(poly, r)
    return BlockerSet(
        top=_drop_corner_points(boundary_segments(poly, True, r.y2, r.x1, r.x2), r.x1, r.x2),
        bottom=_drop_corner_points(boundary_segments(poly, True, r.y1, r.x1, r.x2), r.x1, r.x2),
        left=_drop_corner_points(boundary_segments(poly, False, r.x1, r.y1, r.y2), r.y1, r.y2),
        right=_drop_corner_points(boundary_segments(poly, False, r.x2, r.y1, r.y2), r.y1, r.y2),
    )


def _grown(r: Rect, direction: str):
    # half a grid step on the doubled grid
    hx1, hy1, hx2, hy2 = 2 * r.x1, 2 * r.y1, 2 * r.x2, 2 * r.y2
    if direction == TOP:
        return hx1, hy1, hx2, hy2 + 1
    if direction == BOTTOM:
        return hx1, hy1 - 1, hx2, hy2
    if direction == LEFT:
        return hx1 - 1, hy1, hx2, hy2
    if direction == RIGHT:
        return hx1, hy1, hx2 + 1, hy2
    raise ValueError(f"Unsupported direction: {direction}. Supported directions: {list(DIRECTIONS)}")


def can_grow(poly: SimplePolygon, r: Rect, direction: str) -> bool:
    return poly.raster.contains_box(*_grown(r, direction))


def is_maximal(poly: SimplePolygon, r: Rect) -> bool:
    """
    Check containment-maximality of r in poly.

    Raises:
        NotContainedError: if r is not inside poly
    """
    _require_contained(poly, r)
    return not any(can_grow(poly, r, d) for d in DIRECTIONS)


def true_runs(full: np.ndarray) -> List[tuple]:
    runs = []
    start = None
    for j, ok in enumerate(full):
        if ok and start is None:
            start = j
        elif not ok and start is not None:
            runs.append((start, j))
            start = None
    if start is not None:
        runs.append((start, len(full)))
    return runs


def enumerate_maximal(poly: SimplePolygon) -> "RectFamily":
    """
    Enumerate every containment-maximal rectangle of the polygon.

    Sweeps the pairs of polygon x-coordinates; for each pair the maximal runs of
    compressed rows fully inside give the vertically maximal candidates, which
    are kept when they cannot grow sideways either.

    Returns:
        RectFamily: sorted by (x1, y1, x2, y2)
    """
    raster = poly.raster
    xs, ys = poly.xs, poly.ys
    found = []
    for a in range(len(xs) - 1):
        for b in range(a + 1, len(xs)):
            full = raster.inside[a:b, :].all(axis=0)
            if not full.any():
                # a wider strip cannot fit anywhere once the narrower one fails
                break
            for j0, j1 in true_runs(full):
                r = Rect(xs[a], ys[j0], xs[b], ys[j1])
                if not can_grow(poly, r, LEFT) and not can_grow(poly, r, RIGHT):
                    found.append(r)
    found.sort()
    logger.debug("enumerated %d maximal rectangles over %d vertices", len(found), len(poly))
    return RectFamily(found, poly)


def extension(poly: SimplePolygon, r: Rect, direction: str) -> Rect:
    """
    Grow r in one direction as far as the polygon permits.

    Raises:
        NotContainedError: if r is not inside poly
    """
    _require_contained(poly, r)
    if direction == TOP:
        stops = [y for y in poly.ys if y > r.y2]
        build = lambda c: Rect(r.x1, r.y1, r.x2, c)
    elif direction == BOTTOM:
        stops = [y for y in reversed(poly.ys) if y < r.y1]
        build = lambda c: Rect(r.x1, c, r.x2, r.y2)
    elif direction == LEFT:
        stops = [x for x in reversed(poly.xs) if x < r.x1]
        build = lambda c: Rect(c, r.y1, r.x2, r.y2)
    elif direction == RIGHT:
        stops = [x for x in poly.xs if x > r.x2]
        build = lambda c: Rect(r.x1, r.y1, c, r.y2)
    else:
        raise ValueError(f"Unsupported direction: {direction}. Supported directions: {list(DIRECTIONS)}")

    best = r
    for c in stops:
        candidate = build(c)
        if not poly.contains_rect(candidate):
            break
        best = candidate
    return best


def vertical_blocker_lines(poly: SimplePolygon, r: Rect) -> List[Interval]:
    """
    x-ranges where both the top and the bottom side of r lie on the boundary.

    Returns:
        Maximal closed x-intervals, sorted. Corner x-coordinates are included.
    """
    top = boundary_segments(poly, True, r.y2, r.x1, r.x2)
    bottom = boundary_segments(poly, True, r.y1, r.x1, r.x2)
    lines = []
    for a, b in top:
        for c, d in bottom:
            lo, hi = max(a, c), min(b, d)
            if lo <= hi:
                lines.append((lo, hi))
    return sorted(lines)


def _interior_lines(r: Rect, lines: Sequence[Interval]) -> List[Interval]:
    return [(a, b) for a, b in lines if a < r.x2 and b > r.x1]


def is_vertically_blocked(poly: SimplePolygon, r: Rect) -> bool:
    """Some vertical blocker line passes strictly between r's left and right sides"""
    return bool(_interior_lines(r, vertical_blocker_lines(poly, r)))


def has_two_vertical_blockers(poly: SimplePolygon, r: Rect) -> bool:
    return len(_interior_lines(r, vertical_blocker_lines(poly, r))) >= 2


def common_blocker(first: Sequence[Interval], second: Sequence[Interval]) -> bool:
    """Two blocker lists on the same line share at least one point"""
    return intervals_share_point(first, second)
