# solver.py
"""Rectangle cover and antirectangle solvers.

Every target is discretized into witness points; a set of rectangles covers the
target exactly when it covers every witness. Coverage is tracked with Python
integers used as bitsets over the witnesses.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from config import settings
from rectcover.exceptions import BadParameterError, LimitExceededError
from rectcover.geom import Point, SimplePolygon, convex_corners
from rectcover.hypergraph import CoverTarget, HyperedgeIndex
from rectcover.maxrect import RectFamily, enumerate_maximal

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoverSolution:
    """
    Chosen rectangles of a cover.

    Attributes:
        chosen: indices into the maximal family
        target: cover target
        iterations: accepted swaps (local search) or expanded nodes (exact)
        k: locality parameter, 0 for non-local solvers
        family: the family the indices refer to
    """
    chosen: FrozenSet[int]
    target: CoverTarget
    iterations: int = 0
    k: int = 0
    family: Optional[RectFamily] = field(default=None, compare=False, repr=False)

    def __len__(self):
        return len(self.chosen)

    def rects(self):
        return [self.family[i] for i in sorted(self.chosen)] if self.family is not None else []


class _CoverProblem:
    """Witness bitsets of every rectangle of a family"""

    def __init__(self, poly: SimplePolygon, fam: RectFamily, target):
        self.family = fam
        self.target = CoverTarget(target)
        self.index = HyperedgeIndex.build(poly, fam, self.target)
        self.masks = self.index.column_masks()
        self.full = (1 << len(self.index.witnesses.points)) - 1

    def union(self, indices: Iterable[int]) -> int:
        covered = 0
        for i in indices:
            covered |= self.masks[i]
        return covered

    def covers(self, indices: Iterable[int]) -> bool:
        return self.union(indices) & self.full == self.full


def _family(poly: SimplePolygon, fam: Optional[RectFamily]) -> RectFamily:
    return fam if fam is not None else enumerate_maximal(poly)


def coverage_check(poly: SimplePolygon, fam: RectFamily, chosen: Iterable[int], target=CoverTarget.BOUNDARY) -> bool:
    """Whether the chosen rectangles cover every witness of the target"""
    return _CoverProblem(poly, fam, target).covers(chosen)


def _improving_swap(problem: _CoverProblem, current: List[int], k: int) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    outside = [i for i in range(len(problem.masks)) if i not in set(current)]
    for size in range(1, min(k, len(current)) + 1):
        for removed in combinations(current, size):
            gone = set(removed)
            uncovered = problem.full & ~problem.union(i for i in current if i not in gone)
            if uncovered == 0:
                return removed, ()
            useful = [i for i in outside if problem.masks[i] & uncovered]
            for added_size in range(1, size):
                for added in combinations(useful, added_size):
                    if problem.union(added) & uncovered == uncovered:
                        return removed, added
    return None


def local_search_cover(poly: SimplePolygon, target=CoverTarget.BOUNDARY, k: int = 1,
                       fam: Optional[RectFamily] = None) -> CoverSolution:
    """
    Shrink the full maximal family by first-improving swaps.

    A swap removes X (|X| <= k) and adds Y (|Y| < |X|) from outside the
    solution. X runs by size then lexicographic order, and Y likewise.

    Raises:
        BadParameterError: if k < 1
    """
    if k < 1:
        raise BadParameterError(f"Locality k must be at least 1, got {k}")
    fam = _family(poly, fam)
    problem = _CoverProblem(poly, fam, target)
    current = list(range(len(fam)))
    iterations = 0
    while True:
        swap = _improving_swap(problem, current, k)
        if swap is None:
            break
        removed, added = swap
        current = sorted((set(current) - set(removed)) | set(added))
        iterations += 1
        logger.debug("swap %d: -%s +%s -> %d rectangles", iterations, removed, added, len(current))
    return CoverSolution(frozenset(current), problem.target, iterations, k, fam)


def greedy_cover(poly: SimplePolygon, target=CoverTarget.BOUNDARY, fam: Optional[RectFamily] = None) -> CoverSolution:
    """Repeatedly take the rectangle covering most uncovered witnesses, lowest index on ties"""
    fam = _family(poly, fam)
    problem = _CoverProblem(poly, fam, target)
    uncovered = problem.full
    chosen = []
    while uncovered:
        gains = [(m & uncovered).bit_count() for m in problem.masks]
        best = max(range(len(gains)), key=lambda i: (gains[i], -i))
        if gains[best] == 0:
            break
        chosen.append(best)
        uncovered &= ~problem.masks[best]
    return CoverSolution(frozenset(chosen), problem.target, 0, 0, fam)


def _reduced_rows(problem: _CoverProblem) -> List[int]:
    """Distinct candidate sets of the witnesses, dropping supersets of other rows"""
    rows = set()
    for h in problem.index.groups:
        mask = 0
        for i in h:
            mask |= 1 << i
        rows.add(mask)
    ordered = sorted(rows, key=lambda m: (m.bit_count(), m))
    kept: List[int] = []
    for m in ordered:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


class _ExactSearch:
    def __init__(self, rows: List[int], n: int, node_limit: int, incumbent: List[int]):
        self.rows = rows
        self.n = n
        self.node_limit = node_limit
        self.best = list(incumbent)
        self.nodes = 0
        self.columns = []
        for c in range(n):
            mask = 0
            for r, row in enumerate(rows):
                if row >> c & 1:
                    mask |= 1 << r
            self.columns.append(mask)

    def run(self, chosen: List[int], uncovered: int) -> None:
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise LimitExceededError(f"Exact search exceeded {self.node_limit} nodes", nodes=self.nodes)
        if uncovered == 0:
            if len(chosen) < len(self.best):
                self.best = list(chosen)
            return
        gains = [(col & uncovered).bit_count() for col in self.columns]
        max_gain = max(gains)
        if max_gain == 0:
            return
        bound = len(chosen) - (-uncovered.bit_count() // max_gain)
        if bound >= len(self.best):
            return

        pending = uncovered
        pivot, pivot_options = -1, None
        while pending:
            r = (pending & -pending).bit_length() - 1
            pending &= pending - 1
            options = self.rows[r].bit_count()
            if pivot_options is None or options < pivot_options:
                pivot, pivot_options = r, options
        candidates = [c for c in range(self.n) if self.rows[pivot] >> c & 1]
        candidates.sort(key=lambda c: (-gains[c], c))
        for c in candidates:
            chosen.append(c)
            self.run(chosen, uncovered & ~self.columns[c])
            chosen.pop()


def exact_cover(poly: SimplePolygon, target=CoverTarget.BOUNDARY, node_limit: Optional[int] = None,
                fam: Optional[RectFamily] = None) -> CoverSolution:
    """
    Minimum-cardinality cover by branch and bound.

    Branches on the uncovered witness with the fewest candidate rectangles,
    pruning with the size of the chosen set plus the uncovered count divided by
    the best single gain.

    Raises:
        LimitExceededError: past node_limit nodes; ``incumbent`` holds the best cover found
    """
    node_limit = settings.DEFAULT_NODE_LIMIT if node_limit is None else node_limit
    fam = _family(poly, fam)
    problem = _CoverProblem(poly, fam, target)
    incumbent = sorted(greedy_cover(poly, target, fam).chosen)
    rows = _reduced_rows(problem)
    if 0 in rows:
        raise ValueError("Family does not cover every witness of the target")
    search = _ExactSearch(rows, len(fam), node_limit, incumbent)
    try:
        search.run([], (1 << len(rows)) - 1)
    except LimitExceededError as err:
        err.incumbent = CoverSolution(frozenset(search.best), problem.target, search.nodes, 0, fam)
        logger.info("exact cover stopped at %d nodes with incumbent of size %d", search.nodes, len(search.best))
        raise
    logger.debug("exact cover of size %d in %d nodes", len(search.best), search.nodes)
    return CoverSolution(frozenset(search.best), problem.target, search.nodes, 0, fam)


def cover_report(poly: SimplePolygon, k: int = 1, node_limit: Optional[int] = None,
                 targets: Sequence = tuple(CoverTarget)) -> Dict[str, Dict[str, Optional[float]]]:
    """Local, greedy and exact cover sizes per target"""
    fam = enumerate_maximal(poly)
    report = {}
    for target in targets:
        target = CoverTarget(target)
        local = local_search_cover(poly, target, k, fam)
        greedy = greedy_cover(poly, target, fam)
        try:
            exact = len(exact_cover(poly, target, node_limit, fam))
        except LimitExceededError:
            exact = None
        report[target.value] = {
            "local": len(local),
            "greedy": len(greedy),
            "exact": exact,
            "ratio": (len(local) / exact) if exact else None,
        }
    return report


def rectangle_visible(poly: SimplePolygon, p: Point, q: Point) -> bool:
    """Some rectangle inside the polygon holds both points"""
    return poly.raster.contains_box(min(p.hx, q.hx), min(p.hy, q.hy), max(p.hx, q.hx), max(p.hy, q.hy))


def antirectangle_candidates(poly: SimplePolygon) -> List[Point]:
    """Convex corners and the centers of the polygon's grid cells inside it"""
    points = {c.point for c in convex_corners(poly)}
    xs, ys = poly.xs, poly.ys
    inside = poly.raster.inside
    for i in range(len(xs) - 1):
        for j in range(len(ys) - 1):
            if inside[i, j]:
                points.add(Point(xs[i] + xs[i + 1], ys[j] + ys[j + 1]))
    return sorted(points)


def visibility_graph(poly: SimplePolygon, points: Sequence[Point]) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(len(points)))
    for i, j in combinations(range(len(points)), 2):
        if rectangle_visible(poly, points[i], points[j]):
            graph.add_edge(i, j)
    return graph


def is_antirectangle(poly: SimplePolygon, points: Sequence[Point]) -> bool:
    return all(
        poly.contains_point(p) for p in points
    ) and not any(rectangle_visible(poly, p, q) for p, q in combinations(points, 2))


class _IndependentSetSearch:
    """Maximum independent set by branch and bound with a clique-cover bound"""

    def __init__(self, adjacency: List[int], node_limit: int):
        self.adjacency = adjacency
        self.node_limit = node_limit
        self.best: List[int] = []
        self.nodes = 0

    def _clique_cover(self, pending: int) -> int:
        cliques = 0
        while pending:
            v = (pending & -pending).bit_length() - 1
            clique = self.adjacency[v] & pending
            pending &= ~(1 << v)
            while clique:
                w = (clique & -clique).bit_length() - 1
                pending &= ~(1 << w)
                clique &= self.adjacency[w]
            cliques += 1
        return cliques

    def run(self, chosen: List[int], pending: int) -> None:
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise LimitExceededError(f"Antirectangle search exceeded {self.node_limit} nodes", nodes=self.nodes)
        if len(chosen) > len(self.best):
            self.best = list(chosen)
        if not pending or len(chosen) + self._clique_cover(pending) <= len(self.best):
            return
        v = (pending & -pending).bit_length() - 1
        rest = pending & ~(1 << v)
        chosen.append(v)
        self.run(chosen, rest & ~self.adjacency[v])
        chosen.pop()
        self.run(chosen, rest)


def max_antirectangle(poly: SimplePolygon, node_limit: Optional[int] = None,
                      candidates: Optional[Sequence[Point]] = None) -> List[Point]:
    """
    Largest set of points no two of which share a rectangle inside the polygon.

    Raises:
        LimitExceededError: past node_limit nodes; ``incumbent`` holds the best set found
    """
    node_limit = settings.DEFAULT_NODE_LIMIT if node_limit is None else node_limit
    points = list(candidates) if candidates is not None else antirectangle_candidates(poly)
    adjacency = [0] * len(points)
    for i, j in combinations(range(len(points)), 2):
        if rectangle_visible(poly, points[i], points[j]):
            adjacency[i] |= 1 << j
            adjacency[j] |= 1 << i
    search = _IndependentSetSearch(adjacency, node_limit)
    try:
        search.run([], (1 << len(points)) - 1)
    except LimitExceededError as err:
        err.incumbent = [points[i] for i in search.best]
        raise
    return [points[i] for i in sorted(search.best)]


def improving_point_move(poly: SimplePolygon, points: Sequence[Point], k: int = 1,
                         candidates: Optional[Sequence[Point]] = None) -> Optional[List[Point]]:
    """
    First move dropping at most k points and adding one more than it drops.

    Returns:
        The enlarged antirectangle, or None at a local optimum.
    """
    if k < 1:
        raise BadParameterError(f"Locality k must be at least 1, got {k}")
    taken = set(points)
    pool = [p for p in (candidates if candidates is not None else antirectangle_candidates(poly)) if p not in taken]
    current = sorted(points)
    for size in range(0, min(k, len(current)) + 1):
        for removed in combinations(current, size):
            kept = [p for p in current if p not in removed]
            free = [q for q in pool if not any(rectangle_visible(poly, p, q) for p in kept)]
            for added in combinations(free, size + 1):
                if is_antirectangle(poly, added):
                    return sorted(kept + list(added))
    return None


def local_search_antirectangle(poly: SimplePolygon, start: Sequence[Point], k: int = 1,
                               candidates: Optional[Sequence[Point]] = None) -> List[Point]:
    """
    Grow an antirectangle by improving moves until none applies.

    Raises:
        ValueError: if start is not an antirectangle
    """
    if not is_antirectangle(poly, start):
        raise ValueError("Start points do not form an antirectangle")
    current = sorted(start)
    while True:
        nxt = improving_point_move(poly, current, k, candidates)
        if nxt is None:
            return current
        current = nxt
