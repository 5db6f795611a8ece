# properties.py
"""Structural properties of maximal-rectangle families.

Each check returns a list of :class:`PropertyViolation`; an empty list means the
property holds. Checks that need a kernel rectangle or a proper family return
an empty list when the family does not meet that precondition.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Dict, FrozenSet, List, Optional, Tuple

import networkx as nx
import numpy as np

from rectcover.builder import partition_kernel_family, type_leaf_family
from rectcover.constants import BOTTOM, CORNER_DIRECTIONS, DIRECTIONS, LEFT, RIGHT, TOP
from rectcover.exceptions import EmptyKernelError, KernelPartitionError
from rectcover.geom import IntersectionTag, Rect, SimplePolygon, classify_intersection, pierce_less
from rectcover.hypergraph import CoverTarget, HyperedgeIndex, SupportGraph, kernel, star_graph, verify_support
from rectcover.maxrect import RectFamily, enumerate_maximal

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PropertyViolation:
    """A property that failed, with the rectangles involved"""
    name: str
    message: str
    rects: Tuple[Rect, ...]


def _family(poly: SimplePolygon, fam: Optional[RectFamily]) -> RectFamily:
    return enumerate_maximal(poly) if fam is None else fam


def _shared(poly: SimplePolygon, fam: RectFamily) -> np.ndarray:
    index = HyperedgeIndex.build(poly, fam, CoverTarget.BOUNDARY)
    m = index.matrix.astype(np.int64)
    return (m.T @ m) > 0


def blocking_sides(poly: SimplePolygon, r: Rect, direction: str) -> FrozenSet[int]:
    """
    Indices of polygon sides meeting the given side of r away from its corners.
    """
    if direction in (TOP, BOTTOM):
        y = r.y2 if direction == TOP else r.y1
        segment = ((r.x1, y), (r.x2, y))
    else:
        x = r.x2 if direction == RIGHT else r.x1
        segment = ((x, r.y1), (x, r.y2))
    (sx1, sy1), (sx2, sy2) = segment
    corners = {segment[0], segment[1]}
    found = set()
    for i, ((ax, ay), (bx, by)) in enumerate(poly.sides):
        lo_x, hi_x = max(min(ax, bx), sx1), min(max(ax, bx), sx2)
        lo_y, hi_y = max(min(ay, by), sy1), min(max(ay, by), sy2)
        if lo_x > hi_x or lo_y > hi_y:
            continue
        if (lo_x, lo_y) == (hi_x, hi_y) and (lo_x, lo_y) in corners:
            continue
        found.add(i)
    return frozenset(found)


def opposite_blocker_violations(poly: SimplePolygon, fam: Optional[RectFamily] = None) -> List[PropertyViolation]:
    """No two distinct maximal rectangles share both top and bottom, or both left and right, blockers"""
    fam = _family(poly, fam)
    sides = [{d: blocking_sides(poly, r, d) for d in DIRECTIONS} for r in fam]
    violations = []
    for i, j in combinations(range(len(fam)), 2):
        for first, second in ((TOP, BOTTOM), (LEFT, RIGHT)):
            if sides[i][first] == sides[j][first] and sides[i][second] == sides[j][second]:
                violations.append(PropertyViolation(
                    "opposite-blockers",
                    f"{fam[i]} and {fam[j]} share their {first} and {second} blockers",
                    (fam[i], fam[j]),
                ))
    return violations


def _projection(r: Rect, direction: str) -> Tuple[int, int]:
    return (r.x1, r.x2) if direction in (TOP, BOTTOM) else (r.y1, r.y2)


def _laminar(a: Tuple[int, int], b: Tuple[int, int]) -> bool:
    if a[1] <= b[0] or b[1] <= a[0]:
        return True
    return (a[0] <= b[0] and b[1] <= a[1]) or (b[0] <= a[0] and a[1] <= b[1])


def laminar_violations(poly: SimplePolygon, fam: Optional[RectFamily] = None) -> List[PropertyViolation]:
    """Rectangles blocked on one side by the same polygon side project to a laminar family"""
    fam = _family(poly, fam)
    violations = []
    for direction in DIRECTIONS:
        on_side: Dict[int, List[Rect]] = {}
        for r in fam:
            for s in blocking_sides(poly, r, direction):
                on_side.setdefault(s, []).append(r)
        for s, members in sorted(on_side.items()):
            for a, b in combinations(members, 2):
                if not _laminar(_projection(a, direction), _projection(b, direction)):
                    violations.append(PropertyViolation(
                        "laminar",
                        f"{a} and {b} cross on their {direction} blocker {poly.sides[s]}",
                        (a, b),
                    ))
    return violations


def _kernel_partition(poly: SimplePolygon, fam: RectFamily, center: Optional[int]):
    try:
        if center is None:
            ker = sorted(kernel(poly, fam))
            if not ker:
                return None
            center = ker[0]
        return partition_kernel_family(poly, fam, center)
    except (KernelPartitionError, EmptyKernelError) as err:
        logger.debug("kernel checks skipped: %s", err)
        return None


def corner_violations(poly: SimplePolygon, fam: RectFamily, center: Optional[int] = None) -> List[PropertyViolation]:
    """
    Corner rectangles of a kernel rectangle share no boundary point, number at
    most two per corner, and pierce each other without alignment when two.
    """
    part = _kernel_partition(poly, fam, center)
    if part is None:
        return []
    shared = _shared(poly, fam)
    violations = []
    all_corners = [i for d in CORNER_DIRECTIONS for i in part.corners[d]]
    for i, j in combinations(all_corners, 2):
        if shared[i, j]:
            violations.append(PropertyViolation(
                "corner-disjoint", f"corner rectangles {fam[i]} and {fam[j]} meet on the boundary", (fam[i], fam[j])))
    for d in CORNER_DIRECTIONS:
        members = part.corners[d]
        if len(members) > 2:
            violations.append(PropertyViolation(
                "corner-pattern", f"{len(members)} corner rectangles at {d}", tuple(fam[i] for i in members)))
        elif len(members) == 2:
            kind = classify_intersection(fam[members[0]], fam[members[1]])
            if kind.tag != IntersectionTag.PIERCING or kind.aligned:
                violations.append(PropertyViolation(
                    "corner-pattern",
                    f"corner rectangles at {d} meet as {kind.tag.value}, aligned={kind.aligned}",
                    (fam[members[0]], fam[members[1]]),
                ))
    return violations


def vertical_triple_violations(poly: SimplePolygon, fam: RectFamily, center: Optional[int] = None) -> List[PropertyViolation]:
    """No three extremal vertical (or horizontal) rectangles pairwise meet on the boundary"""
    part = _kernel_partition(poly, fam, center)
    if part is None:
        return []
    shared = _shared(poly, fam)
    violations = []
    for group in (part.vertical_max, part.horizontal_min):
        for i, j, k in combinations(group, 3):
            if shared[i, j] and shared[j, k] and shared[i, k]:
                violations.append(PropertyViolation(
                    "vertical-triple", f"{fam[i]}, {fam[j]} and {fam[k]} pairwise meet on the boundary",
                    (fam[i], fam[j], fam[k])))
    return violations


def two_corner_one_pierce_violations(poly: SimplePolygon, fam: RectFamily,
                                     center: Optional[int] = None) -> List[PropertyViolation]:
    """Two extremal rectangles meeting on the boundary are never pierced by one common member"""
    part = _kernel_partition(poly, fam, center)
    if part is None:
        return []
    shared = _shared(poly, fam)
    violations = []
    groups = (
        (part.vertical_max, part.vertical, lambda k, i: pierce_less(fam[k], fam[i])),
        (part.horizontal_min, part.horizontal, lambda k, i: pierce_less(fam[i], fam[k])),
    )
    for extremal, members, below in groups:
        for i, j in combinations(extremal, 2):
            if not shared[i, j]:
                continue
            for k in members:
                if below(k, i) and below(k, j):
                    violations.append(PropertyViolation(
                        "two-corner-one-pierce", f"{fam[k]} sits under both {fam[i]} and {fam[j]}",
                        (fam[i], fam[j], fam[k])))
    return violations


def precedence_star_violations(poly: SimplePolygon, fam: RectFamily,
                               center: Optional[int] = None) -> List[PropertyViolation]:
    """Each extremal rectangle with the members under it has a star support centred on it"""
    part = _kernel_partition(poly, fam, center)
    if part is None:
        return []
    violations = []
    stacks = [(v, [i for i in part.vertical if pierce_less(fam[i], fam[v])]) for v in part.vertical_max]
    stacks += [(h, [i for i in part.horizontal if pierce_less(fam[h], fam[i])]) for h in part.horizontal_min]
    for top, under in stacks:
        if not under:
            continue
        sub = fam.subset([top] + under)
        if verify_support(poly, sub, star_graph(len(sub), 0)):
            violations.append(PropertyViolation(
                "precedence-star", f"star around {fam[top]} does not support its stack",
                tuple(sub)))
    return violations


def corner_degree_violations(poly: SimplePolygon, fam: RectFamily,
                             center: Optional[int] = None) -> List[PropertyViolation]:
    """
    A corner rectangle meets at most two extremal vertical and two extremal
    horizontal rectangles on the boundary, at most one terminal of each kind,
    and one of each kind when it shares its corner with another.
    """
    part = _kernel_partition(poly, fam, center)
    if part is None:
        return []
    shared = _shared(poly, fam)
    vs, hs = part.vertical_max, part.horizontal_min
    v_terms = {vs[0], vs[-1]} if vs else set()
    h_terms = {hs[0], hs[-1]} if hs else set()
    violations = []
    for d in CORNER_DIRECTIONS:
        members = part.corners[d]
        limit = 1 if len(members) == 2 else 2
        for n in members:
            meet_v = [v for v in vs if shared[n, v]]
            meet_h = [h for h in hs if shared[n, h]]
            rects = (fam[n],) + tuple(fam[i] for i in meet_v + meet_h)
            if len(meet_v) > limit or len(meet_h) > limit:
                violations.append(PropertyViolation(
                    "corner-degree",
                    f"corner {fam[n]} meets {len(meet_v)} vertical and {len(meet_h)} horizontal rectangles",
                    rects))
            if len(v_terms.intersection(meet_v)) > 1 or len(h_terms.intersection(meet_h)) > 1:
                violations.append(PropertyViolation(
                    "corner-degree", f"corner {fam[n]} meets two terminals of one kind", rects))
    return violations


def leaf_members(fam: RectFamily, leaf: Rect, parent: Rect) -> List[int]:
    """Indices of rectangles standing on the far side of a leaf slab"""
    below = leaf.y2 == parent.y1
    far = leaf.y1 if below else leaf.y2
    return [
        i for i, r in enumerate(fam)
        if (r.y1 if below else r.y2) == far and leaf.x1 <= r.x1 and r.x2 <= leaf.x2
    ]


def type1_path_violations(smaller: SimplePolygon, small_fam: RectFamily, poly: SimplePolygon,
                          fam: RectFamily, leaf: Rect, parent: Rect) -> List[PropertyViolation]:
    """The ordered path over aligned Type-1 rectangles supports the leaf's far side"""
    typed = type_leaf_family(smaller, small_fam, poly, fam, leaf, parent)
    root = typed.root
    middle = [root] if root == leaf or root in typed.type1 else []
    lefts = sorted((r for r in typed.type1 if r != root and r.x1 == leaf.x1), key=lambda r: (r.x2, r))
    rights = sorted((r for r in typed.type1 if r != root and r.x2 == leaf.x2 and r.x1 != leaf.x1),
                    key=lambda r: (r.x1, r))
    path = lefts + middle + rights
    if len(path) < 2:
        return []
    below = leaf.y2 == parent.y1
    far = leaf.y1 if below else leaf.y2
    position = {r: k for k, r in enumerate(path)}
    sub = RectFamily(path, poly)
    index = HyperedgeIndex.build(poly, sub, CoverTarget.BOUNDARY)
    violations = []
    for row, p in enumerate(index.witnesses.points):
        if p.hy != 2 * far or not 2 * leaf.x1 <= p.hx <= 2 * leaf.x2:
            continue
        ks = sorted(position[sub[i]] for i in index.hyperedge_at(row))
        if ks and ks[-1] - ks[0] + 1 != len(ks):
            violations.append(PropertyViolation(
                "type1-path", f"path breaks the rectangles through {p}", tuple(path[k] for k in ks)))
            break
    return violations


def struct_violations(poly: SimplePolygon, fam: RectFamily, graph: SupportGraph,
                      leaf: Rect, parent: Rect) -> List[PropertyViolation]:
    """
    Contracting edges away from the leaf's rectangles leaves every contracted
    vertex with exactly one neighbour among them.
    """
    on_leaf = set(leaf_members(fam, leaf, parent))
    g = graph.to_networkx()
    rest = [v for v in range(graph.n) if v not in on_leaf]
    violations = []
    for component in nx.connected_components(g.subgraph(rest)):
        neighbours = {w for v in component for w in g.neighbors(v) if w in on_leaf}
        if len(neighbours) != 1:
            rects = tuple(fam[v] for v in sorted(component)) + tuple(fam[w] for w in sorted(neighbours))
            violations.append(PropertyViolation(
                "struct", f"contracted vertex has {len(neighbours)} neighbours on {leaf}", rects))
    return violations


FAMILY_CHECKS: Dict[str, Callable[[SimplePolygon, RectFamily], List[PropertyViolation]]] = {
    "opposite-blockers": opposite_blocker_violations,
    "laminar": laminar_violations,
}

KERNEL_CHECKS: Dict[str, Callable[..., List[PropertyViolation]]] = {
    "corner": corner_violations,
    "vertical-triple": vertical_triple_violations,
    "two-corner-one-pierce": two_corner_one_pierce_violations,
    "precedence-star": precedence_star_violations,
    "corner-degree": corner_degree_violations,
}


def check_properties(poly: SimplePolygon, fam: Optional[RectFamily] = None,
                     center: Optional[int] = None) -> Dict[str, List[PropertyViolation]]:
    """
    Run every family and kernel check.

    Kernel checks run against ``center`` or, when None, the lowest kernel index.
    """
    fam = _family(poly, fam)
    results = {name: check(poly, fam) for name, check in FAMILY_CHECKS.items()}
    for name, check in KERNEL_CHECKS.items():
        results[name] = check(poly, fam, center)
    failed = sum(len(v) for v in results.values())
    if failed:
        logger.warning("%d property violations on a family of %d", failed, len(fam))
    return results
