# builder.py
"""Planar support construction for families of maximal rectangles.

The complete family of a polygon is handled inductively over its horizontal
R-tree: leaves are peeled off and then re-attached one at a time, rewiring the
support of the smaller polygon. Families with a common kernel rectangle get a
direct construction around that rectangle, which in turn powers the removal of
single vertices from a support and hence supports for arbitrary subfamilies.

Every output is closed by a completion pass that connects any hyperedge the
construction rules left disconnected, preferring edges that keep the graph
planar; each such edge is recorded in the graph's diagnostics.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, Iterable, List, Optional, Set, Tuple

from rectcover.constants import (
    BOTTOM,
    CORNER_DIRECTIONS,
    LEFT,
    NORTH_EAST,
    NORTH_WEST,
    RIGHT,
    SOUTH_EAST,
    SOUTH_WEST,
    TOP,
)
from rectcover.exceptions import (
    InvalidInputSupportError,
    KernelPartitionError,
    NotInKernelError,
    NotMaximalMemberError,
    NotProperError,
)
from rectcover.geom import Rect, SimplePolygon, pierce_less, polygon_from_rects
from rectcover.hypergraph import (
    CoverTarget,
    Edge,
    HyperedgeIndex,
    SupportGraph,
    disconnected_components,
    is_proper,
    kernel,
    verify_support,
)
from rectcover.maxrect import (
    RectFamily,
    blockers,
    common_blocker,
    enumerate_maximal,
    extension,
    is_maximal,
    is_vertically_blocked,
    true_runs,
)
from rectcover.planar import (
    LrColoring,
    dfs_orient,
    is_planar,
    lr_coloring,
    planar_with_face,
    shortcut_cotree,
)

logger = logging.getLogger(__name__)

RectEdge = Tuple[Rect, Rect]


def _redge(a: Rect, b: Rect) -> RectEdge:
    return (a, b) if a < b else (b, a)


@dataclass
class RTree:
    """
    Horizontal slab decomposition of a polygon.

    Attributes:
        nodes: slabs sorted by (y1, x1); node 0 is the root
        adjacency: slabs sharing a horizontal boundary piece of positive length
        parent: tree parent of every node, None for the root
        leaf_order: peeling order, highest-index leaf first
    """
    nodes: List[Rect]
    adjacency: Dict[int, List[int]]
    parent: Dict[int, Optional[int]]
    leaf_order: List[int]

    root: int = 0

    def children(self, i: int) -> List[int]:
        return [j for j, p in self.parent.items() if p == i]

    def __len__(self):
        return len(self.nodes)


def horizontal_rtree(poly: SimplePolygon) -> RTree:
    """
    Cut the polygon horizontally through every concave corner.

    Cross-section intervals of consecutive row bands are merged when their
    x-ranges coincide, which leaves exactly the slabs bounded by the cuts.
    """
    raster = poly.raster
    xs, ys = poly.xs, poly.ys
    pieces: List[List[int]] = []
    open_pieces: Dict[Tuple[int, int], List[int]] = {}
    for j in range(len(ys) - 1):
        current = {}
        for a, b in true_runs(raster.inside[:, j]):
            interval = (xs[a], xs[b])
            piece = open_pieces.get(interval)
            if piece is not None:
                piece[3] = ys[j + 1]
            else:
                piece = [xs[a], ys[j], xs[b], ys[j + 1]]
                pieces.append(piece)
            current[interval] = piece
        open_pieces = current

    nodes = sorted((Rect(*p) for p in pieces), key=lambda r: (r.y1, r.x1))
    adjacency: Dict[int, List[int]] = {i: [] for i in range(len(nodes))}
    for i, j in combinations(range(len(nodes)), 2):
        a, b = nodes[i], nodes[j]
        stacked = a.y2 == b.y1 or b.y2 == a.y1
        if stacked and min(a.x2, b.x2) - max(a.x1, b.x1) > 0:
            adjacency[i].append(j)
            adjacency[j].append(i)

    parent: Dict[int, Optional[int]] = {0: None}
    queue = [0]
    while queue:
        v = queue.pop(0)
        for w in adjacency[v]:
            if w not in parent:
                parent[w] = v
                queue.append(w)
    n_edges = sum(len(v) for v in adjacency.values()) // 2
    if len(parent) != len(nodes) or n_edges != len(nodes) - 1:
        logger.warning("slab adjacency of %d slabs is not a tree", len(nodes))

    remaining = set(range(len(nodes)))
    leaf_order = []
    while len(remaining) > 1:
        leaves = [v for v in remaining if v != 0 and sum(w in remaining for w in adjacency[v]) == 1]
        leaf = max(leaves)
        leaf_order.append(leaf)
        remaining.remove(leaf)
    return RTree(nodes=nodes, adjacency=adjacency, parent=parent, leaf_order=leaf_order)


def _shared_counts(index: HyperedgeIndex) -> Counter:
    shared: Counter = Counter()
    for h in index.multi_edges():
        for pair in combinations(sorted(h), 2):
            shared[pair] += 1
    return shared


def complete_support(poly: SimplePolygon, fam: RectFamily, graph: SupportGraph,
                     target=CoverTarget.BOUNDARY) -> SupportGraph:
    """
    Connect every hyperedge the graph leaves disconnected.

    Hyperedges are processed smallest first. Candidate edges join the first
    component to the others, most shared hyperedges first; the first one keeping
    the outer face (then plain planarity) is taken, and failing that the best
    candidate is forced in. The outer list survives only if it still holds.
    """
    index = HyperedgeIndex.build(poly, fam, target)
    shared = _shared_counts(index)
    nx_graph = graph.to_networkx()
    outer = tuple(graph.outer)
    diagnostics = list(graph.diagnostics)

    guards: List[Callable[[SupportGraph], bool]] = []
    if outer:
        guards.append(lambda g: planar_with_face(g, outer))
    guards.append(is_planar)

    for h in index.multi_edges():
        comps = disconnected_components(nx_graph, h)
        while len(comps) > 1:
            first = comps[0]
            candidates = sorted(
                {(min(u, v), max(u, v)) for u in first for comp in comps[1:] for v in comp},
                key=lambda e: (-shared[e], e),
            )
            chosen = None
            for guard in guards:
                for u, v in candidates:
                    nx_graph.add_edge(u, v)
                    if guard(SupportGraph.from_networkx(nx_graph)):
                        chosen = (u, v)
                        break
                    nx_graph.remove_edge(u, v)
                if chosen:
                    break
            if chosen is None:
                chosen = candidates[0]
                nx_graph.add_edge(*chosen)
                diagnostics.append(f"forced non-planar edge {fam[chosen[0]]}-{fam[chosen[1]]}")
                logger.warning("no planar edge joins a hyperedge of %s, forced %s-%s",
                               sorted(h), fam[chosen[0]], fam[chosen[1]])
            else:
                diagnostics.append(f"completion edge {fam[chosen[0]]}-{fam[chosen[1]]}")
            comps = disconnected_components(nx_graph, h)

    result = SupportGraph.from_networkx(nx_graph, diagnostics=diagnostics)
    if outer:
        if planar_with_face(result, outer):
            result = SupportGraph(result.n, result.edges, outer, result.diagnostics)
        else:
            diagnostics.append("outer face claim dropped")
            logger.warning("outer face %s lost while completing the support", outer)
            result = SupportGraph(result.n, result.edges, (), diagnostics)
    return result


def vertically_blocked_indices(poly: SimplePolygon, fam: RectFamily) -> Tuple[int, ...]:
    return tuple(i for i, r in enumerate(fam) if is_vertically_blocked(poly, r))


@dataclass
class TypedLeafFamily:
    """
    Rectangles standing on the far side of a peeled leaf slab.

    Attributes:
        family: rectangles whose far side lies on the leaf's far side
        type1: members whose image stays maximal once the leaf is attached
        type2: members whose image is their own truncation
        root: the leaf itself when maximal, else its extension toward the parent
        image: each member other than the leaf mapped to a rectangle of the smaller polygon
    """
    family: List[Rect]
    type1: List[Rect]
    type2: List[Rect]
    root: Rect
    image: Dict[Rect, Rect] = field(default_factory=dict)


def type_leaf_family(smaller: SimplePolygon, small_fam: RectFamily, poly: SimplePolygon, fam: RectFamily,
                     leaf: Rect, parent: Rect) -> TypedLeafFamily:
    below = leaf.y2 == parent.y1
    far = leaf.y1 if below else leaf.y2
    cut = leaf.y2 if below else leaf.y1
    members = [
        r for r in fam
        if (r.y1 if below else r.y2) == far and leaf.x1 <= r.x1 and r.x2 <= leaf.x2
    ]
    image: Dict[Rect, Rect] = {}
    for r in members:
        if r == leaf:
            continue
        clipped = Rect(r.x1, cut, r.x2, r.y2) if below else Rect(r.x1, r.y1, r.x2, cut)
        image[r] = extension(smaller, extension(smaller, clipped, LEFT), RIGHT)
    type1 = [r for r in members if r in image and image[r] in fam]
    type2 = [r for r in members if r in image and image[r] not in fam]
    root = leaf if leaf in fam else extension(poly, leaf, TOP if below else BOTTOM)
    return TypedLeafFamily(family=members, type1=type1, type2=type2, root=root, image=image)


def _laminar_parent(members: List[Rect], r: Rect) -> Optional[Rect]:
    supersets = [
        p for p in members
        if p != r and p.x1 <= r.x1 and r.x2 <= p.x2 and (p.x1, p.x2) != (r.x1, r.x2)
    ]
    return min(supersets, key=lambda p: (p.width, p)) if supersets else None


def rewire_leaf(typed: TypedLeafFamily, small_edges: Set[RectEdge], leaf: Rect,
                diagnostics: List[str]) -> Tuple[Set[RectEdge], Set[RectEdge]]:
    """
    Rewire the support of the smaller polygon for one attached leaf.

    Type-1 rectangles form a path through the root, ordered by their free side,
    and each is joined to its image. Type-2 rectangles take over their images,
    the topmost of every laminar subtree moving from its parent's image to the
    type-1 parent itself.

    Returns:
        (kept, added): edges carried over from small_edges and new edges, both renamed to
        rectangles of the grown polygon
    """
    image = typed.image
    kept = set(small_edges)
    added: Set[RectEdge] = set()

    # Type-1 path through the root
    root = typed.root
    middle = [root] if root == leaf or root in typed.type1 else []
    lefts = sorted((r for r in typed.type1 if r != root and r.x1 == leaf.x1), key=lambda r: (r.x2, r))
    rights = sorted((r for r in typed.type1 if r != root and r.x2 == leaf.x2 and r.x1 != leaf.x1),
                    key=lambda r: (r.x1, r))
    path = lefts + middle + rights
    for a, b in zip(path, path[1:]):
        added.add(_redge(a, b))
    on_path = set(path)
    for r in typed.type1:
        added.add(_redge(r, image[r]))
        if r not in on_path:
            p = _laminar_parent(typed.family, r)
            if p is not None:
                added.add(_redge(r, p))
            diagnostics.append(f"type-1 rectangle {r} is aligned with neither side of {leaf}")

    # reattach type-2 subtrees hanging below type-1 rectangles or the leaf
    type1 = set(typed.type1)
    for c in typed.type2:
        p = _laminar_parent(typed.family, c)
        if p is None:
            # a type-2 root keeps the edges of its image through the renaming
            if c != typed.root:
                diagnostics.append(f"type-2 rectangle {c} has no laminar parent")
            continue
        if p in type1 or p == leaf:
            if p in image:
                kept.discard(_redge(image[p], image[c]))
            added.add(_redge(p, image[c]))

    rename = {image[c]: c for c in typed.type2}

    def renamed(pairs: Iterable[RectEdge]) -> Set[RectEdge]:
        out = set()
        for a, b in pairs:
            a, b = rename.get(a, a), rename.get(b, b)
            if a != b:
                out.add(_redge(a, b))
        return out

    kept_renamed = renamed(kept)
    return kept_renamed, renamed(added) - kept_renamed


def _attach_leaf(smaller: SimplePolygon, small_fam: RectFamily, small_edges: Set[RectEdge],
                 poly: SimplePolygon, leaf: Rect, parent: Rect,
                 diagnostics: List[str]) -> Tuple[RectFamily, Set[RectEdge]]:
    fam = enumerate_maximal(poly)
    fam_set = set(fam)
    typed = type_leaf_family(smaller, small_fam, poly, fam, leaf, parent)
    image = typed.image

    comparable = (leaf.x1 <= parent.x1 and parent.x2 <= leaf.x2) or (parent.x1 <= leaf.x1 and leaf.x2 <= parent.x2)
    if not comparable:
        diagnostics.append(f"leaf {leaf} overlaps parent {parent} without nesting")
    if len(set(image.values())) != len(image):
        diagnostics.append(f"images of the rectangles on {leaf} collide")
    for r, f in image.items():
        if f not in small_fam:
            diagnostics.append(f"image {f} of {r} is not maximal in the smaller polygon")

    kept, added = rewire_leaf(typed, small_edges, leaf, diagnostics)
    edges: Set[RectEdge] = set()
    for a, b in kept | added:
        if a not in fam_set or b not in fam_set:
            diagnostics.append(f"dropped stray edge {a}-{b}")
            continue
        edges.add(_redge(a, b))
    kept_renamed = kept & edges

    outer = vertically_blocked_indices(poly, fam)
    indexed = [(fam.index_of(a), fam.index_of(b)) for a, b in sorted(edges)]
    graph = SupportGraph(len(fam), tuple(indexed), outer)
    if not planar_with_face(graph, outer):
        diagnostics.append(f"attaching {leaf} broke the outer face, rebuilding greedily")
        graph = _greedy_planar(fam, sorted(kept_renamed) + sorted(edges - kept_renamed), outer)

    graph = complete_support(poly, fam, SupportGraph(graph.n, graph.edges, graph.outer, diagnostics))
    diagnostics[:] = list(graph.diagnostics)
    return fam, {_redge(fam[i], fam[j]) for i, j in graph.edges}


def _greedy_planar(fam: RectFamily, ordered: Iterable[RectEdge], outer: Tuple[int, ...]) -> SupportGraph:
    edges: List[Edge] = []
    for a, b in ordered:
        candidate = edges + [(fam.index_of(a), fam.index_of(b))]
        if planar_with_face(SupportGraph(len(fam), tuple(candidate)), outer):
            edges = candidate
    return SupportGraph(len(fam), tuple(edges), outer)


def build_complete_support(poly: SimplePolygon) -> SupportGraph:
    """
    Planar support of all maximal rectangles of the polygon for its boundary.

    Slabs of the horizontal R-tree are attached in reverse peeling order, each
    step rewiring the support of the smaller polygon. The outer list holds the
    vertically blocked rectangles when they share one face.
    """
    tree = horizontal_rtree(poly)
    region = [tree.nodes[tree.root]]
    current = polygon_from_rects(region)
    fam = enumerate_maximal(current)
    edges: Set[RectEdge] = set()
    diagnostics: List[str] = []
    for leaf_index in reversed(tree.leaf_order):
        leaf = tree.nodes[leaf_index]
        parent = tree.nodes[tree.parent[leaf_index]]
        region.append(leaf)
        grown = polygon_from_rects(region)
        fam, edges = _attach_leaf(current, fam, edges, grown, leaf, parent, diagnostics)
        current = grown

    final = enumerate_maximal(poly)
    if set(final) != set(fam):
        diagnostics.append("slab induction ended on a different family")
    final_set = set(final)
    indexed = tuple((final.index_of(a), final.index_of(b)) for a, b in edges if a in final_set and b in final_set)
    outer = vertically_blocked_indices(poly, final)
    graph = complete_support(poly, final, SupportGraph(len(final), indexed, outer, diagnostics))
    logger.info("complete support: %d rectangles, %d edges, %d diagnostics",
                graph.n, len(graph.edges), len(graph.diagnostics))
    return graph


@dataclass
class KernelPartition:
    """
    Family split around a kernel rectangle.

    Attributes:
        center: index of the kernel rectangle
        corners: corner direction to members meeting that corner
        vertical: members pierced-below the center
        horizontal: members the center is pierced-below
        vertical_max: maximal vertical members, left to right
        horizontal_min: minimal horizontal members, bottom to top
        aligned: left/right flags of the first/last vertical terminal and
            bottom/top flags of the first/last horizontal terminal
        dominators: each non-extremal vertical or horizontal member mapped to
            the extremal member it sits under
    """
    center: int
    corners: Dict[str, List[int]]
    vertical: List[int]
    horizontal: List[int]
    vertical_max: List[int]
    horizontal_min: List[int]
    aligned: Dict[str, bool]
    dominators: Dict[int, int]

    def members(self) -> List[int]:
        out = self.vertical + self.horizontal
        for d in CORNER_DIRECTIONS:
            out += self.corners[d]
        return sorted(out)


def _corner_direction(r: Rect, center: Rect) -> str:
    north = r.y2 > center.y2
    east = r.x2 > center.x2
    if north:
        return NORTH_EAST if east else NORTH_WEST
    return SOUTH_EAST if east else SOUTH_WEST


def _aligned(poly: SimplePolygon, r: Rect, center: Rect, side: str) -> bool:
    coord = {LEFT: lambda q: q.x1, RIGHT: lambda q: q.x2, BOTTOM: lambda q: q.y1, TOP: lambda q: q.y2}[side]
    if coord(r) != coord(center):
        return False
    return common_blocker(blockers(poly, r).side(side), blockers(poly, center).side(side))


def partition_kernel_family(poly: SimplePolygon, fam: RectFamily, center: int) -> KernelPartition:
    """
    Split a proper family around one of its kernel rectangles.

    Raises:
        NotInKernelError: if center is not a kernel member
        NotProperError: if the family is not proper
    """
    if not 0 <= center < len(fam):
        raise NotInKernelError(f"Center {center} out of range for {len(fam)} rectangles")
    if center not in kernel(poly, fam):
        raise NotInKernelError(f"Rectangle {fam[center]} is not in the kernel")
    if not is_proper(poly, fam):
        raise NotProperError("Family is not proper")

    rc = fam[center]
    vertical, horizontal = [], []
    corners: Dict[str, List[int]] = {d: [] for d in CORNER_DIRECTIONS}
    for i, r in enumerate(fam):
        if i == center:
            continue
        if pierce_less(r, rc):
            vertical.append(i)
        elif pierce_less(rc, r):
            horizontal.append(i)
        else:
            corners[_corner_direction(r, rc)].append(i)
    for d, members in corners.items():
        if len(members) > 2:
            logger.warning("%d corner rectangles at %s of %s", len(members), d, rc)

    vertical_max = sorted(
        (i for i in vertical if not any(pierce_less(fam[i], fam[j]) for j in vertical if j != i)),
        key=lambda i: (fam[i].x1, fam[i].x2, i),
    )
    horizontal_min = sorted(
        (i for i in horizontal if not any(pierce_less(fam[j], fam[i]) for j in horizontal if j != i)),
        key=lambda i: (fam[i].y1, fam[i].y2, i),
    )

    aligned = {LEFT: False, RIGHT: False, BOTTOM: False, TOP: False}
    if vertical_max:
        aligned[LEFT] = _aligned(poly, fam[vertical_max[0]], rc, LEFT)
        aligned[RIGHT] = _aligned(poly, fam[vertical_max[-1]], rc, RIGHT)
    if horizontal_min:
        aligned[BOTTOM] = _aligned(poly, fam[horizontal_min[0]], rc, BOTTOM)
        aligned[TOP] = _aligned(poly, fam[horizontal_min[-1]], rc, TOP)

    dominators = {}
    for i in vertical:
        if i not in vertical_max:
            dominators[i] = next(j for j in vertical_max if pierce_less(fam[i], fam[j]))
    for i in horizontal:
        if i not in horizontal_min:
            dominators[i] = next(j for j in horizontal_min if pierce_less(fam[j], fam[i]))

    return KernelPartition(
        center=center,
        corners=corners,
        vertical=vertical,
        horizontal=horizontal,
        vertical_max=vertical_max,
        horizontal_min=horizontal_min,
        aligned=aligned,
        dominators=dominators,
    )


# sides of the center a corner rectangle reaches past: (vertical side, horizontal side)
_CORNER_SIDES = {
    NORTH_EAST: (RIGHT, TOP),
    NORTH_WEST: (LEFT, TOP),
    SOUTH_EAST: (RIGHT, BOTTOM),
    SOUTH_WEST: (LEFT, BOTTOM),
}


def build_kernel_less_support(poly: SimplePolygon, fam: RectFamily, center: int) -> SupportGraph:
    """
    Planar support of the family with its kernel rectangle removed.

    Vertices are indexed over fam without center, in fam's order.
    """
    part = partition_kernel_family(poly, fam, center)
    rest = fam.without(center)

    def idx(i: int) -> int:
        return i - (i > center)

    index = HyperedgeIndex.build(poly, rest, CoverTarget.BOUNDARY)
    co = index.matrix.T.astype(int) @ index.matrix.astype(int)

    def shares(i: int, j: int) -> bool:
        return bool(co[idx(i), idx(j)] > 0)

    edges: Set[Edge] = set()
    diagnostics: List[str] = []

    def add(i: int, j: int) -> None:
        if i != j:
            edges.add((min(idx(i), idx(j)), max(idx(i), idx(j))))

    vs, hs = part.vertical_max, part.horizontal_min
    if vs and hs:
        if part.aligned[LEFT]:
            for h in hs:
                add(vs[0], h)
        if part.aligned[RIGHT]:
            for h in hs:
                add(vs[-1], h)
        if part.aligned[BOTTOM]:
            for v in vs:
                add(v, hs[0])
        if part.aligned[TOP]:
            for v in vs:
                add(v, hs[-1])

    for a, b in zip(vs, vs[1:]):
        if shares(a, b):
            add(a, b)
    for a, b in zip(hs, hs[1:]):
        if shares(a, b):
            add(a, b)
    for i, j in part.dominators.items():
        add(i, j)

    rc = fam[center]
    for direction in CORNER_DIRECTIONS:
        members = part.corners[direction]
        v_side, h_side = _CORNER_SIDES[direction]
        v_term = (vs[-1] if v_side == RIGHT else vs[0]) if vs else None
        h_term = (hs[-1] if h_side == TOP else hs[0]) if hs else None
        for n in members:
            meets_v = v_term is not None and shares(n, v_term)
            meets_h = h_term is not None and shares(n, h_term)
            if meets_h:
                add(n, h_term)
            if meets_v:
                add(n, v_term)
            # the corner sits between the two terminals; an aligned member is
            # reached only while the opposite terminal is not
            if not meets_h:
                for v in vs:
                    if v != v_term and shares(n, v) and _aligned(poly, fam[v], rc, h_side):
                        add(n, v)
            if not meets_v:
                for h in hs:
                    if h != h_term and shares(n, h) and _aligned(poly, fam[h], rc, v_side):
                        add(n, h)
        for a, b in combinations(members, 2):
            if shares(a, b):
                add(a, b)

    graph = SupportGraph(len(rest), tuple(edges), (), diagnostics)
    return complete_support(poly, rest, graph)


def delete_vertex_support(poly: SimplePolygon, fam: RectFamily, graph: SupportGraph, victim: int,
                          validate: bool = True) -> SupportGraph:
    """
    Remove one rectangle from a planar support.

    The DFS rooted at the victim is shortcut so its back edges land on the
    victim's children, and the children, which share the victim as a kernel
    rectangle, are joined by the kernel-less construction.

    Raises:
        InvalidInputSupportError: if graph is not a planar support of fam
    """
    if not 0 <= victim < len(fam):
        raise ValueError(f"Victim {victim} out of range for {len(fam)} rectangles")
    if validate:
        if graph.n != len(fam) or verify_support(poly, fam, graph) or not is_planar(graph):
            raise InvalidInputSupportError("Input graph is not a planar support of the family")

    diagnostics = list(graph.diagnostics)
    orient = dfs_orient(graph, victim)
    coloring = lr_coloring(orient)
    if not isinstance(coloring, LrColoring):
        raise InvalidInputSupportError("Input graph is not planar")
    component = set(orient.height)
    e1 = shortcut_cotree(orient, coloring, victim)
    e1 |= {(i, j) for i, j in graph.edges if i not in component}

    children = orient.children(victim)
    e2: Set[Edge] = set()
    if children:
        members = [victim] + children
        try:
            star = build_kernel_less_support(poly, fam.subset(members), 0)
            e2 = {(members[i + 1], members[j + 1]) for i, j in star.edges}
        except KernelPartitionError as err:
            diagnostics.append(f"children of {fam[victim]} not joined around it: {err}")

    def reindex(v: int) -> int:
        return v - (v > victim)

    edges = tuple((reindex(i), reindex(j)) for i, j in e1 | e2)
    outer = tuple(reindex(v) for v in graph.outer if v != victim)
    rest = fam.without(victim)
    result = complete_support(poly, rest, SupportGraph(len(rest), edges, (), diagnostics))
    if outer:
        if planar_with_face(result, outer):
            result = SupportGraph(result.n, result.edges, outer, result.diagnostics)
        else:
            logger.debug("outer face %s no longer a face after removing %s", outer, fam[victim])
    return result


def subfamily_support(poly: SimplePolygon, subset: RectFamily) -> SupportGraph:
    """
    Planar support for any family of maximal rectangles of the polygon.

    Starts from the complete support and deletes the missing rectangles in
    descending index order. Vertices follow subset's order.

    Raises:
        NotMaximalMemberError: if some member is not maximal in poly
    """
    for r in subset:
        if not is_maximal(poly, r):
            raise NotMaximalMemberError(f"Rectangle {r} is not maximal in the polygon")

    current = enumerate_maximal(poly)
    graph = build_complete_support(poly)
    wanted = set(subset)
    for i in reversed(range(len(current))):
        if current[i] not in wanted:
            graph = delete_vertex_support(poly, current, graph, i, validate=False)
            current = current.without(i)

    order = [subset.index_of(r) for r in current]
    edges = tuple((order[i], order[j]) for i, j in graph.edges)
    outer = tuple(order[v] for v in graph.outer)
    return SupportGraph(len(subset), edges, outer, graph.diagnostics)
