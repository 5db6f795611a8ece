# planar.py
"""Planarity testing by DFS orientation and left-right coloring.

A depth-first traversal orients every edge: tree edges away from the root and
back edges (cotree edges) from descendant to ancestor. The graph is planar iff
the cotree edges can be split into a left and a right class such that, at every
fork, the return edges of one outgoing edge that end above the lowpoint of the
other all share a class, and the two such groups use different classes. The
constraints are solved with a parity union-find.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple, Union

from rectcover.exceptions import NotRootError
from rectcover.hypergraph import Edge, SupportGraph

logger = logging.getLogger(__name__)


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass
class DfsOrientation:
    """
    Depth-first orientation of the component containing ``root``.

    Attributes:
        root: start vertex
        tree_edges: (parent, child) pairs in discovery order
        cotree_edges: (descendant, ancestor) pairs in discovery order
        height: DFS depth of each reached vertex
        parent: tree parent of each reached vertex other than the root
        low: lowpoint vertex of every oriented edge
        unreached: vertices outside the root's component
    """
    root: int
    tree_edges: List[Edge] = field(default_factory=list)
    cotree_edges: List[Edge] = field(default_factory=list)
    height: Dict[int, int] = field(default_factory=dict)
    parent: Dict[int, int] = field(default_factory=dict)
    low: Dict[Edge, int] = field(default_factory=dict)
    unreached: Tuple[int, ...] = ()
    returns: Dict[Edge, Tuple[Edge, ...]] = field(default_factory=dict, repr=False)
    outgoing: Dict[int, List[Edge]] = field(default_factory=dict, repr=False)

    def children(self, v: int) -> List[int]:
        return [c for p, c in self.tree_edges if p == v]

    def lowpt(self, e: Edge) -> int:
        return self.height[self.low[e]]

    def subtree_child(self, v: int, x: int) -> Optional[int]:
        """Child of v whose subtree holds x, None if x is not below v"""
        while x in self.parent:
            p = self.parent[x]
            if p == v:
                return x
            x = p
        return None


@dataclass(frozen=True)
class ForkConstraint:
    """
    Left-right constraint of one pair of outgoing edges at a fork.

    ``first`` and ``second`` must each be monochromatic, and must differ when
    both are non-empty.
    """
    fork: int
    edges: Tuple[Edge, Edge]
    first: Tuple[Edge, ...]
    second: Tuple[Edge, ...]

    def satisfied_by(self, color: Dict[Edge, Side]) -> bool:
        first = {color[e] for e in self.first}
        second = {color[e] for e in self.second}
        if len(first) > 1 or len(second) > 1:
            return False
        return not (first and second and first == second)


@dataclass(frozen=True)
class LrColoring:
    color: Dict[Edge, Side]
    orientations: Tuple[DfsOrientation, ...] = field(default=(), compare=False, repr=False)

    def __bool__(self):
        return True


@dataclass(frozen=True)
class NonPlanar:
    """Certificate of non-planarity: the vertices of an unsatisfiable fork"""
    reason: FrozenSet[int]
    fork: int

    def __bool__(self):
        return False


def _adjacency(graph: SupportGraph) -> Dict[int, List[int]]:
    adj: Dict[int, List[int]] = {v: [] for v in range(graph.n)}
    for i, j in graph.edges:
        adj[i].append(j)
        adj[j].append(i)
    for v in adj:
        adj[v].sort()
    return adj


def dfs_orient(graph: SupportGraph, root: int) -> DfsOrientation:
    """
    Orient the root's component by an iterative depth-first traversal.

    Neighbours are visited in ascending index order so the result is
    deterministic.
    """
    if not 0 <= root < graph.n:
        raise ValueError(f"Root {root} out of range for {graph.n} vertices")
    adj = _adjacency(graph)
    orient = DfsOrientation(root=root)
    orient.height[root] = 0
    orient.outgoing[root] = []
    stack = [(root, iter(adj[root]))]
    while stack:
        v, neighbours = stack[-1]
        advanced = False
        for w in neighbours:
            if w not in orient.height:
                orient.tree_edges.append((v, w))
                orient.outgoing[v].append((v, w))
                orient.parent[w] = v
                orient.height[w] = orient.height[v] + 1
                orient.outgoing[w] = []
                stack.append((w, iter(adj[w])))
                advanced = True
                break
            if orient.height[w] < orient.height[v] and orient.parent.get(v) != w:
                orient.cotree_edges.append((v, w))
                orient.outgoing[v].append((v, w))
        if not advanced:
            stack.pop()

    orient.unreached = tuple(v for v in range(graph.n) if v not in orient.height)
    if orient.unreached:
        logger.debug("dfs from %d left %d vertices unreached", root, len(orient.unreached))
    _compute_returns(orient)
    return orient


def _compute_returns(orient: DfsOrientation) -> None:
    returns: Dict[Edge, List[Edge]] = {e: [] for e in orient.tree_edges}
    for back in orient.cotree_edges:
        x, a = back
        returns[back] = [back]
        # climb while the tree edge's source is strictly above the target
        y = x
        while y in orient.parent and orient.height[orient.parent[y]] > orient.height[a]:
            returns[(orient.parent[y], y)].append(back)
            y = orient.parent[y]

    cotree = set(orient.cotree_edges)
    for e, ret in returns.items():
        if e in cotree:
            orient.low[e] = e[1]
            continue
        low_vertex = e[0]
        for _, a in ret:
            if orient.height[a] < orient.height[low_vertex]:
                low_vertex = a
        orient.low[e] = low_vertex
    orient.returns = {e: tuple(ret) for e, ret in returns.items()}


def fork_constraints(orientation: DfsOrientation) -> List[ForkConstraint]:
    """Left-right constraints of every pair of outgoing edges sharing a source"""
    height = orientation.height
    constraints = []
    for u in sorted(orientation.outgoing):
        for ei, ej in combinations(orientation.outgoing[u], 2):
            low_i, low_j = orientation.lowpt(ei), orientation.lowpt(ej)
            first = tuple(b for b in orientation.returns[ei] if height[b[1]] > low_j)
            second = tuple(b for b in orientation.returns[ej] if height[b[1]] > low_i)
            if len(first) + len(second) >= 2:
                constraints.append(ForkConstraint(u, (ei, ej), first, second))
    return constraints


class _ParityUnionFind:
    """Union-find tracking whether two members share a class"""

    def __init__(self):
        self.parent: Dict[Edge, Edge] = {}
        self.parity: Dict[Edge, int] = {}

    def find(self, x: Edge) -> Tuple[Edge, int]:
        if x not in self.parent:
            self.parent[x] = x
            self.parity[x] = 0
            return x, 0
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        # compress, accumulating parity from the top of the path down
        acc = 0
        for y in reversed(path):
            acc ^= self.parity[y]
            self.parent[y] = root
            self.parity[y] = acc
        return root, (self.parity[path[0]] if path else 0)

    def union(self, a: Edge, b: Edge, different: int) -> bool:
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            return (pa ^ pb) == different
        self.parent[rb] = ra
        self.parity[rb] = pa ^ pb ^ different
        return True


def _impose(uf: _ParityUnionFind, constraint: ForkConstraint) -> bool:
    for group in (constraint.first, constraint.second):
        for b in group[1:]:
            if not uf.union(group[0], b, 0):
                return False
    if constraint.first and constraint.second:
        return uf.union(constraint.first[0], constraint.second[0], 1)
    return True


def lr_coloring(orientation: DfsOrientation) -> Union[LrColoring, NonPlanar]:
    """Solve the fork constraints of one orientation"""
    uf = _ParityUnionFind()
    for constraint in fork_constraints(orientation):
        if not _impose(uf, constraint):
            involved = {constraint.fork}
            for a, b in constraint.edges + constraint.first + constraint.second:
                involved.update((a, b))
            logger.debug("fork at %d has no left-right coloring", constraint.fork)
            return NonPlanar(reason=frozenset(involved), fork=constraint.fork)
    color = {}
    for b in orientation.cotree_edges:
        _, parity = uf.find(b)
        color[b] = Side.LEFT if parity == 0 else Side.RIGHT
    return LrColoring(color=color, orientations=(orientation,))


def lr_planarity(graph: SupportGraph) -> Union[LrColoring, NonPlanar]:
    """
    Decide planarity by left-right coloring, one component at a time.

    Returns:
        LrColoring when the graph is planar, otherwise NonPlanar naming the
        vertices of the first fork whose constraints cannot be met.
    """
    color: Dict[Edge, Side] = {}
    orientations = []
    reached: Set[int] = set()
    for root in range(graph.n):
        if root in reached:
            continue
        orient = dfs_orient(graph, root)
        reached.update(orient.height)
        result = lr_coloring(orient)
        if isinstance(result, NonPlanar):
            return result
        orientations.append(orient)
        color.update(result.color)
    return LrColoring(color=color, orientations=tuple(orientations))


def is_planar(graph: SupportGraph) -> bool:
    return isinstance(lr_planarity(graph), LrColoring)


def coloring_violations(orientation: DfsOrientation, coloring: LrColoring) -> List[ForkConstraint]:
    return [c for c in fork_constraints(orientation) if not c.satisfied_by(coloring.color)]


def shortcut_cotree(orientation: DfsOrientation, coloring: LrColoring, v: int) -> Set[Edge]:
    """
    Remove the root v by rerouting its back edges to the subtree roots.

    Every cotree edge (x, v) becomes (x, w) where w is the child of v whose
    subtree holds x. Tree edges at v are dropped.

    Raises:
        NotRootError: if v is not the orientation's root
    """
    if v != orientation.root:
        raise NotRootError(f"Vertex {v} is not the DFS root {orientation.root}")
    missing = [e for e in orientation.cotree_edges if e not in coloring.color]
    if missing:
        raise ValueError(f"Coloring has no side for cotree edges {missing}")

    edges: Set[Edge] = set()
    for p, c in orientation.tree_edges:
        if v not in (p, c):
            edges.add((min(p, c), max(p, c)))
    for x, a in orientation.cotree_edges:
        if a != v:
            edges.add((min(x, a), max(x, a)))
            continue
        w = orientation.subtree_child(v, x)
        if w is None or w == x:
            continue
        logger.debug("shortcut %s edge (%d,%d) to (%d,%d)", coloring.color[(x, a)].value, x, a, x, w)
        edges.add((min(x, w), max(x, w)))
    return edges


def planar_with_face(graph: SupportGraph, face_vertices: Iterable[int]) -> bool:
    """
    Whether graph has a planar embedding with all face_vertices on one face.

    An apex adjacent to every face vertex keeps the graph planar exactly when
    such an embedding exists.
    """
    face = sorted(set(face_vertices))
    for v in face:
        if not 0 <= v < graph.n:
            raise ValueError(f"Face vertex {v} out of range for {graph.n} vertices")
    if not face:
        return is_planar(graph)
    apex = graph.n
    augmented = SupportGraph(graph.n + 1, graph.edges + tuple((v, apex) for v in face))
    return is_planar(augmented)
