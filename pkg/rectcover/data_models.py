from typing import Dict, List
from dataclasses import dataclass, field


@dataclass(init=True)
class PolygonDocument:
    """Class for defining a polygon file: vertices plus optional rectangles and expected metrics"""
    vertices: List[List[int]]
    rects: List[List[int]] = field(default_factory=list)
    expected: Dict[str, int] = field(default_factory=dict)


@dataclass(init=True)
class GraphDocument:
    """Class for defining a support graph file"""
    n: int
    edges: List[List[int]] = field(default_factory=list)
    outer: List[int] = field(default_factory=list)
