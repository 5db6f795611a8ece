# loaders.py
import json
import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Tuple, Type, Union

import jsonschema
import networkx as nx

from rectcover.constants import GRAPH_FORMATS
from rectcover.data_models import GraphDocument, PolygonDocument
from rectcover.exceptions import InputFormatError
from rectcover.geom import Rect, SimplePolygon, polygon_from_vertices
from rectcover.hypergraph import SupportGraph
from rectcover.maxrect import RectFamily

logger = logging.getLogger(__name__)

_INT_PAIR = {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}
_INT_QUAD = {"type": "array", "items": {"type": "integer"}, "minItems": 4, "maxItems": 4}

POLYGON_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "properties": {
        "vertices": {"type": "array", "items": _INT_PAIR, "minItems": 4},
        "rects": {"type": "array", "items": _INT_QUAD},
        "expected": {"type": "object", "additionalProperties": {"type": "integer"}},
    },
    "required": ["vertices"],
    "additionalProperties": False,
}

GRAPH_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "properties": {
        "n": {"type": "integer", "minimum": 0},
        "edges": {"type": "array", "items": _INT_PAIR},
        "outer": {"type": "array", "items": {"type": "integer"}},
    },
    "required": ["n"],
    "additionalProperties": False,
}


def _validate(data: Any, schema: Dict[str, Any], what: str) -> None:
    try:
        jsonschema.validate(instance=data, schema=schema)
    except jsonschema.ValidationError as e:
        location = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise InputFormatError(f"Invalid {what} document at {location}: {e.message}")


def parse_polygon_document(data: Any) -> PolygonDocument:
    """
    Validate a decoded polygon document.

    Raises:
        InputFormatError: if the document does not match POLYGON_SCHEMA
    """
    _validate(data, POLYGON_SCHEMA, "polygon")
    return PolygonDocument(
        vertices=[list(v) for v in data["vertices"]],
        rects=[list(r) for r in data.get("rects", [])],
        expected=dict(data.get("expected", {})),
    )


def parse_graph_document(data: Any) -> GraphDocument:
    """
    Validate a decoded graph document, canonicalizing its edges.

    Raises:
        InputFormatError: if the document does not match GRAPH_SCHEMA or
            holds out-of-range indices
    """
    _validate(data, GRAPH_SCHEMA, "graph")
    n = data["n"]
    edges = sorted({(min(i, j), max(i, j)) for i, j in data.get("edges", [])})
    outer = list(data.get("outer", []))
    for v in [v for e in edges for v in e] + outer:
        if not 0 <= v < n:
            raise InputFormatError(f"Vertex {v} out of range for {n} vertices")
    if any(i == j for i, j in edges):
        raise InputFormatError("Graph documents cannot hold loops")
    return GraphDocument(n=n, edges=[list(e) for e in edges], outer=outer)


def polygon_document_to_dict(doc: PolygonDocument) -> Dict[str, Any]:
    out: Dict[str, Any] = {"vertices": [list(v) for v in doc.vertices]}
    if doc.rects:
        out["rects"] = [list(r) for r in doc.rects]
    if doc.expected:
        out["expected"] = dict(sorted(doc.expected.items()))
    return out


def graph_document_to_dict(doc: GraphDocument) -> Dict[str, Any]:
    return {"n": doc.n, "edges": [list(e) for e in doc.edges], "outer": list(doc.outer)}


def serialize_polygon_document(doc: PolygonDocument) -> str:
    return json.dumps(polygon_document_to_dict(doc), indent=2) + "\n"


def serialize_graph_document(doc: GraphDocument) -> str:
    return json.dumps(graph_document_to_dict(doc), indent=2) + "\n"


def document_from_polygon(poly: SimplePolygon, fam: Optional[Iterable[Rect]] = None,
                          expected: Optional[Dict[str, int]] = None) -> PolygonDocument:
    return PolygonDocument(
        vertices=poly.to_list(),
        rects=[r.to_list() for r in fam] if fam is not None else [],
        expected=dict(expected or {}),
    )


def polygon_from_document(doc: PolygonDocument) -> Tuple[SimplePolygon, Optional[RectFamily]]:
    """
    Build the polygon and, when the document lists rectangles, its family.

    Raises:
        PolygonError: if the vertices do not form a simple orthogonal polygon
        DegenerateRectError, NotContainedError: on bad rectangles
    """
    poly = polygon_from_vertices([tuple(v) for v in doc.vertices])
    if not doc.rects:
        return poly, None
    return poly, RectFamily([Rect(*r) for r in doc.rects], poly)


def document_from_graph(graph: SupportGraph) -> GraphDocument:
    return GraphDocument(n=graph.n, edges=[list(e) for e in graph.edges], outer=list(graph.outer))


def graph_from_document(doc: GraphDocument) -> SupportGraph:
    return SupportGraph(doc.n, tuple(tuple(e) for e in doc.edges), tuple(doc.outer))


def graph_to_graphml(graph: SupportGraph, fam: Optional[RectFamily] = None) -> str:
    """GraphML text for external viewers; rectangles become node labels when given"""
    g = graph.to_networkx()
    for v in g.nodes:
        g.nodes[v]["outer"] = v in graph.outer
        if fam is not None:
            g.nodes[v]["rect"] = str(fam[v])
    return "\n".join(nx.generate_graphml(g)) + "\n"


def serialize_graph(graph: SupportGraph, fmt: str = "json", fam: Optional[RectFamily] = None) -> str:
    if fmt == "json":
        return serialize_graph_document(document_from_graph(graph))
    if fmt == "graphml":
        return graph_to_graphml(graph, fam)
    raise ValueError(f"Unsupported graph format: {fmt}. Supported formats: {sorted(set(GRAPH_FORMATS.values()))}")


def write_text(path: Union[str, Path], text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


class InstanceLoader(ABC):

    """
    Abstract base class for loading polygon and graph documents.
    """

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)

    def read_json(self) -> Any:
        try:
            with open(self.path, encoding="utf-8") as f:
                return json.load(f)
        except json.JSONDecodeError as e:
            raise InputFormatError(f"{self.path} is not valid JSON: {e}")
        except OSError as e:
            raise InputFormatError(f"Cannot read {self.path}: {e}")

    @abstractmethod
    def load(self):
        pass


class PolygonFileLoader(InstanceLoader):

    def load(self) -> PolygonDocument:
        return parse_polygon_document(self.read_json())


class GraphFileLoader(InstanceLoader):

    def load(self) -> GraphDocument:
        return parse_graph_document(self.read_json())


class GraphMLLoader(InstanceLoader):
    """
    Loader for GraphML support graphs with integer node ids 0..n-1.
    """
    def load(self) -> GraphDocument:
        try:
            g = nx.read_graphml(self.path, node_type=int)
        except (OSError, nx.NetworkXError) as e:
            raise InputFormatError(f"Cannot read GraphML from {self.path}: {e}")
        outer = sorted(v for v, flag in g.nodes(data="outer") if flag)
        return parse_graph_document({"n": g.number_of_nodes(), "edges": [list(e) for e in g.edges()], "outer": outer})


class LoaderFactory:
    """
    Factory class for creating InstanceLoader instances from a path and a document kind.
    New formats are added by registering a loader class for their suffix.
    """
    loader_classes: Dict[str, Dict[str, Type[InstanceLoader]]] = {
        "polygon": {".json": PolygonFileLoader},
        "graph": {".json": GraphFileLoader, ".graphml": GraphMLLoader},
    }

    @staticmethod
    def create_loader(path: Union[str, Path], kind: str = "polygon") -> InstanceLoader:
        """
        Create the loader for a document path.
        :param path: path to the document
        :param kind: "polygon" or "graph"
        :return: An instance of InstanceLoader.
        """
        loaders = LoaderFactory.loader_classes.get(kind)
        if loaders is None:
            raise ValueError(f"Unsupported document kind: {kind}. Supported kinds: {list(LoaderFactory.loader_classes)}")
        suffix = Path(path).suffix.lower()
        # unknown suffixes are read as JSON
        return loaders.get(suffix, loaders[".json"])(path)


def load_polygon(path: Union[str, Path]) -> Tuple[SimplePolygon, Optional[RectFamily], PolygonDocument]:
    doc = LoaderFactory.create_loader(path, "polygon").load()
    poly, fam = polygon_from_document(doc)
    logger.debug("loaded %d-vertex polygon from %s", len(poly), path)
    return poly, fam, doc


def load_graph(path: Union[str, Path]) -> SupportGraph:
    return graph_from_document(LoaderFactory.create_loader(path, "graph").load())
