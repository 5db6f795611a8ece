"""SVG rendering of polygons, rectangle families, covers and support graphs using drawsvg."""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import drawsvg as draw

from rectcover.constants import SVG_MARGIN, SVG_PALETTE, SVG_SCALE
from rectcover.geom import Point, Rect, SimplePolygon
from rectcover.hypergraph import SupportGraph

logger = logging.getLogger(__name__)


@dataclass
class Overlay:
    """
    What to draw on top of one polygon panel.

    Attributes:
        title: caption above the panel
        rects: rectangles filled translucent, vertex i of ``graph`` sits at rects[i]
        graph: support graph drawn with straight edges between rectangle centres
        witnesses: points drawn as small dots
    """
    title: str = ""
    rects: List[Rect] = field(default_factory=list)
    graph: Optional[SupportGraph] = None
    witnesses: List[Point] = field(default_factory=list)


class SvgRenderer:
    """Deterministic renderer: boundary thick, rectangles translucent, graph on rectangle centres."""

    def __init__(self, scale: int = SVG_SCALE, margin: int = SVG_MARGIN, palette: Sequence[str] = SVG_PALETTE,
                 boundary_color: str = "#111827", edge_color: str = "#1f2937", witness_color: str = "#dc2626"):
        self.scale = scale
        self.margin = margin
        self.palette = tuple(palette)
        self.boundary_color = boundary_color
        self.edge_color = edge_color
        self.witness_color = witness_color

    def _panel_size(self, poly: SimplePolygon) -> Tuple[int, int]:
        x1, y1, x2, y2 = poly.bbox
        return (x2 - x1) * self.scale + 2 * self.margin, (y2 - y1) * self.scale + 2 * self.margin + self.margin

    def _to_svg(self, poly: SimplePolygon, x: float, y: float) -> Tuple[float, float]:
        # svg y grows downward; one margin row is left free for the caption
        bx1, _, _, by2 = poly.bbox
        return self.margin + (x - bx1) * self.scale, 2 * self.margin + (by2 - y) * self.scale

    def _panel(self, poly: SimplePolygon, overlay: Overlay, dx: float) -> draw.Group:
        group = draw.Group(transform=f"translate({dx},0)")
        if overlay.title:
            group.append(draw.Text(overlay.title, 12, self.margin, self.margin, font_family="monospace"))

        for i, r in enumerate(overlay.rects):
            left, top = self._to_svg(poly, r.x1, r.y2)
            group.append(draw.Rectangle(
                left, top, r.width * self.scale, r.height * self.scale,
                fill=self.palette[i % len(self.palette)], fill_opacity=0.25,
                stroke=self.palette[i % len(self.palette)], stroke_width=1,
            ))

        outline = []
        for x, y in poly.vertices:
            outline.extend(self._to_svg(poly, x, y))
        group.append(draw.Lines(*outline, close=True, fill="none", stroke=self.boundary_color, stroke_width=3))

        if overlay.graph is not None:
            if overlay.graph.n != len(overlay.rects):
                raise ValueError(f"Graph has {overlay.graph.n} vertices but {len(overlay.rects)} rectangles are drawn")
            centres = [self._to_svg(poly, r.center2.x, r.center2.y) for r in overlay.rects]
            for i, j in overlay.graph.edges:
                (ax, ay), (bx, by) = centres[i], centres[j]
                group.append(draw.Line(ax, ay, bx, by, stroke=self.edge_color, stroke_width=1.5))
            for i, (cx, cy) in enumerate(centres):
                group.append(draw.Circle(cx, cy, 4, fill=self.palette[i % len(self.palette)],
                                         stroke=self.edge_color, stroke_width=1))

        for p in overlay.witnesses:
            cx, cy = self._to_svg(poly, p.x, p.y)
            group.append(draw.Circle(cx, cy, 2, fill=self.witness_color))
        return group

    def render_panels(self, poly: SimplePolygon, overlays: Sequence[Overlay]) -> str:
        """Draw one panel per overlay, side by side, and return the SVG text"""
        overlays = list(overlays) or [Overlay()]
        width, height = self._panel_size(poly)
        drawing = draw.Drawing(width * len(overlays), height)
        drawing.append(draw.Rectangle(0, 0, width * len(overlays), height, fill="#ffffff"))
        for k, overlay in enumerate(overlays):
            drawing.append(self._panel(poly, overlay, k * width))
        logger.debug("rendered %d panels of %dx%d", len(overlays), width, height)
        return drawing.as_svg()

    def render(self, poly: SimplePolygon, overlay: Optional[Overlay] = None) -> str:
        return self.render_panels(poly, [overlay or Overlay()])
