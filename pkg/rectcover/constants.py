# Direction names used by extension and blocker lookups
TOP = "top"
BOTTOM = "bottom"
LEFT = "left"
RIGHT = "right"
DIRECTIONS = (TOP, BOTTOM, LEFT, RIGHT)

# corner directions of a kernel rectangle
NORTH_EAST = "NE"
NORTH_WEST = "NW"
SOUTH_EAST = "SE"
SOUTH_WEST = "SW"
CORNER_DIRECTIONS = (NORTH_EAST, NORTH_WEST, SOUTH_EAST, SOUTH_WEST)

# CLI exit codes
EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_LIMIT_EXCEEDED = 3

# mapping common file extensions to graph export formats
GRAPH_FORMATS = {
    ".json": "json",
    ".graphml": "graphml",
}

# render styling, boundary thick and rectangles translucent
SVG_SCALE = 24
SVG_MARGIN = 16
SVG_PALETTE = (
    "#3b82f6",
    "#ef4444",
    "#10b981",
    "#f59e0b",
    "#8b5cf6",
    "#ec4899",
    "#14b8a6",
    "#64748b",
)
