# instances.py
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from config import settings
from rectcover.exceptions import BadParameterError, GenerationFailedError, PolygonError
from rectcover.geom import Point, Rect, SimplePolygon, polygon_from_rects
from rectcover.maxrect import RectFamily, is_maximal

logger = logging.getLogger(__name__)


@dataclass
class InstanceBundle:
    """
    A generated polygon with its optional fixture family.

    Attributes:
        name: generator family name
        polygon: the polygon
        family: explicit rectangle family, every member maximal in polygon
        expected: metric name to expected value (theta_b, theta, alpha, ...)
        designated: distinguished points, e.g. the staircase corners of an antirectangle
        labels: names of notable rectangles, including ones outside family
        params: generator parameters
    """
    name: str
    polygon: SimplePolygon
    family: Optional[RectFamily] = None
    expected: Dict[str, int] = field(default_factory=dict)
    designated: Tuple[Point, ...] = ()
    labels: Dict[str, Rect] = field(default_factory=dict)
    params: Dict[str, int] = field(default_factory=dict)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise BadParameterError(message)


def _checked_family(rects: List[Rect], polygon: SimplePolygon) -> RectFamily:
    fam = RectFamily(rects, polygon)
    for r in fam:
        _require(is_maximal(polygon, r), f"Fixture rectangle {r} is not maximal in its polygon")
    return fam


class AbstractInstance(ABC):

    @abstractmethod
    def create_instance(self, **params) -> InstanceBundle:
        """Create an instance from generator parameters"""
        pass


class BicliqueInstance(AbstractInstance):
    """Four vertical and four horizontal bars around a common kernel square"""

    NAMES = ("A", "B", "C", "D", "P", "Q", "R", "S")

    def create_instance(self, **params) -> InstanceBundle:
        rects = {
            "A": Rect(1, 1, 4, 11),
            "B": Rect(3, 0, 6, 10),
            "C": Rect(5, 1, 8, 11),
            "D": Rect(7, 0, 10, 10),
            "P": Rect(0, 7, 10, 10),
            "Q": Rect(1, 5, 11, 8),
            "R": Rect(0, 3, 10, 6),
            "S": Rect(1, 1, 11, 4),
        }
        polygon = polygon_from_rects(rects.values())
        family = _checked_family([rects[n] for n in self.NAMES], polygon)
        labels = dict(rects)
        labels["R_c"] = Rect(1, 1, 10, 10)
        return InstanceBundle(name="biclique", polygon=polygon, family=family, labels=labels)


class InteriorBicliqueInstance(AbstractInstance):
    """r crossing vertical and horizontal bars, each crossing owning a private cell"""

    def create_instance(self, r: int = 4, **params) -> InstanceBundle:
        _require(r >= 3, f"Interior biclique needs r >= 3, got {r}")
        vertical, horizontal = [], []
        for i in range(1, r + 1):
            lo, hi = (1, 2 * r + 3) if i % 2 else (0, 2 * r + 2)
            vertical.append(Rect(2 * i - 1, lo, 2 * i + 2, hi))
            horizontal.append(Rect(lo, 2 * i - 1, hi, 2 * i + 2))
        polygon = polygon_from_rects(vertical + horizontal)
        family = _checked_family(vertical + horizontal, polygon)
        labels = {f"V{i + 1}": v for i, v in enumerate(vertical)}
        labels.update({f"H{i + 1}": h for i, h in enumerate(horizontal)})
        return InstanceBundle(name="interior-biclique", polygon=polygon, family=family, labels=labels,
                              params={"r": r})


class AntirectangleInstance(AbstractInstance):
    """
    Two staircases in opposite quadrants joined by full quadrant boxes.

    Every top-right staircase corner shares a rectangle with every bottom-left
    one while corners of the same staircase never do.
    """

    def create_instance(self, r: int = 4, s: int = 3, **params) -> InstanceBundle:
        _require(r >= 3 and s >= 3, f"Antirectangle needs r, s >= 3, got r={r}, s={s}")
        rects = [Rect(0, 0, t, r + 1 - t) for t in range(1, r + 1)]
        rects += [Rect(-u, -(s + 1 - u), 0, 0) for u in range(1, s + 1)]
        rects += [Rect(-s, 0, 0, r), Rect(0, -s, r, 0)]
        polygon = polygon_from_rects(rects)
        top_right = [Point.from_grid(t, r + 1 - t) for t in range(1, r + 1)]
        bottom_left = [Point.from_grid(-u, -(s + 1 - u)) for u in range(1, s + 1)]
        return InstanceBundle(
            name="antirectangle",
            polygon=polygon,
            expected={"alpha": max(r, s)},
            designated=tuple(top_right + bottom_left),
            params={"r": r, "s": s},
        )


class BetaInstance(AbstractInstance):
    """
    kb+1 thin vertical and kb+1 thin horizontal bars crossing in a diagonal
    ladder, with the kb squares they enclose filled in.

    Every bar has private tips so boundary covers need all 2kb+2 bars; no
    rectangle meets the interiors of two squares so interior covers need kb more.
    """

    def create_instance(self, kb: int = 2, **params) -> InstanceBundle:
        _require(kb >= 2, f"Beta family needs kb >= 2, got {kb}")
        vertical = [Rect(3 * i, 3 * i - 4, 3 * i + 1, 3 * i + 5) for i in range(kb + 1)]
        horizontal = [Rect(3 * i - 4, 3 * i, 3 * i + 5, 3 * i + 1) for i in range(kb + 1)]
        squares = [Rect(3 * i + 1, 3 * i + 1, 3 * i + 3, 3 * i + 3) for i in range(kb)]
        polygon = polygon_from_rects(vertical + horizontal + squares)
        labels = {f"V{i}": v for i, v in enumerate(vertical)}
        labels.update({f"H{i}": h for i, h in enumerate(horizontal)})
        labels.update({f"Q{i}": q for i, q in enumerate(squares)})
        return InstanceBundle(
            name="beta",
            polygon=polygon,
            expected={"theta_b": 2 * kb + 2, "theta": 3 * kb + 2},
            labels=labels,
            params={"kb": kb},
        )


class LeafAttachmentInstance(AbstractInstance):
    """
    A bottom slab holding seven type-1 and seven type-2 rectangles.

    Two staircases of type-1 rectangles climb from the slab's left and right
    ends; thin spikes on top of them are type-2. Three bars cut through the
    staircases higher up without touching the slab. The labels name the slab,
    its parent slab, every rectangle standing on the slab (suffix "_up" for the
    slab's own extension) and the bars X, Y and Z.
    """

    # pieces of the union, the slab first
    PIECES = (
        Rect(2, 0, 34, 4), Rect(0, 4, 36, 8),
        Rect(0, 8, 16, 12), Rect(0, 12, 12, 16), Rect(0, 16, 8, 20),
        Rect(5, 20, 7, 21), Rect(6, 21, 7, 22), Rect(9, 16, 12, 17), Rect(10, 17, 11, 18),
        Rect(12, 14, 14, 15), Rect(13, 15, 14, 16),
        Rect(20, 8, 36, 12), Rect(21, 12, 22, 15), Rect(24, 12, 36, 16), Rect(23, 13, 24, 14),
        Rect(28, 16, 36, 20), Rect(25, 16, 27, 17), Rect(26, 17, 27, 18),
    )

    def create_instance(self, **params) -> InstanceBundle:
        polygon = polygon_from_rects(self.PIECES)
        type1 = {
            "A_up": Rect(2, 0, 34, 8),
            "C": Rect(2, 0, 8, 20),
            "D": Rect(2, 0, 12, 16),
            "E": Rect(2, 0, 16, 12),
            "F": Rect(20, 0, 34, 12),
            "G": Rect(24, 0, 34, 16),
            "H": Rect(28, 0, 34, 20),
        }
        type2 = {
            "I": Rect(5, 0, 7, 21),
            "J": Rect(6, 0, 7, 22),
            "K": Rect(9, 0, 12, 17),
            "L": Rect(10, 0, 11, 18),
            "M": Rect(21, 0, 22, 15),
            "N": Rect(25, 0, 27, 17),
            "O": Rect(26, 0, 27, 18),
        }
        bars = {"X": Rect(0, 14, 14, 15), "Y": Rect(13, 14, 14, 16), "Z": Rect(23, 13, 36, 14)}
        family = _checked_family(list(type1.values()) + list(type2.values()) + list(bars.values()), polygon)
        labels = {"A": self.PIECES[0], "B": self.PIECES[1]}
        labels.update(type1)
        labels.update(type2)
        labels.update(bars)
        return InstanceBundle(name="leaf-attachment", polygon=polygon, family=family, labels=labels)


class RandomInstance(AbstractInstance):
    """Seeded union of grid rectangles grown one shared edge at a time"""

    MAX_ATTEMPTS = 200
    MAX_STEPS = 400

    def create_instance(self, n_vertices: int = 8, grid: int = 8, seed: Optional[int] = None, **params) -> InstanceBundle:
        seed = settings.DEFAULT_SEED if seed is None else seed
        _require(n_vertices >= 4 and n_vertices % 2 == 0, f"Vertex count must be even and >= 4, got {n_vertices}")
        _require(grid >= 2, f"Grid must be at least 2, got {grid}")
        rng = np.random.default_rng(seed)
        for attempt in range(self.MAX_ATTEMPTS):
            polygon = self._grow(rng, n_vertices, grid)
            if polygon is not None:
                logger.debug("random polygon seed=%d found on attempt %d", seed, attempt + 1)
                return InstanceBundle(name="random", polygon=polygon,
                                      params={"n_vertices": n_vertices, "grid": grid, "seed": seed})
        raise GenerationFailedError(f"No {n_vertices}-vertex polygon on a {grid} grid", seed)

    @staticmethod
    def _random_rect(rng: np.random.Generator, grid: int) -> Rect:
        x1, x2 = sorted(int(v) for v in rng.choice(grid + 1, size=2, replace=False))
        y1, y2 = sorted(int(v) for v in rng.choice(grid + 1, size=2, replace=False))
        return Rect(x1, y1, x2, y2)

    def _grow(self, rng: np.random.Generator, n_vertices: int, grid: int) -> Optional[SimplePolygon]:
        rects = [self._random_rect(rng, grid)]
        polygon = polygon_from_rects(rects)
        for _ in range(self.MAX_STEPS):
            if len(polygon) == n_vertices:
                return polygon
            candidate = self._random_rect(rng, grid)
            try:
                grown = polygon_from_rects(rects + [candidate])
            except PolygonError:
                # pinched, holed or disconnected
                continue
            if len(grown) > n_vertices or grown == polygon:
                continue
            rects.append(candidate)
            polygon = grown
        return polygon if len(polygon) == n_vertices else None


class InstanceFactoryManager:
    """
    Factory manager to create instance generators based on family name.
    """
    _factory_mapping = {
        "biclique": BicliqueInstance,
        "interior-biclique": InteriorBicliqueInstance,
        "antirectangle": AntirectangleInstance,
        "beta": BetaInstance,
        "leaf-attachment": LeafAttachmentInstance,
        "random": RandomInstance,
    }

    @classmethod
    def register_factory(cls, family: str, factory_class: type):
        """Register a new generator class for a family name"""
        cls._factory_mapping[family] = factory_class

    def get_instance_factory(self, family: str) -> AbstractInstance:
        """
        Get the generator for the given family.

        Raises:
            ValueError: If the family is not supported
        """
        factory_class = self._factory_mapping.get(family.lower())
        if not factory_class:
            raise ValueError(
                f"Unsupported instance family: {family}. "
                f"Supported families: {list(self._factory_mapping.keys())}"
            )
        return factory_class()

    @classmethod
    def get_supported_families(cls) -> List[str]:
        return list(cls._factory_mapping.keys())


def gen_biclique_boundary() -> InstanceBundle:
    return BicliqueInstance().create_instance()


def gen_interior_biclique(r: int) -> InstanceBundle:
    return InteriorBicliqueInstance().create_instance(r=r)


def gen_antirectangle(r: int, s: int) -> InstanceBundle:
    return AntirectangleInstance().create_instance(r=r, s=s)


def gen_beta(kb: int) -> InstanceBundle:
    return BetaInstance().create_instance(kb=kb)


def gen_leaf_attachment() -> InstanceBundle:
    return LeafAttachmentInstance().create_instance()


def gen_random(n_vertices: int, grid: int, seed: int) -> SimplePolygon:
    return RandomInstance().create_instance(n_vertices=n_vertices, grid=grid, seed=seed).polygon
