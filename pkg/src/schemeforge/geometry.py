"""Generated drawing primitives: the visible half of every scheme element."""

from __future__ import annotations

from dataclasses import dataclass

from .layout import ROUTING_SET_ID
from .model import LineStyle, Point


@dataclass(frozen=True)
class Circle:
    center: Point
    diameter: float


@dataclass(frozen=True)
class Segment:
    p1: Point
    p2: Point
    style: LineStyle = LineStyle.NORMAL

    @property
    def is_axis_parallel(self) -> bool:
        return self.p1.x == self.p2.x or self.p1.y == self.p2.y


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle from its bottom-left corner."""

    origin: Point
    width: float
    height: float
    thick: bool = False


@dataclass(frozen=True)
class Dot:
    center: Point
    diameter: float


@dataclass(frozen=True)
class Text:
    anchor: Point
    content: str
    height: float
    align: str = "middle"  # start | middle
    valign: str = "baseline"  # baseline | central | hanging


Primitive = Circle | Segment | Rect | Dot | Text


@dataclass(frozen=True)
class GeometrySet:
    source_id: str
    primitives: tuple[Primitive, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "primitives", tuple(self.primitives))

    def of_type(self, kind: type) -> list:
        return [p for p in self.primitives if isinstance(p, kind)]


@dataclass(frozen=True)
class DrawingModel:
    """Element geometry sets ordered by source id, routing set last."""

    sets: tuple[GeometrySet, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "sets", tuple(self.sets))

    def get(self, source_id: str) -> GeometrySet | None:
        for s in self.sets:
            if s.source_id == source_id:
                return s
        return None

    @property
    def routing(self) -> GeometrySet | None:
        return self.get(ROUTING_SET_ID)

    def primitive_count(self) -> int:
        return sum(len(s.primitives) for s in self.sets)
