"""Connection-line routing: anchor snapping, orthogonal polylines, junction dots.

Lines are user-guided: the author supplies waypoints, routing only snaps the
ends onto symbol anchors, completes diagonal steps with a single
horizontal-first bend and marks the points where one line ends on another.
There is no obstacle avoidance.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from collections import defaultdict

from . import layout
from .geometry import Dot, GeometrySet, Segment
from .model import Actuator, AnchorRef, ConnectionLine, Device, Instrument, Point, Scheme


class RoutingError(ValueError):
    pass


INSTRUMENT_ANCHORS = ("n", "e", "s", "w", "center")
ACTUATOR_ANCHORS = ("n", "e", "s", "w")


def anchor_points(element: Device) -> list[tuple[str, Point]]:
    """Points where connection lines attach to a symbol.

    Instruments expose the four quadrant points of the circle plus its
    centre.  Actuators expose the stem base as ``s`` and the top, right and
    left points of the small circle as ``n``, ``e``, ``w``.
    """
    a = element.attach
    if isinstance(element, Instrument):
        r = layout.INSTRUMENT_DIAMETER / 2
        return [
            ("n", a.offset(dy=r)),
            ("e", a.offset(dx=r)),
            ("s", a.offset(dy=-r)),
            ("w", a.offset(dx=-r)),
            ("center", a),
        ]
    if isinstance(element, Actuator):
        r = layout.ACTUATOR_DIAMETER / 2
        cy = layout.ACTUATOR_CENTER_DY
        return [
            ("n", a.offset(dy=cy + r)),
            ("e", a.offset(dx=r, dy=cy)),
            ("s", a),
            ("w", a.offset(dx=-r, dy=cy)),
        ]
    raise TypeError(f"no anchors for {type(element).__name__}")


class AnchorIndex:
    """Grid-bucketed anchors of every device in a scheme."""

    def __init__(self, scheme: Scheme, cell: float = layout.SNAP_RADIUS):
        self.scheme = scheme
        self.cell = cell
        self._grid: dict[tuple[int, int], list[tuple[str, str, Point]]] = defaultdict(list)
        self._named: dict[tuple[str, str], Point] = {}
        for device in scheme.devices():
            for name, p in anchor_points(device):
                self._named.setdefault((device.id, name), p)
                self._grid[self._key(p)].append((device.id, name, p))

    def _key(self, p: Point) -> tuple[int, int]:
        return math.floor(p.x / self.cell), math.floor(p.y / self.cell)

    def resolve(self, ref: AnchorRef) -> Point:
        element = self.scheme.get(ref.element_id)
        if element is None:
            raise RoutingError(f"unknown element {ref.element_id!r} in anchor reference {ref}")
        if not isinstance(element, (Instrument, Actuator)):
            raise RoutingError(f"element {ref.element_id!r} in {ref} has no anchors")
        p = self._named.get((ref.element_id, ref.anchor))
        if p is None:
            names = ", ".join(n for n, _ in anchor_points(element))
            raise RoutingError(
                f"element {ref.element_id!r} has no anchor {ref.anchor!r} (expected one of {names})")
        return p

    def snap(self, p: Point, radius: float = layout.SNAP_RADIUS) -> Point:
        if not radius > 0:
            raise ValueError("snap radius must be positive")
        reach = math.ceil(radius / self.cell)
        kx, ky = self._key(p)
        best = None
        for gx in range(kx - reach, kx + reach + 1):
            for gy in range(ky - reach, ky + reach + 1):
                for element_id, name, q in self._grid.get((gx, gy), ()):
                    d = math.hypot(q.x - p.x, q.y - p.y)
                    if d <= radius:
                        key = (d, element_id, name)
                        if best is None or key < best[0]:
                            best = (key, q)
        return p if best is None else best[1]


def snap(p: Point, scheme: Scheme, radius: float = layout.SNAP_RADIUS) -> Point:
    """Nearest device anchor within ``radius`` of ``p``, else ``p`` itself.

    Equal distances are broken by element id, then anchor name.
    """
    return AnchorIndex(scheme, cell=max(radius, layout.SNAP_RADIUS)).snap(p, radius)


def orthogonalize(waypoints: list[Point]) -> list[Point]:
    """Turn a waypoint list into a polyline of horizontal and vertical segments.

    Diagonal steps get one bend at ``(x2, y1)``.  Repeated points are dropped
    and a point lying strictly between its collinear neighbours is merged away;
    direction reversals are kept so every waypoint is still visited.
    """
    if len(waypoints) < 2:
        raise RoutingError("a connection line needs at least 2 points")
    pts = [waypoints[0]]
    for q in waypoints[1:]:
        p = pts[-1]
        if q == p:
            continue
        if p.x != q.x and p.y != q.y:
            pts.append(Point(q.x, p.y))
        pts.append(q)
    if len(pts) < 2:
        raise RoutingError("a connection line needs at least 2 distinct points")
    out = [pts[0]]
    for q in pts[1:]:
        while len(out) >= 2 and _between(out[-2], out[-1], q):
            out.pop()
        out.append(q)
    return out


def _between(a: Point, b: Point, c: Point) -> bool:
    if a.y == b.y == c.y:
        return (b.x - a.x) * (c.x - b.x) > 0
    if a.x == b.x == c.x:
        return (b.y - a.y) * (c.y - b.y) > 0
    return False


def resolve_line(line: ConnectionLine, index: AnchorIndex) -> list[Point]:
    """Resolve anchor references, snap raw endpoints and orthogonalize."""
    last = len(line.waypoints) - 1
    pts = []
    for i, w in enumerate(line.waypoints):
        if isinstance(w, AnchorRef):
            pts.append(index.resolve(w))
        elif i in (0, last):
            pts.append(index.snap(w))
        else:
            pts.append(w)
    try:
        return orthogonalize(pts)
    except RoutingError as exc:
        raise RoutingError(f"line {line.id!r}: {exc}") from None


def _close(p: Point, q: Point, eps: float) -> bool:
    return abs(p.x - q.x) <= eps and abs(p.y - q.y) <= eps


def junctions(lines: list[list[Point]], eps: float = layout.EPSILON) -> list[Point]:
    """Junction points of a set of orthogonal polylines.

    A point is a junction when an end of one polyline lies on another
    polyline away from that polyline's own ends, or when the ends of three or
    more polylines meet.  Plain crossings of two segment interiors are not
    junctions.  Result is sorted by (x, y) with near-duplicates removed.
    """
    horizontal: list[tuple[float, float, float, int]] = []
    vertical: list[tuple[float, float, float, int]] = []
    for i, poly in enumerate(lines):
        for a, b in zip(poly, poly[1:]):
            if a.y == b.y:
                horizontal.append((a.y, min(a.x, b.x), max(a.x, b.x), i))
            elif a.x == b.x:
                vertical.append((a.x, min(a.y, b.y), max(a.y, b.y), i))
            else:
                raise RoutingError(f"segment {a}-{b} of polyline {i} is not axis-parallel")
    horizontal.sort()
    vertical.sort()
    h_keys = [s[0] for s in horizontal]
    v_keys = [s[0] for s in vertical]

    ends = [(poly[0], poly[-1]) if poly else () for poly in lines]
    found: list[Point] = []

    def ends_of(j: int, p: Point) -> bool:
        return any(_close(p, e, eps) for e in ends[j])

    for i, poly_ends in enumerate(ends):
        for e in set(poly_ends):
            hit = False
            lo, hi = bisect_left(h_keys, e.y - eps), bisect_right(h_keys, e.y + eps)
            for _, x0, x1, j in horizontal[lo:hi]:
                if j != i and x0 - eps <= e.x <= x1 + eps and not ends_of(j, e):
                    hit = True
                    break
            if not hit:
                lo, hi = bisect_left(v_keys, e.x - eps), bisect_right(v_keys, e.x + eps)
                for _, y0, y1, j in vertical[lo:hi]:
                    if j != i and y0 - eps <= e.y <= y1 + eps and not ends_of(j, e):
                        hit = True
                        break
            if hit:
                found.append(e)

    # three or more polylines ending at one point
    grid: dict[tuple[int, int], list[tuple[Point, int]]] = defaultdict(list)
    cell = max(eps, 1e-9) * 2
    for i, poly_ends in enumerate(ends):
        for e in set(poly_ends):
            grid[(math.floor(e.x / cell), math.floor(e.y / cell))].append((e, i))
    for (gx, gy), members in grid.items():
        near = [m for dx in (-1, 0, 1) for dy in (-1, 0, 1) for m in grid.get((gx + dx, gy + dy), ())]
        for e, _ in members:
            owners = {j for q, j in near if _close(e, q, eps)}
            if len(owners) >= 3:
                found.append(e)

    return _dedupe(found, eps)


def _dedupe(points: list[Point], eps: float) -> list[Point]:
    cell = max(eps, 1e-9) * 2
    grid: dict[tuple[int, int], list[Point]] = defaultdict(list)
    kept: list[Point] = []
    for p in sorted(set(points), key=lambda p: (p.x, p.y)):
        gx, gy = math.floor(p.x / cell), math.floor(p.y / cell)
        near = (q for dx in (-1, 0, 1) for dy in (-1, 0, 1) for q in grid.get((gx + dx, gy + dy), ()))
        if not any(_close(p, q, eps) for q in near):
            kept.append(p)
            grid[(gx, gy)].append(p)
    return kept


def route_all(scheme: Scheme) -> GeometrySet:
    """Segments of every connection line plus junction dots, as the routing set."""
    index = AnchorIndex(scheme)
    polylines = []
    primitives = []
    for line in scheme.lines:
        poly = resolve_line(line, index)
        polylines.append(poly)
        primitives.extend(Segment(a, b, line.style) for a, b in zip(poly, poly[1:]))
    for p in junctions(polylines):
        primitives.append(Dot(p, layout.DOT_DIAMETER))
    return GeometrySet(layout.ROUTING_SET_ID, primitives)
