"""Crystalline interface densities as polygon gauges, and Wulff shapes.

All densities are stored in their one-homogeneous form evaluated on
integer direction vectors, where values are rational; unit-vector values
(which involve square roots) appear only in display code.  A density is
represented by its unit level set, a convex polygon with the origin
strictly inside, through the gauge (Minkowski functional)

    gauge(x) = min { t > 0 : x / t inside the polygon }.

For a polygon whose edge through vertices v, w lies on {a . x = 1}, the
gauge is max_e (a_e . x), which is how evaluation stays exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .polygeom import Polygon, Vec, convex_hull, cross, polygon_area

IntDir = tuple[int, int]


def _canonical_ccw(vertices: Sequence[Vec]) -> Polygon:
    verts = tuple((Fraction(x), Fraction(y)) for x, y in vertices)
    if len(verts) < 3:
        raise ValueError("a gauge polygon needs at least 3 vertices")
    if polygon_area(verts) < 0:
        verts = tuple(reversed(verts))
    start = min(range(len(verts)), key=lambda i: verts[i])
    return verts[start:] + verts[:start]


@dataclass(frozen=True)
class GaugePolygon:
    """A convex polygon with 0 strictly inside, inducing a convex gauge."""

    vertices: Polygon

    def __post_init__(self):
        object.__setattr__(self, "vertices", _canonical_ccw(self.vertices))
        v = self.vertices
        n = len(v)
        funcs = []
        for i in range(n):
            a, b = v[i], v[(i + 1) % n]
            if cross((Fraction(0), Fraction(0)), a, b) <= 0:
                raise ValueError(
                    "polygon must be strictly convex around the origin"
                )
            # edge lies on {e . x = 1}; solve from the two vertices
            det = a[0] * b[1] - a[1] * b[0]
            funcs.append(((b[1] - a[1]) / det, (a[0] - b[0]) / det))
        object.__setattr__(self, "_funcs", tuple(funcs))

    def gauge(self, x) -> Fraction:
        """Exact gauge value at a rational vector (0 at the origin)."""
        px, py = Fraction(x[0]), Fraction(x[1])
        if px == 0 and py == 0:
            return Fraction(0)
        return max(ex * px + ey * py for ex, ey in self._funcs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GaugePolygon):
            return NotImplemented
        return self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)


def gauge_eval(polygon: GaugePolygon, x) -> Fraction:
    """Gauge of the polygon at x: the unique t with x/t on the boundary."""
    return polygon.gauge(x)


def mirror(polygon: GaugePolygon) -> GaugePolygon:
    """Reflection through the vertical axis, reoriented counterclockwise."""
    return GaugePolygon(tuple((-x, y) for x, y in polygon.vertices))


# -------------------------------------------------------------------
# The closed-form crystalline density
# -------------------------------------------------------------------

_HEX_R = GaugePolygon(
    (
        (Fraction(1, 2), Fraction(1, 2)),
        (Fraction(-1, 2), Fraction(1, 2)),
        (Fraction(-3, 4), Fraction(1, 4)),
        (Fraction(-1, 2), Fraction(-1, 2)),
        (Fraction(1, 2), Fraction(-1, 2)),
        (Fraction(3, 4), Fraction(-1, 4)),
    )
)
_HEX_S = mirror(_HEX_R)


def phi_closed_form(i: int) -> GaugePolygon:
    """Unit level set of the empty-interface density for phase i.

    For the R phases (1..4) this is an irregular hexagon whose gauge takes
    the values 2 at (1, +-1) and (-1, +-1), 3/2 at (+-1, 0), and 4 at
    +-(3, -1); the gauge agrees with the l1 norm exactly on the cones
    between (3, -1) and (1, -1) and between (-3, 1) and (-1, 1).  The S
    phases (5..8) use the mirror polygon.
    """
    if not 1 <= i <= 8:
        raise ValueError("phase label must be in 1..8")
    return _HEX_R if i <= 4 else _HEX_S


def min_envelope(
    gauges: Sequence[GaugePolygon],
) -> tuple[Callable[[Vec], Fraction], GaugePolygon]:
    """Pointwise minimum of gauges and its convex envelope.

    The envelope of the min is the gauge of the convex hull of the union
    of the level sets.
    """
    if not gauges:
        raise ValueError("need at least one gauge")

    def pointwise_min(x) -> Fraction:
        return min(g.gauge(x) for g in gauges)

    hull = GaugePolygon(
        convex_hull(v for g in gauges for v in g.vertices)
    )
    return pointwise_min, hull


def envelope_with_points(
    gauges: Sequence[GaugePolygon], value_points: Iterable[tuple[Vec, Fraction]]
) -> GaugePolygon:
    """Convex envelope of min(gauges) refined by finitely many values.

    Each (x, value) pair contributes the level-set point x / value.
    """
    pts = [v for g in gauges for v in g.vertices]
    for x, val in value_points:
        val = Fraction(val)
        if val <= 0:
            raise ValueError("gauge values must be positive")
        pts.append((Fraction(x[0]) / val, Fraction(x[1]) / val))
    return GaugePolygon(convex_hull(pts))


def wulff_shape(polygon: GaugePolygon) -> Polygon:
    """Polar dual: the minimizer of the induced anisotropic perimeter.

    One half-plane {x . v <= 1} per vertex v; the dual's vertices come
    from adjacent half-plane intersections, exactly.
    """
    v = polygon.vertices
    n = len(v)
    out = []
    for i in range(n):
        a, b = v[i], v[(i + 1) % n]
        det = a[0] * b[1] - a[1] * b[0]
        out.append(((b[1] - a[1]) / det, (a[0] - b[0]) / det))
    return _canonical_ccw(out)


def wulff_gauge(polygon: GaugePolygon) -> GaugePolygon:
    return GaugePolygon(wulff_shape(polygon))


def support_function(poly: Polygon, direction: Vec) -> Fraction:
    """max over the polygon of x . direction."""
    dx, dy = Fraction(direction[0]), Fraction(direction[1])
    return max(x * dx + y * dy for x, y in poly)
