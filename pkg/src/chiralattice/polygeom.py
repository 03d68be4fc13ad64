"""Exact rational plane geometry: directions, hulls, and area sweeps.

Polygons are sequences of rational vertices.  Everything here stays in
`fractions.Fraction`; there are no epsilons anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Sequence

Vec = tuple[Fraction, Fraction]
Polygon = tuple[Vec, ...]


def vec(x, y) -> Vec:
    return (Fraction(x), Fraction(y))


def cross(o: Vec, a: Vec, b: Vec) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def primitive_direction(d: Vec) -> tuple[tuple[int, int], Fraction]:
    """Write a nonzero rational vector as t * (p, q), gcd(|p|, |q|) = 1, t > 0."""
    dx, dy = Fraction(d[0]), Fraction(d[1])
    if dx == 0 and dy == 0:
        raise ValueError("zero vector has no direction")
    scale = math.lcm(dx.denominator, dy.denominator)
    ix, iy = int(dx * scale), int(dy * scale)
    g = math.gcd(abs(ix), abs(iy))
    return (ix // g, iy // g), Fraction(g, scale)


def polygon_area(poly: Sequence[Vec]) -> Fraction:
    """Signed area (positive for counterclockwise orientation)."""
    total = Fraction(0)
    n = len(poly)
    for i in range(n):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % n]
        total += x0 * y1 - x1 * y0
    return total / 2


def convex_hull(points: Iterable[Vec]) -> Polygon:
    """Counterclockwise convex hull, collinear points dropped."""
    pts = sorted(set((Fraction(x), Fraction(y)) for x, y in points))
    if len(pts) < 3:
        raise ValueError("hull needs at least 3 distinct points")

    def half(seq):
        out: list[Vec] = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    hull = tuple(lower[:-1] + upper[:-1])
    if len(hull) < 3:
        raise ValueError("points are collinear")
    return hull


# -------------------------------------------------------------------
# Area of a boolean combination of polygon sets (exact slab sweep)
# -------------------------------------------------------------------

Edge = tuple[Vec, Vec]


def _edges_of(polygons: Iterable[Sequence[Vec]]) -> list[Edge]:
    out: list[Edge] = []
    for poly in polygons:
        n = len(poly)
        for i in range(n):
            a = (Fraction(poly[i][0]), Fraction(poly[i][1]))
            b = (Fraction(poly[(i + 1) % n][0]), Fraction(poly[(i + 1) % n][1]))
            if a != b:
                out.append((a, b))
    return out


def predicate_area(
    polygon_sets: Sequence[Iterable[Sequence[Vec]]],
    predicate: Callable[[tuple[bool, ...]], bool],
) -> Fraction:
    """Area of {x : predicate(inside_0(x), ..., inside_k(x))}.

    Each polygon set defines a region by even-odd parity of its edges, so
    a set given as disjoint simple polygons behaves as their union.  The
    predicate must describe a bounded region (it must be False when all
    memberships are False).

    The sweep cuts the plane into vertical slabs at every vertex and every
    pairwise edge crossing; inside a slab active edges are orderable, and
    parity vectors are constant between consecutive edges.
    """
    if predicate(tuple(False for _ in polygon_sets)):
        raise ValueError("predicate region is unbounded")
    edge_sets = [_edges_of(ps) for ps in polygon_sets]
    all_edges = [(e, si) for si, es in enumerate(edge_sets) for e in es]
    if not all_edges:
        return Fraction(0)

    breaks: set[Fraction] = set()
    for (a, b), _ in all_edges:
        breaks.add(a[0])
        breaks.add(b[0])
    # pairwise crossings of non-vertical edges
    nonvert = [(a, b, si) for (a, b), si in all_edges if a[0] != b[0]]
    for i in range(len(nonvert)):
        a1, b1, _ = nonvert[i]
        for j in range(i + 1, len(nonvert)):
            a2, b2, _ = nonvert[j]
            d1 = (b1[0] - a1[0], b1[1] - a1[1])
            d2 = (b2[0] - a2[0], b2[1] - a2[1])
            den = d1[0] * d2[1] - d1[1] * d2[0]
            if den == 0:
                continue
            s = ((a2[0] - a1[0]) * d2[1] - (a2[1] - a1[1]) * d2[0]) / den
            x = a1[0] + s * d1[0]
            lo1, hi1 = min(a1[0], b1[0]), max(a1[0], b1[0])
            lo2, hi2 = min(a2[0], b2[0]), max(a2[0], b2[0])
            if lo1 <= x <= hi1 and lo2 <= x <= hi2:
                breaks.add(x)

    xs = sorted(breaks)
    nsets = len(polygon_sets)
    total = Fraction(0)
    for xi in range(len(xs) - 1):
        xl, xr = xs[xi], xs[xi + 1]
        if xl == xr:
            continue
        active: list[tuple[Fraction, Fraction, int]] = []  # y at xl, y at xr, set
        for a, b, si in nonvert:
            lo, hi = (a, b) if a[0] < b[0] else (b, a)
            if lo[0] <= xl and hi[0] >= xr:
                slope = (hi[1] - lo[1]) / (hi[0] - lo[0])
                yl = lo[1] + slope * (xl - lo[0])
                yr = lo[1] + slope * (xr - lo[0])
                active.append((yl, yr, si))
        active.sort(key=lambda t: (t[0] + t[1]))
        parity = [False] * nsets
        width = xr - xl
        for ei in range(len(active)):
            parity[active[ei][2]] = not parity[active[ei][2]]
            if ei + 1 < len(active) and predicate(tuple(parity)):
                ya_l, ya_r, _ = active[ei]
                yb_l, yb_r, _ = active[ei + 1]
                total += width * ((yb_l + yb_r) - (ya_l + ya_r)) / 2
    return total


def polyset_area(polygons: Iterable[Sequence[Vec]]) -> Fraction:
    """Even-odd area of a set of polygons."""
    polys = list(polygons)
    if not polys:
        return Fraction(0)
    return predicate_area([polys], lambda p: p[0])


def polyset_symdiff_area(a: Iterable[Sequence[Vec]], b: Iterable[Sequence[Vec]]) -> Fraction:
    return predicate_area([list(a), list(b)], lambda p: p[0] != p[1])
