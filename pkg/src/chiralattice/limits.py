"""The limiting interfacial energy on polygonal nine-phase partitions.

A partition assigns polygon sets with rational vertices to the labels
0..8 inside a polygonal window (or bounded islands in the plane).  The
energy integrates the density f(i, j, nu) over every interface; window
boundary edges adjacent to a nonempty phase are priced against the empty
phase.  For a segment whose direction vector is t * (a, b) with (a, b)
a primitive integer vector, the Euclidean length is t * sqrt(a^2 + b^2)
and the unit-normal density is phi(p, q) / sqrt(p^2 + q^2) with
(p, q) = (-b, a) primitive, so each contribution reduces to the exact
rational t * phi(p, q); no irrational arithmetic is ever needed.

Evaluation is pure: segments are priced independently and summed in a
fixed order, so results are deterministic and thread-safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .densities import DensityModel
from .gauges import GaugePolygon, phi_closed_form
from .polygeom import (
    Polygon,
    Vec,
    polygon_area,
    predicate_area,
    primitive_direction,
)

IntDir = tuple[int, int]


class NonRationalEdge(ValueError):
    """Edge with irrational data (cannot occur for rational vertices)."""


class InvalidPartition(ValueError):
    """Regions overlap, leave gaps, or spill outside the window."""


@dataclass(frozen=True)
class InterfaceSegment:
    """A maximal shared edge between two labels, canonically oriented."""

    a: Vec
    b: Vec
    i: int  # smaller label
    j: int  # larger label
    normal: IntDir  # primitive integer normal pointing into A_i

    @property
    def lattice_length(self) -> Fraction:
        """t with (b - a) = t * primitive_tangent; contribution scale."""
        d = (self.b[0] - self.a[0], self.b[1] - self.a[1])
        _, t = primitive_direction(d)
        return t

    def euclidean_length_squared(self) -> Fraction:
        dx, dy = self.b[0] - self.a[0], self.b[1] - self.a[1]
        return dx * dx + dy * dy


def _normalize_polys(polys: Iterable[Sequence[Vec]], what: str) -> list[Polygon]:
    out = []
    for poly in polys:
        verts = tuple((Fraction(x), Fraction(y)) for x, y in poly)
        if len(verts) < 3:
            raise InvalidPartition(f"{what}: polygon needs 3+ vertices")
        area = polygon_area(verts)
        if area == 0:
            raise InvalidPartition(f"{what}: degenerate polygon")
        out.append(verts if area > 0 else tuple(reversed(verts)))
    return out


@dataclass
class PolygonalPartition:
    """Labeled polygon sets partitioning a window (or islands in the plane).

    With a window, the regions (labels 0..8, including the empty phase 0)
    must tile it; with window None, label 0 is implicit as the complement
    of the labeled islands and must not be given explicitly.
    """

    regions: dict[int, list[Polygon]]
    window: Polygon | None = None

    def __post_init__(self):
        regions: dict[int, list[Polygon]] = {}
        for lab, polys in self.regions.items():
            lab = int(lab)
            if not 0 <= lab <= 8:
                raise InvalidPartition(f"label {lab} out of range 0..8")
            if polys:
                regions[lab] = _normalize_polys(polys, f"A_{lab}")
        self.regions = regions
        if self.window is not None:
            self.window = _normalize_polys([self.window], "window")[0]
            total = sum(
                (polygon_area(p) for polys in regions.values() for p in polys),
                Fraction(0),
            )
            if total != polygon_area(self.window):
                raise InvalidPartition(
                    "region areas do not add up to the window area"
                )
        elif 0 in regions:
            raise InvalidPartition(
                "label 0 is implicit for plane partitions; omit it"
            )

    def labels(self) -> list[int]:
        return sorted(self.regions)


_WINDOW = -1  # pseudo-label for window edges in the segment soup


def _directed_edges(part: PolygonalPartition) -> list[tuple[Vec, Vec, int]]:
    edges: list[tuple[Vec, Vec, int]] = []
    for lab, polys in part.regions.items():
        for poly in polys:
            n = len(poly)
            for k in range(n):
                edges.append((poly[k], poly[(k + 1) % n], lab))
    if part.window is not None:
        n = len(part.window)
        for k in range(n):
            edges.append((part.window[k], part.window[(k + 1) % n], _WINDOW))
    return edges


def _line_key(a: Vec, b: Vec):
    d = (b[0] - a[0], b[1] - a[1])
    (p, q), _ = primitive_direction(d)
    if (p, q) < (0, 0) or (p == 0 and q < 0) or (p < 0):
        p, q = -p, -q
    offset = Fraction(p) * a[1] - Fraction(q) * a[0]
    return (p, q, offset)


def extract_interfaces(part: PolygonalPartition) -> list[InterfaceSegment]:
    """Atomic shared segments between distinct labels, validated.

    Every region edge must pair, piece by piece, with exactly one edge of
    another region (opposite orientation) or lie on the window (same
    orientation); anything else raises InvalidPartition.  Edges between a
    label and the window are emitted against label 0; 0-0 interfaces are
    dropped.  Segments are merged per (line, pair) into maximal runs.
    """
    edges = _directed_edges(part)
    lines: dict[tuple, list[tuple[Fraction, Fraction, int, int]]] = {}
    for a, b, lab in edges:
        key = _line_key(a, b)
        p, q, _ = key
        ta = Fraction(p) * a[0] + Fraction(q) * a[1]
        tb = Fraction(p) * b[0] + Fraction(q) * b[1]
        orient = 1 if tb > ta else -1
        lo, hi = min(ta, tb), max(ta, tb)
        lines.setdefault(key, []).append((lo, hi, lab, orient))

    out: list[InterfaceSegment] = []
    for (p, q, offset), intervals in sorted(lines.items()):
        cuts = sorted({t for lo, hi, _, _ in intervals for t in (lo, hi)})
        nn = Fraction(p * p + q * q)

        def point_at(t: Fraction) -> Vec:
            # solve p*x + q*y = t, p*y - q*x = offset
            x = (p * t - q * offset) / nn
            y = (q * t + p * offset) / nn
            return (x, y)

        runs: dict[tuple, list[tuple[Fraction, Fraction]]] = {}
        for t0, t1 in zip(cuts, cuts[1:]):
            covers = [
                (lab, orient)
                for lo, hi, lab, orient in intervals
                if lo <= t0 and hi >= t1
            ]
            if not covers:
                continue
            window_covers = [c for c in covers if c[0] == _WINDOW]
            region_covers = [c for c in covers if c[0] != _WINDOW]
            if window_covers:
                if len(window_covers) > 1 or len(region_covers) != 1:
                    raise InvalidPartition(
                        f"window edge piece covered {len(region_covers)} times"
                    )
                lab, orient = region_covers[0]
                if orient != window_covers[0][1]:
                    raise InvalidPartition(
                        f"region A_{lab} lies outside the window"
                    )
                if lab == 0:
                    continue
                i, j = lab, 0
                # inner normal of the region = left normal of its direction
                normal = (-q, p) if orient > 0 else (q, -p)
            elif len(region_covers) == 2:
                (la, oa), (lb, ob) = region_covers
                if oa == ob:
                    raise InvalidPartition(
                        f"regions A_{la} and A_{lb} overlap along an edge"
                    )
                if la == lb:
                    continue  # internal seam of one region
                left = la if oa > 0 else lb
                right = lb if oa > 0 else la
                if left < right:
                    i, j, normal = left, right, (-q, p)
                else:
                    i, j, normal = right, left, (q, -p)
            elif len(region_covers) == 1 and part.window is None:
                lab, orient = region_covers[0]
                if lab == 0:
                    raise InvalidPartition("label 0 cannot form islands")
                i, j = 0, lab
                # normal into A_0 = away from the island
                normal = (q, -p) if orient > 0 else (-q, p)
            else:
                raise InvalidPartition(
                    f"edge piece covered {len(region_covers)} times"
                )
            runs.setdefault((i, j, normal), []).append((t0, t1))

        for (i, j, normal), pieces in sorted(runs.items()):
            pieces.sort()
            start, end = pieces[0]
            merged = []
            for t0, t1 in pieces[1:]:
                if t0 == end:
                    end = t1
                else:
                    merged.append((start, end))
                    start, end = t0, t1
            merged.append((start, end))
            for t0, t1 in merged:
                out.append(
                    InterfaceSegment(point_at(t0), point_at(t1), i, j, normal)
                )
    return out


@dataclass
class PricedSegment:
    segment: InterfaceSegment
    price: Fraction  # phi-scale value used
    source: str
    contribution: Fraction


def limit_energy(
    part: PolygonalPartition, model: DensityModel, detailed: bool = False
):
    """Total interfacial energy of the partition under the density model.

    Exact rational: each segment contributes t * phi(i, j, normal) with t
    its lattice length.
    """
    segments = extract_interfaces(part)
    total = Fraction(0)
    rows: list[PricedSegment] = []
    for seg in segments:
        price, source = model.value_and_source(seg.i, seg.j, seg.normal)
        contribution = seg.lattice_length * price
        total += contribution
        rows.append(PricedSegment(seg, price, source, contribution))
    if detailed:
        return total, rows
    return total


def anchored_admissible(
    part: PolygonalPartition,
    exterior: PolygonalPartition,
    omega: Sequence[Vec] | None = None,
) -> bool:
    """Exact equality of the two partitions outside the window omega.

    omega defaults to the window of `part`.  Labels are compared through
    the area of the symmetric difference restricted to the complement.
    """
    if omega is None:
        omega = part.window
    if omega is None:
        raise ValueError("anchoring needs a bounded window")
    omega_set = [tuple((Fraction(x), Fraction(y)) for x, y in omega)]
    for lab in range(1, 9):
        a = part.regions.get(lab, [])
        b = exterior.regions.get(lab, [])
        if not a and not b:
            continue
        mismatch = predicate_area(
            [a, b, omega_set],
            lambda pr: (pr[0] != pr[1]) and not pr[2],
        )
        if mismatch != 0:
            return False
    # label 0 follows as the complement once 1..8 agree when both sides
    # are partitions; explicit 0 regions are compared the same way
    a0 = part.regions.get(0, [])
    b0 = exterior.regions.get(0, [])
    if a0 and b0:
        mismatch = predicate_area(
            [a0, b0, omega_set], lambda pr: (pr[0] != pr[1]) and not pr[2]
        )
        if mismatch != 0:
            return False
    return True


def _island_boundary_energy(
    polys: Iterable[Sequence[Vec]], gauge: GaugePolygon
) -> Fraction:
    """Integral of a gauge density over the boundary of a polygon union."""
    part = PolygonalPartition(regions={1: list(polys)}, window=None)
    total = Fraction(0)
    for seg in extract_interfaces(part):
        # seg.normal points into A_0; the gauges used here are centrally
        # symmetric so the orientation does not affect the value
        total += seg.lattice_length * gauge.gauge(seg.normal)
    return total


def spin_lower_bound(polys: Iterable[Sequence[Vec]], model: DensityModel) -> Fraction:
    """Integral of f** over the boundary of the island set E.

    This bounds from below every partition energy whose occupied phases
    union to E.
    """
    polys = list(polys)
    if not polys:
        return Fraction(0)
    return _island_boundary_energy(polys, model.spin_envelope())


def rs_lower_bound(
    e_r: Iterable[Sequence[Vec]],
    e_s: Iterable[Sequence[Vec]],
    model: DensityModel,
) -> Fraction:
    """Three-term bound for the R/S description of a pair of islands.

    Shared boundary pieces are priced by the convex envelope of the
    R-against-S contact density; pieces exclusive to one species by the
    corresponding empty-interface density.
    """
    e_r, e_s = list(e_r), list(e_s)
    f_r = phi_closed_form(1)
    f_s = phi_closed_form(5)
    f0 = model.rs_contact_envelope()

    # segment soup over both sets
    sets = {"R": _normalize_polys(e_r, "E_R") if e_r else [],
            "S": _normalize_polys(e_s, "E_S") if e_s else []}
    lines: dict[tuple, list[tuple[Fraction, Fraction, str, int]]] = {}
    for name, polys in sets.items():
        for poly in polys:
            n = len(poly)
            for k in range(n):
                a, b = poly[k], poly[(k + 1) % n]
                key = _line_key(a, b)
                p, q, _ = key
                ta = Fraction(p) * a[0] + Fraction(q) * a[1]
                tb = Fraction(p) * b[0] + Fraction(q) * b[1]
                orient = 1 if tb > ta else -1
                lines.setdefault(key, []).append(
                    (min(ta, tb), max(ta, tb), name, orient)
                )
    total = Fraction(0)
    for (p, q, _offset), intervals in sorted(lines.items()):
        cuts = sorted({t for lo, hi, _, _ in intervals for t in (lo, hi)})
        nn = p * p + q * q
        for t0, t1 in zip(cuts, cuts[1:]):
            covers = [
                (name, orient)
                for lo, hi, name, orient in intervals
                if lo <= t0 and hi >= t1
            ]
            if not covers:
                continue
            t = (t1 - t0) / nn
            names = sorted(c[0] for c in covers)
            normal = (-q, p)  # sign immaterial: the gauges are even
            if len(covers) == 1:
                name, orient = covers[0]
                gauge = f_r if name == "R" else f_s
                total += t * gauge.gauge(normal)
            elif names == ["R", "S"]:
                (na, oa), (nb, ob) = covers
                if oa == ob:
                    raise InvalidPartition("E_R and E_S overlap along an edge")
                total += t * f0.gauge(normal)
            elif len({c for c in covers}) < len(covers):
                raise InvalidPartition("a species covers an edge twice")
            else:
                raise InvalidPartition("overlapping species boundaries")
    return total
