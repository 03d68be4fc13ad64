"""The limiting partition energy and its lower-bound descriptions.

Polygonal nine-phase partitions are priced edge by edge: each interface
segment with primitive normal (p, q) contributes its lattice length
times the density value phi(i, j, (p, q)).  Everything stays rational.
"""

from fractions import Fraction as F

from chiralattice.densities import DensityModel
from chiralattice.gauges import phi_closed_form, wulff_shape
from chiralattice.limits import (
    PolygonalPartition,
    limit_energy,
    rs_lower_bound,
    spin_lower_bound,
)
from chiralattice.polygeom import polygon_area

model = DensityModel.with_patterns()
sq = [(0, 0), (1, 0), (1, 1), (0, 1)]

island = PolygonalPartition(regions={1: [sq]}, window=None)
total, rows = limit_energy(island, model, detailed=True)
print("unit-square island of phase 1:")
for r in rows:
    print(
        f"  edge {tuple(map(str, r.segment.a))} -> {tuple(map(str, r.segment.b))}: "
        f"normal {r.segment.normal}, price {r.price} [{r.source}]"
    )
print("  total:", total)

print()
w = wulff_shape(phi_closed_form(1))
wulff_island = PolygonalPartition(regions={1: [list(w)]}, window=None)
print(
    "Wulff island: energy", limit_energy(wulff_island, model),
    "= 2 x area =", 2 * polygon_area(w),
    " (the optimal isoperimetric ratio)",
)

print()
print("spin description (species forgotten):", spin_lower_bound([sq], model))
er = [[(0, 0), (1, 0), (1, 1), (0, 1)]]
es = [[(1, 0), (2, 0), (2, 1), (1, 1)]]
print(
    "R/S description of two touching squares:",
    rs_lower_bound(er, es, model),
    " (shared edge priced by the contact envelope)",
)

print()
print("a two-phase window partition with per-source pricing:")
win = [(-1, -1), (1, -1), (1, 1), (-1, 1)]
split = PolygonalPartition(
    regions={
        1: [[(-1, -1), (0, -1), (0, 1), (-1, 1)]],
        2: [[(0, -1), (1, -1), (1, 1), (0, 1)]],
    },
    window=win,
)
total, rows = limit_energy(split, model, detailed=True)
for r in rows:
    print(f"  {r.segment.i}|{r.segment.j} normal {r.segment.normal}: {r.contribution} [{r.source}]")
print("  total:", total)
