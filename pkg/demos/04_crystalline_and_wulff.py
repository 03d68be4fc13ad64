"""Closed-form crystalline densities, envelopes, and Wulff shapes.

The empty-interface density of the R phases is the gauge of an irregular
hexagon; the S phases use its mirror.  The spin description (ignoring
which species is where) is bounded below by the convex envelope of the
two, an octagon, and each gauge's polar dual is the optimal island shape.
"""

from pathlib import Path

from chiralattice.gauges import min_envelope, phi_closed_form, wulff_shape
from chiralattice.polygeom import polygon_area
from chiralattice.svgout import level_set_and_wulff_svg

hexagon = phi_closed_form(1)
print("level-set vertices:", [tuple(map(str, v)) for v in hexagon.vertices])
for v in ((1, 1), (0, 1), (1, 0), (3, -1), (2, -1)):
    print(f"  phi{v} = {hexagon.gauge(v)}   (l1 = {abs(v[0]) + abs(v[1])})")

pointwise_min, octagon = min_envelope([phi_closed_form(1), phi_closed_form(5)])
print(
    "spin envelope at (1,0):",
    octagon.gauge((1, 0)),
    "< pointwise min",
    pointwise_min((1, 0)),
    " (mixing both species would beat either pure phase, if it were free)",
)

w = wulff_shape(hexagon)
print("Wulff shape vertices:", [tuple(map(str, v)) for v in w])
print("area:", polygon_area(w), " boundary energy of the Wulff island:", 2 * polygon_area(w))

out = Path(__file__).with_name("wulff_phase1.svg")
out.write_text(level_set_and_wulff_svg(hexagon.vertices, w, comment="phase 1"))
print("wrote", out.name)
