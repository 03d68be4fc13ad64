"""Molecules, configurations, and perimeter-type energies.

The two built-in molecules R and S are mirror-image L-shaped pieces of
four lattice cells; translations are the only allowed motions.  A
configuration is a disjoint family of molecules, and its energy is the
boundary length of the union: contact is rewarded, exposed boundary is
paid for.
"""

from fractions import Fraction as F

from chiralattice import (
    Molecule,
    R,
    S,
    Window,
    perimeter,
    phase_label,
    phase_pattern,
    validate,
    volume_deficit,
    weighted_perimeter,
)

single = validate([Molecule(R, (0, 0))])
print("one R molecule:", sorted(single.occupancy))
print("  perimeter:", perimeter(single))  # 16 raw edges - 2 * 3 contacts

pair = validate([Molecule(R, (0, 0)), Molecule(R, (1, -1))])
print("interlocking diagonal pair perimeter:", perimeter(pair))

# every molecule carries a phase label: the residue class of its anchor
for mol in (Molecule(R, (0, 0)), Molecule(R, (1, -1)), Molecule(S, (0, 1))):
    print(f"  {mol.shape.name}{mol.anchor} -> phase {phase_label(mol)}")

# the eight striped patterns are the only zero-energy arrangements:
# inside a window eroded by 3 their perimeter vanishes exactly
for i in (1, 5):
    pat = phase_pattern(i, Window.square(20))
    print(
        f"phase {i} pattern: {len(pat)} molecules, "
        f"perimeter in the eroded window: {perimeter(pat, Window.square(14))}"
    )

# weighted energies distinguish the two chiralities; volume deficit
# measures uncovered area instead of boundary
print("weighted perimeter of one R at (c_R, c_S) = (2, 1):", weighted_perimeter(single, 2, 1))
print("volume deficit of one R in Q_10:", volume_deficit(single, Window.square(10)))
print("deficit of the phase-1 pattern in Q_14:", volume_deficit(phase_pattern(1, Window.square(20)), Window.square(14)))
