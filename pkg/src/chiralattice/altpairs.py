"""Additional mirror pairs of 4-cell molecules for falsification runs.

The built-in R/S pair is the only one with phase labels.  The two pairs
below are alternative chiral tetromino couples (each shape is the mirror
image of its partner through a vertical axis, and cannot be translated onto
it).  They feed the covering search: the flat pair admits zero-energy
coverings that mix both kinds, so the single-phase interior property that
holds for R/S fails for it, while each flat shape on its own still has a
unique striped ground state.  For the skew pair even a single species
tiles in infinitely many vertically shifted ways.

Cell sets are one natural reconstruction of such pairs; they are shipped as
data, not as anything canonical.
"""

from __future__ import annotations

from .molecules import R_LIKE, S_LIKE, MoleculeShape

# Horizontal 3-cell bar with the fourth cell on top of the right/left end.
FLAT_R = MoleculeShape("FR", ((0, 0), (1, 0), (2, 0), (2, 1)), R_LIKE)
FLAT_S = MoleculeShape("FS", ((0, 0), (1, 0), (2, 0), (0, 1)), S_LIKE)

# Vertical skew (staircase) pair.
SKEW_R = MoleculeShape("ZR", ((0, 0), (0, 1), (1, 1), (1, 2)), R_LIKE)
SKEW_S = MoleculeShape("ZS", ((0, 0), (0, 1), (-1, 1), (-1, 2)), S_LIKE)

FLAT_PAIR = (FLAT_R, FLAT_S)
SKEW_PAIR = (SKEW_R, SKEW_S)
