"""Molecules, configurations and perimeter-type energies on the square lattice.

A molecule occupies four unit cells of the integer lattice; a cell (c, r) is
the closed square [c, c+1] x [r, r+1].  The two built-in shapes R and S are a
mirror pair of L-shaped pieces (three cells stacked vertically plus one side
cell at the top); only translations are admitted, never rotations.  All
geometry is exact: lengths and areas are `fractions.Fraction` values and
comparisons are never subject to floating-point tolerances.

Every object in this module is immutable after construction and every
function is pure, so concurrent use from multiple threads is safe.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Cell = tuple[int, int]

R_LIKE = "R-like"
S_LIKE = "S-like"


class OverlapError(ValueError):
    """Two molecules claim the same cell."""

    def __init__(self, cell: Cell, index_a: int, index_b: int):
        self.cell = cell
        self.index_a = index_a
        self.index_b = index_b
        super().__init__(
            f"cell {cell} occupied by molecules #{index_a} and #{index_b}"
        )


class UnlabeledShape(ValueError):
    """Phase labels exist only for the built-in shapes R and S."""


# -------------------------------------------------------------------
# Shapes and molecules
# -------------------------------------------------------------------

def _edge_connected(cells: Iterable[Cell]) -> bool:
    cells = set(cells)
    start = next(iter(cells))
    seen = {start}
    frontier = [start]
    while frontier:
        c, r = frontier.pop()
        for nb in ((c + 1, r), (c - 1, r), (c, r + 1), (c, r - 1)):
            if nb in cells and nb not in seen:
                seen.add(nb)
                frontier.append(nb)
    return len(seen) == len(cells)


@dataclass(frozen=True)
class MoleculeShape:
    """A named 4-cell shape with a chirality tag used by weighted energies."""

    name: str
    cells: tuple[Cell, Cell, Cell, Cell]
    chirality_class: str

    def __post_init__(self):
        if len(set(self.cells)) != 4:
            raise ValueError(f"shape {self.name!r} needs 4 distinct cells")
        if not _edge_connected(self.cells):
            raise ValueError(f"shape {self.name!r} is not edge-connected")
        if self.chirality_class not in (R_LIKE, S_LIKE):
            raise ValueError(
                f"chirality_class must be {R_LIKE!r} or {S_LIKE!r}"
            )


R = MoleculeShape("R", ((0, 0), (0, 1), (0, 2), (1, 2)), R_LIKE)
S = MoleculeShape("S", ((-1, 0), (-1, 1), (-1, 2), (-2, 2)), S_LIKE)

BUILTIN_SHAPES: Mapping[str, MoleculeShape] = {"R": R, "S": S}


@dataclass(frozen=True)
class Molecule:
    shape: MoleculeShape
    anchor: Cell

    def cells(self) -> tuple[Cell, ...]:
        ax, ay = self.anchor
        return tuple((ax + c, ay + r) for c, r in self.shape.cells)


def cells(m: Molecule) -> tuple[Cell, ...]:
    """Anchor-translated cells of a molecule."""
    return m.cells()


def phase_label(m: Molecule) -> int:
    """Label in 1..8 of the zero-energy family the molecule belongs to.

    For R the label is the residue of n1 + n2 mod 4 taken in {1, 2, 3, 4};
    for S it is the residue of n2 - n1 mod 4 taken in {5, 6, 7, 8}.  The
    label is constant along the molecule's own striped pattern, so it names
    one of the eight modulated phases.
    """
    n1, n2 = m.anchor
    if m.shape.name == "R" and m.shape is R:
        r = (n1 + n2) % 4
        return 4 if r == 0 else r
    if m.shape.name == "S" and m.shape is S:
        r = (n2 - n1) % 4
        return 8 if r == 0 else r + 4
    raise UnlabeledShape(f"shape {m.shape.name!r} has no phase label")


# -------------------------------------------------------------------
# Windows
# -------------------------------------------------------------------

def _int_above(q: Fraction | int) -> int:
    """Smallest integer strictly greater than q."""
    return math.floor(q) + 1


def _int_below(q: Fraction | int) -> int:
    """Largest integer strictly less than q."""
    return math.ceil(q) - 1


@dataclass(frozen=True)
class Window:
    """An axis-aligned open square, or the whole plane (side is None)."""

    center: tuple[Fraction, Fraction]
    side: Fraction | None

    @classmethod
    def square(cls, side, center=(0, 0)) -> "Window":
        side = Fraction(side)
        if side <= 0:
            raise ValueError("window side must be positive")
        return cls((Fraction(center[0]), Fraction(center[1])), side)

    @classmethod
    def plane(cls) -> "Window":
        return cls((Fraction(0), Fraction(0)), None)

    @property
    def is_plane(self) -> bool:
        return self.side is None

    def bounds(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        if self.side is None:
            raise ValueError("the whole plane has no bounds")
        cx, cy = self.center
        h = self.side / 2
        return (cx - h, cy - h, cx + h, cy + h)

    def eroded(self, margin) -> "Window":
        """The concentric open square whose side is shorter by 2*margin."""
        if self.side is None:
            return self
        side = self.side - 2 * Fraction(margin)
        if side <= 0:
            raise ValueError("erosion margin exceeds the window")
        return Window(self.center, side)

    def cell_range(self) -> tuple[range, range]:
        """Index ranges of lattice cells intersecting the open window."""
        x0, y0, x1, y1 = self.bounds()
        return (
            range(_int_above(x0 - 1), _int_below(x1) + 1),
            range(_int_above(y0 - 1), _int_below(y1) + 1),
        )

    def contains_cell(self, cell: Cell) -> bool:
        """True iff the open window meets the interior of the closed cell."""
        if self.side is None:
            return True
        x0, y0, x1, y1 = self.bounds()
        a, b = cell
        return a < x1 and a + 1 > x0 and b < y1 and b + 1 > y0


PLANE = Window.plane()


# -------------------------------------------------------------------
# Configurations
# -------------------------------------------------------------------

class Configuration:
    """A validated family of pairwise essentially-disjoint molecules.

    The occupancy index maps every occupied cell to the index of its owning
    molecule in `molecules`.  Instances are immutable.
    """

    __slots__ = ("molecules", "_occupancy")

    def __init__(self, molecules: tuple[Molecule, ...], occupancy: dict):
        self.molecules = molecules
        self._occupancy = occupancy

    @property
    def occupancy(self) -> Mapping[Cell, int]:
        return self._occupancy

    def __len__(self) -> int:
        return len(self.molecules)

    def __iter__(self) -> Iterator[Molecule]:
        return iter(self.molecules)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Configuration):
            return NotImplemented
        return sorted(
            (m.shape.name, m.anchor) for m in self.molecules
        ) == sorted((m.shape.name, m.anchor) for m in other.molecules)

    def __repr__(self) -> str:
        return f"Configuration({len(self.molecules)} molecules)"


def validate(molecules: Iterable[Molecule]) -> Configuration:
    """Build a Configuration, raising OverlapError on the first conflict."""
    mols = tuple(molecules)
    occupancy: dict[Cell, int] = {}
    for i, m in enumerate(mols):
        for cell in m.cells():
            j = occupancy.get(cell)
            if j is not None:
                raise OverlapError(cell, j, i)
            occupancy[cell] = i
    return Configuration(mols, occupancy)


# -------------------------------------------------------------------
# Energies
# -------------------------------------------------------------------

def _boundary_edges(config: Configuration) -> Iterator[tuple[str, int, int, Cell]]:
    """Unit edges separating an occupied cell from an unoccupied one.

    Yields ('V', x, y, owner_cell) for the segment {x} x [y, y+1] and
    ('H', x, y, owner_cell) for [x, x+1] x {y}; owner_cell is the occupied
    side, used by the weighted energy.
    """
    occ = config.occupancy
    for (a, b) in occ:
        if (a - 1, b) not in occ:
            yield ("V", a, b, (a, b))
        if (a + 1, b) not in occ:
            yield ("V", a + 1, b, (a, b))
        if (a, b - 1) not in occ:
            yield ("H", a, b, (a, b))
        if (a, b + 1) not in occ:
            yield ("H", a, b + 1, (a, b))


def _edge_length_in(window: Window, kind: str, x: int, y: int) -> Fraction:
    """Exact length of the unit edge clipped to the open window.

    Edges lying on the window boundary contribute 0, matching the open-set
    convention for the ambient domain.
    """
    if window.is_plane:
        return Fraction(1)
    x0, y0, x1, y1 = window.bounds()
    if kind == "V":
        if not (x0 < x < x1):
            return Fraction(0)
        lo, hi = max(Fraction(y), y0), min(Fraction(y + 1), y1)
    else:
        if not (y0 < y < y1):
            return Fraction(0)
        lo, hi = max(Fraction(x), x0), min(Fraction(x + 1), x1)
    return hi - lo if hi > lo else Fraction(0)


def perimeter(config: Configuration, window: Window = PLANE) -> Fraction:
    """Length of the boundary of the union of molecules inside the window.

    On the whole plane this equals 4*(#cells) - 2*(#adjacent occupied
    pairs); with a finite window, edges are clipped exactly to the open
    square.
    """
    total = Fraction(0)
    for kind, x, y, _ in _boundary_edges(config):
        total += _edge_length_in(window, kind, x, y)
    return total


def weighted_perimeter(
    config: Configuration, c_R, c_S, window: Window = PLANE
) -> Fraction:
    """Boundary length with R-like edges weighted c_R and S-like edges c_S.

    Every boundary edge is adjacent to exactly one molecule; that
    molecule's chirality class selects the weight.
    """
    c_R, c_S = Fraction(c_R), Fraction(c_S)
    if c_R <= 0 or c_S <= 0:
        raise ValueError("weights must be positive")
    occ = config.occupancy
    total = Fraction(0)
    for kind, x, y, owner in _boundary_edges(config):
        length = _edge_length_in(window, kind, x, y)
        if not length:
            continue
        mol = config.molecules[occ[owner]]
        total += length * (c_R if mol.shape.chirality_class == R_LIKE else c_S)
    return total


def volume_deficit(config: Configuration, window: Window) -> Fraction:
    """Area of the window not covered by molecules, |w \\ E|."""
    if window.is_plane:
        raise ValueError("volume deficit is infinite on the whole plane")
    x0, y0, x1, y1 = window.bounds()
    covered = Fraction(0)
    for (a, b) in config.occupancy:
        w = min(Fraction(a + 1), x1) - max(Fraction(a), x0)
        h = min(Fraction(b + 1), y1) - max(Fraction(b), y0)
        if w > 0 and h > 0:
            covered += w * h
    return (x1 - x0) * (y1 - y0) - covered


# -------------------------------------------------------------------
# The striped zero-energy patterns
# -------------------------------------------------------------------

def pattern_anchor(i: int, cell: Cell) -> Cell:
    """Anchor of the unique phase-i molecule covering the given cell.

    For each cell and each phase exactly one of the four candidate anchors
    has the right residue, which is why each family tiles the plane.
    """
    a, b = cell
    if 1 <= i <= 4:
        for n in ((a, b), (a, b - 1), (a, b - 2), (a - 1, b - 2)):
            r = (n[0] + n[1]) % 4
            if (4 if r == 0 else r) == i:
                return n
    elif 5 <= i <= 8:
        for n in ((a + 1, b), (a + 1, b - 1), (a + 1, b - 2), (a + 2, b - 2)):
            r = (n[1] - n[0]) % 4
            if (8 if r == 0 else r + 4) == i:
                return n
    else:
        raise ValueError("phase label must be in 1..8")
    raise AssertionError("unreachable: one candidate anchor always matches")


def phase_molecule(i: int, cell: Cell) -> Molecule:
    """The unique molecule of phase i whose cells contain the given cell."""
    return Molecule(R if i <= 4 else S, pattern_anchor(i, cell))


def in_phase_family(i: int, m: Molecule) -> bool:
    """True iff the molecule belongs to the phase-i striped family."""
    try:
        return phase_label(m) == i
    except UnlabeledShape:
        return False


def phase_pattern(i: int, window: Window) -> Configuration:
    """All phase-i molecules whose cells intersect the window.

    The result covers every cell of the window, has zero perimeter on the
    erosion of the window by 3, and consists of molecules that all carry
    phase label i.
    """
    if window.is_plane:
        raise ValueError("a plane-filling pattern is infinite; pass a square")
    xs, ys = window.cell_range()
    anchors: set[Cell] = set()
    for a in xs:
        for b in ys:
            anchors.add(pattern_anchor(i, (a, b)))
    shape = R if i <= 4 else S
    mols = [Molecule(shape, n) for n in sorted(anchors)]
    mols = [m for m in mols if any(window.contains_cell(c) for c in m.cells())]
    return validate(mols)


# -------------------------------------------------------------------
# JSON round-trip (shape files and configuration files)
# -------------------------------------------------------------------

def shapes_to_json(shapes: Iterable[MoleculeShape]) -> str:
    payload = [
        {
            "name": s.name,
            "cells": [[c, r] for c, r in s.cells],
            "chirality_class": s.chirality_class,
        }
        for s in shapes
    ]
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def shapes_from_json(text: str) -> dict[str, MoleculeShape]:
    out: dict[str, MoleculeShape] = {}
    for entry in json.loads(text):
        shape = MoleculeShape(
            entry["name"],
            tuple((int(c), int(r)) for c, r in entry["cells"]),
            entry["chirality_class"],
        )
        if shape.name in out:
            raise ValueError(f"duplicate shape name {shape.name!r}")
        out[shape.name] = shape
    return out


def configuration_to_json(config: Configuration) -> str:
    payload = [
        {"shape": m.shape.name, "anchor": [m.anchor[0], m.anchor[1]]}
        for m in config.molecules
    ]
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def configuration_from_json(
    text: str, shapes: Mapping[str, MoleculeShape] | None = None
) -> Configuration:
    table = dict(BUILTIN_SHAPES)
    if shapes:
        table.update(shapes)
    mols = []
    for entry in json.loads(text):
        name = entry["shape"]
        if name not in table:
            raise ValueError(f"unknown shape {name!r}")
        mols.append(Molecule(table[name], (int(entry["anchor"][0]), int(entry["anchor"][1]))))
    return validate(mols)
