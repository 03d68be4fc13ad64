"""Exhaustive enumeration of square coverings and the single-phase check.

A "covering" is a disjoint family of molecules drawn from a given shape set
whose union contains the open square Q_2k (side 2k, centered at the
origin).  Molecules may overhang the square; any molecule meeting Q_2k
lies inside Q_2k+6, which bounds the search space.

The enumeration branches on the lexicographically first uncovered cell of
the square and tries every placement covering it.  That canonical order
makes the search exhaustive and duplicate-free: each covering is produced
exactly once, as the sequence of its molecules sorted by the first target
cell they cover.

For coverings of built-in molecules the interior single-phase property is
checked through phase labels; for user shape sets, where no phase map
exists, a covering counts as a violation when molecules of two different
shapes meet the inner square.  Violations of the latter kind within a
single species (two incompatible translates of one striped pattern) are
not detected.

The enumeration is a deterministic single-producer stream; all operations
here are pure and safe for concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .molecules import (
    BUILTIN_SHAPES,
    Configuration,
    Molecule,
    MoleculeShape,
    UnlabeledShape,
    Window,
    phase_label,
    validate,
)


class CapExceeded(RuntimeError):
    """The covering stream was truncated by the configured cap."""

    def __init__(self, message: str, stats: "SearchStats"):
        super().__init__(message)
        self.stats = stats


class NotCovered(ValueError):
    """The configuration does not cover the required square."""


@dataclass
class MixedPhases:
    """Two molecules of different phases (or kinds) meeting the inner square."""

    first: Molecule
    second: Molecule


@dataclass
class SearchStats:
    nodes: int = 0
    coverings: int = 0
    placements: int = 0


@dataclass
class LemmaReport:
    """Outcome of an exhaustive single-phase check over square coverings."""

    k: int
    shapes: tuple[str, ...]
    holds: bool | None
    witness: Configuration | None
    search_space: SearchStats
    complete: bool
    inner_margin: int = 4

    def to_jsonable(self) -> dict:
        return {
            "k": self.k,
            "shapes": list(self.shapes),
            "holds": self.holds,
            "complete": self.complete,
            "inner_margin": self.inner_margin,
            "witness": None
            if self.witness is None
            else [
                {"shape": m.shape.name, "anchor": list(m.anchor)}
                for m in self.witness.molecules
            ],
            "search_space": {
                "nodes": self.search_space.nodes,
                "coverings": self.search_space.coverings,
                "placements": self.search_space.placements,
            },
        }


# -------------------------------------------------------------------
# Placement tables
# -------------------------------------------------------------------

@dataclass(frozen=True)
class _Placement:
    shape: MoleculeShape
    anchor: tuple[int, int]
    mask: int
    meets_inner: bool
    label: int | None  # phase label for built-ins, else None


def _build_placements(
    k: int, shapes: Sequence[MoleculeShape], inner_margin: int
) -> tuple[list[tuple[int, int]], dict[tuple[int, int], list[_Placement]]]:
    """Target cells of Q_2k in canonical order and placements per cell."""
    lo, hi = -k - 3, k + 2  # extended box of cells reachable by overhang
    width = hi - lo + 1

    def bit(cell: tuple[int, int]) -> int:
        return 1 << ((cell[0] - lo) + (cell[1] - lo) * width)

    targets = sorted((c, r) for c in range(-k, k) for r in range(-k, k))
    half_inner = k - inner_margin // 2  # open square of side 2k - inner_margin
    by_cell: dict[tuple[int, int], list[_Placement]] = {t: [] for t in targets}
    seen: set[tuple[str, tuple[int, int]]] = set()
    for cell in targets:
        for shape in shapes:
            for off in shape.cells:
                anchor = (cell[0] - off[0], cell[1] - off[1])
                key = (shape.name, anchor)
                if key in seen:
                    continue
                seen.add(key)
                cells = [
                    (anchor[0] + c, anchor[1] + r) for c, r in shape.cells
                ]
                if not any(-k <= x < k and -k <= y < k for x, y in cells):
                    continue
                mask = 0
                for cc in cells:
                    mask |= bit(cc)
                meets_inner = any(
                    -half_inner <= x < half_inner and -half_inner <= y < half_inner
                    for x, y in cells
                )
                mol = Molecule(shape, anchor)
                try:
                    label = phase_label(mol)
                except UnlabeledShape:
                    label = None
                placement = _Placement(shape, anchor, mask, meets_inner, label)
                for cc in cells:
                    if cc in by_cell:
                        by_cell[cc].append(placement)
    return targets, by_cell


def _iter_coverings(
    k: int,
    shapes: Sequence[MoleculeShape],
    stats: SearchStats,
    cap: int | None,
) -> Iterator[tuple[_Placement, ...]]:
    """Depth-first stream of all coverings of Q_2k (canonical order)."""
    targets, by_cell = _build_placements(k, shapes, inner_margin=4)
    target_bits = []
    lo = -k - 3
    width = 2 * k + 6
    for c, r in targets:
        target_bits.append(1 << ((c - lo) + (r - lo) * width))
    n_targets = len(targets)
    chosen: list[_Placement] = []

    def dfs(occupied: int, start: int) -> Iterator[tuple[_Placement, ...]]:
        idx = start
        while idx < n_targets and occupied & target_bits[idx]:
            idx += 1
        if idx == n_targets:
            stats.coverings += 1
            yield tuple(chosen)
            if cap is not None and stats.coverings >= cap:
                raise CapExceeded(
                    f"covering cap {cap} reached before exhausting the search",
                    stats,
                )
            return
        for placement in by_cell[targets[idx]]:
            if placement.mask & occupied:
                continue
            stats.nodes += 1
            chosen.append(placement)
            yield from dfs(occupied | placement.mask, idx + 1)
            chosen.pop()

    yield from dfs(0, 0)


# -------------------------------------------------------------------
# Public operations
# -------------------------------------------------------------------

def enumerate_coverings(
    k: int,
    shapes: Iterable[MoleculeShape],
    cap: int | None = None,
) -> Iterator[Configuration]:
    """Every configuration of molecules from the shape set covering Q_2k.

    Emits validated configurations; raises CapExceeded after `cap`
    coverings if the stream is truncated.  Exhaustive and duplicate-free.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    shapes = tuple(shapes)
    stats = SearchStats()
    for chosen in _iter_coverings(k, shapes, stats, cap):
        yield validate(Molecule(p.shape, p.anchor) for p in chosen)


def verify_interior_phase(
    config: Configuration, center: tuple[int, int], k: int
) -> int | MixedPhases:
    """Phase shared by all molecules meeting Q_2k-4(center), if unique.

    Requires the configuration to cover Q_2k(center); raises NotCovered
    otherwise and UnlabeledShape when a relevant molecule is not built-in.
    """
    if k < 3:
        raise ValueError("k must be at least 3 so the inner square is nonempty")
    cx, cy = center
    occ = config.occupancy
    for c in range(cx - k, cx + k):
        for r in range(cy - k, cy + k):
            if (c, r) not in occ:
                raise NotCovered(f"cell {(c, r)} of Q_{2 * k}({center}) is empty")
    inner = Window.square(2 * k - 4, center)
    found: dict[int, Molecule] = {}
    for m in config.molecules:
        if not any(inner.contains_cell(c) for c in m.cells()):
            continue
        lab = phase_label(m)  # may raise UnlabeledShape
        if lab not in found:
            found[lab] = m
            if len(found) > 1:
                a, b = list(found.values())[:2]
                return MixedPhases(a, b)
    if not found:
        raise NotCovered("no labeled molecule meets the inner square")
    return next(iter(found))


def lemma_check(
    k: int,
    shapes: Iterable[MoleculeShape] | None = None,
    cap: int | None = None,
    inner_margin: int = 4,
) -> LemmaReport:
    """Exhaustively test the single-phase interior property at size k.

    holds is True when every covering of Q_2k is single-phase on the
    molecules meeting Q_2k-margin, False when a violating covering was
    found (returned as witness), and None when the cap truncated the
    search before a verdict.

    The proven property uses inner_margin=4; margin 2 is believed to hold
    for the built-in pair but is reported here empirically only.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if inner_margin not in (2, 4):
        raise ValueError("inner margin must be 2 or 4")
    shapes = tuple(shapes) if shapes is not None else (BUILTIN_SHAPES["R"], BUILTIN_SHAPES["S"])
    if not shapes:
        return LemmaReport(k, (), True, None, SearchStats(), True, inner_margin)
    builtin = all(s is BUILTIN_SHAPES.get(s.name) for s in shapes)
    stats = SearchStats()
    targets, by_cell = _build_placements(k, shapes, inner_margin)
    lo = -k - 3
    width = 2 * k + 6
    target_bits = [1 << ((c - lo) + (r - lo) * width) for c, r in targets]
    n_targets = len(targets)
    chosen: list[_Placement] = []
    witness: Configuration | None = None

    def violates(group: Sequence[_Placement]) -> bool:
        inner_keys = set()
        for p in group:
            if not p.meets_inner:
                continue
            inner_keys.add(p.label if builtin else p.shape.name)
            if len(inner_keys) > 1:
                return True
        return False

    truncated = False

    def dfs(occupied: int, start: int) -> bool:
        """Returns True when a witness was found (stop the search)."""
        nonlocal witness, truncated
        idx = start
        while idx < n_targets and occupied & target_bits[idx]:
            idx += 1
        if idx == n_targets:
            stats.coverings += 1
            if violates(chosen):
                witness = validate(Molecule(p.shape, p.anchor) for p in chosen)
                return True
            if cap is not None and stats.coverings >= cap:
                truncated = True
                return True
            return False
        for placement in by_cell[targets[idx]]:
            if placement.mask & occupied:
                continue
            stats.nodes += 1
            chosen.append(placement)
            stop = dfs(occupied | placement.mask, idx + 1)
            chosen.pop()
            if stop:
                return True
        return False

    dfs(0, 0)
    if witness is not None:
        return LemmaReport(k, tuple(s.name for s in shapes), False, witness, stats, True, inner_margin)
    if truncated:
        return LemmaReport(k, tuple(s.name for s in shapes), None, None, stats, False, inner_margin)
    return LemmaReport(k, tuple(s.name for s in shapes), True, None, stats, True, inner_margin)
