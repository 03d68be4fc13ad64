"""Finite-size interface problems between modulated phases.

The central object is the minimal boundary length inside the open square
Q_T over configurations that match prescribed half-plane boundary data on
the frame (the open collar of width 4 along the square's boundary).  The
boundary data for an ordered phase pair (i, j) and a rational direction
(p, q) consists of the phase-i striped family on the side where
x . (p, q) is positive and the phase-j family on the negative side; a
configuration is admissible when the set of its molecules meeting the
frame coincides exactly with the set of family molecules meeting the
frame.  Away from the frame the configuration is free: molecules of any
phase, or none, may appear.

Because every molecule that is allowed to vary must avoid the width-4
frame, free molecules live in the concentric inner square of side T - 8.
The search over that region is an exhaustive branch and bound in scan
order, with energy accounted incrementally and a monotone lower bound
given by the already-determined boundary edges.  All energies are exact
rationals.

Searches are deterministic for fixed inputs and node budgets; everything
else here is pure, so concurrent invocation is safe.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .molecules import (
    Cell,
    Configuration,
    Molecule,
    R,
    R_LIKE,
    S,
    Window,
    perimeter,
    phase_molecule,
    in_phase_family,
    validate,
    volume_deficit,
    weighted_perimeter,
)

SURFACE = "surface"
VOLUME = "volume"


class InfeasibleBoundary(ValueError):
    """The prescribed boundary family is itself inconsistent (overlaps)."""


class NoPattern(LookupError):
    """No library pattern or combination covers the requested problem."""


class ClusterCapExceeded(RuntimeError):
    """Cluster size exceeds the configured cap."""


# -------------------------------------------------------------------
# Directions and problems
# -------------------------------------------------------------------

@dataclass(frozen=True)
class Direction:
    """A coprime integer normal (p, q) for a rational interface direction."""

    p: int
    q: int

    def __post_init__(self):
        if self.p == 0 and self.q == 0:
            raise ValueError("direction cannot be zero")
        if math.gcd(abs(self.p), abs(self.q)) != 1:
            raise ValueError("direction components must be coprime")

    @property
    def norm_inf(self) -> int:
        return max(abs(self.p), abs(self.q))

    @property
    def norm_l1(self) -> int:
        return abs(self.p) + abs(self.q)

    def __neg__(self) -> "Direction":
        return Direction(-self.p, -self.q)

    def as_tuple(self) -> tuple[int, int]:
        return (self.p, self.q)


def direction(p: int, q: int) -> Direction:
    g = math.gcd(abs(p), abs(q))
    if g == 0:
        raise ValueError("direction cannot be zero")
    return Direction(p // g, q // g)


def l1_lower_bound(nu: Direction) -> int:
    """|p| + |q|: the unconstrained unit-square density at the same scale."""
    return nu.norm_l1


@dataclass(frozen=True)
class InterfaceProblem:
    i: int
    j: int
    nu: Direction
    T: int
    weights: tuple[Fraction, Fraction] = (Fraction(1), Fraction(1))
    energy_kind: str = SURFACE

    def __post_init__(self):
        if not (0 <= self.i <= 8 and 0 <= self.j <= 8):
            raise ValueError("phase labels must be in 0..8")
        if self.i == self.j:
            raise ValueError("interface problems need distinct phases")
        if self.T < 8:
            raise ValueError("T must be at least 8 so the frame fits")
        if self.energy_kind not in (SURFACE, VOLUME):
            raise ValueError("energy_kind must be 'surface' or 'volume'")
        object.__setattr__(
            self, "weights", (Fraction(self.weights[0]), Fraction(self.weights[1]))
        )
        if self.weights[0] <= 0 or self.weights[1] <= 0:
            raise ValueError("weights must be positive")


@dataclass
class SolveResult:
    value: Fraction
    config: Configuration
    certificate: str  # "exact" | "upper_bound"
    nodes_explored: int

    def to_jsonable(self) -> dict:
        return {
            "value": str(self.value),
            "certificate": self.certificate,
            "nodes_explored": self.nodes_explored,
            "config": [
                {"shape": m.shape.name, "anchor": list(m.anchor)}
                for m in self.config.molecules
            ],
        }


# -------------------------------------------------------------------
# Boundary families
# -------------------------------------------------------------------

def _side_reach(m: Molecule, nu: Direction, upper: bool) -> bool:
    """Does the molecule meet {x . nu > 2} (upper) or {x . nu < -2}?

    nu is used as the unit vector (p, q)/sqrt(p^2+q^2); the comparison is
    done exactly on squared integers.
    """
    p, q = nu.p, nu.q
    pp = max(p, 0)
    qp = max(q, 0)
    best = None
    for (a, b) in m.cells():
        if upper:
            v = p * a + q * b + pp + qp  # max of x.nu over the closed cell
            best = v if best is None else max(best, v)
        else:
            v = p * a + q * b + (p - pp) + (q - qp)  # min over the cell
            best = v if best is None else min(best, v)
    rhs4 = 4 * (p * p + q * q)
    if upper:
        return best > 0 and best * best > rhs4
    return best < 0 and best * best > rhs4


def in_boundary_family(m: Molecule, i: int, j: int, nu: Direction) -> bool:
    """Membership in the glued half-plane family for the ordered pair."""
    if i != 0 and in_phase_family(i, m) and _side_reach(m, nu, upper=True):
        return True
    if j != 0 and in_phase_family(j, m) and _side_reach(m, nu, upper=False):
        return True
    return False


def _family_members(i: int, j: int, nu: Direction, window: Window) -> list[Molecule]:
    """All family molecules whose cells intersect the window."""
    xs, ys = window.cell_range()
    seen: set[tuple[str, Cell]] = set()
    out: list[Molecule] = []
    labels = [lab for lab in (i, j) if lab != 0]
    for a in range(xs.start - 3, xs.stop + 3):
        for b in range(ys.start - 3, ys.stop + 3):
            for lab in labels:
                m = phase_molecule(lab, (a, b))
                key = (m.shape.name, m.anchor)
                if key in seen:
                    continue
                seen.add(key)
                if not in_boundary_family(m, i, j, nu):
                    continue
                if any(window.contains_cell(c) for c in m.cells()):
                    out.append(m)
    out.sort(key=lambda m: (m.shape.name, m.anchor))
    return out


def boundary_family(i: int, j: int, nu: Direction, region: Window) -> Configuration:
    """The family molecules intersecting the region, as a validated config."""
    if i == j:
        raise ValueError("boundary families need distinct phases")
    try:
        return validate(_family_members(i, j, nu, region))
    except Exception as exc:
        raise InfeasibleBoundary(
            f"boundary family ({i},{j},{nu.as_tuple()}) is inconsistent: {exc}"
        ) from exc


# -------------------------------------------------------------------
# Frame geometry
# -------------------------------------------------------------------

def _cell_meets_window(cell: Cell, T: int) -> bool:
    a, b = cell
    h = Fraction(T, 2)
    return a < h and a + 1 > -h and b < h and b + 1 > -h


def _cell_inside_inner(cell: Cell, T: int) -> bool:
    """Cell contained in the closed concentric square of side T - 8."""
    a, b = cell
    lo = Fraction(-T, 2) + 4
    hi = Fraction(T, 2) - 4
    return lo <= a and a + 1 <= hi and lo <= b and b + 1 <= hi


def meets_frame(m: Molecule, T: int) -> bool:
    """Does the molecule intersect the open frame collar of Q_T?"""
    return any(
        _cell_meets_window(c, T) and not _cell_inside_inner(c, T)
        for c in m.cells()
    )


def frame_forced(prob: InterfaceProblem) -> Configuration:
    """Family molecules meeting the frame: the forced part of any config."""
    search = Window.square(prob.T + 8)
    members = [
        m
        for m in _family_members(prob.i, prob.j, prob.nu, search)
        if meets_frame(m, prob.T)
    ]
    try:
        return validate(members)
    except Exception as exc:
        raise InfeasibleBoundary(
            f"boundary family ({prob.i},{prob.j},{prob.nu.as_tuple()}) forces "
            f"overlapping molecules on the frame of Q_{prob.T}: {exc}"
        ) from exc


def admissible(config: Configuration, prob: InterfaceProblem) -> bool:
    """Exact frame matching: molecules meeting the frame are the family's.

    Equality (not mere containment) is required in both directions; the
    interior is free.
    """
    forced = {
        (m.shape.name, m.anchor) for m in frame_forced(prob).molecules
    }
    actual = {
        (m.shape.name, m.anchor)
        for m in config.molecules
        if meets_frame(m, prob.T)
    }
    return actual == forced


def _energy(config: Configuration, prob: InterfaceProblem) -> Fraction:
    window = Window.square(prob.T)
    if prob.energy_kind == VOLUME:
        return volume_deficit(config, window)
    c_R, c_S = prob.weights
    if c_R == 1 and c_S == 1:
        return perimeter(config, window)
    return weighted_perimeter(config, c_R, c_S, window)


# -------------------------------------------------------------------
# Branch and bound
# -------------------------------------------------------------------

def _scan_order(prob: InterfaceProblem, cells: Iterable[Cell]) -> list[Cell]:
    """Row-major order starting at the corner most negative along nu."""
    p, q = prob.nu.p, prob.nu.q
    h = Fraction(prob.T, 2)
    corners = [(sx, sy) for sy in (-1, 1) for sx in (-1, 1)]
    sx, sy = min(corners, key=lambda s: (s[0] * h * p + s[1] * h * q, s))
    return sorted(cells, key=lambda c: (sy * c[1], sx * c[0]))


def solve_interface(prob: InterfaceProblem, budget: int | None = None) -> SolveResult:
    """Minimize the Q_T energy over admissible configurations.

    Branch and bound over the cells of the free inner square in scan
    order; each cell is either covered by one of the feasible molecule
    placements or left empty.  The certificate is exact iff the search
    tree was exhausted within the node budget; otherwise the best
    configuration found is returned as an upper bound.  Deterministic for
    fixed inputs and budgets.
    """
    if budget is None:
        budget = default_budget()
    forced = frame_forced(prob)
    T = prob.T
    c_R, c_S = prob.weights
    volume = prob.energy_kind == VOLUME

    # Occupancy of every forced cell, with its boundary weight.
    occ_weight: dict[Cell, Fraction] = {}
    for m in forced.molecules:
        w = c_R if m.shape.chirality_class == R_LIKE else c_S
        for cell in m.cells():
            occ_weight[cell] = w

    inner_cells = [
        (a, b)
        for a in range(-T // 2 + 4, T // 2 - 4)
        for b in range(-T // 2 + 4, T // 2 - 4)
        if _cell_inside_inner((a, b), T)
    ]
    free_cells = [c for c in inner_cells if c not in occ_weight]
    order = _scan_order(prob, free_cells)
    pos = {c: idx for idx, c in enumerate(order)}
    n = len(order)

    # Free placements: molecules fully inside the inner square.
    placements = []
    seen = set()
    for cell in order:
        for shape in (R, S):
            for off in shape.cells:
                anchor = (cell[0] - off[0], cell[1] - off[1])
                key = (shape.name, anchor)
                if key in seen:
                    continue
                seen.add(key)
                mol = Molecule(shape, anchor)
                cells = mol.cells()
                if not all(_cell_inside_inner(c, T) for c in cells):
                    continue
                if any(c in occ_weight for c in cells):
                    continue
                mask = 0
                for c in cells:
                    mask |= 1 << pos[c]
                placements.append((mol, cells, mask))
    by_cell: dict[Cell, list[int]] = {c: [] for c in order}
    for idx, (_, cells, _) in enumerate(placements):
        for c in cells:
            by_cell[c].append(idx)

    base = _energy(forced, prob)

    nodes = 0
    exhausted = True

    occ_state: dict[Cell, Fraction] = dict(occ_weight)
    free_set = set(order)
    decided_cells: set[Cell] = set()

    def neighbors(c: Cell) -> tuple[Cell, Cell, Cell, Cell]:
        a, b = c
        return ((a + 1, b), (a - 1, b), (a, b + 1), (a, b - 1))

    # DET: weighted length of boundary edges both of whose sides are
    # decided.  Cells outside the free zone are decided from the start
    # (forced-occupied or permanently empty), so DET starts at `base`
    # minus the contribution of boundary edges adjacent to a free cell.
    if volume:
        base_det = base
    else:
        base_det = base
        for cell, w in occ_weight.items():
            for nb in neighbors(cell):
                if nb in free_set:
                    base_det -= w  # that boundary edge is not determined yet

    # initial incumbents: forced alone, and forced + interior family fill
    def evaluate(mols: list[Molecule]) -> tuple[Fraction, Configuration]:
        cfg = validate(list(forced.molecules) + mols)
        return _energy(cfg, prob), cfg

    incumbents: list[tuple[Fraction, Configuration]] = [evaluate([])]
    family_fill = [
        mol
        for (mol, cells, _) in placements
        if in_boundary_family(mol, prob.i, prob.j, prob.nu)
    ]
    try:
        incumbents.append(evaluate(family_fill))
    except Exception:
        pass
    incumbents.sort(key=lambda t: t[0])
    best_val, best_cfg_conf = incumbents[0]
    best_cfg = list(best_cfg_conf.molecules)

    placed: list[Molecule] = []

    def dfs(ptr: int, energy: Fraction, det: Fraction) -> None:
        nonlocal nodes, best_val, best_cfg, exhausted
        if nodes >= budget:
            exhausted = False
            return
        while ptr < n and order[ptr] in decided_cells:
            ptr += 1
        if ptr == n:
            if energy < best_val:
                best_val = energy
                best_cfg = list(forced.molecules) + list(placed)
            return
        cell = order[ptr]
        # lower bound: determined boundary can only grow (weights > 0)
        if not volume and det >= best_val:
            return
        if volume and energy - 4 * ((n - len(decided_cells)) // 4) >= best_val:
            return
        # branch 1: cover the cell with each feasible placement
        for idx in by_cell[cell]:
            mol, cells, mask = placements[idx]
            if any(c in decided_cells for c in cells):
                continue
            if any(c in occ_state for c in cells):
                continue
            nodes += 1
            if volume:
                d_energy = Fraction(-4)
                d_det = Fraction(0)
                for c in cells:
                    occ_state[c] = Fraction(1)
                    decided_cells.add(c)
            else:
                w = c_R if mol.shape.chirality_class == R_LIKE else c_S
                d_energy = Fraction(0)
                for c in cells:
                    occ_state[c] = w
                for c in cells:
                    for nb in neighbors(c):
                        if nb in cells:
                            continue
                        if nb in occ_state:
                            d_energy -= occ_state[nb]
                        else:
                            d_energy += w
                d_det = Fraction(0)
                for c in cells:
                    decided_cells.add(c)
                for c in cells:
                    for nb in neighbors(c):
                        if nb in cells:
                            continue
                        if nb in free_set and nb not in decided_cells:
                            continue
                        wb = occ_state.get(nb)
                        if wb is None:
                            d_det += w
                        # occupied-occupied edge contributes 0
            placed.append(mol)
            dfs(ptr + 1, energy + d_energy, det + d_det)
            placed.pop()
            for c in cells:
                del occ_state[c]
                decided_cells.discard(c)
        # branch 2: leave the cell empty
        nodes += 1
        if volume:
            decided_cells.add(cell)
            dfs(ptr + 1, energy, det)
            decided_cells.discard(cell)
        else:
            d_det = Fraction(0)
            decided_cells.add(cell)
            for nb in neighbors(cell):
                if nb in free_set and nb not in decided_cells:
                    continue
                wb = occ_state.get(nb)
                if wb is not None:
                    d_det += wb
            dfs(ptr + 1, energy, det + d_det)
            decided_cells.discard(cell)

    dfs(0, base, base_det)

    return SolveResult(
        value=best_val,
        config=validate(best_cfg),
        certificate="exact" if exhausted else "upper_bound",
        nodes_explored=nodes,
    )


def volume_solve(prob: InterfaceProblem, budget: int | None = None) -> SolveResult:
    """Minimize the uncovered area of Q_T under frame admissibility."""
    if prob.energy_kind != VOLUME:
        prob = InterfaceProblem(
            prob.i, prob.j, prob.nu, prob.T, prob.weights, VOLUME
        )
    return solve_interface(prob, budget)


def default_budget() -> int:
    raw = os.environ.get("CHIRALATTICE_NODE_BUDGET", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 5_000_000


def normalized_density(prob: InterfaceProblem, result: SolveResult) -> Fraction:
    """max(|p|, |q|) * value / T: the finite-T one-homogeneous estimate."""
    return Fraction(prob.nu.norm_inf) * result.value / prob.T


@dataclass
class DensityRecord:
    """One row of the density table emitted by solver runs."""

    i: int
    j: int
    p: int
    q: int
    T: int
    energy_kind: str
    c_R: Fraction
    c_S: Fraction
    value: Fraction
    phi_hat: Fraction
    certificate: str
    nodes: int

    CSV_COLUMNS = (
        "i,j,p,q,T,energy_kind,c_R,c_S,value,phi_hat,certificate,nodes"
    )

    def csv_row(self) -> str:
        return ",".join(
            str(v)
            for v in (
                self.i, self.j, self.p, self.q, self.T, self.energy_kind,
                self.c_R, self.c_S, self.value, self.phi_hat,
                self.certificate, self.nodes,
            )
        )


def density_record(prob: InterfaceProblem, result: SolveResult) -> DensityRecord:
    return DensityRecord(
        prob.i, prob.j, prob.nu.p, prob.nu.q, prob.T, prob.energy_kind,
        prob.weights[0], prob.weights[1], result.value,
        normalized_density(prob, result), result.certificate,
        result.nodes_explored,
    )


# -------------------------------------------------------------------
# Pattern library
# -------------------------------------------------------------------

def glued_family_config(prob: InterfaceProblem) -> Configuration:
    """The boundary family continued through the interior of Q_T.

    This single construction realizes the documented interface patterns:
    for (i, 0) problems it is the striped half plane with its staircase
    profile (optimal in the diagonal directions and asymptotically optimal
    in the axis and (3, -1) directions); for mixed pairs it glues the two
    half families, which meet flush along the anti-diagonal seams that
    admit meshing and leave an empty gap elsewhere (the constructive form
    of the subadditive bound).
    """
    members = _family_members(
        prob.i, prob.j, prob.nu, Window.square(prob.T + 8)
    )
    relevant = [
        m
        for m in members
        if meets_frame(m, prob.T)
        or all(_cell_inside_inner(c, prob.T) for c in m.cells())
    ]
    try:
        return validate(relevant)
    except Exception as exc:
        raise InfeasibleBoundary(str(exc)) from exc


def _mirror_molecule(m: Molecule) -> Molecule:
    """Reflection through a vertical axis: R(n1, n2) <-> S(-n1, n2)."""
    n1, n2 = m.anchor
    if m.shape is R:
        return Molecule(S, (-n1, n2))
    if m.shape is S:
        return Molecule(R, (-n1, n2))
    raise NoPattern("mirroring is defined for the built-in pair only")


def wetting_config(prob: InterfaceProblem) -> Configuration:
    """A sparse opposite-chirality chain along a diagonal empty interface.

    For (i, 0) with i in 1..4 and nu = (-1, 1), the striped phase is
    retracted and its staircase teeth are capped, every other notch, by a
    single mirror-species molecule; the exposed boundary per unit of
    interface becomes c_R + 3 c_S instead of 2 c_R, which wins when
    3 c_S < c_R.  For i in 5..8 and nu = (1, 1) the mirrored construction
    applies with the weights exchanged.  The chain stays strictly inside
    the frame, so admissibility is untouched; where the forced frame
    molecules cut across the seam the plain family fills in.
    """
    i, j, nu, T = prob.i, prob.j, prob.nu, prob.T
    mirrored = False
    if j == 0 and 5 <= i <= 8 and (nu.p, nu.q) == (1, 1):
        mirrored = True
        i = i - 4
    elif not (j == 0 and 1 <= i <= 4 and (nu.p, nu.q) == (-1, 1)):
        raise NoPattern(
            "wetting pattern covers (i in 1..4, j=0, nu=(-1,1)) and its mirror"
        )

    # periodic seam microstructure for phase i at nu = (-1, 1); the phase
    # offset shifts the baseline (i = 1) vertically by i - 1
    c = i - 1
    lo = -T // 2
    hi = T // 2
    structure: list[Molecule] = []
    for t in range(lo - 2, hi + 2):
        structure.append(Molecule(R, (2 * t, 2 * t + 1 + c)))      # teeth row
        structure.append(Molecule(R, (2 * t + 1, 2 * t + 4 + c)))  # cap row
        structure.append(Molecule(S, (2 * t + 1, 2 * t - 2 + c)))  # wetting
    for n1 in range(lo - 2, hi + 2):
        for d in range(5 + c, 2 * T):
            structure.append(Molecule(R, (n1, n1 + d)))            # bulk
    if mirrored:
        structure = [_mirror_molecule(m) for m in structure]
    # where the forced collar cuts the chain, fall back to the plain family
    patches = _family_members(prob.i, prob.j, prob.nu, Window.square(T + 8))

    forced = frame_forced(prob)
    occupied = set(forced.occupancy)
    mols = list(forced.molecules)
    for group in (structure, patches):
        for m in sorted(set(group), key=lambda m: (m.shape.name, m.anchor)):
            mcells = m.cells()
            if not all(_cell_inside_inner(cc, T) for cc in mcells):
                continue
            if any(cc in occupied for cc in mcells):
                continue
            occupied.update(mcells)
            mols.append(m)
    return validate(mols)


def pattern_upper_bound(
    i: int,
    j: int,
    nu: Direction,
    T: int = 16,
    weights: tuple = (1, 1),
) -> tuple[Fraction, Configuration]:
    """Best library construction for the problem, with its exact energy.

    Returns the energy measured on Q_T (revalidated through the perimeter
    functions) and the realizing admissible configuration.
    """
    prob = InterfaceProblem(i, j, Direction(nu.p, nu.q), T, weights)
    candidates: list[tuple[Fraction, Configuration]] = []
    cfg = glued_family_config(prob)
    candidates.append((_energy(cfg, prob), cfg))
    try:
        wet = wetting_config(prob)
        candidates.append((_energy(wet, prob), wet))
    except NoPattern:
        pass
    candidates.sort(key=lambda t: t[0])
    value, cfg = candidates[0]
    if not admissible(cfg, prob):
        raise NoPattern("library construction failed the admissibility check")
    return value, cfg


# -------------------------------------------------------------------
# Small-cluster minimal perimeter
# -------------------------------------------------------------------

def _cluster_canonical(mols: frozenset[tuple[str, Cell]]) -> frozenset:
    min_x = min(a for _, (a, _) in mols)
    min_y = min(b for _, (_, b) in mols)
    return frozenset((n, (a - min_x, b - min_y)) for n, (a, b) in mols)


def cluster_min_perimeter(
    r: int, s: int, cap: int = 6
) -> tuple[Fraction, Configuration]:
    """Exact minimal boundary length of r R-molecules and s S-molecules.

    Exhaustive search over connected clusters (an optimal cluster is
    always edge-connected: translating a separated component until first
    contact shares at least one edge and lowers the perimeter).
    """
    if r < 0 or s < 0 or r + s < 1:
        raise ValueError("need r + s >= 1 with nonnegative counts")
    if r + s > cap:
        raise ClusterCapExceeded(f"cluster size {r + s} exceeds cap {cap}")
    total = r + s

    best: tuple[Fraction, tuple[Molecule, ...]] | None = None
    seen: set[frozenset] = set()

    def perim_of(cells: set[Cell]) -> int:
        per = 0
        for (a, b) in cells:
            for nb in ((a + 1, b), (a - 1, b), (a, b + 1), (a, b - 1)):
                if nb not in cells:
                    per += 1
        return per

    def grow(mols: list[Molecule], cells: set[Cell], nr: int, ns: int):
        nonlocal best
        if len(mols) == total:
            p = Fraction(perim_of(cells))
            if best is None or p < best[0]:
                best = (p, tuple(mols))
            return
        # candidate anchors: adjacent to the current cluster
        cand: set[tuple[str, Cell]] = set()
        shapes = []
        if nr < r:
            shapes.append(R)
        if ns < s:
            shapes.append(S)
        for (a, b) in cells:
            for nb in ((a + 1, b), (a - 1, b), (a, b + 1), (a, b - 1)):
                if nb in cells:
                    continue
                for shape in shapes:
                    for off in shape.cells:
                        cand.add((shape.name, (nb[0] - off[0], nb[1] - off[1])))
        for name, anchor in sorted(cand):
            shape = R if name == "R" else S
            mol = Molecule(shape, anchor)
            mcells = mol.cells()
            if any(c in cells for c in mcells):
                continue
            key = _cluster_canonical(
                frozenset(
                    [(m.shape.name, m.anchor) for m in mols] + [(name, anchor)]
                )
            )
            if key in seen:
                continue
            seen.add(key)
            grow(
                mols + [mol],
                cells | set(mcells),
                nr + (shape is R),
                ns + (shape is S),
            )

    first_shapes = []
    if r > 0:
        first_shapes.append(R)
    if s > 0 and (r == 0 or R.name != S.name):
        first_shapes.append(S)
    for shape in first_shapes:
        # fixing the first molecule at the origin removes translations;
        # with mixed species both seeds are tried since the first molecule
        # of an optimal cluster can be either kind
        mol = Molecule(shape, (0, 0))
        if (shape is R and r > 0) or (shape is S and s > 0):
            grow([mol], set(mol.cells()), int(shape is R), int(shape is S))

    assert best is not None
    value, mols = best
    return value, validate(mols)
