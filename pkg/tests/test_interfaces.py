"""Interface problems: families, admissibility, solver, patterns, clusters."""

import itertools
from fractions import Fraction as F

import pytest

from chiralattice.interfaces import (
    ClusterCapExceeded,
    Direction,
    InfeasibleBoundary,
    InterfaceProblem,
    admissible,
    boundary_family,
    cluster_min_perimeter,
    direction,
    frame_forced,
    glued_family_config,
    l1_lower_bound,
    meets_frame,
    normalized_density,
    pattern_upper_bound,
    solve_interface,
    volume_solve,
    wetting_config,
)
from chiralattice.interfaces import _cell_inside_inner, _energy
from chiralattice.molecules import (
    Molecule,
    R,
    S,
    Window,
    perimeter,
    phase_label,
    phase_molecule,
    validate,
    volume_deficit,
)


# -------------------------------------------------------------------
# Independent exhaustive oracle (subset enumeration, no branch and bound)
# -------------------------------------------------------------------

def exhaustive_oracle(prob: InterfaceProblem):
    """Minimum energy by enumerating every antichain of free placements."""
    forced = frame_forced(prob)
    T = prob.T
    occupied = set(forced.occupancy)
    placements = []
    seen = set()
    for a in range(-T // 2 + 4, T // 2 - 4):
        for b in range(-T // 2 + 4, T // 2 - 4):
            for shape in (R, S):
                for off in shape.cells:
                    anchor = (a - off[0], b - off[1])
                    if (shape.name, anchor) in seen:
                        continue
                    seen.add((shape.name, anchor))
                    mol = Molecule(shape, anchor)
                    cells = mol.cells()
                    if not all(_cell_inside_inner(c, T) for c in cells):
                        continue
                    if any(c in occupied for c in cells):
                        continue
                    placements.append((mol, set(cells)))
    best = None
    n = len(placements)
    assert n <= 14, "oracle only runs on tiny instances"
    for mask in range(1 << n):
        chosen = [placements[k] for k in range(n) if mask >> k & 1]
        cells_used: set = set()
        ok = True
        for _, cs in chosen:
            if cells_used & cs:
                ok = False
                break
            cells_used |= cs
        if not ok:
            continue
        cfg = validate(list(forced.molecules) + [m for m, _ in chosen])
        val = _energy(cfg, prob)
        if best is None or val < best:
            best = val
    return best


# -------------------------------------------------------------------

def test_direction_basics():
    with pytest.raises(ValueError):
        Direction(0, 0)
    with pytest.raises(ValueError):
        Direction(2, 4)
    assert direction(2, 4).as_tuple() == (1, 2)
    assert Direction(3, -1).norm_inf == 3
    assert l1_lower_bound(Direction(1, 1)) == 2
    assert l1_lower_bound(Direction(3, -1)) == 4
    assert l1_lower_bound(Direction(0, 1)) == 1


def test_problem_validation():
    with pytest.raises(ValueError):
        InterfaceProblem(1, 1, Direction(0, 1), 8)
    with pytest.raises(ValueError):
        InterfaceProblem(1, 0, Direction(0, 1), 6)
    with pytest.raises(ValueError):
        InterfaceProblem(1, 0, Direction(0, 1), 8, (0, 1))


def test_boundary_family_upper_half():
    fam = boundary_family(1, 0, Direction(0, 1), Window.square(20))
    assert len(fam) > 0
    for m in fam.molecules:
        assert phase_label(m) == 1
        assert min(c[1] for c in m.cells()) >= 0  # open upper half plane


def test_boundary_family_mixed_disjoint():
    fam = boundary_family(1, 5, Direction(1, 1), Window.square(20))
    labels = {phase_label(m) for m in fam.molecules}
    assert labels == {1, 5}
    for m in fam.molecules:
        vals = [c[0] + c[1] for c in m.cells()]
        if phase_label(m) == 1:
            assert min(vals) >= 0
        else:
            assert max(vals) <= 0


def test_boundary_family_rejects_equal_phases():
    with pytest.raises(ValueError):
        boundary_family(1, 1, Direction(0, 1), Window.square(8))


def test_family_symmetry_swap():
    nu = Direction(1, 1)
    a = boundary_family(1, 5, nu, Window.square(24))
    b = boundary_family(5, 1, Direction(-1, -1), Window.square(24))
    key = lambda cfg: sorted((m.shape.name, m.anchor) for m in cfg.molecules)
    assert key(a) == key(b)


def test_infeasible_family_detected():
    with pytest.raises(InfeasibleBoundary):
        solve_interface(InterfaceProblem(1, 6, Direction(1, -1), 12))


def test_admissible():
    prob = InterfaceProblem(1, 0, Direction(1, 1), 12)
    fam = boundary_family(1, 0, Direction(1, 1), Window.square(18))
    assert admissible(fam, prob)
    # dropping one frame molecule breaks admissibility
    frame_mols = [m for m in fam.molecules if meets_frame(m, 12)]
    partial = validate([m for m in fam.molecules if m is not frame_mols[0]])
    assert not admissible(partial, prob)
    # a third-phase molecule on the frame breaks admissibility
    bad = validate(list(fam.molecules) + [Molecule(S, (-2, -8))])
    if any(meets_frame(m, 12) and phase_label(m) != 1 for m in bad.molecules):
        assert not admissible(bad, prob)
    # interior extras leave admissibility untouched
    forced = frame_forced(prob)
    extra = None
    for cell in [(-1, -1), (0, 0), (-1, 0), (0, -1), (1, 0)]:
        m = phase_molecule(5, cell)
        if all(
            _cell_inside_inner(c, 12) and c not in forced.occupancy
            for c in m.cells()
        ):
            extra = m
            break
    if extra is not None:
        assert admissible(validate(list(forced.molecules) + [extra]), prob)


def test_solver_t8_trivial_and_matches_oracle():
    for i, j in [(1, 0), (1, 2), (5, 0)]:
        for pq in [(1, 1), (0, 1)]:
            prob = InterfaceProblem(i, j, direction(*pq), 8)
            res = solve_interface(prob)
            assert res.certificate == "exact"
            assert res.value == exhaustive_oracle(prob)


def test_solver_t12_matches_oracle():
    for i, j, pq in [(1, 0, (1, 1)), (1, 0, (0, 1)), (1, 2, (1, 1)), (1, 7, (1, -1))]:
        prob = InterfaceProblem(i, j, direction(*pq), 12)
        res = solve_interface(prob)
        assert res.certificate == "exact"
        assert res.value == exhaustive_oracle(prob), (i, j, pq)


def test_solver_result_is_admissible_and_prices_back():
    prob = InterfaceProblem(1, 0, Direction(1, 1), 12)
    res = solve_interface(prob)
    assert admissible(res.config, prob)
    assert perimeter(res.config, Window.square(12)) == res.value


def test_solver_determinism_and_budget():
    prob = InterfaceProblem(1, 0, Direction(0, 1), 16)
    a = solve_interface(prob, budget=200)
    b = solve_interface(prob, budget=200)
    assert (a.value, a.certificate, a.nodes_explored) == (
        b.value, b.certificate, b.nodes_explored
    )
    full = solve_interface(prob)
    assert full.certificate == "exact"
    assert a.value >= full.value
    if a.certificate == "exact":
        assert a.value == full.value


def test_solver_symmetry_exact():
    for i, j, pq, T in [(1, 0, (1, 1), 12), (1, 2, (0, 1), 8), (5, 6, (1, 1), 8)]:
        nu = direction(*pq)
        a = solve_interface(InterfaceProblem(i, j, nu, T))
        b = solve_interface(InterfaceProblem(j, i, -nu, T))
        assert a.value == b.value
        assert a.certificate == b.certificate == "exact"


def test_normalized_density_diagonal_trend():
    values = {}
    for T in (8, 12, 16):
        prob = InterfaceProblem(1, 0, Direction(1, 1), T)
        res = solve_interface(prob)
        assert res.certificate == "exact"
        values[T] = normalized_density(prob, res)
    # the gap to the limiting value 2 shrinks as T grows
    gaps = [abs(values[T] - 2) for T in (8, 12, 16)]
    assert gaps[0] > gaps[1] > gaps[2]
    assert abs(values[16] - 2) <= F(3, 10)


def test_volume_solve():
    prob = InterfaceProblem(1, 2, Direction(1, 1), 8, energy_kind="volume")
    res = volume_solve(prob)
    assert res.certificate == "exact"
    assert res.value == exhaustive_oracle(prob)
    assert res.value == volume_deficit(res.config, Window.square(8))
    # j = 0: the empty interior is admissible, so the value is bounded by
    # the deficit of the forced frame alone
    prob2 = InterfaceProblem(1, 0, Direction(1, 1), 8, energy_kind="volume")
    res2 = volume_solve(prob2)
    forced = frame_forced(prob2)
    assert res2.value <= volume_deficit(forced, Window.square(8))
    # volume problems at T=12 agree with the oracle too
    prob3 = InterfaceProblem(1, 2, Direction(1, 1), 12, energy_kind="volume")
    res3 = volume_solve(prob3)
    assert res3.value == exhaustive_oracle(prob3)


def test_pattern_upper_bound_sandwiches_solver():
    for i, j, pq in [(1, 0, (1, 1)), (1, 0, (0, 1)), (1, 0, (1, 0)),
                     (1, 0, (3, -1)), (1, 7, (1, -1)), (1, 2, (1, 1))]:
        nu = direction(*pq)
        T = 12
        pv, cfg = pattern_upper_bound(i, j, nu, T)
        prob = InterfaceProblem(i, j, nu, T)
        assert admissible(cfg, prob)
        assert _energy(cfg, prob) == pv
        res = solve_interface(prob)
        assert res.value <= pv


def test_pattern_diagonal_is_optimal():
    # the glued family is exactly optimal in the diagonal directions
    for T in (12, 16):
        prob = InterfaceProblem(1, 0, Direction(1, 1), T)
        pv, _ = pattern_upper_bound(1, 0, Direction(1, 1), T)
        assert pv == solve_interface(prob).value


def test_meshing_pattern_value():
    # the flush seam between phases 1 and 7 along (1,-1) prices at 2 per
    # unit asymptotically: at T=16 the seam is exactly the glued family
    pv, cfg = pattern_upper_bound(1, 7, Direction(1, -1), 16)
    assert pv == 30  # phi-hat 15/8, approaching 2, far below subadditive 4
    prob = InterfaceProblem(1, 7, Direction(1, -1), 16)
    assert solve_interface(prob).value == pv


def test_wetting_pattern():
    nu = Direction(-1, 1)
    plain = glued_family_config(InterfaceProblem(1, 0, nu, 16))
    for weights, wins in [((1, 1), False), ((4, 1), True), ((8, 1), True)]:
        prob = InterfaceProblem(1, 0, nu, 16, weights)
        wet = wetting_config(prob)
        pv = _energy(plain, prob)
        wv = _energy(wet, prob)
        assert admissible(wet, prob)
        assert (wv < pv) == wins
        best, cfg = pattern_upper_bound(1, 0, nu, 16, weights)
        assert best == min(pv, wv)
    # at weights (4,1) the wetting construction is exactly optimal at T=16
    prob = InterfaceProblem(1, 0, nu, 16, (4, 1))
    assert _energy(wetting_config(prob), prob) == solve_interface(prob).value
    # mirrored variant: S phases against the other diagonal, weights swapped
    probm = InterfaceProblem(5, 0, Direction(1, 1), 16, (1, 4))
    assert _energy(wetting_config(probm), probm) == _energy(
        wetting_config(prob), prob
    )


def test_cluster_values():
    assert cluster_min_perimeter(1, 0)[0] == 10
    assert cluster_min_perimeter(0, 1)[0] == 10
    v20, cfg20 = cluster_min_perimeter(2, 0)
    assert v20 == perimeter(cfg20)
    v11, _ = cluster_min_perimeter(1, 1)
    v21, _ = cluster_min_perimeter(2, 1)
    assert v20 == cluster_oracle(2, 0)
    assert v11 == cluster_oracle(1, 1)
    assert v21 == cluster_oracle(2, 1)
    with pytest.raises(ClusterCapExceeded):
        cluster_min_perimeter(5, 5)
    with pytest.raises(ValueError):
        cluster_min_perimeter(0, 0)


def cluster_oracle(r: int, s: int):
    """Brute force over anchor boxes, independent of the growth search.

    Tries every distinct placement order of the species multiset, with
    each molecule required to touch the part already placed (the optimum
    is edge-connected, and any connected cluster admits such an order).
    """
    from conftest import perimeter_oracle

    box = 4 * (r + s)
    best = None
    positions = [(x, y) for x in range(-box, box + 1) for y in range(-box, box + 1)]

    def rec(mols, occupied, remaining):
        nonlocal best
        if not remaining:
            cfg = validate(mols)
            val = perimeter_oracle(cfg)
            if best is None or val < best:
                best = val
            return
        shape = R if remaining[0] == "R" else S
        for pos in positions:
            mol = Molecule(shape, pos)
            cells = mol.cells()
            if any(c in occupied for c in cells):
                continue
            # prune separated placements: the optimum is edge-connected
            if not any(
                (c[0] + dx, c[1] + dy) in occupied
                for c in cells
                for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1))
            ):
                continue
            rec(mols + [mol], occupied | set(cells), remaining[1:])

    for order in sorted(set(itertools.permutations(["R"] * r + ["S"] * s))):
        seed = Molecule(R if order[0] == "R" else S, (0, 0))
        rec([seed], set(seed.cells()), list(order[1:]))
    return best


def test_solver_weighted_matches_oracle():
    # chirality-weighted energies at T=12 against the subset oracle,
    # including a wetting-regime weight pair
    for weights in ((2, 1), (4, 1), (1, 3)):
        prob = InterfaceProblem(1, 0, Direction(-1, 1), 12, weights)
        res = solve_interface(prob)
        assert res.certificate == "exact"
        assert res.value == exhaustive_oracle(prob), weights


def test_solver_weight_one_reduces_to_perimeter():
    prob_w = InterfaceProblem(1, 7, Direction(1, -1), 12, (1, 1))
    prob_p = InterfaceProblem(1, 7, Direction(1, -1), 12)
    assert solve_interface(prob_w).value == solve_interface(prob_p).value
