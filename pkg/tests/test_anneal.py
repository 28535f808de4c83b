import math

import pytest

from ccplace import (
    Archive,
    CcAnnealer,
    DeviceSpec,
    GridDims,
    Netlist,
    ObjectiveRanges,
    ObjectiveVector,
    PlacementError,
    SaConfig,
    Solution,
    accept_probability,
    check_cc,
    count_diffusion_breaks,
    delta_dom_avg,
    dominates,
    initial_placement,
    run,
    select_solution,
)
from ccplace.anneal import _choose_next

from conftest import FakeRng, make_grid


def vec(*t):
    return ObjectiveVector(float(t[0]), float(t[1]), int(t[2]), int(t[3]), int(t[4]))


def sol(*t, grid=None):
    placement = grid if grid is not None else make_grid(["AB", "BA"])
    return Solution(placement, vec(*t))


# -- accept_probability -------------------------------------------------------


def test_prob_half_at_zero():
    for t in (1e-6, 0.5, 1.0, 100.0):
        assert accept_probability(0.0, t) == 0.5


def test_prob_at_delta_equal_temp():
    assert accept_probability(2.0, 2.0) == pytest.approx(1 / (1 + math.e), abs=1e-12)


def test_prob_flattens_at_high_temperature():
    assert accept_probability(1.0, 1e9) == pytest.approx(0.5, abs=1e-6)


def test_prob_saturates_to_zero():
    assert accept_probability(1e6, 1e-3) == 0.0


def test_prob_bounds_and_errors():
    for d in (0.0, 0.1, 3.0, 50.0):
        p = accept_probability(d, 1.0)
        assert 0 <= p <= 0.5
        assert p == 0.5 if d == 0 else p < 0.5
    with pytest.raises(ValueError):
        accept_probability(1.0, 0.0)


def test_prob_original_formula_inverts_temperature():
    # the comparison-only variant multiplies by temperature instead
    assert accept_probability(1.0, 2.0, original=True) == pytest.approx(1 / (1 + math.e ** 2), abs=1e-12)
    assert accept_probability(1.0, 1e-9, original=True) == pytest.approx(0.5, abs=1e-6)


# -- delta_dom_avg ------------------------------------------------------------


def unit_ranges():
    return ObjectiveRanges.from_bounds([(0, 1)] * 5)


def test_avg_single_cur_domination():
    cur = sol(0, 0, 0, 0, 0)
    new = [sol(1, 0, 0, 0, 0)]
    assert delta_dom_avg(cur, new, [], unit_ranges()) == pytest.approx(1.0, abs=1e-12)


def test_avg_archive_only_k1_zero():
    cur = sol(1, 0, 0, 0, 1)  # does not dominate the candidate
    archive = [sol(0, 0, 0, 0, 0)]
    new = [sol(0.5, 0, 0, 0, 0)]
    expected = 0.5  # single archive pair, single differing component
    assert delta_dom_avg(cur, new, archive, unit_ranges()) == pytest.approx(expected, abs=1e-12)


def test_avg_mean_of_two():
    cur = sol(0, 0, 0, 0, 0)
    new = [sol(1, 0, 0, 0, 0), sol(0, 1, 0, 0, 0)]
    r = ObjectiveRanges.from_bounds([(0, 1), (0, 1 / 3), (0, 1), (0, 1), (0, 1)])
    # amounts 1 and 3 -> mean 2
    assert delta_dom_avg(cur, new, [], r) == pytest.approx(2.0, abs=1e-12)


def test_avg_requires_a_relation():
    cur = sol(1, 0, 0, 0, 1)
    new = [sol(0, 1, 1, 1, 0)]
    with pytest.raises(ValueError, match="no domination"):
        delta_dom_avg(cur, new, [], unit_ranges())


# -- case resolution ----------------------------------------------------------


def test_case3_dominator_adopted_unconditionally():
    cur = sol(1, 1, 1, 1, 1)
    better = sol(0, 0, 0, 0, 0)
    out = _choose_next(cur, [better], [], unit_ranges(), 1e-9, FakeRng(integers=[0]), False)
    assert out is better  # no probability draw happens even at cold temps


def test_case1_zero_survivors_keeps_cur():
    cur = sol(0, 0, 0, 0, 0)
    worse = sol(1, 1, 1, 1, 1)
    out = _choose_next(cur, [worse], [], unit_ranges(), 1.0, FakeRng(), False)
    assert out is cur


def test_case1_survivor_accepted_with_probability():
    cur = sol(0, 0, 1, 0, 0)
    dominated = sol(1, 1, 1, 0, 0)
    survivor = sol(1, 0, 0, 0, 0)  # trade-off against cur
    new = [dominated, survivor]
    win = _choose_next(cur, new, [], unit_ranges(), 100.0, FakeRng(integers=[0], randoms=[0.0]), False)
    assert win is survivor
    lose = _choose_next(cur, new, [], unit_ranges(), 100.0, FakeRng(integers=[0], randoms=[0.9]), False)
    assert lose is cur


def test_case2_neutral_probability_when_no_relations():
    cur = sol(1, 0, 0, 0, 1)
    other = sol(0, 1, 1, 1, 0)
    accepted = _choose_next(cur, [other], [], unit_ranges(), 1e-9, FakeRng(integers=[0], randoms=[0.49]), False)
    assert accepted is other  # probability is exactly 0.5 in the no-relation case
    rejected = _choose_next(cur, [other], [], unit_ranges(), 1e-9, FakeRng(integers=[0], randoms=[0.51]), False)
    assert rejected is cur


# -- Archive ------------------------------------------------------------------


def test_archive_total_domination(pair_netlist, topologies):
    archive = Archive()
    assert archive.insert(sol(0, 1, 0, 0, 0, grid=topologies[1]))
    assert archive.insert(sol(1, 0, 0, 0, 0, grid=topologies[2]))
    assert len(archive) == 2
    assert archive.insert(sol(0, 0, 0, 0, 0, grid=topologies[3]))
    assert [s.objectives for s in archive] == [vec(0, 0, 0, 0, 0)]


def test_archive_rejects_dominated_insert():
    archive = Archive()
    archive.insert(sol(0, 0, 0, 0, 0))
    assert not archive.insert(sol(1, 0, 0, 0, 0))
    assert len(archive) == 1


def test_archive_keeps_equal_vectors_distinct_placements(topologies):
    archive = Archive()
    assert archive.insert(sol(0, 0, 0, 0, 0, grid=topologies[1]))
    assert archive.insert(sol(0, 0, 0, 0, 0, grid=topologies[2]))
    assert not archive.insert(sol(0, 0, 0, 0, 0, grid=topologies[1]))  # exact duplicate
    assert len(archive) == 2


def test_archive_tracks_removed():
    archive = Archive(track_removed=True)
    archive.insert(sol(1, 1, 1, 1, 1))
    archive.insert(sol(0, 0, 0, 0, 0))
    assert archive.removed == [vec(1, 1, 1, 1, 1)]


# -- initial_placement ---------------------------------------------------------


def test_initial_single_device_row():
    nl = Netlist((DeviceSpec("A", 4, "G", "S", "D"),), (("A", ("A",)),))
    s = initial_placement(nl, GridDims(1, 4))
    assert [c.device for c in s.placement.cells] == list("AAAA")
    assert s.objectives.diffusion_breaks == 0


def test_initial_matches_exhaustive_two_devices(disjoint_pair_netlist):
    dims = GridDims(2, 4)
    s = initial_placement(disjoint_pair_netlist, dims)
    # one A|B junction per row; mirrored once: the exhaustive minimum is 2
    assert s.objectives.diffusion_breaks == 2
    assert check_cc(s.placement).is_cc


def test_initial_order_minimises_breaks():
    # B shares nets with both A and C, so the break-free chain must place B
    # in the middle; sequential netlist order (A, C, B) would break.
    nl = Netlist((
        DeviceSpec("A", 2, "GA", "n1", "n2"),
        DeviceSpec("C", 2, "GC", "n3", "n4"),
        DeviceSpec("B", 2, "GB", "n2", "n3"),
    ))
    s = initial_placement(nl, GridDims(2, 3))
    assert s.objectives.diffusion_breaks == 0


def test_initial_odd_device_needs_centre():
    odd = Netlist((DeviceSpec("A", 3, "G", "S", "D"),))
    s = initial_placement(odd, GridDims(1, 3))
    assert [c.device for c in s.placement.cells] == list("AAA")
    with pytest.raises(PlacementError, match="odd"):
        initial_placement(odd, GridDims(1, 4))
    two_odd = Netlist((
        DeviceSpec("A", 3, "G", "S", "D"),
        DeviceSpec("B", 3, "G", "S", "D"),
    ))
    with pytest.raises(PlacementError, match="odd"):
        initial_placement(two_odd, GridDims(3, 3))


def test_initial_rejects_overfull_grid():
    nl = Netlist((DeviceSpec("A", 4, "G", "S", "D"),))
    with pytest.raises(PlacementError, match="fit"):
        initial_placement(nl, GridDims(1, 3))


# -- run / select ---------------------------------------------------------------


def test_run_single_device_archive_of_one():
    nl = Netlist((DeviceSpec("A", 4, "G", "S", "D"),), (("A", ("A",)),))
    archive = run(nl, GridDims(1, 4), SaConfig(seed=3))
    assert len(archive) == 1


def test_run_deterministic(pair_netlist, pair_dims):
    cfg = SaConfig(seed=42)
    a1 = run(pair_netlist, pair_dims, cfg)
    a2 = run(pair_netlist, pair_dims, cfg)
    assert a1.solutions == a2.solutions


def test_run_finds_multiple_topologies(pair_netlist, pair_dims):
    archive = run(pair_netlist, pair_dims, SaConfig(seed=7))
    vectors = {s.objectives.as_tuple() for s in archive}
    assert len(vectors) >= 2
    assert all(check_cc(s.placement).is_cc for s in archive)


def test_run_archive_on_true_frontier_small_instance():
    # three devices, two units each, exhaustively enumerable on 2x3
    from ccplace import cc_enumerate, evaluate

    nl = Netlist(
        (
            DeviceSpec("A", 2, "G", "S", "D"),
            DeviceSpec("B", 2, "G", "S", "D"),
            DeviceSpec("C", 2, "G", "S", "D"),
        ),
        (("A", ("A",)), ("B", ("B",)), ("C", ("C",))),
    )
    dims = GridDims(2, 3)
    vectors = [evaluate(p, nl) for p in cc_enumerate(nl, dims)]
    frontier = {v.as_tuple() for v in vectors if not any(dominates(o, v) for o in vectors)}
    archive = run(nl, dims, SaConfig(seed=13))
    assert all(s.objectives.as_tuple() in frontier for s in archive)


def test_run_monotone_frontier(pair_netlist, pair_dims):
    annealer = CcAnnealer(pair_netlist, pair_dims, SaConfig(seed=9), track_removed=True)
    archive = annealer.run()
    for removed in archive.removed:
        for final in archive:
            assert not dominates(removed, final.objectives)


def test_run_respects_bounds(disjoint_pair_netlist):
    cfg = SaConfig(seed=5, db_max=2, dummy_max=2)
    archive = run(disjoint_pair_netlist, GridDims(2, 4), cfg)
    for s in archive:
        assert s.objectives.diffusion_breaks <= 2
        assert s.objectives.dummy_count <= 2


def test_select_singleton():
    only = sol(5, 5, 5, 5, 5)
    archive = Archive()
    archive.insert(only)
    assert select_solution(archive) is only


def test_select_projection_on_routing(topologies):
    a = sol(0, 0, 9, 0, 0, grid=topologies[1])
    b = sol(1, 1, 3, 1, 1, grid=topologies[2])
    archive = Archive()
    archive.insert(a)
    archive.insert(b)
    assert select_solution(archive, (0, 0, 1, 0, 0)) is b


def test_select_tie_breaks_lexicographically(topologies):
    a = sol(0.5, 0, 3, 0, 0, grid=topologies[1])
    b = sol(0.25, 0, 3, 0, 0, grid=topologies[2])
    archive = Archive()
    archive.insert(a)
    archive.insert(b)
    # zero weight on the only differing column: tie, lexicographic order wins
    assert select_solution(archive, (0, 1, 1, 1, 1)) is b


def test_select_affine_rescale_invariant(topologies):
    base = [(0.0, 1.0, 7, 0, 0), (1.0, 0.0, 3, 0, 0), (0.5, 0.5, 5, 0, 0)]
    grids = [topologies[1], topologies[2], topologies[3]]
    weights = (2.0, 1.0, 1.0, 0.0, 0.0)

    def build(scale, shift):
        archive = Archive()
        for t, g in zip(base, grids):
            scaled = (t[0], t[1], t[2] * scale + shift, t[3], t[4])
            archive.insert(Solution(g, vec(*scaled)))
        return archive

    plain = select_solution(build(1, 0), weights)
    scaled = select_solution(build(4, 32), weights)
    assert plain.placement == scaled.placement


def test_select_empty_archive_errors():
    with pytest.raises(ValueError, match="empty"):
        select_solution(Archive())


def test_config_validation():
    with pytest.raises(ValueError):
        SaConfig(t_max=1.0, t_min=2.0)
    with pytest.raises(ValueError):
        SaConfig(alpha=1.0)
    with pytest.raises(ValueError):
        SaConfig(iters_per_temp=0)
    with pytest.raises(ValueError):
        SaConfig(seed=-1)
    with pytest.raises(ValueError):
        SaConfig(selection_weights=(1, 2, 3))
