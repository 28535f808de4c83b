import pytest

from ccplace import (
    SaConfig,
    TABLE1,
    TABLE2,
    cascode_diff_input_netlist,
    cascode_diff_load_netlist,
    count_diffusion_breaks,
    current_mirror_netlist,
    find_case,
    format_table,
    initial_placement,
    run_benchmarks,
    suite_cases,
)
from ccplace.placement import GridDims


def test_cm_netlist_structure():
    nl = current_mirror_netlist([2, 2, 4, 8, 8])
    assert nl.total_units == 24
    assert nl.devices[0].drain_net == "G"  # diode-tied reference
    assert nl.devices[1].drain_net == "D1"
    names = {net for net, _ in nl.route_nets}
    assert {"G", "S", "D1", "D2", "D3", "D4"} == names
    # every adjacency can share through the common source
    for a in nl.devices:
        for b in nl.devices:
            assert a.diffusion_nets & b.diffusion_nets


def test_cdip_netlist_structure():
    nl = cascode_diff_input_netlist([6, 6, 10, 10])
    assert nl.total_units == 32
    pairs_sharing = {
        (a.name, b.name)
        for a in nl.devices for b in nl.devices
        if a.name < b.name and a.diffusion_nets & b.diffusion_nets
    }
    assert pairs_sharing == {("M1", "M2"), ("M1", "M3"), ("M2", "M4")}
    with pytest.raises(ValueError):
        cascode_diff_input_netlist([6, 6, 10])


def test_cdlp_netlist_structure():
    nl = cascode_diff_load_netlist([6, 6, 6, 6])
    assert {net for net, _ in nl.route_nets} == {"VDD", "PB1", "PB2", "MIDP", "MIDN", "OUTP", "OUTN"}


def test_case_tables_complete():
    assert [c.name for c in TABLE1] == ["CM:1", "CM:2", "CM:3", "CM:4", "CM:5"]
    assert [c.name for c in TABLE2] == ["CM:1", "CM:2", "CDIP:1", "CDIP:2", "CDLP:1", "CDLP:2"]
    assert find_case("table2", "CDIP:1").units == (6, 6, 10, 10)
    assert len(suite_cases("tables")) == 11
    with pytest.raises(ValueError, match="unknown suite"):
        suite_cases("table9")


def test_case_dims_two_rows():
    case = find_case("table1", "CM:5")
    assert case.dims() == GridDims(2, 16)


def test_initial_placements_feasible_for_all_cases():
    # every bundled case admits the mirrored min-break construction
    for _, case in suite_cases("tables"):
        nl = case.netlist()
        sol = initial_placement(nl, case.dims())
        assert sol.objectives.diffusion_breaks == count_diffusion_breaks(sol.placement, nl)


def test_run_benchmarks_rows_and_table_stability():
    cfg = SaConfig(seed=2, t_min=1.0, iters_per_temp=5)
    cases = [("table1", find_case("table1", "CM:3"))]
    rows1 = run_benchmarks(cases, cfg)
    rows2 = run_benchmarks(cases, cfg)
    assert rows1 == rows2
    assert format_table(rows1) == format_table(rows2)
    row = rows1[0]
    assert row["case"] == "CM:3"
    assert row["grid"] == [2, 8]
    assert row["published"]["routing_model"] == 46
    assert row["breaks"] == 0 and row["dummies"] == 0
