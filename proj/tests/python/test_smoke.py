import math

import pytest

import robcons

P3 = {"n": 3, "edges": [[0, 1], [1, 2]]}
K3 = {"n": 3, "edges": [[0, 1], [0, 2], [1, 2]]}


def test_hstar():
    assert robcons.hstar(P3) == pytest.approx(2 / 9)
    assert robcons.hstar(K3) == pytest.approx(1 / 9)
    assert math.isinf(robcons.hstar({"n": 4, "edges": [[0, 1], [2, 3]]}))


def test_feasibility():
    report = robcons.check_feasibility(P3, 2)
    assert report["verdict"] == "provably-infeasible"
    assert report["min_cut_capacity"] == 1


def test_solve_complete_matches_brute_force():
    closed = robcons.solve_complete(3, 1)
    assert closed["cost"] == pytest.approx(2 / 3)
    k3_cap2 = {"n": 3, "edges": [{"u": u, "v": v, "capacity": 2} for u, v in K3["edges"]]}
    brute = robcons.brute_force(k3_cap2, 3)
    assert brute["cost"] == pytest.approx(closed["cost"], abs=1e-12)
    assert robcons.validate(closed)["ok"]


def test_circulant():
    spec = {"n": 10, "generators": [3, 5], "h": [5, 4]}
    assert robcons.find_cmad(spec)["hstar"] == pytest.approx(0.605)
    assert robcons.find_mad(10, [3, 5])["hstar"] == pytest.approx(0.605)
    with pytest.raises(robcons.RobconsError) as err:
        robcons.algorithm1(spec)
    assert err.value.code == "self-inverse-capacity-violation"
    design = robcons.algorithm1(spec, capacity_override=[5, 8])
    assert design["k"] == 10
    assert design["cost"] == pytest.approx(6.05)


def test_allocate():
    initial = {"k": 1, "subgraphs": [P3["edges"]]}
    greedy = robcons.allocate(K3, initial)
    assert greedy["final_cost"] == pytest.approx(1 / 9)
    assert greedy["steps"][0]["edge"] == [0, 2]
    exhaustive = robcons.allocate(K3, initial, exhaustive=True)
    assert exhaustive["final_cost"] == pytest.approx(greedy["final_cost"])


def test_simulate():
    solution = robcons.solve_complete(3, 1)
    assert robcons.analytic_variance(solution) == pytest.approx(2 / 3)
    a = robcons.simulate(solution, t_total=100, burn_in=10, trials=2, seed=3)
    b = robcons.simulate(solution, t_total=100, burn_in=10, trials=2, seed=3)
    assert a == b
    assert len(a["per_dimension"]) == 3
    with pytest.raises(robcons.RobconsError) as err:
        robcons.simulate(solution, dt=1.0)
    assert err.value.code == "invalid-config"


def test_table_rows():
    csv = robcons.reproduce_table(max_n=10)
    lines = csv.splitlines()
    assert lines[0] == "n,classes,h,H*_MAD,H*_cMAD,Delta,heuristic"
    assert lines[1].startswith('10,"3,5","5,4",0.605000,0.605000,0.000000')
    assert len(lines) == 5


def test_bad_input():
    with pytest.raises(robcons.RobconsError) as err:
        robcons.hstar({"n": 3, "edges": [[1, 1]]})
    assert err.value.code == "invalid-input"
