import math

import numpy as np
import pytest

import ballcurv


def test_equilateral_rho_bar():
    value, center, active = ballcurv.rho_bar(1.0, 1.0, 1.0)
    assert value == pytest.approx(2 / math.sqrt(3), abs=1e-12)
    assert sorted(active) == [0, 1, 2]


def test_matrix_roundtrip_and_validation():
    d = ballcurv.DistanceMatrix([[0, 3, 4], [3, 0, 5], [4, 5, 0]], labels=["a", "b", "c"])
    assert d.size == 3 and d.diameter == 5.0
    assert d[1, 2] == 5.0
    assert np.array_equal(d.to_numpy(), np.array([[0, 3, 4], [3, 0, 5], [4, 5, 0]], dtype=float))
    assert ballcurv.gromov_products(d, 0, 1, 2) == [1.0, 2.0, 3.0]
    with pytest.raises(ValueError, match="not a metric"):
        ballcurv.DistanceMatrix([[0, 1, 5], [1, 0, 1], [5, 1, 0]])


def test_tree_is_flat_and_tree_like():
    d = ballcurv.generate({"kind": "weighted-tree", "nodes": 20, "seed": 1})
    scan = ballcurv.scan_triples(d)
    assert scan["summary"]["exhaustive"]
    assert all(t["rho"] == 1.0 and t["tripod_defect"] == 0.0 for t in scan["triples"])
    assert ballcurv.four_point_delta(d)["delta"] == 0.0


def test_square_deltas():
    sq = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float)
    l2 = ballcurv.four_point_delta(ballcurv.from_points(sq, 2.0))["delta"]
    linf = ballcurv.four_point_delta(ballcurv.from_points(sq, math.inf))["delta"]
    assert l2 == pytest.approx(2 * math.sqrt(2) - 2, abs=1e-12)
    assert linf == 0.0


def test_cycle_nerve():
    d = ballcurv.generate({"kind": "cycle", "nodes": 6, "circumference": 6.0})
    n = ballcurv.nerve(d, [1.0] * 6)
    assert n["betti_mod2"] == [1, 1, 0]
    assert n["helly_defects"] == [[0, 2, 4], [1, 3, 5]]


def test_run_report_and_errors():
    rep = ballcurv.run(
        {"input": {"kind": "generator", "spec": {"kind": "path", "nodes": 6}}, "nerve": {"radii": [1.0]}}
    )
    assert rep["schema_version"] == ballcurv.SCHEMA_VERSION
    assert rep["status"] == 0
    assert rep["curvature"]["fraction_nonpositive"] == 1.0
    with pytest.raises(ballcurv.ConfigError):
        ballcurv.run({"colour": "blue"})
    with pytest.raises(ballcurv.CapExceeded):
        ballcurv.generate({"kind": "path", "nodes": 50}, point_cap=10)
