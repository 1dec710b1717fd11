import math

import pytest

import volcp


def test_simulate_is_deterministic():
    spec = volcp.multi_break_spec(seed=3)
    a = volcp.simulate(spec)
    b = volcp.simulate(spec)
    assert a.log_prices == b.log_prices
    assert len(a.log_prices) == spec.n + 1
    assert a.true_breakpoints == [780, 1170, 1950, 3120, 3510]


def test_proxies_and_detection():
    path = volcp.simulate(volcp.multi_break_spec(seed=1))
    r = volcp.log_returns(path)
    assert len(r) == 3900
    bv = volcp.rescale_to_spot(volcp.bv_increments(r))
    assert bv.kind == "BV" and bv.spot
    qv = volcp.qv_increments(r)
    assert all(v >= 0 for v in qv.values)
    res = volcp.lstv_star(bv.values, k_max=8, xi=0.3, selection="fixed")
    assert len(res.segmentation.breakpoints) == 8
    assert res.candidates == sorted(res.candidates)
    k = volcp.kernel_spot_variance(r, bandwidth=50.0, shape="epanechnikov")
    assert len(k) == len(r)


def test_noiseless_steps_are_recovered():
    y = [1.0] * 5 + [4.0] * 5 + [2.0] * 5
    res = volcp.lstv_star(y, k_max=2)
    assert res.segmentation.breakpoints == [5, 10]
    assert res.segmentation.levels == [1.0, 4.0, 2.0]


def test_path_fits_satisfy_kkt():
    y = [0.1, 0.3, -0.2, 2.0, 2.4, 1.9, 2.2, -1.0, -0.7, -1.2]
    p = volcp.lstv_path(y, k_max=3)
    assert p.events[0].action == "ADD"
    for fit, knot in zip(p.fits, p.knots):
        if knot > 0:
            assert volcp.kkt_check(y, volcp.FusedFit(fit, knot)).ok(1e-9)
    f = volcp.fused_fit_at(y, p.knots[0] * 2)
    assert max(f.fit) - min(f.fit) < 1e-12


def test_rdp_and_selection():
    y = [0.0] * 10 + [3.0] * 10 + [1.0] * 10
    r = volcp.rdp(y, [5, 10, 20, 25], 2)
    assert r.best[2].breakpoints == [10, 20]
    assert r.table.cost[2] == pytest.approx(0.0, abs=1e-12)
    assert volcp.select_k(volcp.CostTable([100.0, 40.0, 0.0, 0.0]), 0.3) == 2


def test_metrics():
    h = volcp.hausdorff([3], [1, 5])
    assert (h.a_given_b, h.b_given_a, h.symmetric) == (2.0, 2.0, 2.0)
    same = volcp.dm_test([1.0] * 12, [1.0] * 12, 1)
    assert same.statistic == 0.0 and same.p_value == 1.0
    assert volcp.jump_filter([3.0, -0.5, -2.0], 1.0, 2) == [2.0, 0.0, -1.0]
    assert volcp.ewma_smooth([1.0, 5.0], 0.5) == [1.0, 3.0]


def test_backtest_reduction_and_errors():
    r = volcp.log_returns(volcp.simulate(volcp.multi_break_spec(seed=2)))
    cfg = volcp.BacktestConfig()
    cfg.window = 780
    cfg.horizon = 78
    cfg.k_max = 0
    rep = volcp.run_backtest(r, cfg)
    assert rep.model("LSTV*(BV)").forecasts == rep.model("BV").forecasts
    assert len(rep.origins) == (3900 - 780 - 78) // 78 + 1
    assert rep.model("QV").dm is not None and 0.0 <= rep.model("QV").dm.p_value <= 1.0
    cfg.window = 1
    with pytest.raises(ValueError):
        volcp.run_backtest(r, cfg)


def test_mc_table_small():
    cfg = volcp.McConfig()
    cfg.sims = 4
    cfg.models = ["GBM"]
    rows = volcp.run_mc_table(cfg)
    assert len(rows) == 1 and rows[0].sims == 4
    assert math.isfinite(rows[0].mean_pct)
