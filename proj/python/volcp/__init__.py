"""Volatility change-point detection and forecasting (C++ core)."""

from ._volcp import (
    BacktestConfig,
    CostTable,
    DmResult,
    FusedFit,
    ForecastReport,
    HausdorffResult,
    KktReport,
    LstvPath,
    LstvStarResult,
    McConfig,
    McRow,
    ModelResult,
    PathEvent,
    ProxySeries,
    ReturnSeries,
    Segmentation,
    SimSpec,
    VolStepFn,
    bv_increments,
    derive_seed,
    dm_test,
    ewma_smooth,
    fused_fit_at,
    hausdorff,
    hausdorff_pct,
    jump_filter,
    kernel_spot_variance,
    kkt_check,
    log_returns,
    lstv_path,
    lstv_star,
    multi_break_spec,
    qv_increments,
    rdp,
    rescale_to_spot,
    run_backtest,
    run_mc_table,
    select_k,
    simulate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
