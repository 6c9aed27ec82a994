"""VIX effective-ratio gating of daily strategy returns."""

from ._core import (
    DailySeries,
    DataError,
    DegenerateError,
    Error,
    ErSeries,
    GateSignal,
    InvalidArgumentError,
    ScanResult,
    VixComputation,
    apply_gate,
    basis_signal,
    calmar_ratio,
    compare,
    compute_vix,
    effective_ratio,
    effective_ratio_values,
    equity_curve,
    gate_direction_for_orientation,
    load_series,
    make_gate,
    max_drawdown,
    negate,
    ols_slope,
    oriented,
    scan_windows,
    sharpe_ratio,
    tune_threshold,
)

__version__ = "0.1.0"
