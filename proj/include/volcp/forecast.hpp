#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "volcp/metrics.hpp"
#include "volcp/rdp.hpp"
#include "volcp/series.hpp"

namespace volcp {

// f-period integrated variance forecast from the last segment level.
double extrapolate_last_level(const Segmentation& seg, std::size_t f);

// s_1 = x_1, s_t = a * s_{t-1} + (1 - a) * x_t.
std::vector<double> ewma_smooth(const std::vector<double>& x, double a);

struct EwmaChoice {
    double a = 0.0;
    double ase = 0.0;
};

// Smoothing weight on the grid {0, 0.01, ..., 0.99} minimizing ASE against
// `realized` (smallest weight on ties).
EwmaChoice ewma_grid_search(const std::vector<double>& x, const std::vector<double>& realized);

// Sample autocorrelations at lags 0..max_lag.
std::vector<double> acf(const std::vector<double>& x, std::size_t max_lag);

enum class HarDesign { Full, DailyOnly, InterceptOnly };

struct HarFit {
    HarDesign design = HarDesign::Full;
    // intercept, daily, weekly (5-day mean), monthly (22-day mean); unused
    // terms are zero.
    std::vector<double> coefficients;
    double forecast = 0.0;
};

constexpr std::size_t kHarMinHistory = 44;

// OLS of next-day RV on lagged daily, 5-day-mean and 22-day-mean RV, then the
// one-day-ahead forecast from the latest observations. Falls back to the
// daily-lag-only and then intercept-only regressions when the design is rank
// deficient.
HarFit har_rv_forecast(const std::vector<double>& daily_rv);

struct BacktestConfig {
    std::size_t window = 0;
    std::size_t step = 0;  // 0 = horizon
    std::size_t horizon = 1;
    std::vector<std::string> models{"QV", "BV", "LSTV*(QV)", "LSTV*(BV)"};
    std::string benchmark = "BV";
    std::size_t k_max = 8;
    double xi = 0.3;
    Selection selection = Selection::RhoRule;
    bool bv_correction = true;
    // Smoothing weight for "+EWMA" models; unset = grid search.
    std::optional<double> ewma_weight;

    void validate() const;
    std::size_t effective_step() const { return step == 0 ? horizon : step; }
};

// Names accepted in BacktestConfig::models.
std::vector<std::string> known_models();

struct ModelResult {
    std::string name;
    std::vector<double> forecasts;
    double ase = 0.0;
    Improvement improvement;
    std::optional<DmResult> dm;  // absent for the benchmark or with < 10 windows
    std::optional<double> ewma_weight;
};

struct ForecastReport {
    std::size_t window = 0;
    std::size_t step = 0;
    std::size_t horizon = 1;
    std::string benchmark;
    std::vector<std::size_t> origins;  // forecast made after this many returns
    std::vector<double> realized;
    std::vector<ModelResult> models;

    const ModelResult& model(const std::string& name) const;
};

// Fills ASE, improvement over the benchmark and DM results for every model
// from the forecasts and realized values already in the report.
void score_report(ForecastReport& rep);

// Rolling-window backtest. The window ending at origin t holds returns
// [t - window, t); targets are sums of squared returns over [t, t + horizon).
ForecastReport run_backtest(const ReturnSeries& data, const BacktestConfig& cfg);

}  // namespace volcp
