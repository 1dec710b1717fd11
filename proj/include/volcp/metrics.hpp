#pragma once

#include <cstddef>
#include <vector>

namespace volcp {

struct HausdorffResult {
    double a_given_b = 0.0;  // max over b in B of the distance to the nearest a in A
    double b_given_a = 0.0;
    double symmetric = 0.0;
    bool missed_all = false;  // an empty set on the covering side gave +inf
};

// Directed and symmetric Hausdorff distances between breakpoint sets.
// Conventions for empty sets: d(A|{}) = 0 and d({}|B) = +inf for nonempty B.
HausdorffResult hausdorff(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);

// Hausdorff distance in percent of the sample size.
double hausdorff_pct(const std::vector<std::size_t>& truth, const std::vector<std::size_t>& est, std::size_t n);

// Sum of squared returns over [t+1, t+f] for every origin t, i.e. r[t .. t+f-1]
// in 0-based return indexing where origin t means "after t returns".
std::vector<double> realized_sums(const std::vector<double>& returns, const std::vector<std::size_t>& origins,
                                  std::size_t f);

// Mean squared forecast error against the realized sums.
double ase(const std::vector<double>& forecasts, const std::vector<double>& realized);

struct Improvement {
    double literal = 0.0;  // 100 * (model - benchmark) / benchmark
    double display = 0.0;  // -literal, positive when the model beats the benchmark
};

Improvement pct_improvement(double ase_model, double ase_benchmark);

struct DmResult {
    double statistic = 0.0;
    double p_value = 1.0;
    bool degenerate = false;  // zero long-run variance with a nonzero mean
};

// Diebold-Mariano test of equal accuracy from the loss differential
// d_t = loss1_t - loss2_t. Long-run variance uses Bartlett weights for lags
// 1..f-1 and the p-value is two-sided under the standard normal.
DmResult dm_test(const std::vector<double>& loss1, const std::vector<double>& loss2, std::size_t f);

// Squared-error losses of forecasts against realized values.
std::vector<double> squared_errors(const std::vector<double>& forecasts, const std::vector<double>& realized);

}  // namespace volcp
