#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "volcp/series.hpp"

namespace volcp {

// Piecewise-constant spot volatility over sample indices. Breakpoint b starts
// a new regime at sample b (0-based), so regime k covers
// [breakpoints[k-1], breakpoints[k]).
struct VolStepFn {
    std::vector<std::size_t> breakpoints;
    std::vector<double> levels;

    double at(std::size_t i) const;
    // Throws ParameterError unless breakpoints are strictly increasing in
    // [1, n-1], levels are positive and |levels| == |breakpoints| + 1.
    void validate(std::size_t n) const;
    // Same step function mapped onto a grid of n_new samples.
    VolStepFn resized(std::size_t n_old, std::size_t n_new) const;
};

// Jump-diffusion parameters.
//
// Volatility levels are standard deviations per sample interval. Drift and
// jump intensity are rates per model time unit and `dt` is the length of one
// sample interval in that unit (dt = 1 measures everything per interval).
struct SimSpec {
    std::size_t n = 2;
    double drift = 0.0;
    double jump_intensity = 0.0;
    double jump_mean = 0.0;
    double jump_sd = 0.0;
    double dt = 1.0;
    VolStepFn vol;
    std::uint64_t seed = 0;
    double initial_price = 1.0;

    void validate() const;
};

struct LogPricePath {
    std::vector<double> log_prices;  // n + 1 values
    std::vector<std::size_t> true_breakpoints;
    // Interval index i means the jump landed in (t_i, t_{i+1}].
    std::vector<std::size_t> jump_times;
    std::vector<double> jump_sizes;
};

LogPricePath simulate(const SimSpec& spec);

// r_i = p_{i+1} - p_i, one return per sample interval.
ReturnSeries log_returns(const LogPricePath& path);
ReturnSeries log_returns(const std::vector<double>& log_prices);

// Stream-split seed for Monte-Carlo worker `stream` (splitmix64 mixing).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace volcp
