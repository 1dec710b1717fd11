#include "volcp/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>

#include "volcp/error.hpp"

namespace volcp {

double VolStepFn::at(std::size_t i) const {
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), i);
    return levels[static_cast<std::size_t>(it - breakpoints.begin())];
}

void VolStepFn::validate(std::size_t n) const {
    detail::require(levels.size() == breakpoints.size() + 1,
                    "volatility step function needs one more level than breakpoints");
    for (std::size_t k = 0; k < breakpoints.size(); ++k) {
        detail::require(breakpoints[k] >= 1 && breakpoints[k] <= n - 1,
                        "breakpoint " + std::to_string(breakpoints[k]) + " outside [1, n-1]");
        if (k > 0) {
            detail::require(breakpoints[k] > breakpoints[k - 1],
                            "breakpoints must be strictly increasing");
        }
    }
    // Zero volatility is accepted for the degenerate constant-price path.
    for (double s : levels) {
        detail::require(std::isfinite(s) && s >= 0.0, "volatility levels must be finite and >= 0");
    }
}

VolStepFn VolStepFn::resized(std::size_t n_old, std::size_t n_new) const {
    VolStepFn out;
    out.levels = levels;
    for (std::size_t b : breakpoints) {
        const double frac = static_cast<double>(b) / static_cast<double>(n_old);
        auto nb = static_cast<std::size_t>(std::llround(frac * static_cast<double>(n_new)));
        nb = std::clamp<std::size_t>(nb, 1, n_new - 1);
        if (!out.breakpoints.empty() && nb <= out.breakpoints.back()) {
            nb = out.breakpoints.back() + 1;
        }
        out.breakpoints.push_back(nb);
    }
    return out;
}

void SimSpec::validate() const {
    detail::require(n >= 2, "simulation needs n >= 2");
    detail::require(std::isfinite(drift), "drift must be finite");
    detail::require(std::isfinite(jump_intensity) && jump_intensity >= 0.0,
                    "jump intensity must be >= 0");
    detail::require(std::isfinite(jump_mean), "jump mean must be finite");
    detail::require(std::isfinite(jump_sd) && jump_sd >= 0.0, "jump sd must be >= 0");
    detail::require(std::isfinite(dt) && dt > 0.0, "dt must be > 0");
    detail::require(std::isfinite(initial_price) && initial_price > 0.0,
                    "initial price must be > 0");
    vol.validate(n);
}

LogPricePath simulate(const SimSpec& spec) {
    spec.validate();

    boost::random::mt19937_64 rng(spec.seed);
    boost::random::normal_distribution<double> std_normal(0.0, 1.0);

    const double jump_rate = spec.jump_intensity * spec.dt;
    const double step_drift = (spec.drift - spec.jump_mean * spec.jump_intensity) * spec.dt;

    LogPricePath path;
    path.true_breakpoints = spec.vol.breakpoints;
    path.log_prices.resize(spec.n + 1);
    path.log_prices[0] = std::log(spec.initial_price);

    std::size_t regime = 0;
    for (std::size_t i = 0; i < spec.n; ++i) {
        while (regime < spec.vol.breakpoints.size() && i >= spec.vol.breakpoints[regime]) {
            ++regime;
        }
        double inc = step_drift + spec.vol.levels[regime] * std_normal(rng);
        if (jump_rate > 0.0) {
            boost::random::poisson_distribution<int, double> count_dist(jump_rate);
            const int count = count_dist(rng);
            for (int j = 0; j < count; ++j) {
                const double q = spec.jump_mean + spec.jump_sd * std_normal(rng);
                inc += q;
                path.jump_times.push_back(i);
                path.jump_sizes.push_back(q);
            }
        }
        path.log_prices[i + 1] = path.log_prices[i] + inc;
    }
    return path;
}

ReturnSeries log_returns(const std::vector<double>& log_prices) {
    detail::require_data(log_prices.size() >= 2, "need at least two log-prices for returns");
    ReturnSeries out;
    out.returns.resize(log_prices.size() - 1);
    for (std::size_t i = 1; i < log_prices.size(); ++i) {
        out.returns[i - 1] = log_prices[i] - log_prices[i - 1];
    }
    return out;
}

ReturnSeries log_returns(const LogPricePath& path) {
    return log_returns(path.log_prices);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace volcp
