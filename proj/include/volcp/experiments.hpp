#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "volcp/rdp.hpp"
#include "volcp/simulate.hpp"

namespace volcp {

// One-minute bars over a 252-day trading year of 390-minute sessions.
constexpr double kMinutesPerYear = 252.0 * 390.0;

// Ten sessions of one-minute returns with five volatility breakpoints; drift
// and jump intensity are annual rates.
SimSpec multi_break_spec(std::uint64_t seed, bool jumps = true);

// Annualized volatility switching from sigma_before to sigma_after at
// position * n.
SimSpec single_break_spec(std::size_t n, double sigma_before, double sigma_after, double position,
                          double jump_intensity, std::uint64_t seed);

// k_star breakpoints at random positions (segments at least n / (2 (k_star + 1))
// long) with levels drawn from the multi-break level set, no two neighbours
// equal.
SimSpec random_break_spec(std::size_t k_star, std::size_t n, bool jumps, std::uint64_t seed);

struct Detection {
    std::vector<std::size_t> breakpoints;
    double hausdorff_pct = 0.0;
    std::size_t k_hat = 0;
};

// Simulates the spec and runs the two-step detector on bipower increments.
Detection detect_on_simulation(const SimSpec& spec, std::size_t k_max, double xi, Selection selection);

// Runs fn(i) for i in [0, count) on up to `threads` workers (0 = hardware
// concurrency). Results are stored by index, so output order never depends on
// scheduling.
template <class T>
std::vector<T> parallel_map(std::size_t count, std::size_t threads, const std::function<T(std::size_t)>& fn);

struct McConfig {
    std::size_t sims = 500;
    std::size_t k_star = 5;
    std::size_t k_max = 5;
    std::size_t n = 3900;
    double xi = 0.3;
    Selection selection = Selection::Fixed;
    std::vector<std::string> models{"GBM", "MJD"};
    std::uint64_t seed = 1;
    std::size_t threads = 0;

    void validate() const;
};

struct McRow {
    std::string model;
    std::size_t k_star = 0;
    std::size_t k_max = 0;
    std::size_t sims = 0;
    double mean_pct = 0.0;
    double median_pct = 0.0;
    double sd_pct = 0.0;
    double mean_k_hat = 0.0;
    std::size_t missed = 0;  // runs with no detected breakpoint
};

// Monte-Carlo Hausdorff summary in percent of n, one row per model.
std::vector<McRow> run_mc_table(const McConfig& cfg);

}  // namespace volcp

#include "volcp/detail/parallel.hpp"
