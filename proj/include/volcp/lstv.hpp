#pragma once

#include <cstddef>
#include <vector>

#include "volcp/series.hpp"

namespace volcp {

// Breakpoint convention used throughout: breakpoint b (1 <= b <= n-1) splits
// the series into [0, b) and [b, n), so b is the first index of the new
// segment.

enum class PathAction { Add, Remove };

struct PathEvent {
    std::size_t step = 0;
    PathAction action = PathAction::Add;
    std::size_t breakpoint = 0;
    double lambda = 0.0;  // penalty at which the event happens
};

// LARS homotopy path of the total-variation penalized least-squares problem
//   min_theta  n^-1 * sum (y_i - theta_i)^2 + lambda * sum |theta_{i+1} - theta_i|
//
// knots[k] is the penalty after k events; knots[0] is the smallest penalty
// giving a constant fit. The last knot is where the next event would occur
// (0 when the path ran to full saturation). fits[k], when kept, is the
// solution at knots[k].
struct LstvPath {
    std::size_t n = 0;
    std::vector<PathEvent> events;
    std::vector<double> knots;
    std::vector<std::vector<double>> fits;
    std::vector<std::size_t> candidates;  // active set at the end, sorted
};

struct FusedFit {
    std::vector<double> fit;
    double lambda = 0.0;
    std::vector<std::size_t> active;  // sorted
};

// Runs the homotopy until k_max breakpoints are active or no event is left.
// A constant input yields an empty path with zero candidates.
LstvPath lstv_path(const std::vector<double>& y, std::size_t k_max, bool keep_fits = true);
LstvPath lstv_path(const ProxySeries& p, std::size_t k_max, bool keep_fits = true);

// Exact minimizer at the given penalty, read off the homotopy path.
FusedFit fused_fit_at(const std::vector<double>& y, double lambda);
FusedFit fused_fit_at(const ProxySeries& p, double lambda);

// Indices b with fit[b] != fit[b-1].
std::vector<std::size_t> jumps_of(const std::vector<double>& fit);

struct KktReport {
    double max_violation = 0.0;
    // |c_b - n*lambda/2 * sign(jump)| at every active breakpoint b, where c_b is
    // the residual tail sum from b.
    std::vector<double> active_slack;
    bool ok(double tol) const { return max_violation <= tol; }
};

// Evaluates the optimality conditions of `fit` for `y`: every residual tail sum
// is bounded by n*lambda/2, equals it with the jump sign at active breakpoints,
// and the total residual vanishes.
KktReport kkt_check(const std::vector<double>& y, const FusedFit& fit);

// Two-window mean difference at every admissible split b in [bw, n - bw]:
// F(b) = mean(y[b, b+bw)) - mean(y[b-bw, b)). Index i of the result holds F(bw + i).
std::vector<double> screen_statistic(const std::vector<double>& y, std::size_t bw);

// Local maximizers of |F| not below `threshold` (first index of a plateau).
std::vector<std::size_t> screen_filter(const std::vector<double>& y, std::size_t bw, double threshold);
// Keeps the candidates whose |F| reaches `threshold`.
std::vector<std::size_t> screen_filter(const std::vector<double>& y, std::size_t bw, double threshold,
                                       const std::vector<std::size_t>& candidates);

// Soft-threshold estimate of jump contributions: sign(d) * max(|d| - n*lambda/2, 0).
// n defaults to d.size().
std::vector<double> jump_filter(const std::vector<double>& d, double lambda, std::size_t n = 0);

struct JumpEstimate {
    std::vector<double> difference;  // r_{i+1}^2 - bipower increment for within-session pairs
    std::vector<double> jumps;
    std::vector<std::size_t> index;  // return index i+1 each entry refers to
};

// Builds the squared-return minus bipower difference series from returns and
// applies jump_filter with n = number of returns.
JumpEstimate jump_filter(const ReturnSeries& r, double lambda);

}  // namespace volcp
