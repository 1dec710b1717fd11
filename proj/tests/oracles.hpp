#pragma once

// Independent reference implementations used by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace volcp::oracle {

// Total-variation penalized least squares by cyclic coordinate descent on the
// jump parametrization theta_i = b0 + sum_{j<=i} b_j (soft-threshold updates),
// run until no coefficient moves by more than tol.
inline std::vector<double> cd_fused_lasso(const std::vector<double>& y, double lambda, double tol = 1e-12,
                                          std::size_t max_sweeps = 2000000) {
    const std::size_t n = y.size();
    const double thr = lambda * static_cast<double>(n) / 2.0;
    std::vector<double> beta(n, 0.0);
    std::vector<double> r = y;  // residual y - theta
    double scale = 0.0;
    for (double v : y) scale = std::max(scale, std::abs(v));
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        double moved = 0.0;
        // Intercept.
        double mean = 0.0;
        for (double v : r) mean += v;
        mean /= static_cast<double>(n);
        beta[0] += mean;
        for (double& v : r) v -= mean;
        moved = std::max(moved, std::abs(mean));
        // Jumps, last to first so the tail sum is cumulative.
        double tail = 0.0;
        std::size_t filled = n;
        for (std::size_t j = n - 1; j >= 1; --j) {
            while (filled > j) tail += r[--filled];
            const double len = static_cast<double>(n - j);
            const double z = tail + len * beta[j];
            const double mag = std::abs(z) - thr;
            const double nb = mag > 0.0 ? std::copysign(mag, z) / len : 0.0;
            const double delta = nb - beta[j];
            if (delta != 0.0) {
                for (std::size_t i = j; i < n; ++i) r[i] -= delta;
                tail -= len * delta;
                beta[j] = nb;
                moved = std::max(moved, std::abs(delta));
            }
        }
        if (moved <= tol * std::max(scale, 1e-300)) break;
    }
    std::vector<double> theta(n);
    double acc = beta[0];
    theta[0] = acc;
    for (std::size_t i = 1; i < n; ++i) {
        acc += beta[i];
        theta[i] = acc;
    }
    return theta;
}

inline double sse(const std::vector<double>& y, const std::vector<std::size_t>& bps) {
    double total = 0.0;
    std::size_t a = 0;
    for (std::size_t k = 0; k <= bps.size(); ++k) {
        const std::size_t b = k == bps.size() ? y.size() : bps[k];
        double m = 0.0;
        for (std::size_t i = a; i < b; ++i) m += y[i];
        m /= static_cast<double>(b - a);
        for (std::size_t i = a; i < b; ++i) total += (y[i] - m) * (y[i] - m);
        a = b;
    }
    return total;
}

struct BestSubset {
    double cost = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> breakpoints;
};

// Exhaustive search over all size-k subsets of sorted candidates.
inline BestSubset best_subset(const std::vector<double>& y, const std::vector<std::size_t>& cand, std::size_t k) {
    BestSubset best;
    std::vector<bool> mask(cand.size(), false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
        std::vector<std::size_t> pick;
        for (std::size_t i = 0; i < cand.size(); ++i) {
            if (mask[i]) pick.push_back(cand[i]);
        }
        const double c = sse(y, pick);
        if (c < best.cost) best = {c, pick};
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return best;
}

// Unrestricted optimal segmentation cost with k breakpoints, O(k n^2) DP with
// costs evaluated directly (no prefix sums).
inline double full_dp_cost(const std::vector<double>& y, std::size_t k) {
    const std::size_t n = y.size();
    auto seg = [&](std::size_t a, std::size_t b) {
        double m = 0.0;
        for (std::size_t i = a; i < b; ++i) m += y[i];
        m /= static_cast<double>(b - a);
        double s = 0.0;
        for (std::size_t i = a; i < b; ++i) s += (y[i] - m) * (y[i] - m);
        return s;
    };
    const double inf = std::numeric_limits<double>::infinity();
    // f[j] = best cost of y[0, j) with the current number of segments.
    std::vector<double> f(n + 1, inf);
    for (std::size_t j = 1; j <= n; ++j) f[j] = seg(0, j);
    for (std::size_t s = 1; s <= k; ++s) {
        std::vector<double> g(n + 1, inf);
        for (std::size_t j = s + 1; j <= n; ++j) {
            for (std::size_t i = s; i < j; ++i) g[j] = std::min(g[j], f[i] + seg(i, j));
        }
        f = g;
    }
    return f[n];
}

inline double brute_directed(const std::vector<std::size_t>& ref, const std::vector<std::size_t>& q) {
    double worst = 0.0;
    for (std::size_t b : q) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t a : ref) {
            best = std::min(best, std::abs(static_cast<double>(a) - static_cast<double>(b)));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace volcp::oracle
