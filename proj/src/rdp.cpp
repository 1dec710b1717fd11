#include "volcp/rdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "volcp/error.hpp"

namespace volcp {

double segment_mean(const std::vector<double>& y, std::size_t a, std::size_t b) {
    detail::require(a < b && b <= y.size(), "segment_mean: bad range");
    long double s = 0.0L;
    for (std::size_t i = a; i < b; ++i) s += y[i];
    return static_cast<double>(s / static_cast<long double>(b - a));
}

double segment_sse(const std::vector<double>& y, std::size_t a, std::size_t b) {
    const double m = segment_mean(y, a, b);
    long double s = 0.0L;
    for (std::size_t i = a; i < b; ++i) {
        const long double d = static_cast<long double>(y[i]) - m;
        s += d * d;
    }
    return static_cast<double>(s);
}

Segmentation make_segmentation(const std::vector<double>& y, std::vector<std::size_t> breakpoints) {
    detail::require_data(!y.empty(), "segmentation of an empty series");
    std::sort(breakpoints.begin(), breakpoints.end());
    Segmentation seg;
    seg.n = y.size();
    std::size_t start = 0;
    long double cost = 0.0L;
    for (std::size_t k = 0; k <= breakpoints.size(); ++k) {
        const std::size_t end = k == breakpoints.size() ? y.size() : breakpoints[k];
        detail::require(end > start && end <= y.size(), "breakpoints must be distinct and in [1, n-1]");
        seg.levels.push_back(segment_mean(y, start, end));
        cost += segment_sse(y, start, end);
        start = end;
    }
    seg.breakpoints = std::move(breakpoints);
    seg.cost = static_cast<double>(cost);
    return seg;
}

RdpResult rdp(const std::vector<double>& y, const std::vector<std::size_t>& candidates, std::size_t k_max) {
    const std::size_t n = y.size();
    detail::require_data(n >= 1, "rdp: empty series");
    std::vector<std::size_t> cand = candidates;
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (std::size_t c : cand) {
        detail::require(c >= 1 && c < n, "rdp: candidate " + std::to_string(c) + " outside [1, n-1]");
    }
    detail::require(k_max <= cand.size(), "rdp: k_max exceeds the number of candidates");

    // Centered prefix sums give O(1) segment costs.
    long double total = 0.0L;
    for (double v : y) total += v;
    const long double center = total / static_cast<long double>(n);
    std::vector<long double> s1(n + 1, 0.0L), s2(n + 1, 0.0L);
    for (std::size_t i = 0; i < n; ++i) {
        const long double d = y[i] - center;
        s1[i + 1] = s1[i] + d;
        s2[i + 1] = s2[i] + d * d;
    }
    auto cost = [&](std::size_t a, std::size_t b) {
        const long double sum = s1[b] - s1[a];
        const long double c = (s2[b] - s2[a]) - sum * sum / static_cast<long double>(b - a);
        return c > 0.0L ? c : 0.0L;
    };

    // Grid positions: 0, candidates..., n. dp[k][j] = best cost of y[0, grid[j])
    // using k breakpoints, the last of which is grid[j].
    const std::size_t m = cand.size();
    std::vector<std::size_t> grid;
    grid.reserve(m + 2);
    grid.push_back(0);
    grid.insert(grid.end(), cand.begin(), cand.end());
    grid.push_back(n);

    constexpr long double kInf = std::numeric_limits<long double>::infinity();
    std::vector<std::vector<long double>> dp(k_max + 1, std::vector<long double>(m + 2, kInf));
    std::vector<std::vector<std::size_t>> from(k_max + 1, std::vector<std::size_t>(m + 2, 0));
    for (std::size_t j = 1; j <= m + 1; ++j) dp[0][j] = cost(0, grid[j]);
    for (std::size_t k = 1; k <= k_max; ++k) {
        for (std::size_t j = k + 1; j <= m + 1; ++j) {
            // j = m + 1 stands for the series end; intermediate rows only need
            // candidate endpoints.
            long double best = kInf;
            std::size_t arg = 0;
            for (std::size_t i = k; i < j; ++i) {
                if (dp[k - 1][i] == kInf) continue;
                const long double v = dp[k - 1][i] + cost(grid[i], grid[j]);
                if (v < best) {
                    best = v;
                    arg = i;
                }
            }
            dp[k][j] = best;
            from[k][j] = arg;
        }
    }

    RdpResult res;
    res.table.cost.resize(k_max + 1);
    res.best.reserve(k_max + 1);
    for (std::size_t k = 0; k <= k_max; ++k) {
        std::vector<std::size_t> bps;
        std::size_t j = m + 1;
        for (std::size_t kk = k; kk >= 1; --kk) {
            j = from[kk][j];
            bps.push_back(grid[j]);
        }
        Segmentation seg = make_segmentation(y, std::move(bps));
        res.table.cost[k] = seg.cost;
        res.best.push_back(std::move(seg));
    }
    fill_rho(res.table);
    return res;
}

void fill_rho(CostTable& table) {
    table.rho.clear();
    const std::size_t k_max = table.k_max();
    for (std::size_t k = 1; k + 1 <= k_max; ++k) {
        const double jk = table.cost[k];
        table.rho.push_back(jk > 0.0 ? table.cost[k + 1] / jk : 1.0);
    }
}

std::size_t select_k(const CostTable& table, double xi) {
    detail::require(std::isfinite(xi) && xi > 0.0 && xi < 1.0, "xi must be in (0, 1)");
    const std::size_t k_max = table.k_max();
    if (k_max == 0) return 0;
    for (std::size_t k = 1; k + 1 <= k_max; ++k) {
        const double jk = table.cost[k];
        const double rho = jk > 0.0 ? table.cost[k + 1] / jk : 1.0;
        if (rho >= 1.0 - xi) return k;
    }
    return k_max;
}

LstvStarResult lstv_star(const std::vector<double>& y, std::size_t k_max, double xi, Selection selection) {
    detail::require(std::isfinite(xi) && xi > 0.0 && xi < 1.0, "xi must be in (0, 1)");
    detail::require_data(y.size() >= 2, "lstv_star: need at least two values");
    LstvStarResult out;
    if (k_max > 0) {
        detail::require(k_max <= y.size() - 1, "k_max must be <= n - 1");
        out.candidates = lstv_path(y, k_max, false).candidates;
    }
    const std::size_t k_eff = std::min(k_max, out.candidates.size());
    RdpResult r = rdp(y, out.candidates, k_eff);
    out.table = std::move(r.table);
    out.table.k_hat = selection == Selection::Fixed ? k_eff : select_k(out.table, xi);
    out.segmentation = std::move(r.best[out.table.k_hat]);
    return out;
}

LstvStarResult lstv_star(const ProxySeries& p, std::size_t k_max, double xi, Selection selection) {
    return lstv_star(p.values, k_max, xi, selection);
}

}  // namespace volcp
