#include "volcp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "volcp/error.hpp"

namespace volcp {

namespace {

// max over q in `query` of the distance to the nearest element of sorted `ref`.
double directed(const std::vector<std::size_t>& ref, const std::vector<std::size_t>& query) {
    if (query.empty()) return 0.0;
    if (ref.empty()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t q : query) {
        const auto it = std::lower_bound(ref.begin(), ref.end(), q);
        double best = std::numeric_limits<double>::infinity();
        if (it != ref.end()) best = static_cast<double>(*it - q);
        if (it != ref.begin()) best = std::min(best, static_cast<double>(q - *std::prev(it)));
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

HausdorffResult hausdorff(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::vector<std::size_t> sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    HausdorffResult r;
    r.a_given_b = directed(sa, sb);
    r.b_given_a = directed(sb, sa);
    r.symmetric = std::max(r.a_given_b, r.b_given_a);
    r.missed_all = std::isinf(r.symmetric);
    return r;
}

double hausdorff_pct(const std::vector<std::size_t>& truth, const std::vector<std::size_t>& est, std::size_t n) {
    detail::require(n > 0, "sample size must be > 0");
    return 100.0 * hausdorff(truth, est).symmetric / static_cast<double>(n);
}

std::vector<double> realized_sums(const std::vector<double>& returns, const std::vector<std::size_t>& origins,
                                  std::size_t f) {
    detail::require(f >= 1, "horizon must be >= 1");
    std::vector<double> out;
    out.reserve(origins.size());
    for (std::size_t t : origins) {
        detail::require_data(t + f <= returns.size(), "realized window runs past the data");
        double s = 0.0;
        for (std::size_t i = t; i < t + f; ++i) s += returns[i] * returns[i];
        out.push_back(s);
    }
    return out;
}

double ase(const std::vector<double>& forecasts, const std::vector<double>& realized) {
    detail::require_data(forecasts.size() == realized.size(), "ase: length mismatch");
    detail::require_data(!forecasts.empty(), "ase: no windows");
    long double s = 0.0L;
    for (std::size_t i = 0; i < forecasts.size(); ++i) {
        const long double e = static_cast<long double>(forecasts[i]) - realized[i];
        s += e * e;
    }
    return static_cast<double>(s / static_cast<long double>(forecasts.size()));
}

Improvement pct_improvement(double ase_model, double ase_benchmark) {
    detail::require(ase_benchmark > 0.0, "benchmark ASE must be > 0");
    Improvement imp;
    imp.literal = 100.0 * (ase_model - ase_benchmark) / ase_benchmark;
    imp.display = imp.literal == 0.0 ? 0.0 : -imp.literal;
    return imp;
}

std::vector<double> squared_errors(const std::vector<double>& forecasts, const std::vector<double>& realized) {
    detail::require_data(forecasts.size() == realized.size(), "squared_errors: length mismatch");
    std::vector<double> out(forecasts.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double e = forecasts[i] - realized[i];
        out[i] = e * e;
    }
    return out;
}

DmResult dm_test(const std::vector<double>& loss1, const std::vector<double>& loss2, std::size_t f) {
    detail::require_data(loss1.size() == loss2.size(), "dm_test: length mismatch");
    detail::require_data(loss1.size() >= 10, "dm_test: need at least 10 windows");
    detail::require(f >= 1, "horizon must be >= 1");
    const std::size_t n = loss1.size();
    std::vector<long double> d(n);
    long double mean = 0.0L;
    bool all_zero = true;
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = static_cast<long double>(loss1[i]) - loss2[i];
        all_zero = all_zero && d[i] == 0.0L;
        mean += d[i];
    }
    DmResult res;
    if (all_zero) return res;
    mean /= static_cast<long double>(n);

    auto autocov = [&](std::size_t lag) {
        long double s = 0.0L;
        for (std::size_t i = lag; i < n; ++i) s += (d[i] - mean) * (d[i - lag] - mean);
        return s / static_cast<long double>(n);
    };
    long double lrv = autocov(0);
    const std::size_t max_lag = std::min(f - 1, n - 1);
    for (std::size_t l = 1; l <= max_lag; ++l) {
        const long double w = 1.0L - static_cast<long double>(l) / static_cast<long double>(f);
        lrv += 2.0L * w * autocov(l);
    }
    const long double var_mean = lrv / static_cast<long double>(n);
    const long double scale = std::abs(mean) + 1e-300L;
    if (!(var_mean > 1e-24L * scale * scale)) {
        res.degenerate = true;
        res.statistic = mean > 0 ? std::numeric_limits<double>::infinity()
                                 : -std::numeric_limits<double>::infinity();
        res.p_value = 0.0;
        return res;
    }
    res.statistic = static_cast<double>(mean / std::sqrt(var_mean));
    res.p_value = std::erfc(std::abs(res.statistic) / std::sqrt(2.0));
    return res;
}

}  // namespace volcp
