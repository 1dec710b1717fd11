#include "volcp/proxies.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "volcp/error.hpp"

namespace volcp {

void ReturnSeries::validate() const {
    for (double r : returns) {
        detail::require_data(std::isfinite(r), "return series contains non-finite values");
    }
    for (std::size_t k = 0; k < session_boundaries.size(); ++k) {
        detail::require_data(session_boundaries[k] >= 1 && session_boundaries[k] < returns.size(),
                             "session boundary out of range");
        if (k > 0) {
            detail::require_data(session_boundaries[k] > session_boundaries[k - 1],
                                 "session boundaries must be strictly increasing");
        }
    }
}

std::string_view to_string(ProxyKind kind) {
    switch (kind) {
        case ProxyKind::QV: return "QV";
        case ProxyKind::BV: return "BV";
        case ProxyKind::Kernel: return "KERNEL";
    }
    return "?";
}

ProxyKind proxy_kind_from_string(std::string_view name) {
    std::string up(name);
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
    if (up == "QV") return ProxyKind::QV;
    if (up == "BV") return ProxyKind::BV;
    if (up == "KERNEL") return ProxyKind::Kernel;
    throw ParameterError("unknown proxy kind '" + std::string(name) + "'");
}

KernelShape kernel_shape_from_string(std::string_view name) {
    std::string low(name);
    std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) { return std::tolower(c); });
    if (low == "gaussian") return KernelShape::Gaussian;
    if (low == "epanechnikov") return KernelShape::Epanechnikov;
    if (low == "uniform") return KernelShape::Uniform;
    throw ParameterError("unknown kernel '" + std::string(name) + "'");
}

double kernel_density(KernelShape shape, double x) {
    switch (shape) {
        case KernelShape::Gaussian:
            return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
        case KernelShape::Epanechnikov:
            return std::abs(x) <= 1.0 ? 0.75 * (1.0 - x * x) : 0.0;
        case KernelShape::Uniform:
            return std::abs(x) <= 1.0 ? 0.5 : 0.0;
    }
    return 0.0;
}

ProxySeries qv_increments(const ReturnSeries& r, double interval_length) {
    detail::require_data(!r.returns.empty(), "qv_increments: empty return series");
    detail::require(interval_length > 0.0, "interval length must be > 0");
    ProxySeries out;
    out.kind = ProxyKind::QV;
    out.scale = interval_length;
    out.values.reserve(r.size());
    for (double x : r.returns) out.values.push_back(x * x);
    return out;
}

ProxySeries bv_increments(const ReturnSeries& r, bool scale_correction, double interval_length) {
    detail::require_data(r.size() >= 2, "bv_increments: need at least two returns");
    detail::require(interval_length > 0.0, "interval length must be > 0");
    const double c = scale_correction ? std::numbers::pi / 2.0 : 1.0;
    ProxySeries out;
    out.kind = ProxyKind::BV;
    out.scale = interval_length;
    out.values.reserve(r.size() - 1);
    auto boundary = r.session_boundaries.begin();
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        while (boundary != r.session_boundaries.end() && *boundary < i + 1) ++boundary;
        if (boundary != r.session_boundaries.end() && *boundary == i + 1) continue;
        out.values.push_back(c * std::abs(r.returns[i]) * std::abs(r.returns[i + 1]));
    }
    detail::require_data(!out.values.empty(), "bv_increments: no within-session pairs");
    return out;
}

ProxySeries kernel_spot_variance(const ReturnSeries& r, const KernelSpec& k) {
    detail::require(std::isfinite(k.bandwidth) && k.bandwidth > 0.0, "kernel bandwidth must be > 0");
    detail::require_data(r.size() >= 2, "kernel_spot_variance: need at least two returns");

    const std::size_t n = r.size();
    const double h = k.bandwidth;
    // Gaussian mass beyond 8 bandwidths is below 1e-14 of the total.
    const double radius = k.shape == KernelShape::Gaussian ? 8.0 * h : h;
    const auto reach = static_cast<std::size_t>(
        std::min(std::floor(radius), static_cast<double>(n - 1)));

    std::vector<double> w(reach + 1);
    for (std::size_t d = 0; d <= reach; ++d) {
        w[d] = kernel_density(k.shape, static_cast<double>(d) / h) / h;
    }
    // cum[m] = w[1] + ... + w[m]
    std::vector<double> cum(reach + 1, 0.0);
    for (std::size_t d = 1; d <= reach; ++d) cum[d] = cum[d - 1] + w[d];

    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = r.returns[i] * r.returns[i];

    ProxySeries out;
    out.kind = ProxyKind::Kernel;
    out.scale = 1.0;
    out.spot = true;
    out.values.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t left = std::min(reach, j);
        const std::size_t right = std::min(reach, n - 1 - j);
        double num = w[0] * sq[j];
        for (std::size_t d = 1; d <= left; ++d) num += w[d] * sq[j - d];
        for (std::size_t d = 1; d <= right; ++d) num += w[d] * sq[j + d];
        const double den = w[0] + cum[left] + cum[right];
        out.values[j] = num / den;
    }
    return out;
}

ProxySeries rescale_to_spot(const ProxySeries& p) {
    detail::require(p.kind == ProxyKind::QV || p.kind == ProxyKind::BV,
                    "rescale_to_spot applies to QV/BV increments only");
    detail::require(!p.spot, "proxy is already spot-scaled");
    detail::require(p.scale > 0.0, "proxy scale must be > 0");
    ProxySeries out = p;
    for (double& v : out.values) v /= p.scale;
    out.scale = 1.0;
    out.spot = true;
    return out;
}

ProxySeries unrescale_from_spot(const ProxySeries& p, double scale) {
    detail::require(p.spot, "proxy is not spot-scaled");
    detail::require(scale > 0.0, "scale must be > 0");
    ProxySeries out = p;
    for (double& v : out.values) v *= scale;
    out.scale = scale;
    out.spot = false;
    return out;
}

namespace {

double median_of(std::vector<double> v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    double m = v[mid];
    if (v.size() % 2 == 0) {
        m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)));
    }
    return m;
}

}  // namespace

std::vector<MseRow> proxy_mse_decay_check(const SimSpec& spec, const std::vector<std::size_t>& sizes,
                                          std::size_t seeds, ProxyKind kind) {
    detail::require(spec.jump_intensity == 0.0, "proxy_mse_decay_check needs a jump-free spec");
    detail::require(seeds >= 1, "need at least one seed");
    detail::require(!sizes.empty(), "need at least one sample size");

    std::vector<MseRow> table;
    for (std::size_t n : sizes) {
        SimSpec s = spec;
        s.n = n;
        s.vol = spec.vol.resized(spec.n, n);
        s.validate();

        std::vector<double> mses;
        mses.reserve(seeds);
        for (std::size_t k = 0; k < seeds; ++k) {
            s.seed = derive_seed(derive_seed(spec.seed, n), k);
            const ReturnSeries r = log_returns(simulate(s));
            ProxySeries p;
            switch (kind) {
                case ProxyKind::QV: p = rescale_to_spot(qv_increments(r)); break;
                case ProxyKind::BV: p = rescale_to_spot(bv_increments(r, true)); break;
                case ProxyKind::Kernel: {
                    const double h = std::pow(static_cast<double>(n), 2.0 / 3.0);
                    p = kernel_spot_variance(r, KernelSpec{KernelShape::Gaussian, h});
                    break;
                }
            }
            double acc = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) {
                const double sigma = s.vol.at(i);
                const double e = p.values[i] - sigma * sigma;
                acc += e * e;
            }
            mses.push_back(acc / static_cast<double>(p.size()));
        }

        MseRow row;
        row.n = n;
        double mean = 0.0;
        for (double m : mses) mean += m;
        mean /= static_cast<double>(mses.size());
        double var = 0.0;
        for (double m : mses) var += (m - mean) * (m - mean);
        row.mean_mse = mean;
        row.std_error = mses.size() > 1
                            ? std::sqrt(var / static_cast<double>(mses.size() - 1) /
                                        static_cast<double>(mses.size()))
                            : 0.0;
        row.median_mse = median_of(mses);
        table.push_back(row);
    }
    return table;
}

}  // namespace volcp
