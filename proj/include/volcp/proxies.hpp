#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "volcp/series.hpp"
#include "volcp/simulate.hpp"

namespace volcp {

enum class KernelShape { Gaussian, Epanechnikov, Uniform };

KernelShape kernel_shape_from_string(std::string_view name);

struct KernelSpec {
    KernelShape shape = KernelShape::Gaussian;
    double bandwidth = 1.0;  // in sample intervals
};

// Unit-mass kernel density at x (support [-1, 1] for the compact shapes).
double kernel_density(KernelShape shape, double x);

// Squared returns.
ProxySeries qv_increments(const ReturnSeries& r, double interval_length = 1.0);

// c * |r_i| * |r_{i+1}|, with c = pi/2 when scale_correction is set. Pairs that
// straddle a session boundary are dropped.
ProxySeries bv_increments(const ReturnSeries& r, bool scale_correction = true,
                          double interval_length = 1.0);

// Kernel-weighted average of squared returns evaluated at every return time.
// Weights are renormalized to unit mass at each grid point so the estimate is a
// convex combination of squared returns, including near the sample edges.
ProxySeries kernel_spot_variance(const ReturnSeries& r, const KernelSpec& k);

ProxySeries rescale_to_spot(const ProxySeries& p);
// Inverse of rescale_to_spot for a proxy whose increments span `scale`.
ProxySeries unrescale_from_spot(const ProxySeries& p, double scale);

struct MseRow {
    std::size_t n = 0;
    double mean_mse = 0.0;
    double median_mse = 0.0;
    double std_error = 0.0;  // of the mean over seeds
};

// Empirical MSE of the spot-scaled proxy against the true spot variance
// sigma^2 at each proxy grid point, for every sample size in `sizes`. The
// volatility step function of `spec` is mapped proportionally onto each size.
// Kernel proxies use bandwidth n^(2/3) samples.
std::vector<MseRow> proxy_mse_decay_check(const SimSpec& spec, const std::vector<std::size_t>& sizes,
                                          std::size_t seeds, ProxyKind kind = ProxyKind::Kernel);

}  // namespace volcp
