#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace volcp {

// Log-returns on an equidistant grid. session_boundaries holds the index of the
// first return of every session after the first one; returns on either side of
// a boundary never form a bipower pair.
struct ReturnSeries {
    std::vector<double> returns;
    std::vector<std::size_t> session_boundaries;
    std::string interval = "1";

    std::size_t size() const { return returns.size(); }
    void validate() const;
};

enum class ProxyKind { QV, BV, Kernel };

std::string_view to_string(ProxyKind kind);
ProxyKind proxy_kind_from_string(std::string_view name);

// Volatility proxy sequence fed to the change-point filter.
//
// `scale` is the time length of one increment measured in sample intervals
// (1 for per-return increments). Integrated-variance increments (QV, BV) are
// divided by `scale` to obtain spot variances; kernel estimates are spot
// variances by construction.
struct ProxySeries {
    std::vector<double> values;
    ProxyKind kind = ProxyKind::QV;
    double scale = 1.0;
    bool spot = false;

    std::size_t size() const { return values.size(); }
};

}  // namespace volcp
