#pragma once

#include <cstddef>
#include <vector>

#include "volcp/lstv.hpp"
#include "volcp/series.hpp"

namespace volcp {

// Mean of y[a, b). Shared by every level estimate so that equal segments give
// bit-identical levels.
double segment_mean(const std::vector<double>& y, std::size_t a, std::size_t b);
// Sum of squared deviations of y[a, b) from segment_mean.
double segment_sse(const std::vector<double>& y, std::size_t a, std::size_t b);

struct Segmentation {
    std::vector<std::size_t> breakpoints;  // sorted, first index of each new segment
    std::vector<double> levels;            // breakpoints.size() + 1 segment means
    double cost = 0.0;                     // total squared error
    std::size_t n = 0;

    std::size_t k() const { return breakpoints.size(); }
    double last_level() const { return levels.back(); }
};

// Segmentation of y with the given breakpoints, levels and cost computed
// directly from the data.
Segmentation make_segmentation(const std::vector<double>& y, std::vector<std::size_t> breakpoints);

struct CostTable {
    std::vector<double> cost;  // cost[k] = minimal squared error with k breakpoints, k = 0..k_max
    std::vector<double> rho;   // rho[k-1] = cost[k+1] / cost[k], k = 1..k_max-1
    std::size_t k_hat = 0;

    std::size_t k_max() const { return cost.empty() ? 0 : cost.size() - 1; }
};

struct RdpResult {
    CostTable table;
    std::vector<Segmentation> best;  // best[k] for k = 0..k_max
};

// Exact minimum-cost segmentations using k = 0..k_max breakpoints drawn from
// `candidates`, by dynamic programming over the sorted candidate grid.
RdpResult rdp(const std::vector<double>& y, const std::vector<std::size_t>& candidates, std::size_t k_max);

// Smallest k >= 1 with cost[k+1] / cost[k] >= 1 - xi (ratio taken as 1 when
// cost[k] = 0); k_max when no k qualifies; 0 when k_max = 0.
std::size_t select_k(const CostTable& table, double xi);
// Fills table.rho.
void fill_rho(CostTable& table);

enum class Selection { RhoRule, Fixed };

struct LstvStarResult {
    Segmentation segmentation;
    CostTable table;
    std::vector<std::size_t> candidates;
};

// Candidates from the homotopy path, exact segmentation over them, then model
// selection. With Selection::Fixed the number of breakpoints is
// min(k_max, number of candidates).
LstvStarResult lstv_star(const std::vector<double>& y, std::size_t k_max, double xi,
                         Selection selection = Selection::RhoRule);
LstvStarResult lstv_star(const ProxySeries& p, std::size_t k_max, double xi,
                         Selection selection = Selection::RhoRule);

}  // namespace volcp
