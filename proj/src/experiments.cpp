#include "volcp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include "volcp/error.hpp"
#include "volcp/metrics.hpp"
#include "volcp/proxies.hpp"

namespace volcp {

namespace {

const std::vector<double> kLevelSet{2.12e-4, 1.51e-4, 2.35e-4, 1.83e-4, 2.44e-4, 1.65e-4, 3.13e-4};

void set_jumps(SimSpec& s, bool jumps) {
    s.jump_intensity = jumps ? 1.0 : 0.0;
    s.jump_mean = 0.0;
    s.jump_sd = 0.015;
}

}  // namespace

SimSpec multi_break_spec(std::uint64_t seed, bool jumps) {
    SimSpec s;
    s.n = 3900;
    s.drift = 0.02;
    s.dt = 1.0 / kMinutesPerYear;
    set_jumps(s, jumps);
    s.vol.breakpoints = {780, 1170, 1950, 3120, 3510};
    s.vol.levels.assign(kLevelSet.begin(), kLevelSet.begin() + 6);
    s.seed = seed;
    return s;
}

SimSpec single_break_spec(std::size_t n, double sigma_before, double sigma_after, double position,
                          double jump_intensity, std::uint64_t seed) {
    detail::require(position > 0.0 && position < 1.0, "break position must be in (0, 1)");
    SimSpec s;
    s.n = n;
    s.drift = 0.22;
    s.dt = 1.0 / kMinutesPerYear;
    s.jump_intensity = jump_intensity;
    s.jump_sd = 0.015;
    const double per_interval = std::sqrt(s.dt);
    const auto b = static_cast<std::size_t>(std::llround(position * static_cast<double>(n)));
    s.vol.breakpoints = {std::clamp<std::size_t>(b, 1, n - 1)};
    s.vol.levels = {sigma_before * per_interval, sigma_after * per_interval};
    s.seed = seed;
    return s;
}

SimSpec random_break_spec(std::size_t k_star, std::size_t n, bool jumps, std::uint64_t seed) {
    const std::size_t min_len = n / (2 * (k_star + 1));
    detail::require(min_len >= 1, "sample too short for the requested number of breakpoints");
    boost::random::mt19937_64 rng(derive_seed(seed, 0x5eed));

    // Spread the slack n - (k+1)*min_len over the k+1 segments by drawing k
    // sorted offsets.
    const std::size_t slack = n - (k_star + 1) * min_len;
    boost::random::uniform_int_distribution<std::size_t> offset(0, slack);
    std::vector<std::size_t> cuts(k_star);
    for (auto& c : cuts) c = offset(rng);
    std::sort(cuts.begin(), cuts.end());

    SimSpec s;
    s.n = n;
    s.drift = 0.02;
    s.dt = 1.0 / kMinutesPerYear;
    set_jumps(s, jumps);
    for (std::size_t k = 0; k < k_star; ++k) s.vol.breakpoints.push_back((k + 1) * min_len + cuts[k]);

    boost::random::uniform_int_distribution<std::size_t> pick(0, kLevelSet.size() - 1);
    std::size_t prev = kLevelSet.size();
    for (std::size_t k = 0; k <= k_star; ++k) {
        std::size_t idx = pick(rng);
        while (idx == prev) idx = pick(rng);
        s.vol.levels.push_back(kLevelSet[idx]);
        prev = idx;
    }
    s.seed = seed;
    return s;
}

Detection detect_on_simulation(const SimSpec& spec, std::size_t k_max, double xi, Selection selection) {
    const LogPricePath path = simulate(spec);
    const ProxySeries bv = rescale_to_spot(bv_increments(log_returns(path), true));
    const LstvStarResult res = lstv_star(bv, k_max, xi, selection);
    Detection d;
    d.breakpoints = res.segmentation.breakpoints;
    d.k_hat = res.table.k_hat;
    d.hausdorff_pct = hausdorff_pct(path.true_breakpoints, d.breakpoints, spec.n);
    return d;
}

void McConfig::validate() const {
    detail::require(sims >= 1, "sims must be >= 1");
    detail::require(k_star >= 1, "k_star must be >= 1");
    detail::require(k_max >= 1, "k_max must be >= 1");
    detail::require(!models.empty(), "model list must not be empty");
    for (const auto& m : models) {
        detail::require(m == "GBM" || m == "MJD", "unknown simulation model '" + m + "'");
    }
    detail::require(xi > 0.0 && xi < 1.0, "xi must be in (0, 1)");
}

std::vector<McRow> run_mc_table(const McConfig& cfg) {
    cfg.validate();
    std::vector<McRow> rows;
    for (std::size_t mi = 0; mi < cfg.models.size(); ++mi) {
        const bool jumps = cfg.models[mi] == "MJD";
        const std::uint64_t base = derive_seed(cfg.seed, mi);
        const std::function<Detection(std::size_t)> run = [&](std::size_t i) {
            const SimSpec spec = random_break_spec(cfg.k_star, cfg.n, jumps, derive_seed(base, i));
            return detect_on_simulation(spec, cfg.k_max, cfg.xi, cfg.selection);
        };
        const std::vector<Detection> det = parallel_map(cfg.sims, cfg.threads, run);

        McRow row;
        row.model = cfg.models[mi];
        row.k_star = cfg.k_star;
        row.k_max = cfg.k_max;
        row.sims = cfg.sims;
        std::vector<double> pct;
        double k_sum = 0.0;
        for (const auto& d : det) {
            if (d.breakpoints.empty()) {
                ++row.missed;
            } else {
                pct.push_back(d.hausdorff_pct);
            }
            k_sum += static_cast<double>(d.k_hat);
        }
        row.mean_k_hat = k_sum / static_cast<double>(det.size());
        if (!pct.empty()) {
            const double mean = std::accumulate(pct.begin(), pct.end(), 0.0) / static_cast<double>(pct.size());
            double var = 0.0;
            for (double p : pct) var += (p - mean) * (p - mean);
            row.mean_pct = mean;
            row.sd_pct = pct.size() > 1 ? std::sqrt(var / static_cast<double>(pct.size() - 1)) : 0.0;
            std::sort(pct.begin(), pct.end());
            const std::size_t h = pct.size() / 2;
            row.median_pct = pct.size() % 2 ? pct[h] : 0.5 * (pct[h - 1] + pct[h]);
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace volcp
