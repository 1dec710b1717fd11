#include "volcp/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "volcp/error.hpp"
#include "volcp/proxies.hpp"

namespace volcp {

double extrapolate_last_level(const Segmentation& seg, std::size_t f) {
    detail::require_data(!seg.levels.empty(), "extrapolate_last_level: empty segmentation");
    detail::require(f >= 1, "horizon must be >= 1");
    return static_cast<double>(f) * seg.last_level();
}

std::vector<double> ewma_smooth(const std::vector<double>& x, double a) {
    detail::require(std::isfinite(a) && a >= 0.0 && a <= 1.0, "EWMA weight must be in [0, 1]");
    std::vector<double> s(x.size());
    for (std::size_t t = 0; t < x.size(); ++t) {
        s[t] = t == 0 ? x[0] : a * s[t - 1] + (1.0 - a) * x[t];
    }
    return s;
}

EwmaChoice ewma_grid_search(const std::vector<double>& x, const std::vector<double>& realized) {
    EwmaChoice best{0.0, std::numeric_limits<double>::infinity()};
    for (int k = 0; k < 100; ++k) {
        const double a = k / 100.0;
        const double e = ase(ewma_smooth(x, a), realized);
        if (e < best.ase) best = {a, e};
    }
    return best;
}

std::vector<double> acf(const std::vector<double>& x, std::size_t max_lag) {
    detail::require_data(x.size() >= 2, "acf: need at least two values");
    const std::size_t n = x.size();
    long double mean = 0.0L;
    for (double v : x) mean += v;
    mean /= static_cast<long double>(n);
    auto cov = [&](std::size_t lag) {
        long double s = 0.0L;
        for (std::size_t i = lag; i < n; ++i) s += (x[i] - mean) * (x[i - lag] - mean);
        return s / static_cast<long double>(n);
    };
    const long double c0 = cov(0);
    std::vector<double> out;
    for (std::size_t l = 0; l <= std::min(max_lag, n - 1); ++l) {
        out.push_back(c0 > 0.0L ? static_cast<double>(cov(l) / c0) : (l == 0 ? 1.0 : 0.0));
    }
    return out;
}

HarFit har_rv_forecast(const std::vector<double>& daily_rv) {
    const std::size_t d = daily_rv.size();
    detail::require_data(d >= kHarMinHistory,
                         "HAR-RV needs at least " + std::to_string(kHarMinHistory) + " daily observations, got " +
                             std::to_string(d));
    long double total = 0.0L;
    for (double v : daily_rv) {
        detail::require_data(std::isfinite(v), "HAR-RV: non-finite daily RV");
        total += std::abs(v);
    }
    // Regressors are rescaled to unit magnitude so the rank test is not fooled
    // by tiny variance units.
    const double unit = total > 0.0L ? static_cast<double>(total / static_cast<long double>(d)) : 1.0;

    auto mean_back = [&](std::size_t t, std::size_t len) {
        long double s = 0.0L;
        for (std::size_t i = t + 1 - len; i <= t; ++i) s += daily_rv[i];
        return static_cast<double>(s / static_cast<long double>(len)) / unit;
    };
    auto regressors = [&](std::size_t t) {
        return Eigen::Vector4d(1.0, daily_rv[t] / unit, mean_back(t, 5), mean_back(t, 22));
    };

    const std::size_t rows = d - 22;
    Eigen::MatrixXd x(rows, 4);
    Eigen::VectorXd y(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = 21 + r;
        x.row(static_cast<Eigen::Index>(r)) = regressors(t).transpose();
        y(static_cast<Eigen::Index>(r)) = daily_rv[t + 1] / unit;
    }
    const Eigen::Vector4d latest = regressors(d - 1);

    HarFit fit;
    fit.coefficients.assign(4, 0.0);
    const HarDesign designs[] = {HarDesign::Full, HarDesign::DailyOnly, HarDesign::InterceptOnly};
    for (HarDesign design : designs) {
        const Eigen::Index cols = design == HarDesign::Full ? 4 : (design == HarDesign::DailyOnly ? 2 : 1);
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x.leftCols(cols));
        qr.setThreshold(1e-9);
        if (qr.rank() < cols) continue;
        const Eigen::VectorXd beta = qr.solve(y);
        fit.design = design;
        for (Eigen::Index j = 0; j < cols; ++j) fit.coefficients[static_cast<std::size_t>(j)] = beta(j);
        fit.coefficients[0] *= unit;
        fit.forecast = unit * latest.head(cols).dot(beta);
        return fit;
    }
    // Unreachable: the intercept column always has full rank.
    throw DataError("HAR-RV: regression failed");
}

std::vector<std::string> known_models() {
    return {"QV",        "BV",        "LSTV*(QV)",      "LSTV*(BV)",      "HAR-RV",
            "QV+EWMA",   "BV+EWMA",   "LSTV*(QV)+EWMA", "LSTV*(BV)+EWMA", "HAR-RV+EWMA"};
}

void BacktestConfig::validate() const {
    detail::require(window >= 2, "window must be >= 2");
    detail::require(horizon >= 1, "horizon must be >= 1");
    detail::require(!models.empty(), "model list must not be empty");
    const auto names = known_models();
    for (const auto& m : models) {
        detail::require(std::find(names.begin(), names.end(), m) != names.end(), "unknown model '" + m + "'");
    }
    detail::require(std::find(models.begin(), models.end(), benchmark) != models.end(),
                    "benchmark '" + benchmark + "' is not in the model list");
    detail::require(std::isfinite(xi) && xi > 0.0 && xi < 1.0, "xi must be in (0, 1)");
    if (ewma_weight) {
        detail::require(*ewma_weight >= 0.0 && *ewma_weight <= 1.0, "EWMA weight must be in [0, 1]");
    }
}

const ModelResult& ForecastReport::model(const std::string& name) const {
    for (const auto& m : models) {
        if (m.name == name) return m;
    }
    throw ParameterError("model '" + name + "' not in report");
}

namespace {

ReturnSeries slice(const ReturnSeries& data, std::size_t a, std::size_t b) {
    ReturnSeries out;
    out.interval = data.interval;
    out.returns.assign(data.returns.begin() + static_cast<std::ptrdiff_t>(a),
                       data.returns.begin() + static_cast<std::ptrdiff_t>(b));
    for (std::size_t s : data.session_boundaries) {
        if (s > a && s < b) out.session_boundaries.push_back(s - a);
    }
    return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string base_model(const std::string& name) {
    return ends_with(name, "+EWMA") ? name.substr(0, name.size() - 5) : name;
}

bool uses_har(const std::vector<std::string>& models) {
    return std::any_of(models.begin(), models.end(), [](const std::string& m) { return base_model(m) == "HAR-RV"; });
}

}  // namespace

void score_report(ForecastReport& rep) {
    detail::require_data(!rep.realized.empty(), "report has no forecast windows");
    for (auto& mr : rep.models) {
        detail::require_data(mr.forecasts.size() == rep.realized.size(),
                             "model '" + mr.name + "' has " + std::to_string(mr.forecasts.size()) +
                                 " forecasts for " + std::to_string(rep.realized.size()) + " windows");
        mr.ase = ase(mr.forecasts, rep.realized);
    }
    const ModelResult& bench = rep.model(rep.benchmark);
    const double bench_ase = bench.ase;
    const std::vector<double> bench_loss = squared_errors(bench.forecasts, rep.realized);
    for (auto& mr : rep.models) {
        if (bench_ase > 0.0) {
            mr.improvement = pct_improvement(mr.ase, bench_ase);
        } else {
            // Perfect benchmark: ties score 0, anything else is infinitely worse.
            mr.improvement.literal = mr.ase == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
            mr.improvement.display = mr.improvement.literal == 0.0 ? 0.0 : -mr.improvement.literal;
        }
        mr.dm.reset();
        if (mr.name != rep.benchmark && rep.realized.size() >= 10) {
            mr.dm = dm_test(squared_errors(mr.forecasts, rep.realized), bench_loss, rep.horizon);
        }
    }
}

ForecastReport run_backtest(const ReturnSeries& data, const BacktestConfig& cfg) {
    cfg.validate();
    data.validate();
    const std::size_t len = data.size();
    const std::size_t f = cfg.horizon;
    const std::size_t step = cfg.effective_step();
    detail::require_data(len >= cfg.window + f, "backtest needs at least window + horizon returns");

    std::size_t first = cfg.window;
    if (uses_har(cfg.models)) {
        // HAR-RV needs kHarMinHistory whole horizons before the first origin.
        const std::size_t need = kHarMinHistory * f;
        while (first < need) first += step;
        detail::require_data(first + f <= len, "not enough data for HAR-RV history");
    }

    ForecastReport rep;
    rep.window = cfg.window;
    rep.step = step;
    rep.horizon = f;
    rep.benchmark = cfg.benchmark;
    for (std::size_t t = first; t + f <= len; t += step) rep.origins.push_back(t);
    rep.realized = realized_sums(data.returns, rep.origins, f);

    std::vector<std::string> bases;
    for (const auto& m : cfg.models) {
        const std::string b = base_model(m);
        if (std::find(bases.begin(), bases.end(), b) == bases.end()) bases.push_back(b);
    }
    std::vector<std::vector<double>> base_fc(bases.size());
    const double fd = static_cast<double>(f);

    for (std::size_t t : rep.origins) {
        const ReturnSeries win = slice(data, t - cfg.window, t);
        std::optional<std::vector<double>> qv, bv;
        auto qv_proxy = [&]() -> const std::vector<double>& {
            if (!qv) qv = rescale_to_spot(qv_increments(win)).values;
            return *qv;
        };
        auto bv_proxy = [&]() -> const std::vector<double>& {
            if (!bv) bv = rescale_to_spot(bv_increments(win, cfg.bv_correction)).values;
            return *bv;
        };
        auto star = [&](const std::vector<double>& y) {
            const std::size_t k = std::min(cfg.k_max, y.size() - 1);
            return extrapolate_last_level(lstv_star(y, k, cfg.xi, cfg.selection).segmentation, f);
        };
        for (std::size_t i = 0; i < bases.size(); ++i) {
            const std::string& b = bases[i];
            double v = 0.0;
            if (b == "QV") {
                v = fd * segment_mean(qv_proxy(), 0, qv_proxy().size());
            } else if (b == "BV") {
                v = fd * segment_mean(bv_proxy(), 0, bv_proxy().size());
            } else if (b == "LSTV*(QV)") {
                v = star(qv_proxy());
            } else if (b == "LSTV*(BV)") {
                v = star(bv_proxy());
            } else if (b == "HAR-RV") {
                // Daily RV over whole horizons of the full history before t.
                const std::size_t chunks = t / f;
                std::vector<double> rv(chunks);
                for (std::size_t c = 0; c < chunks; ++c) {
                    const std::size_t end = t - (chunks - 1 - c) * f;
                    double s = 0.0;
                    for (std::size_t j = end - f; j < end; ++j) s += data.returns[j] * data.returns[j];
                    rv[c] = s;
                }
                v = std::max(0.0, har_rv_forecast(rv).forecast);
            }
            base_fc[i].push_back(v);
        }
    }

    for (const auto& name : cfg.models) {
        ModelResult mr;
        mr.name = name;
        const auto bi = static_cast<std::size_t>(
            std::find(bases.begin(), bases.end(), base_model(name)) - bases.begin());
        mr.forecasts = base_fc[bi];
        if (ends_with(name, "+EWMA")) {
            const double a = cfg.ewma_weight ? *cfg.ewma_weight : ewma_grid_search(mr.forecasts, rep.realized).a;
            mr.forecasts = ewma_smooth(mr.forecasts, a);
            mr.ewma_weight = a;
        }
        rep.models.push_back(std::move(mr));
    }
    score_report(rep);
    return rep;
}

}  // namespace volcp
