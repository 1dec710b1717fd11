// volcp command-line interface.
//
// Subcommands: simulate, detect, forecast, eval, mc-table. Results go to JSON
// (stdout with "-") and optional CSV files. On failure the tool prints one line
//   volcp: error: <kind>: <message>
// to stderr and exits with 2 (parameter), 3 (data), 4 (io) or 1 (other).

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "volcp/error.hpp"
#include "volcp/experiments.hpp"
#include "volcp/forecast.hpp"
#include "volcp/io.hpp"
#include "volcp/lstv.hpp"
#include "volcp/metrics.hpp"
#include "volcp/proxies.hpp"
#include "volcp/rdp.hpp"
#include "volcp/simulate.hpp"

using namespace volcp;

namespace {

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    std::replace(s.begin(), s.end(), '\r', ' ');
    return s;
}

int fail(const char* kind, const std::string& msg, int code) {
    std::cerr << "volcp: error: " << kind << ": " << one_line(msg) << std::endl;
    return code;
}

// Where returns come from: a return/log-price CSV, or raw ticks aggregated to
// bars.
struct InputOptions {
    std::string path;
    bool ticks = false;
    int frequency = 5;
    int utc_offset = 0;
    std::string timestamp_column = "timestamp";
    std::string price_column = "price";

    void add_to(CLI::App* app) {
        app->add_option("-i,--input", path, "CSV with a 'return' or 'log_price' column, or ticks with --ticks")
            ->required();
        app->add_flag("--ticks", ticks, "Input holds timestamped prices to aggregate into session bars");
        app->add_option("--freq", frequency, "Bar frequency in minutes (1, 5, 15, 30, 60)");
        app->add_option("--utc-offset", utc_offset, "Session-local time minus UTC, in minutes");
        app->add_option("--timestamp-column", timestamp_column, "Tick timestamp column");
        app->add_option("--price-column", price_column, "Tick price column");
    }

    ReturnSeries load() const {
        if (!ticks) return read_returns_csv(path);
        const TickTable t = ingest_csv(path, CsvSchema{timestamp_column, price_column});
        if (t.rejected > 0) std::cerr << "warning: " << t.rejected << " malformed tick rows rejected\n";
        return bars_to_returns(to_bars(t, frequency, utc_offset));
    }
};

std::optional<Config> load_config(const std::string& path) {
    if (path.empty()) return std::nullopt;
    return Config::load(path);
}

// ---- simulate ----

struct SimulateCmd {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out = "path.csv";
    std::string truth;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("simulate", "Simulate a jump-diffusion log-price path");
        c->add_option("-c,--config", config, "INI file with a [simulate] section")->required();
        c->add_option("--seed", seed, "Override the configured seed");
        c->add_option("-o,--out", out, "Log-price CSV (index,log_price)");
        c->add_option("--truth", truth, "JSON with true breakpoints, levels and jumps");
        c->callback([this] { run(); });
    }

    void run() const {
        SimSpec spec = sim_spec_from_config(Config::load(config));
        if (seed) spec.seed = *seed;
        const LogPricePath p = simulate(spec);
        write_path_csv(out, p);
        if (!truth.empty()) write_json(truth, path_truth_json(p, spec));
    }
};

// ---- detect ----

struct DetectCmd {
    InputOptions input;
    std::string config;
    std::optional<std::string> proxy, selection, kernel;
    std::optional<std::size_t> k_max;
    std::optional<double> xi, bandwidth;
    bool no_bv_correction = false;
    std::string out = "-";
    std::string path_out, proxy_out;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("detect", "Detect volatility breakpoints and emit the segmentation");
        input.add_to(c);
        c->add_option("-c,--config", config, "INI file with a [detect] section");
        c->add_option("--proxy", proxy, "QV, BV or KERNEL (default BV)");
        c->add_option("--k-max", k_max, "Candidate budget (default 8)");
        c->add_option("--xi", xi, "Selection threshold in (0, 1) (default 0.3)");
        c->add_option("--selection", selection, "rho or fixed (default rho)");
        c->add_option("--kernel", kernel, "Kernel shape for KERNEL: gaussian, epanechnikov, uniform");
        c->add_option("--bandwidth", bandwidth, "Kernel bandwidth in samples (default n^(2/3))");
        c->add_flag("--no-bv-correction", no_bv_correction, "Drop the pi/2 factor from bipower increments");
        c->add_option("-o,--out", out, "Segmentation JSON ('-' = stdout)");
        c->add_option("--path-out", path_out, "JSON with the full regularization path");
        c->add_option("--proxy-out", proxy_out, "CSV with the spot proxy series");
        c->callback([this] { run(); });
    }

    void run() const {
        const auto cfg = load_config(config);
        auto get = [&](const std::string& key, const std::string& fallback) {
            return cfg ? cfg->get("detect." + key, fallback) : fallback;
        };
        const ReturnSeries r = input.load();
        const ProxyKind kind = proxy_kind_from_string(proxy.value_or(get("proxy", "BV")));
        const std::size_t km = k_max.value_or(cfg ? cfg->get_size("detect.k_max", 8) : 8);
        const double x = xi.value_or(cfg ? cfg->get("detect.xi", 0.3) : 0.3);
        const Selection sel = selection_from(selection.value_or(get("selection", "rho")));
        const bool correction = !no_bv_correction && (!cfg || cfg->get_bool("detect.bv_correction", true));

        ProxySeries p;
        switch (kind) {
            case ProxyKind::QV: p = rescale_to_spot(qv_increments(r)); break;
            case ProxyKind::BV: p = rescale_to_spot(bv_increments(r, correction)); break;
            case ProxyKind::Kernel: {
                KernelSpec k;
                k.shape = kernel_shape_from_string(kernel.value_or(get("kernel", "gaussian")));
                const double h_default = std::pow(static_cast<double>(r.size()), 2.0 / 3.0);
                k.bandwidth = bandwidth.value_or(cfg ? cfg->get("detect.bandwidth", h_default) : h_default);
                p = kernel_spot_variance(r, k);
                break;
            }
        }
        const std::size_t k_eff = std::min(km, p.size() - 1);
        const LstvStarResult res = lstv_star(p, k_eff, x, sel);
        nlohmann::json j = to_json(res);
        j["proxy"] = std::string(to_string(kind));
        j["K_max"] = k_eff;
        j["xi"] = round12(x);
        write_json(out, j);
        if (!path_out.empty()) write_json(path_out, to_json(lstv_path(p, std::max<std::size_t>(k_eff, 1))));
        if (!proxy_out.empty()) write_proxy_csv(proxy_out, p);
    }
};

// ---- forecast ----

struct ForecastCmd {
    InputOptions input;
    std::string config;
    std::string out = "-";
    std::string forecasts_csv, acf_csv;
    std::size_t acf_lags = 20;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("forecast", "Rolling-window out-of-sample variance forecasts");
        input.add_to(c);
        c->add_option("-c,--config", config, "INI file with a [forecast] section")->required();
        c->add_option("-o,--out", out, "Report JSON ('-' = stdout)");
        c->add_option("--forecasts-csv", forecasts_csv, "Per-window forecasts (window_end,model,forecast,realized)");
        c->add_option("--acf-csv", acf_csv, "Prefix for per-model forecast autocorrelation CSVs (<prefix>.<model>.csv)");
        c->add_option("--acf-lags", acf_lags, "Largest lag for --acf-csv");
        c->callback([this] { run(); });
    }

    void run() const {
        const BacktestConfig cfg = backtest_from_config(Config::load(config));
        const ForecastReport rep = run_backtest(input.load(), cfg);
        write_json(out, to_json(rep));
        if (!forecasts_csv.empty()) write_forecasts_csv(forecasts_csv, rep);
        if (!acf_csv.empty()) {
            for (const auto& m : rep.models) {
                const auto a = acf(m.forecasts, acf_lags);
                std::vector<double> lags(a.size());
                for (std::size_t l = 0; l < a.size(); ++l) lags[l] = static_cast<double>(l);
                std::string name = m.name;
                std::replace_if(name.begin(), name.end(), [](unsigned char ch) { return !std::isalnum(ch); }, '_');
                write_xy_csv(acf_csv + "." + name + ".csv", "lag", "acf", lags, a);
            }
        }
    }
};

// ---- eval ----

struct EvalCmd {
    std::string truth, estimate, forecasts;
    std::string benchmark = "BV";
    std::size_t horizon = 1;
    std::string out = "-";

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("eval", "Score breakpoints (Hausdorff) or forecasts (ASE, DM)");
        c->add_option("--truth", truth, "Truth JSON from simulate (or any JSON with 'breakpoints')");
        c->add_option("--estimate", estimate, "Segmentation JSON from detect");
        c->add_option("--forecasts", forecasts, "Forecast CSV (window_end,model,forecast,realized)");
        c->add_option("--benchmark", benchmark, "Benchmark model for forecast scoring");
        c->add_option("--horizon", horizon, "Forecast horizon in samples (DM lag window)");
        c->add_option("-o,--out", out, "Result JSON ('-' = stdout)");
        c->callback([this] { run(); });
    }

    void run() const {
        const bool breaks = !truth.empty() || !estimate.empty();
        detail::require(breaks != !forecasts.empty(), "give either --truth and --estimate, or --forecasts");
        if (!breaks) {
            ForecastReport rep = read_forecasts_csv(forecasts, benchmark, horizon);
            score_report(rep);
            write_json(out, to_json(rep));
            return;
        }
        detail::require(!truth.empty() && !estimate.empty(), "--truth and --estimate go together");
        const auto tj = read_json(truth);
        const auto ej = read_json(estimate);
        std::vector<std::size_t> t, e;
        try {
            t = tj.at("breakpoints").get<std::vector<std::size_t>>();
            e = ej.at("breakpoints").get<std::vector<std::size_t>>();
        } catch (const nlohmann::json::exception& ex) {
            throw DataError(std::string("breakpoint lists: ") + ex.what());
        }
        nlohmann::json j = to_json(hausdorff(t, e));
        if (tj.contains("n")) {
            const auto n = tj.at("n").get<std::size_t>();
            j["n"] = n;
            j["hausdorff_pct"] = round12(hausdorff_pct(t, e, n));
        }
        write_json(out, j);
    }
};

// ---- mc-table ----

struct McCmd {
    std::string config;
    std::optional<std::size_t> sims, threads;
    std::string out = "-";
    std::string csv;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("mc-table", "Monte-Carlo Hausdorff error summary");
        c->add_option("-c,--config", config, "INI file with a [mc_table] section")->required();
        c->add_option("--sims", sims, "Override the number of simulations");
        c->add_option("--threads", threads, "Worker threads (0 = all cores)");
        c->add_option("-o,--out", out, "Summary JSON ('-' = stdout)");
        c->add_option("--csv", csv, "Summary CSV");
        c->callback([this] { run(); });
    }

    void run() const {
        McConfig cfg = mc_from_config(Config::load(config));
        if (sims) cfg.sims = *sims;
        if (threads) cfg.threads = *threads;
        cfg.validate();
        const auto rows = run_mc_table(cfg);
        write_json(out, to_json(rows, cfg));
        if (!csv.empty()) write_mc_csv(csv, rows);
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Volatility change-point detection and forecasting"};
    app.require_subcommand(1);
    SimulateCmd simulate_cmd;
    DetectCmd detect_cmd;
    ForecastCmd forecast_cmd;
    EvalCmd eval_cmd;
    McCmd mc_cmd;
    simulate_cmd.add(app);
    detect_cmd.add(app);
    forecast_cmd.add(app);
    eval_cmd.add(app);
    mc_cmd.add(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Help and version requests are parse "errors" with exit code 0.
        if (e.get_exit_code() == 0) return app.exit(e);
        return fail("usage", e.what(), 2);
    } catch (const ParameterError& e) {
        return fail("parameter", e.what(), 2);
    } catch (const DataError& e) {
        return fail("data", e.what(), 3);
    } catch (const IoError& e) {
        return fail("io", e.what(), 4);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), 1);
    }
    return 0;
}
