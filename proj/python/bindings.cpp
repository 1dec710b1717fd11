#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "volcp/error.hpp"
#include "volcp/experiments.hpp"
#include "volcp/forecast.hpp"
#include "volcp/io.hpp"
#include "volcp/lstv.hpp"
#include "volcp/metrics.hpp"
#include "volcp/proxies.hpp"
#include "volcp/rdp.hpp"
#include "volcp/simulate.hpp"

namespace py = pybind11;
using namespace volcp;

PYBIND11_MODULE(_volcp, m) {
    m.doc() = "Volatility change-point detection and forecasting";

    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    // ---- simulation ----
    py::class_<VolStepFn>(m, "VolStepFn")
        .def(py::init<>())
        .def(py::init([](std::vector<std::size_t> b, std::vector<double> l) {
                 return VolStepFn{std::move(b), std::move(l)};
             }),
             py::arg("breakpoints"), py::arg("levels"))
        .def_readwrite("breakpoints", &VolStepFn::breakpoints)
        .def_readwrite("levels", &VolStepFn::levels)
        .def("at", &VolStepFn::at);

    py::class_<SimSpec>(m, "SimSpec")
        .def(py::init<>())
        .def_readwrite("n", &SimSpec::n)
        .def_readwrite("drift", &SimSpec::drift)
        .def_readwrite("jump_intensity", &SimSpec::jump_intensity)
        .def_readwrite("jump_mean", &SimSpec::jump_mean)
        .def_readwrite("jump_sd", &SimSpec::jump_sd)
        .def_readwrite("dt", &SimSpec::dt)
        .def_readwrite("vol", &SimSpec::vol)
        .def_readwrite("seed", &SimSpec::seed)
        .def_readwrite("initial_price", &SimSpec::initial_price)
        .def("validate", &SimSpec::validate);

    py::class_<LogPricePath>(m, "LogPricePath")
        .def_readonly("log_prices", &LogPricePath::log_prices)
        .def_readonly("true_breakpoints", &LogPricePath::true_breakpoints)
        .def_readonly("jump_times", &LogPricePath::jump_times)
        .def_readonly("jump_sizes", &LogPricePath::jump_sizes);

    m.def("simulate", &simulate, py::arg("spec"));
    m.def("multi_break_spec", &multi_break_spec, py::arg("seed"), py::arg("jumps") = true);
    m.def("derive_seed", &derive_seed, py::arg("base"), py::arg("stream"));

    // ---- returns and proxies ----
    py::class_<ReturnSeries>(m, "ReturnSeries")
        .def(py::init<>())
        .def(py::init([](std::vector<double> r, std::vector<std::size_t> b) {
                 ReturnSeries s;
                 s.returns = std::move(r);
                 s.session_boundaries = std::move(b);
                 s.validate();
                 return s;
             }),
             py::arg("returns"), py::arg("session_boundaries") = std::vector<std::size_t>{})
        .def_readwrite("returns", &ReturnSeries::returns)
        .def_readwrite("session_boundaries", &ReturnSeries::session_boundaries)
        .def("__len__", &ReturnSeries::size);

    m.def("log_returns", py::overload_cast<const LogPricePath&>(&log_returns), py::arg("path"));
    m.def("log_returns", py::overload_cast<const std::vector<double>&>(&log_returns), py::arg("log_prices"));

    py::class_<ProxySeries>(m, "ProxySeries")
        .def_readonly("values", &ProxySeries::values)
        .def_readonly("scale", &ProxySeries::scale)
        .def_readonly("spot", &ProxySeries::spot)
        .def_property_readonly("kind", [](const ProxySeries& p) { return std::string(to_string(p.kind)); })
        .def("__len__", &ProxySeries::size);

    m.def("qv_increments", [](const ReturnSeries& r) { return qv_increments(r); }, py::arg("returns"));
    m.def("bv_increments", [](const ReturnSeries& r, bool c) { return bv_increments(r, c); }, py::arg("returns"),
          py::arg("scale_correction") = true);
    m.def(
        "kernel_spot_variance",
        [](const ReturnSeries& r, double bandwidth, const std::string& shape) {
            return kernel_spot_variance(r, KernelSpec{kernel_shape_from_string(shape), bandwidth});
        },
        py::arg("returns"), py::arg("bandwidth"), py::arg("shape") = "gaussian");
    m.def("rescale_to_spot", &rescale_to_spot, py::arg("proxy"));

    // ---- regularization path ----
    py::class_<PathEvent>(m, "PathEvent")
        .def_readonly("step", &PathEvent::step)
        .def_property_readonly("action",
                               [](const PathEvent& e) { return e.action == PathAction::Add ? "ADD" : "REMOVE"; })
        .def_readonly("breakpoint", &PathEvent::breakpoint)
        .def_readonly("lambda_", &PathEvent::lambda);

    py::class_<LstvPath>(m, "LstvPath")
        .def_readonly("n", &LstvPath::n)
        .def_readonly("events", &LstvPath::events)
        .def_readonly("knots", &LstvPath::knots)
        .def_readonly("fits", &LstvPath::fits)
        .def_readonly("candidates", &LstvPath::candidates);

    py::class_<FusedFit>(m, "FusedFit")
        .def(py::init([](std::vector<double> fit, double lambda) {
                 FusedFit f;
                 f.active = jumps_of(fit);
                 f.fit = std::move(fit);
                 f.lambda = lambda;
                 return f;
             }),
             py::arg("fit"), py::arg("lambda_"))
        .def_readonly("fit", &FusedFit::fit)
        .def_readonly("lambda_", &FusedFit::lambda)
        .def_readonly("active", &FusedFit::active);

    py::class_<KktReport>(m, "KktReport")
        .def_readonly("max_violation", &KktReport::max_violation)
        .def_readonly("active_slack", &KktReport::active_slack)
        .def("ok", &KktReport::ok, py::arg("tol"));

    m.def(
        "lstv_path",
        [](const std::vector<double>& y, std::size_t k_max, bool keep_fits) { return lstv_path(y, k_max, keep_fits); },
        py::arg("y"), py::arg("k_max"), py::arg("keep_fits") = true);
    m.def(
        "fused_fit_at", [](const std::vector<double>& y, double lambda) { return fused_fit_at(y, lambda); },
        py::arg("y"), py::arg("lambda_"));
    m.def("kkt_check", &kkt_check, py::arg("y"), py::arg("fit"));
    m.def(
        "jump_filter",
        [](const std::vector<double>& d, double lambda, std::size_t n) { return jump_filter(d, lambda, n); },
        py::arg("d"), py::arg("lambda_"), py::arg("n") = 0);

    // ---- segmentation ----
    py::class_<Segmentation>(m, "Segmentation")
        .def_readonly("breakpoints", &Segmentation::breakpoints)
        .def_readonly("levels", &Segmentation::levels)
        .def_readonly("cost", &Segmentation::cost)
        .def_readonly("n", &Segmentation::n);

    py::class_<CostTable>(m, "CostTable")
        .def(py::init([](std::vector<double> cost) {
                 CostTable t;
                 t.cost = std::move(cost);
                 fill_rho(t);
                 return t;
             }),
             py::arg("cost"))
        .def_readonly("cost", &CostTable::cost)
        .def_readonly("rho", &CostTable::rho)
        .def_readonly("k_hat", &CostTable::k_hat);

    py::class_<RdpResult>(m, "RdpResult")
        .def_readonly("table", &RdpResult::table)
        .def_readonly("best", &RdpResult::best);

    py::class_<LstvStarResult>(m, "LstvStarResult")
        .def_readonly("segmentation", &LstvStarResult::segmentation)
        .def_readonly("table", &LstvStarResult::table)
        .def_readonly("candidates", &LstvStarResult::candidates);

    m.def("rdp", &rdp, py::arg("y"), py::arg("candidates"), py::arg("k_max"));
    m.def("select_k", &select_k, py::arg("table"), py::arg("xi"));
    m.def(
        "lstv_star",
        [](const std::vector<double>& y, std::size_t k_max, double xi, const std::string& selection) {
            return lstv_star(y, k_max, xi, selection_from(selection));
        },
        py::arg("y"), py::arg("k_max"), py::arg("xi") = 0.3, py::arg("selection") = "rho");

    // ---- metrics ----
    py::class_<HausdorffResult>(m, "HausdorffResult")
        .def_readonly("a_given_b", &HausdorffResult::a_given_b)
        .def_readonly("b_given_a", &HausdorffResult::b_given_a)
        .def_readonly("symmetric", &HausdorffResult::symmetric)
        .def_readonly("missed_all", &HausdorffResult::missed_all);

    py::class_<DmResult>(m, "DmResult")
        .def_readonly("statistic", &DmResult::statistic)
        .def_readonly("p_value", &DmResult::p_value)
        .def_readonly("degenerate", &DmResult::degenerate);

    m.def("hausdorff", &hausdorff, py::arg("a"), py::arg("b"));
    m.def("hausdorff_pct", &hausdorff_pct, py::arg("truth"), py::arg("estimate"), py::arg("n"));
    m.def("dm_test", &dm_test, py::arg("loss1"), py::arg("loss2"), py::arg("horizon"));
    m.def("ewma_smooth", &ewma_smooth, py::arg("x"), py::arg("a"));

    // ---- forecasting ----
    py::class_<BacktestConfig>(m, "BacktestConfig")
        .def(py::init<>())
        .def_readwrite("window", &BacktestConfig::window)
        .def_readwrite("step", &BacktestConfig::step)
        .def_readwrite("horizon", &BacktestConfig::horizon)
        .def_readwrite("models", &BacktestConfig::models)
        .def_readwrite("benchmark", &BacktestConfig::benchmark)
        .def_readwrite("k_max", &BacktestConfig::k_max)
        .def_readwrite("xi", &BacktestConfig::xi)
        .def_property(
            "selection", [](const BacktestConfig& c) { return c.selection == Selection::Fixed ? "fixed" : "rho"; },
            [](BacktestConfig& c, const std::string& s) { c.selection = selection_from(s); })
        .def_readwrite("bv_correction", &BacktestConfig::bv_correction)
        .def_readwrite("ewma_weight", &BacktestConfig::ewma_weight);

    py::class_<ModelResult>(m, "ModelResult")
        .def_readonly("name", &ModelResult::name)
        .def_readonly("forecasts", &ModelResult::forecasts)
        .def_readonly("ase", &ModelResult::ase)
        .def_property_readonly("improvement_pct", [](const ModelResult& r) { return r.improvement.display; })
        .def_readonly("dm", &ModelResult::dm)
        .def_readonly("ewma_weight", &ModelResult::ewma_weight);

    py::class_<ForecastReport>(m, "ForecastReport")
        .def_readonly("window", &ForecastReport::window)
        .def_readonly("step", &ForecastReport::step)
        .def_readonly("horizon", &ForecastReport::horizon)
        .def_readonly("benchmark", &ForecastReport::benchmark)
        .def_readonly("origins", &ForecastReport::origins)
        .def_readonly("realized", &ForecastReport::realized)
        .def_readonly("models", &ForecastReport::models)
        .def("model", &ForecastReport::model, py::arg("name"), py::return_value_policy::reference_internal);

    m.def("run_backtest", &run_backtest, py::arg("data"), py::arg("config"), py::call_guard<py::gil_scoped_release>());

    py::class_<McConfig>(m, "McConfig")
        .def(py::init<>())
        .def_readwrite("sims", &McConfig::sims)
        .def_readwrite("k_star", &McConfig::k_star)
        .def_readwrite("k_max", &McConfig::k_max)
        .def_readwrite("n", &McConfig::n)
        .def_readwrite("xi", &McConfig::xi)
        .def_property(
            "selection", [](const McConfig& c) { return c.selection == Selection::Fixed ? "fixed" : "rho"; },
            [](McConfig& c, const std::string& s) { c.selection = selection_from(s); })
        .def_readwrite("models", &McConfig::models)
        .def_readwrite("seed", &McConfig::seed)
        .def_readwrite("threads", &McConfig::threads);

    py::class_<McRow>(m, "McRow")
        .def_readonly("model", &McRow::model)
        .def_readonly("k_star", &McRow::k_star)
        .def_readonly("k_max", &McRow::k_max)
        .def_readonly("sims", &McRow::sims)
        .def_readonly("mean_pct", &McRow::mean_pct)
        .def_readonly("median_pct", &McRow::median_pct)
        .def_readonly("sd_pct", &McRow::sd_pct)
        .def_readonly("mean_k_hat", &McRow::mean_k_hat)
        .def_readonly("missed", &McRow::missed);

    m.def("run_mc_table", &run_mc_table, py::arg("config"), py::call_guard<py::gil_scoped_release>());
}
