#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "volcp/error.hpp"
#include "volcp/forecast.hpp"
#include "volcp/proxies.hpp"
#include "volcp/simulate.hpp"

using namespace volcp;

namespace {

ReturnSeries gaussian_returns(std::size_t n, double sigma, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    std::normal_distribution<double> nd(0.0, sigma);
    ReturnSeries r;
    for (std::size_t i = 0; i < n; ++i) r.returns.push_back(nd(g));
    return r;
}

}  // namespace

TEST(Extrapolate, LastLevelTimesHorizon) {
    Segmentation s;
    s.levels = {1e-8, 4e-8};
    EXPECT_DOUBLE_EQ(extrapolate_last_level(s, 1), 4e-8);
    EXPECT_DOUBLE_EQ(extrapolate_last_level(s, 390), 390 * 4e-8);
    EXPECT_THROW(extrapolate_last_level(Segmentation{}, 1), DataError);
}

TEST(Extrapolate, NoBreakpointEqualsRawWindowMean) {
    const auto r = gaussian_returns(500, 1e-3, 1);
    const auto bv = rescale_to_spot(bv_increments(r, true)).values;
    const auto seg = make_segmentation(bv, {});
    EXPECT_EQ(extrapolate_last_level(seg, 78), 78.0 * segment_mean(bv, 0, bv.size()));
}

TEST(Ewma, Limits) {
    const std::vector<double> x{1, 5, 2, 8};
    EXPECT_EQ(ewma_smooth(x, 0.0), x);
    EXPECT_EQ(ewma_smooth(x, 1.0), (std::vector<double>{1, 1, 1, 1}));
    const auto s = ewma_smooth(x, 0.5);
    EXPECT_DOUBLE_EQ(s[1], 3.0);
    EXPECT_DOUBLE_EQ(s[2], 2.5);
    EXPECT_THROW(ewma_smooth(x, 1.1), ParameterError);
    EXPECT_THROW(ewma_smooth(x, -0.1), ParameterError);
}

TEST(Ewma, GridSearchMinimizesAse) {
    std::mt19937_64 g(2);
    std::normal_distribution<double> nd;
    std::vector<double> x(100), real(100);
    for (std::size_t i = 0; i < 100; ++i) {
        real[i] = 5.0 + std::sin(i / 10.0);
        x[i] = real[i] + nd(g);
    }
    const auto best = ewma_grid_search(x, real);
    for (int k = 0; k < 100; ++k) EXPECT_LE(best.ase, ase(ewma_smooth(x, k / 100.0), real));
    EXPECT_GT(best.a, 0.0);
}

TEST(Ewma, SmoothingRaisesLagOneAutocorrelation) {
    std::mt19937_64 g(3);
    std::normal_distribution<double> nd;
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> x(200);
        for (auto& v : x) v = nd(g);
        const double raw = acf(x, 1)[1];
        for (double a : {0.1, 0.5, 0.9}) EXPECT_GE(acf(ewma_smooth(x, a), 1)[1], raw);
    }
}

TEST(Har, ConstantHistory) {
    const auto fit = har_rv_forecast(std::vector<double>(50, 2.5e-5));
    EXPECT_EQ(fit.design, HarDesign::InterceptOnly);
    EXPECT_NEAR(fit.forecast, 2.5e-5, 1e-18);
}

TEST(Har, RecoversAutoregressiveCoefficient) {
    std::vector<double> y{1.0};
    for (int i = 1; i < 60; ++i) y.push_back(0.5 * y.back());
    const auto fit = har_rv_forecast(y);
    EXPECT_NE(fit.design, HarDesign::InterceptOnly);
    EXPECT_NEAR(fit.coefficients[1], 0.5, 1e-8);
    EXPECT_NEAR(fit.forecast, 0.5 * y.back(), 1e-12);
}

TEST(Har, FullDesignOnNoisyHistory) {
    std::mt19937_64 g(5);
    std::gamma_distribution<double> gd(4.0, 0.25);
    std::vector<double> y(300);
    for (auto& v : y) v = gd(g);
    const auto fit = har_rv_forecast(y);
    EXPECT_EQ(fit.design, HarDesign::Full);
    EXPECT_GT(fit.forecast, 0.0);
}

TEST(Har, InsufficientHistory) {
    EXPECT_THROW(har_rv_forecast(std::vector<double>(43, 1.0)), DataError);
}

TEST(Backtest, WindowCountBookkeeping) {
    // Two weeks of 60-minute bars (7 per session) and one-step forecasts.
    const auto r = gaussian_returns(400, 1e-3, 4);
    BacktestConfig cfg;
    cfg.window = 70;
    cfg.horizon = 1;
    cfg.step = 1;
    const auto rep = run_backtest(r, cfg);
    EXPECT_EQ(rep.origins.size(), (400u - 70u - 1u) / 1u + 1u);
    cfg.step = 3;
    EXPECT_EQ(run_backtest(r, cfg).origins.size(), (400u - 70u - 1u) / 3u + 1u);
}

TEST(Backtest, PerfectForesightTies) {
    ReturnSeries r;
    for (int i = 0; i < 300; ++i) r.returns.push_back(i % 2 ? 1e-3 : -1e-3);
    BacktestConfig cfg;
    cfg.window = 100;
    cfg.horizon = 10;
    cfg.bv_correction = false;
    const auto rep = run_backtest(r, cfg);
    for (const auto& m : rep.models) {
        EXPECT_NEAR(m.ase, 0.0, 1e-30) << m.name;
        EXPECT_EQ(m.improvement.literal, 0.0) << m.name;
    }
}

TEST(Backtest, ZeroBreakpointReductionIsBitExact) {
    const auto r = gaussian_returns(600, 1e-3, 6);
    BacktestConfig cfg;
    cfg.window = 100;
    cfg.horizon = 5;
    cfg.k_max = 0;
    const auto rep = run_backtest(r, cfg);
    EXPECT_EQ(rep.model("LSTV*(QV)").forecasts, rep.model("QV").forecasts);
    EXPECT_EQ(rep.model("LSTV*(BV)").forecasts, rep.model("BV").forecasts);
}

TEST(Backtest, NoLookahead) {
    auto r = gaussian_returns(500, 1e-3, 7);
    BacktestConfig cfg;
    cfg.window = 100;
    cfg.horizon = 10;
    cfg.models = {"QV", "BV", "LSTV*(QV)", "LSTV*(BV)"};
    const auto clean = run_backtest(r, cfg);
    // Poison everything after the first target window: the first forecast
    // must not change.
    for (std::size_t i = 110; i < r.size(); ++i) r.returns[i] = 1.0;
    const auto poisoned = run_backtest(r, cfg);
    for (const auto& m : clean.models) {
        EXPECT_EQ(m.forecasts[0], poisoned.model(m.name).forecasts[0]);
        EXPECT_EQ(m.forecasts[1], poisoned.model(m.name).forecasts[1]);
    }
}

TEST(Backtest, SharedTargetsAndDm) {
    const auto r = gaussian_returns(3000, 1e-3, 8);
    BacktestConfig cfg;
    cfg.window = 200;
    cfg.horizon = 20;
    cfg.models = {"QV", "BV", "LSTV*(BV)", "LSTV*(BV)+EWMA", "HAR-RV"};
    const auto rep = run_backtest(r, cfg);
    EXPECT_EQ(rep.origins.front(), 44u * 20u);
    for (const auto& m : rep.models) {
        EXPECT_EQ(m.forecasts.size(), rep.realized.size());
        if (m.name == "BV") {
            EXPECT_FALSE(m.dm.has_value());
        } else {
            ASSERT_TRUE(m.dm.has_value()) << m.name;
            EXPECT_GE(m.dm->p_value, 0.0);
            EXPECT_LE(m.dm->p_value, 1.0);
        }
    }
    EXPECT_TRUE(rep.model("LSTV*(BV)+EWMA").ewma_weight.has_value());
}

TEST(Backtest, ConfigValidation) {
    const auto r = gaussian_returns(100, 1e-3, 9);
    BacktestConfig cfg;
    cfg.window = 1;
    EXPECT_THROW(run_backtest(r, cfg), ParameterError);
    cfg.window = 90;
    cfg.horizon = 20;
    EXPECT_THROW(run_backtest(r, cfg), DataError);
    cfg.horizon = 1;
    cfg.models = {"GARCH"};
    EXPECT_THROW(run_backtest(r, cfg), ParameterError);
    cfg.models = {"QV"};
    EXPECT_THROW(run_backtest(r, cfg), ParameterError);  // benchmark BV missing
}
