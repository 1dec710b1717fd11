#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "volcp/error.hpp"
#include "volcp/io.hpp"

using namespace volcp;

namespace {

// 2024-01-02 is a Tuesday.
std::int64_t session_open(int day_offset = 0) { return parse_timestamp("2024-01-02T09:30:00Z") + day_offset * 86400; }

TickTable minute_ticks(int minutes, int day_offset = 0, double start = 100.0) {
    TickTable t;
    for (int m = 1; m <= minutes; ++m) t.rows.push_back({session_open(day_offset) + m * 60, start + m});
    return t;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("volcp_test_" + name)).string();
}

}  // namespace

TEST(Timestamp, ParseFormats) {
    EXPECT_EQ(parse_timestamp("1970-01-01T00:00:00Z"), 0);
    EXPECT_EQ(parse_timestamp("1970-01-01 00:01"), 60);
    EXPECT_EQ(parse_timestamp("1970-01-01T01:00:00+01:00"), 0);
    EXPECT_EQ(parse_timestamp("1970-01-01T00:00:00.750-00:30"), 1800);
    EXPECT_EQ(parse_timestamp("1704188400"), 1704188400);
    EXPECT_EQ(format_timestamp(parse_timestamp("2024-01-02T09:30:05Z")), "2024-01-02T09:30:05Z");
    EXPECT_THROW(parse_timestamp("2024-13-01T00:00:00"), DataError);
    EXPECT_THROW(parse_timestamp("yesterday"), DataError);
}

TEST(Ingest, WellFormed) {
    std::istringstream in("timestamp,price\n2024-01-02T09:31:00Z,100\n2024-01-02T09:32:00Z,101\n"
                          "2024-01-02T09:33:00Z,102\n");
    const auto t = ingest_csv(in);
    EXPECT_EQ(t.rows.size(), 3u);
    EXPECT_EQ(t.rejected, 0u);
}

TEST(Ingest, NegativePriceRejected) {
    std::istringstream in("timestamp,price\n2024-01-02T09:31:00Z,100\n2024-01-02T09:32:00Z,-1\n"
                          "2024-01-02T09:33:00Z,102\n");
    const auto t = ingest_csv(in);
    EXPECT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(t.rejected, 1u);
}

TEST(Ingest, CustomColumnsAndErrors) {
    std::istringstream in("mid,ts\n100,2024-01-02T09:31:00Z\n");
    EXPECT_EQ(ingest_csv(in, CsvSchema{"ts", "mid"}).rows.size(), 1u);
    std::istringstream bad("timestamp,price\n2024-01-02T09:31:00Z,abc\n");
    EXPECT_THROW(ingest_csv(bad), DataError);
    std::istringstream missing("time,price\n");
    EXPECT_THROW(ingest_csv(missing), DataError);
    EXPECT_THROW(ingest_csv("/nonexistent/ticks.csv"), IoError);
}

TEST(Ingest, StableSortIsIdempotent) {
    std::istringstream in("timestamp,price\n2024-01-02T09:33:00Z,3\n2024-01-02T09:31:00Z,1\n"
                          "2024-01-02T09:33:00Z,4\n2024-01-02T09:32:00Z,2\n");
    const auto t = ingest_csv(in);
    ASSERT_EQ(t.rows.size(), 4u);
    EXPECT_EQ(t.rows[0].price, 1.0);
    EXPECT_EQ(t.rows[2].price, 3.0);
    EXPECT_EQ(t.rows[3].price, 4.0);
    const auto path = temp_path("ticks.csv");
    write_ticks_csv(path, t);
    const auto again = ingest_csv(path);
    ASSERT_EQ(again.rows.size(), t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        EXPECT_EQ(again.rows[i].time, t.rows[i].time);
        EXPECT_EQ(again.rows[i].price, t.rows[i].price);
    }
    std::filesystem::remove(path);
}

TEST(Bars, CountsPerSession) {
    EXPECT_EQ(bars_per_session(1), 390u);
    EXPECT_EQ(bars_per_session(5), 78u);
    EXPECT_EQ(bars_per_session(15), 26u);
    EXPECT_EQ(bars_per_session(30), 13u);
    EXPECT_EQ(bars_per_session(60), 7u);
    EXPECT_THROW(bars_per_session(10), ParameterError);
}

TEST(Bars, FullDayAtOneMinute) {
    const auto b = to_bars(minute_ticks(390), 1);
    EXPECT_EQ(b.bars.size(), 390u);
    EXPECT_EQ(b.bars.back().close, 490.0);
}

TEST(Bars, FiveMinuteClosesAreEveryFifthTick) {
    const auto b = to_bars(minute_ticks(390), 5);
    ASSERT_EQ(b.bars.size(), 78u);
    for (std::size_t k = 0; k < 78; ++k) EXPECT_EQ(b.bars[k].close, 100.0 + 5.0 * (k + 1));
}

TEST(Bars, GapIsForwardFilled) {
    auto t = minute_ticks(390);
    // Remove minutes 11..25: bars 2, 3 and 4 at 5-minute frequency are empty.
    t.rows.erase(t.rows.begin() + 10, t.rows.begin() + 25);
    const auto b = to_bars(t, 5);
    EXPECT_EQ(b.bars[1].close, 110.0);
    EXPECT_EQ(b.bars[2].close, 110.0);
    EXPECT_EQ(b.bars[3].close, 110.0);
    EXPECT_EQ(b.bars[4].close, 110.0);
    EXPECT_EQ(b.bars[5].close, 130.0);
}

TEST(Bars, LeadingEmptyBarsUseFirstPrice) {
    TickTable t;
    t.rows.push_back({session_open() + 20 * 60, 50.0});
    const auto b = to_bars(t, 5);
    EXPECT_EQ(b.bars.front().close, 50.0);
    EXPECT_EQ(b.bars.back().close, 50.0);
}

TEST(Bars, OutOfSessionTicksIgnoredAndEmptyWeekdayDropped) {
    auto t = minute_ticks(390);
    t.rows.push_back({session_open() - 3600, 1.0});
    const auto next = minute_ticks(390, 2);  // Thursday; Wednesday has no ticks
    t.rows.insert(t.rows.end(), next.rows.begin(), next.rows.end());
    const auto b = to_bars(t, 30);
    EXPECT_EQ(b.bars.size(), 26u);
    EXPECT_EQ(b.dropped_sessions, 1u);
    EXPECT_EQ(b.bars.front().close, 130.0);
}

TEST(Bars, UtcOffsetShiftsSession) {
    TickTable t;
    // 14:31 UTC is 09:31 at UTC-5.
    for (int m = 1; m <= 390; ++m) t.rows.push_back({session_open() + 5 * 3600 + m * 60, 1.0 + m});
    EXPECT_EQ(to_bars(t, 60, -300).bars.size(), 7u);
}

TEST(Returns, TwoSessionsOfThreeBars) {
    BarSeries b;
    b.frequency = 5;
    b.bars = {{1, 0, 100}, {1, 1, 101}, {1, 2, 100}, {2, 0, 200}, {2, 1, 202}, {2, 2, 200}};
    const auto r = bars_to_returns(b);
    ASSERT_EQ(r.size(), 4u);
    EXPECT_EQ(r.session_boundaries, std::vector<std::size_t>{2});
    EXPECT_NEAR(r.returns[0], std::log(1.01), 1e-15);
    EXPECT_NEAR(r.returns[2], std::log(1.01), 1e-15);
}

TEST(Returns, ConstantPricesGiveZeros) {
    BarSeries b;
    for (std::size_t k = 0; k < 10; ++k) b.bars.push_back({1, k, 42.0});
    for (double v : bars_to_returns(b).returns) EXPECT_EQ(v, 0.0);
}

TEST(Returns, SplitApplyInvariance) {
    std::mt19937_64 g(1);
    std::uniform_real_distribution<double> u(90, 110);
    BarSeries all;
    std::vector<double> separate;
    for (std::int64_t day = 0; day < 4; ++day) {
        BarSeries one;
        for (std::size_t k = 0; k < 13; ++k) one.bars.push_back({day, k, u(g)});
        const auto r = bars_to_returns(one).returns;
        separate.insert(separate.end(), r.begin(), r.end());
        all.bars.insert(all.bars.end(), one.bars.begin(), one.bars.end());
    }
    const auto r = bars_to_returns(all);
    EXPECT_EQ(r.returns, separate);
    EXPECT_EQ(r.session_boundaries, (std::vector<std::size_t>{12, 24, 36}));
}

TEST(Returns, AllSingletonSessions) {
    BarSeries b;
    b.bars = {{1, 0, 100}, {2, 0, 101}};
    EXPECT_THROW(bars_to_returns(b), DataError);
}

TEST(Json, SegmentationRoundTrip) {
    std::mt19937_64 g(2);
    std::normal_distribution<double> nd(1.0, 0.3);
    std::vector<double> y(200);
    for (auto& v : y) v = nd(g);
    const auto seg = make_segmentation(y, {37, 120});
    const auto path = temp_path("seg.json");
    write_json(path, to_json(seg));
    const auto back = segmentation_from_json(read_json(path));
    EXPECT_EQ(back.n, seg.n);
    EXPECT_EQ(back.breakpoints, seg.breakpoints);
    ASSERT_EQ(back.levels.size(), seg.levels.size());
    for (std::size_t i = 0; i < seg.levels.size(); ++i) EXPECT_EQ(back.levels[i], round12(seg.levels[i]));
    EXPECT_EQ(back.cost, round12(seg.cost));
    EXPECT_EQ(to_json(back).dump(), to_json(seg).dump());
    std::filesystem::remove(path);
}

TEST(Json, SchemaVersionAndNonFinite) {
    HausdorffResult h;
    h.b_given_a = INFINITY;
    const auto j = to_json(h);
    EXPECT_EQ(j["schema_version"], kSchemaVersion);
    EXPECT_TRUE(j["d_estimate_given_truth"].is_null());
    EXPECT_EQ(fmt_num(1.0 / 3.0), "0.333333333333");
}

TEST(Config, ParsesSections) {
    const auto c = Config::from_string(
        "[simulate]\nn = 100\ndt = 0.5\nseed = 7\nbreakpoints = 40, 70\nlevels = 0.1, 0.2, 0.1\n"
        "[forecast]\nwindow = 50\nhorizon = 5\nmodels = QV, BV\nselection = fixed\n");
    const auto s = sim_spec_from_config(c);
    EXPECT_EQ(s.n, 100u);
    EXPECT_EQ(s.seed, 7u);
    EXPECT_EQ(s.vol.breakpoints, (std::vector<std::size_t>{40, 70}));
    EXPECT_EQ(s.vol.levels.size(), 3u);
    const auto b = backtest_from_config(c);
    EXPECT_EQ(b.window, 50u);
    EXPECT_EQ(b.models, (std::vector<std::string>{"QV", "BV"}));
    EXPECT_EQ(b.selection, Selection::Fixed);
    EXPECT_EQ(Config::from_string("[a]\nx = 1\n").get_size("a.x", 0), 1u);
    EXPECT_THROW(Config::from_string("[a]\nx = 1.5\n").get_size("a.x", 0), ParameterError);
    EXPECT_THROW(Config::from_string("[a]\nx = abc\n").get("a.x", 0.0), ParameterError);
    EXPECT_THROW(selection_from("best"), ParameterError);
}
