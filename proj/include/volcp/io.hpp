#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "volcp/experiments.hpp"
#include "volcp/forecast.hpp"
#include "volcp/lstv.hpp"
#include "volcp/rdp.hpp"
#include "volcp/series.hpp"
#include "volcp/simulate.hpp"

namespace volcp {

constexpr int kSchemaVersion = 1;

// Formats with 12 significant digits.
std::string fmt_num(double v);
// Rounds to the value printed by fmt_num.
double round12(double v);

// ---- ticks and bars ----

struct Tick {
    std::int64_t time = 0;  // seconds since the Unix epoch, UTC
    double price = 0.0;
};

struct TickTable {
    std::vector<Tick> rows;
    std::string source;
    std::size_t rejected = 0;  // malformed or invalid rows skipped on ingest
};

struct CsvSchema {
    std::string timestamp_column = "timestamp";
    std::string price_column = "price";
};

// Parses "YYYY-MM-DD[ T]HH:MM[:SS[.fff]]" with an optional "Z" or "+HH:MM"
// suffix (no suffix = UTC), or plain epoch seconds. Throws DataError.
std::int64_t parse_timestamp(const std::string& s);
std::string format_timestamp(std::int64_t t);

// Reads, validates and stable-sorts a tick file.
TickTable ingest_csv(const std::string& path, const CsvSchema& schema = {});
TickTable ingest_csv(std::istream& in, const CsvSchema& schema = {}, const std::string& source = "stream");
void write_ticks_csv(const std::string& path, const TickTable& t);

struct Bar {
    std::int64_t day = 0;  // days since the epoch in session-local time
    std::size_t index = 0;
    double close = 0.0;
};

struct BarSeries {
    int frequency = 1;  // minutes
    std::vector<Bar> bars;
    std::size_t dropped_sessions = 0;
};

// Bars per 09:30-16:00 session: ceil(390 / frequency).
std::size_t bars_per_session(int frequency);

// Session-local time = UTC + utc_offset_minutes. Empty bars are forward
// filled, leading ones from the first price of the session; sessions without
// ticks are dropped.
BarSeries to_bars(const TickTable& ticks, int frequency, int utc_offset_minutes = 0);

// Log returns within sessions; overnight returns are excluded.
ReturnSeries bars_to_returns(const BarSeries& bars);

// ---- generic CSV columns ----

// Numeric column by header name.
std::vector<double> read_csv_column(const std::string& path, const std::string& column);
// Returns from a CSV holding either a "return" column or a "log_price" column.
ReturnSeries read_returns_csv(const std::string& path);

// ---- simulation ----

void write_path_csv(const std::string& path, const LogPricePath& p);
nlohmann::json path_truth_json(const LogPricePath& p, const SimSpec& spec);

// ---- results ----

void write_proxy_csv(const std::string& path, const ProxySeries& p);

nlohmann::json to_json(const Segmentation& s);
nlohmann::json to_json(const LstvStarResult& r);
Segmentation segmentation_from_json(const nlohmann::json& j);
nlohmann::json to_json(const LstvPath& p);
nlohmann::json to_json(const HausdorffResult& h);
nlohmann::json to_json(const ForecastReport& r);
nlohmann::json to_json(const std::vector<McRow>& rows, const McConfig& cfg);

void write_forecasts_csv(const std::string& path, const ForecastReport& r);
// Reads window_end,model,forecast,realized rows back into an unscored report.
// Every model must cover the same windows with the same realized values.
ForecastReport read_forecasts_csv(const std::string& path, const std::string& benchmark, std::size_t horizon);
void write_xy_csv(const std::string& path, const std::string& x_name, const std::string& y_name,
                  const std::vector<double>& x, const std::vector<double>& y);
void write_mc_csv(const std::string& path, const std::vector<McRow>& rows);

// Writes `j` (indented) followed by a newline; "-" writes to stdout.
void write_json(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

// ---- config files ----

// Flat key/value INI sections. Keys are looked up as "section.key".
class Config {
public:
    static Config load(const std::string& path);
    static Config from_string(const std::string& text);

    bool has(const std::string& key) const;
    std::string get(const std::string& key, const std::string& fallback) const;
    double get(const std::string& key, double fallback) const;
    std::size_t get_size(const std::string& key, std::size_t fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_list(const std::string& key) const;
    std::vector<std::string> get_names(const std::string& key, const std::vector<std::string>& fallback) const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
    const std::string* find(const std::string& key) const;
};

// "rho" or "fixed".
Selection selection_from(const std::string& s);

// [simulate] section to SimSpec.
SimSpec sim_spec_from_config(const Config& c);
BacktestConfig backtest_from_config(const Config& c);
McConfig mc_from_config(const Config& c);

}  // namespace volcp
