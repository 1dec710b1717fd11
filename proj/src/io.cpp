#include "volcp/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "volcp/error.hpp"

namespace volcp {

using nlohmann::json;

std::string fmt_num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double round12(double v) {
    if (!std::isfinite(v)) return v;
    return std::strtod(fmt_num(v).c_str(), nullptr);
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name, const std::string& file) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw DataError(file + ": missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read '" + path + "'");
    return in;
}

json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return round12(v);
}

json num_array(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(num(x));
    return a;
}

}  // namespace

// ---- timestamps ----

std::int64_t parse_timestamp(const std::string& raw) {
    const std::string s = trim(raw);
    double epoch = 0.0;
    if (s.find('-') == std::string::npos && parse_double(s, epoch)) {
        return static_cast<std::int64_t>(std::floor(epoch));
    }
    int y = 0, mo = 0, d = 0, h = 0, mi = 0;
    double sec = 0.0;
    int consumed = 0;
    char sep = 0;
    const int got = std::sscanf(s.c_str(), "%d-%d-%d%c%d:%d%n", &y, &mo, &d, &sep, &h, &mi, &consumed);
    if (got < 6 || (sep != ' ' && sep != 'T')) throw DataError("bad timestamp '" + s + "'");
    std::string rest = s.substr(static_cast<std::size_t>(consumed));
    if (!rest.empty() && rest[0] == ':') {
        std::size_t used = 0;
        try {
            sec = std::stod(rest.substr(1), &used);
        } catch (const std::exception&) {
            throw DataError("bad timestamp '" + s + "'");
        }
        rest = rest.substr(1 + used);
    }
    int offset_min = 0;
    if (rest == "Z" || rest.empty()) {
        offset_min = 0;
    } else if ((rest[0] == '+' || rest[0] == '-') && rest.size() == 6 && rest[3] == ':') {
        const int oh = std::stoi(rest.substr(1, 2));
        const int om = std::stoi(rest.substr(4, 2));
        offset_min = (rest[0] == '+' ? 1 : -1) * (oh * 60 + om);
    } else {
        throw DataError("bad timestamp '" + s + "'");
    }
    using namespace std::chrono;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || h < 0 || h > 23 || mi < 0 || mi > 59 || sec < 0.0 || sec >= 61.0) {
        throw DataError("bad timestamp '" + s + "'");
    }
    const std::int64_t days = sys_days{ymd}.time_since_epoch().count();
    return days * 86400 + h * 3600 + mi * 60 + static_cast<std::int64_t>(std::floor(sec)) - offset_min * 60;
}

std::string format_timestamp(std::int64_t t) {
    using namespace std::chrono;
    std::int64_t days = t / 86400;
    std::int64_t rem = t % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    const year_month_day ymd{sys_days{std::chrono::days{days}}};
    char buf[40];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), static_cast<int>(rem / 3600),
                  static_cast<int>(rem / 60 % 60), static_cast<int>(rem % 60));
    return buf;
}

// ---- ticks ----

TickTable ingest_csv(std::istream& in, const CsvSchema& schema, const std::string& source) {
    std::string line;
    if (!std::getline(in, line)) throw DataError(source + ": empty file");
    const auto header = split_csv(line);
    const std::size_t ti = column_index(header, schema.timestamp_column, source);
    const std::size_t pi = column_index(header, schema.price_column, source);

    TickTable t;
    t.source = source;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto cells = split_csv(line);
        double price = 0.0;
        if (cells.size() <= std::max(ti, pi) || !parse_double(cells[pi], price) || !std::isfinite(price) ||
            price <= 0.0) {
            ++t.rejected;
            continue;
        }
        try {
            t.rows.push_back(Tick{parse_timestamp(cells[ti]), price});
        } catch (const DataError&) {
            ++t.rejected;
        }
    }
    if (t.rows.empty()) throw DataError(source + ": no valid rows");
    std::stable_sort(t.rows.begin(), t.rows.end(), [](const Tick& a, const Tick& b) { return a.time < b.time; });
    return t;
}

TickTable ingest_csv(const std::string& path, const CsvSchema& schema) {
    std::ifstream in = open_in(path);
    return ingest_csv(in, schema, path);
}

void write_ticks_csv(const std::string& path, const TickTable& t) {
    std::ofstream out = open_out(path);
    out << "timestamp,price\n";
    for (const auto& r : t.rows) out << format_timestamp(r.time) << ',' << fmt_num(r.price) << '\n';
}

// ---- bars ----

std::size_t bars_per_session(int frequency) {
    detail::require(frequency == 1 || frequency == 5 || frequency == 15 || frequency == 30 || frequency == 60,
                    "bar frequency must be one of 1, 5, 15, 30, 60 minutes");
    return static_cast<std::size_t>((390 + frequency - 1) / frequency);
}

BarSeries to_bars(const TickTable& ticks, int frequency, int utc_offset_minutes) {
    const std::size_t per = bars_per_session(frequency);
    constexpr std::int64_t kOpen = (9 * 60 + 30) * 60;
    constexpr std::int64_t kClose = 16 * 3600;

    // Group in-session ticks by local day.
    std::map<std::int64_t, std::vector<const Tick*>> sessions;
    std::int64_t first_day = 0, last_day = -1;
    bool any = false;
    for (const auto& tk : ticks.rows) {
        const std::int64_t local = tk.time + static_cast<std::int64_t>(utc_offset_minutes) * 60;
        std::int64_t day = local / 86400;
        std::int64_t sod = local % 86400;
        if (sod < 0) {
            sod += 86400;
            --day;
        }
        if (!any) first_day = day;
        any = true;
        last_day = std::max(last_day, day);
        first_day = std::min(first_day, day);
        if (sod < kOpen || sod > kClose) continue;
        sessions[day].push_back(&tk);
    }

    BarSeries out;
    out.frequency = frequency;
    // Weekdays only count as dropped sessions when they have no ticks at all.
    if (any) {
        for (std::int64_t d = first_day; d <= last_day; ++d) {
            const auto wd = std::chrono::weekday{std::chrono::sys_days{std::chrono::days{d}}};
            if (wd.iso_encoding() <= 5 && sessions.find(d) == sessions.end()) {
                ++out.dropped_sessions;
                std::cerr << "warning: session " << format_timestamp(d * 86400).substr(0, 10)
                          << " has no ticks, dropped\n";
            }
        }
    }

    const std::int64_t width = static_cast<std::int64_t>(frequency) * 60;
    for (const auto& [day, list] : sessions) {
        std::size_t next = 0;
        double close = list.front()->price;
        for (std::size_t k = 0; k < per; ++k) {
            const std::int64_t end = std::min(kOpen + width * static_cast<std::int64_t>(k + 1), kClose);
            while (next < list.size()) {
                const std::int64_t local = list[next]->time + static_cast<std::int64_t>(utc_offset_minutes) * 60;
                if (local - day * 86400 > end) break;
                close = list[next]->price;
                ++next;
            }
            out.bars.push_back(Bar{day, k, close});
        }
    }
    return out;
}

ReturnSeries bars_to_returns(const BarSeries& bars) {
    ReturnSeries r;
    r.interval = std::to_string(bars.frequency) + "min";
    std::size_t i = 0;
    while (i < bars.bars.size()) {
        std::size_t j = i;
        while (j + 1 < bars.bars.size() && bars.bars[j + 1].day == bars.bars[i].day) ++j;
        if (j > i) {
            if (!r.returns.empty()) r.session_boundaries.push_back(r.returns.size());
            for (std::size_t k = i + 1; k <= j; ++k) {
                r.returns.push_back(std::log(bars.bars[k].close) - std::log(bars.bars[k - 1].close));
            }
        }
        i = j + 1;
    }
    detail::require_data(!r.returns.empty(), "no session holds two bars");
    return r;
}

// ---- CSV columns ----

std::vector<double> read_csv_column(const std::string& path, const std::string& column) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    const std::size_t ci = column_index(split_csv(line), column, path);
    std::vector<double> out;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto cells = split_csv(line);
        double v = 0.0;
        if (cells.size() <= ci || !parse_double(cells[ci], v) || !std::isfinite(v)) {
            throw DataError(path + ": bad value in row " + std::to_string(row));
        }
        out.push_back(v);
    }
    return out;
}

ReturnSeries read_returns_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    const auto header = split_csv(line);
    in.close();
    if (std::find(header.begin(), header.end(), "return") != header.end()) {
        ReturnSeries r;
        r.returns = read_csv_column(path, "return");
        r.validate();
        return r;
    }
    if (std::find(header.begin(), header.end(), "log_price") != header.end()) {
        return log_returns(read_csv_column(path, "log_price"));
    }
    throw DataError(path + ": expected a 'return' or 'log_price' column");
}

// ---- simulation output ----

void write_path_csv(const std::string& path, const LogPricePath& p) {
    std::ofstream out = open_out(path);
    out << "index,log_price\n";
    for (std::size_t i = 0; i < p.log_prices.size(); ++i) out << i << ',' << fmt_num(p.log_prices[i]) << '\n';
}

json path_truth_json(const LogPricePath& p, const SimSpec& spec) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = spec.n;
    j["seed"] = spec.seed;
    j["breakpoints"] = p.true_breakpoints;
    j["levels"] = num_array(spec.vol.levels);
    j["jump_times"] = p.jump_times;
    j["jump_sizes"] = num_array(p.jump_sizes);
    return j;
}

void write_proxy_csv(const std::string& path, const ProxySeries& p) {
    std::ofstream out = open_out(path);
    out << "index,value,kind\n";
    const std::string kind(to_string(p.kind));
    for (std::size_t i = 0; i < p.size(); ++i) out << i << ',' << fmt_num(p.values[i]) << ',' << kind << '\n';
}

// ---- result JSON ----

json to_json(const Segmentation& s) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = s.n;
    j["breakpoints"] = s.breakpoints;
    j["levels"] = num_array(s.levels);
    j["J"] = num(s.cost);
    return j;
}

json to_json(const LstvStarResult& r) {
    json j = to_json(r.segmentation);
    j["K_hat"] = r.table.k_hat;
    j["candidates"] = r.candidates;
    j["J_table"] = num_array(r.table.cost);
    j["rho_table"] = num_array(r.table.rho);
    return j;
}

Segmentation segmentation_from_json(const json& j) {
    try {
        Segmentation s;
        s.n = j.at("n").get<std::size_t>();
        s.breakpoints = j.at("breakpoints").get<std::vector<std::size_t>>();
        s.levels = j.at("levels").get<std::vector<double>>();
        s.cost = j.at("J").get<double>();
        detail::require_data(s.levels.size() == s.breakpoints.size() + 1, "segmentation: level count mismatch");
        return s;
    } catch (const json::exception& e) {
        throw DataError(std::string("segmentation JSON: ") + e.what());
    }
}

json to_json(const LstvPath& p) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = p.n;
    json ev = json::array();
    for (const auto& e : p.events) {
        ev.push_back({{"step", e.step},
                      {"action", e.action == PathAction::Add ? "ADD" : "REMOVE"},
                      {"breakpoint", e.breakpoint},
                      {"lambda", num(e.lambda)}});
    }
    j["events"] = ev;
    j["knots"] = num_array(p.knots);
    j["candidates"] = p.candidates;
    return j;
}

json to_json(const HausdorffResult& h) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["d_truth_given_estimate"] = num(h.a_given_b);
    j["d_estimate_given_truth"] = num(h.b_given_a);
    j["hausdorff"] = num(h.symmetric);
    j["missed_all"] = h.missed_all;
    return j;
}

json to_json(const ForecastReport& r) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["window"] = r.window;
    j["step"] = r.step;
    j["horizon"] = r.horizon;
    j["benchmark"] = r.benchmark;
    j["windows"] = r.origins.size();
    json models = json::array();
    for (const auto& m : r.models) {
        json mj;
        mj["name"] = m.name;
        mj["ase"] = num(m.ase);
        mj["pct_change_vs_benchmark"] = num(m.improvement.literal);
        mj["improvement_pct"] = num(m.improvement.display);
        if (m.dm) {
            mj["dm_statistic"] = num(m.dm->statistic);
            mj["dm_p_value"] = num(m.dm->p_value);
            mj["dm_degenerate"] = m.dm->degenerate;
        }
        if (m.ewma_weight) mj["ewma_weight"] = num(*m.ewma_weight);
        models.push_back(mj);
    }
    j["models"] = models;
    return j;
}

json to_json(const std::vector<McRow>& rows, const McConfig& cfg) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = cfg.n;
    j["xi"] = num(cfg.xi);
    j["selection"] = cfg.selection == Selection::Fixed ? "fixed" : "rho";
    j["seed"] = cfg.seed;
    json a = json::array();
    for (const auto& r : rows) {
        a.push_back({{"model", r.model},
                     {"K_star", r.k_star},
                     {"K_max", r.k_max},
                     {"sims", r.sims},
                     {"mean_hausdorff_pct", num(r.mean_pct)},
                     {"median_hausdorff_pct", num(r.median_pct)},
                     {"sd_hausdorff_pct", num(r.sd_pct)},
                     {"mean_K_hat", num(r.mean_k_hat)},
                     {"missed", r.missed}});
    }
    j["rows"] = a;
    return j;
}

void write_forecasts_csv(const std::string& path, const ForecastReport& r) {
    std::ofstream out = open_out(path);
    out << "window_end,model,forecast,realized\n";
    for (const auto& m : r.models) {
        for (std::size_t i = 0; i < r.origins.size(); ++i) {
            out << r.origins[i] << ',' << m.name << ',' << fmt_num(m.forecasts[i]) << ',' << fmt_num(r.realized[i])
                << '\n';
        }
    }
}

ForecastReport read_forecasts_csv(const std::string& path, const std::string& benchmark, std::size_t horizon) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    const auto header = split_csv(line);
    const std::size_t ti = column_index(header, "window_end", path);
    const std::size_t mi = column_index(header, "model", path);
    const std::size_t fi = column_index(header, "forecast", path);
    const std::size_t ri = column_index(header, "realized", path);

    ForecastReport rep;
    rep.benchmark = benchmark;
    rep.horizon = horizon;
    std::map<std::string, std::map<std::size_t, std::pair<double, double>>> rows;
    std::vector<std::string> order;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto cells = split_csv(line);
        double t = 0.0, f = 0.0, r = 0.0;
        if (cells.size() <= std::max({ti, mi, fi, ri}) || !parse_double(cells[ti], t) || t < 0.0 ||
            t != std::floor(t) || !parse_double(cells[fi], f) || !parse_double(cells[ri], r)) {
            throw DataError(path + ": bad row " + std::to_string(row));
        }
        const std::string& name = cells[mi];
        if (rows.find(name) == rows.end()) order.push_back(name);
        if (!rows[name].emplace(static_cast<std::size_t>(t), std::make_pair(f, r)).second) {
            throw DataError(path + ": duplicate window " + cells[ti] + " for model '" + name + "'");
        }
    }
    detail::require_data(!order.empty(), path + ": no forecasts");
    for (const auto& [t, fr] : rows.at(order.front())) {
        rep.origins.push_back(t);
        rep.realized.push_back(fr.second);
    }
    for (const auto& name : order) {
        const auto& m = rows.at(name);
        detail::require_data(m.size() == rep.origins.size(), path + ": model '" + name + "' covers different windows");
        ModelResult mr;
        mr.name = name;
        std::size_t i = 0;
        for (const auto& [t, fr] : m) {
            detail::require_data(t == rep.origins[i] && fr.second == rep.realized[i],
                                 path + ": model '" + name + "' disagrees on window " + std::to_string(t));
            mr.forecasts.push_back(fr.first);
            ++i;
        }
        rep.models.push_back(std::move(mr));
    }
    return rep;
}

void write_xy_csv(const std::string& path, const std::string& x_name, const std::string& y_name,
                  const std::vector<double>& x, const std::vector<double>& y) {
    detail::require_data(x.size() == y.size(), "plot data: length mismatch");
    std::ofstream out = open_out(path);
    out << x_name << ',' << y_name << '\n';
    for (std::size_t i = 0; i < x.size(); ++i) out << fmt_num(x[i]) << ',' << fmt_num(y[i]) << '\n';
}

void write_mc_csv(const std::string& path, const std::vector<McRow>& rows) {
    std::ofstream out = open_out(path);
    out << "model,K_star,K_max,sims,mean_hausdorff_pct,median_hausdorff_pct,sd_hausdorff_pct,mean_K_hat,missed\n";
    for (const auto& r : rows) {
        out << r.model << ',' << r.k_star << ',' << r.k_max << ',' << r.sims << ',' << fmt_num(r.mean_pct) << ','
            << fmt_num(r.median_pct) << ',' << fmt_num(r.sd_pct) << ',' << fmt_num(r.mean_k_hat) << ',' << r.missed
            << '\n';
    }
}

void write_json(const std::string& path, const json& j) {
    if (path == "-") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
}

json read_json(const std::string& path) {
    std::ifstream in = open_in(path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw DataError(path + ": " + e.what());
    }
}

// ---- config ----

namespace {

void flatten(const boost::property_tree::ptree& t, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
    for (const auto& [key, child] : t) {
        const std::string name = prefix.empty() ? key : prefix + "." + key;
        if (child.empty()) {
            out.emplace_back(name, trim(child.data()));
        } else {
            flatten(child, name, out);
        }
    }
}

}  // namespace

Config Config::from_string(const std::string& text) {
    std::istringstream in(text);
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ParameterError(std::string("config: ") + e.what());
    }
    Config c;
    flatten(tree, "", c.entries_);
    return c;
}

Config Config::load(const std::string& path) {
    std::ifstream in = open_in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

const std::string* Config::find(const std::string& key) const {
    for (const auto& [k, v] : entries_) {
        if (k == key) return &v;
    }
    return nullptr;
}

bool Config::has(const std::string& key) const { return find(key) != nullptr; }

std::string Config::get(const std::string& key, const std::string& fallback) const {
    const std::string* v = find(key);
    return v ? *v : fallback;
}

double Config::get(const std::string& key, double fallback) const {
    const std::string* v = find(key);
    if (!v) return fallback;
    double out = 0.0;
    if (!parse_double(*v, out)) throw ParameterError("config key '" + key + "' is not a number: '" + *v + "'");
    return out;
}

std::size_t Config::get_size(const std::string& key, std::size_t fallback) const {
    const std::string* v = find(key);
    if (!v) return fallback;
    const double d = get(key, 0.0);
    if (d < 0.0 || d != std::floor(d)) throw ParameterError("config key '" + key + "' must be a count");
    return static_cast<std::size_t>(d);
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
    const std::string* v = find(key);
    if (!v) return fallback;
    try {
        std::size_t used = 0;
        const auto out = std::stoull(*v, &used);
        if (used != v->size()) throw std::invalid_argument("trailing characters");
        return out;
    } catch (const std::exception&) {
        throw ParameterError("config key '" + key + "' must be an unsigned integer");
    }
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    const std::string* v = find(key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") return true;
    if (*v == "false" || *v == "0" || *v == "no" || *v == "off") return false;
    throw ParameterError("config key '" + key + "' must be a boolean");
}

std::vector<std::string> Config::get_names(const std::string& key, const std::vector<std::string>& fallback) const {
    const std::string* v = find(key);
    if (!v) return fallback;
    std::vector<std::string> out;
    for (const auto& cell : split_csv(*v)) {
        if (!cell.empty()) out.push_back(cell);
    }
    return out;
}

std::vector<double> Config::get_list(const std::string& key) const {
    std::vector<double> out;
    for (const auto& cell : get_names(key, {})) {
        double d = 0.0;
        if (!parse_double(cell, d)) throw ParameterError("config key '" + key + "' has a non-numeric entry");
        out.push_back(d);
    }
    return out;
}

SimSpec sim_spec_from_config(const Config& c) {
    SimSpec s;
    s.n = c.get_size("simulate.n", 3900);
    s.drift = c.get("simulate.drift", 0.0);
    s.jump_intensity = c.get("simulate.jump_intensity", 0.0);
    s.jump_mean = c.get("simulate.jump_mean", 0.0);
    s.jump_sd = c.get("simulate.jump_sd", 0.0);
    s.dt = c.get("simulate.dt", 1.0);
    s.seed = c.get_u64("simulate.seed", 1);
    s.initial_price = c.get("simulate.initial_price", 1.0);
    for (double b : c.get_list("simulate.breakpoints")) {
        detail::require(b >= 0.0 && b == std::floor(b), "breakpoints must be nonnegative integers");
        s.vol.breakpoints.push_back(static_cast<std::size_t>(b));
    }
    s.vol.levels = c.get_list("simulate.levels");
    s.validate();
    return s;
}

Selection selection_from(const std::string& s) {
    if (s == "rho") return Selection::RhoRule;
    if (s == "fixed") return Selection::Fixed;
    throw ParameterError("selection must be 'rho' or 'fixed', got '" + s + "'");
}

BacktestConfig backtest_from_config(const Config& c) {
    BacktestConfig b;
    b.window = c.get_size("forecast.window", 0);
    b.horizon = c.get_size("forecast.horizon", 1);
    b.step = c.get_size("forecast.step", 0);
    b.models = c.get_names("forecast.models", b.models);
    b.benchmark = c.get("forecast.benchmark", b.benchmark);
    b.k_max = c.get_size("forecast.k_max", b.k_max);
    b.xi = c.get("forecast.xi", b.xi);
    b.selection = selection_from(c.get("forecast.selection", std::string("rho")));
    b.bv_correction = c.get_bool("forecast.bv_correction", true);
    if (c.has("forecast.ewma_weight")) b.ewma_weight = c.get("forecast.ewma_weight", 0.0);
    b.validate();
    return b;
}

McConfig mc_from_config(const Config& c) {
    McConfig m;
    m.sims = c.get_size("mc_table.sims", m.sims);
    m.k_star = c.get_size("mc_table.k_star", m.k_star);
    m.k_max = c.get_size("mc_table.k_max", m.k_star);
    m.n = c.get_size("mc_table.n", m.n);
    m.xi = c.get("mc_table.xi", m.xi);
    m.selection = selection_from(c.get("mc_table.selection", std::string("fixed")));
    m.models = c.get_names("mc_table.models", m.models);
    m.seed = c.get_u64("mc_table.seed", m.seed);
    m.threads = c.get_size("mc_table.threads", 0);
    m.validate();
    return m;
}

}  // namespace volcp
