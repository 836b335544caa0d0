#include "windmarket/wind.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "windmarket/csv.hpp"
#include "windmarket/errors.hpp"

namespace windmarket {

void validate_curve(const TurbinePowerCurve& c) {
    if (!(c.rated_power_mw > 0.0)) throw ValidationError("power curve: rated power must be > 0");
    if (!(c.cut_in_ms >= 0.0) || !(c.cut_out_ms > c.cut_in_ms))
        throw ValidationError("power curve: need 0 <= cut_in < cut_out");
    if (c.points.empty()) throw ValidationError("power curve: no points");
    double prev = -1.0;
    for (const auto& [v, p] : c.points) {
        if (!(v > prev)) throw ValidationError("power curve: speeds must increase strictly");
        if (v < c.cut_in_ms || v > c.cut_out_ms)
            throw ValidationError("power curve: point speeds must lie in [cut_in, cut_out]");
        if (p < 0.0 || p > c.rated_power_mw)
            throw ValidationError("power curve: powers must lie in [0, rated]");
        prev = v;
    }
}

void validate_speeds(const WindSpeedSeries& s) {
    for (double v : s.speeds_ms) {
        if (!std::isfinite(v) || v < 0.0)
            throw ValidationError("wind series '" + s.site + "': speeds must be finite and >= 0");
    }
}

WindStats summarize(const WindSpeedSeries& series) {
    if (series.speeds_ms.empty()) throw ValidationError("summarize: empty wind series");
    validate_speeds(series);
    const auto& v = series.speeds_ms;
    WindStats s;
    double sum = 0.0;
    for (double x : v) sum += x;
    s.mean = sum / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.std_dev = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
    std::vector<double> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    s.min = sorted.front();
    s.max = sorted.back();
    std::size_t n = sorted.size();
    s.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    return s;
}

std::vector<std::pair<double, std::size_t>> histogram(const WindSpeedSeries& series,
                                                      double bin_width) {
    if (!(bin_width > 0.0)) throw ValidationError("histogram: bin width must be > 0");
    if (series.speeds_ms.empty()) throw ValidationError("histogram: empty wind series");
    validate_speeds(series);
    double max = *std::max_element(series.speeds_ms.begin(), series.speeds_ms.end());
    std::size_t bins = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(max / bin_width)));
    std::vector<std::pair<double, std::size_t>> out;
    out.reserve(bins);
    for (std::size_t k = 0; k < bins; ++k) out.emplace_back(static_cast<double>(k) * bin_width, 0);
    for (double v : series.speeds_ms) {
        std::size_t k = static_cast<std::size_t>(v / bin_width);
        if (k >= bins) k = bins - 1;  // the final bin is right-closed
        ++out[k].second;
    }
    return out;
}

double turbine_power(const TurbinePowerCurve& curve, double speed_ms) {
    if (speed_ms < curve.cut_in_ms || speed_ms >= curve.cut_out_ms) return 0.0;
    const auto& pts = curve.points;
    if (speed_ms <= pts.front().first) return pts.front().second;
    if (speed_ms >= pts.back().first) return pts.back().second;
    auto hi = std::upper_bound(pts.begin(), pts.end(), speed_ms,
                               [](double v, const auto& pt) { return v < pt.first; });
    auto lo = hi - 1;
    double f = (speed_ms - lo->first) / (hi->first - lo->first);
    return lo->second + f * (hi->second - lo->second);
}

WindPowerSeries farm_power(const TurbinePowerCurve& curve, const WindSpeedSeries& day,
                           double installed_capacity_mw, const FarmOptions& opts) {
    validate_curve(curve);
    validate_speeds(day);
    if (installed_capacity_mw < 0.0)
        throw ValidationError("farm_power: installed capacity must be >= 0");
    if (day.speeds_ms.size() != 24)
        throw ValidationError("farm_power: expected a 24-hour speed series, got " +
                              std::to_string(day.speeds_ms.size()) + " entries");
    double scale = installed_capacity_mw / curve.rated_power_mw;
    if (opts.integer_turbines) scale = std::floor(scale + 1e-9);
    WindPowerSeries out;
    out.installed_capacity_mw = opts.integer_turbines ? scale * curve.rated_power_mw
                                                      : installed_capacity_mw;
    out.power_mw.reserve(day.speeds_ms.size());
    for (double v : day.speeds_ms) out.power_mw.push_back(scale * turbine_power(curve, v));
    return out;
}

TurbinePowerCurve default_power_curve() {
    TurbinePowerCurve c;
    c.name = "v90-2mw-approx";
    c.rated_power_mw = 2.0;
    c.cut_in_ms = 4.0;
    c.cut_out_ms = 25.0;
    c.points = {{4.0, 0.07},  {5.0, 0.20},  {6.0, 0.36},  {7.0, 0.58},
                {8.0, 0.91},  {9.0, 1.27},  {10.0, 1.60}, {11.0, 1.86},
                {12.0, 1.96}, {13.0, 2.00}, {20.0, 2.00}, {25.0, 2.00}};
    return c;
}

namespace {

std::vector<int> hour_columns(const csv::Table& t, const std::filesystem::path& path) {
    std::vector<int> cols;
    int present = 0;
    for (int h = 0; h < 24; ++h) {
        char name[8];
        std::snprintf(name, sizeof(name), "h%02d", h);
        int c = t.column(name);
        cols.push_back(c);
        present += c >= 0 ? 1 : 0;
    }
    if (present != 24)
        throw ParseError(path.string() + ": horizon must be 24 (found " + std::to_string(present) +
                         " hour columns h00..h23)");
    return cols;
}

}  // namespace

std::vector<WindDay> load_wind(const std::filesystem::path& path) {
    csv::Table t = csv::read_table(path);
    if (t.rows.empty()) throw ParseError(path.string() + ": no wind rows");
    int c_label = t.require_column("day_label");
    auto cols = hour_columns(t, path);
    std::vector<WindDay> days;
    std::set<std::string> labels;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        WindDay d;
        d.day_label = t.cell(r, c_label);
        if (!labels.insert(d.day_label).second)
            throw ValidationError(path.string() + ": duplicate day label '" + d.day_label + "'");
        for (int h = 0; h < 24; ++h) {
            double v = csv::to_double(t, r, cols[static_cast<std::size_t>(h)]);
            if (!std::isfinite(v) || v < 0.0)
                throw ValidationError(path.string() + ":" + std::to_string(t.line_numbers[r]) +
                                      ": wind speed must be finite and >= 0");
            d.speeds_ms.push_back(v);
        }
        days.push_back(std::move(d));
    }
    return days;
}

void write_wind(const std::vector<WindDay>& days, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(path.string() + ": cannot open file for writing");
    out << "day_label";
    for (int h = 0; h < 24; ++h) {
        char name[8];
        std::snprintf(name, sizeof(name), ",h%02d", h);
        out << name;
    }
    out << '\n';
    for (const auto& d : days) {
        out << d.day_label;
        for (double v : d.speeds_ms) out << ',' << csv::format_fixed(v, 3);
        out << '\n';
    }
}

WindSpeedSeries concat_series(const std::vector<WindDay>& days, const std::string& site) {
    WindSpeedSeries s;
    s.site = site;
    for (const auto& d : days) {
        for (std::size_t h = 0; h < d.speeds_ms.size(); ++h) {
            s.speeds_ms.push_back(d.speeds_ms[h]);
            char lab[8];
            std::snprintf(lab, sizeof(lab), ":h%02d", static_cast<int>(h));
            s.labels.push_back(d.day_label + lab);
        }
    }
    return s;
}

WindSpeedSeries day_series(const WindDay& day, const std::string& site) {
    WindSpeedSeries s;
    s.site = site.empty() ? day.day_label : site;
    s.speeds_ms = day.speeds_ms;
    return s;
}

TurbinePowerCurve load_curve(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string() + ": cannot open file");
    TurbinePowerCurve c;
    c.name = path.stem().string();
    std::string line;
    int line_no = 0;
    bool in_points = false;
    bool have_rated = false, have_cut_in = false, have_cut_out = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string a, b;
        if (!std::getline(ls, a, ',')) continue;
        std::getline(ls, b, ',');
        auto where = [&] { return path.string() + ":" + std::to_string(line_no) + ": "; };
        if (a.empty() || a[0] == '#') continue;
        if (!in_points) {
            try {
                if (a == "rated_power_mw") { c.rated_power_mw = std::stod(b); have_rated = true; continue; }
                if (a == "cut_in_ms") { c.cut_in_ms = std::stod(b); have_cut_in = true; continue; }
                if (a == "cut_out_ms") { c.cut_out_ms = std::stod(b); have_cut_out = true; continue; }
            } catch (const std::exception&) {
                throw ParseError(where() + "bad number '" + b + "'");
            }
            if (a == "speed_ms" && b == "power_mw") { in_points = true; continue; }
            throw ParseError(where() + "unexpected line '" + line + "'");
        }
        try {
            c.points.emplace_back(std::stod(a), std::stod(b));
        } catch (const std::exception&) {
            throw ParseError(where() + "bad curve point '" + line + "'");
        }
    }
    if (!have_rated || !have_cut_in || !have_cut_out)
        throw ParseError(path.string() + ": missing rated_power_mw/cut_in_ms/cut_out_ms header");
    validate_curve(c);
    return c;
}

void write_curve(const TurbinePowerCurve& c, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(path.string() + ": cannot open file for writing");
    out << "rated_power_mw," << csv::format_fixed(c.rated_power_mw, 3) << '\n';
    out << "cut_in_ms," << csv::format_fixed(c.cut_in_ms, 3) << '\n';
    out << "cut_out_ms," << csv::format_fixed(c.cut_out_ms, 3) << '\n';
    out << "speed_ms,power_mw\n";
    for (const auto& [v, p] : c.points)
        out << csv::format_fixed(v, 3) << ',' << csv::format_fixed(p, 4) << '\n';
}

void write_stats_csv(const WindStats& stats, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(path.string() + ": cannot open file for writing");
    out << "statistic,wind_speed_ms\n";
    out << "mean," << csv::format_fixed(stats.mean, 4) << '\n';
    out << "median," << csv::format_fixed(stats.median, 4) << '\n';
    out << "std_dev," << csv::format_fixed(stats.std_dev, 4) << '\n';
    out << "min," << csv::format_fixed(stats.min, 4) << '\n';
    out << "max," << csv::format_fixed(stats.max, 4) << '\n';
}

void write_histogram_csv(const std::vector<std::pair<double, std::size_t>>& bins,
                         const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(path.string() + ": cannot open file for writing");
    out << "bin_lower_ms,count\n";
    for (const auto& [edge, count] : bins)
        out << csv::format_fixed(edge, 3) << ',' << count << '\n';
}

}  // namespace windmarket
