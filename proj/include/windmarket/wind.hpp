#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace windmarket {

// Hourly wind-speed record, either a single day or a concatenated multi-day series.
struct WindSpeedSeries {
    std::string site;
    std::vector<double> speeds_ms;
    std::vector<std::string> labels;  // optional, parallel to speeds when present
};

struct WindDay {
    std::string day_label;
    std::vector<double> speeds_ms;  // exactly 24 entries
};

struct WindStats {
    double mean = 0.0;
    double median = 0.0;
    double std_dev = 0.0;  // sample standard deviation, n-1 denominator
    double min = 0.0;
    double max = 0.0;
};

// Tabulated speed -> power map of one turbine. Zero below cut-in and at or
// above cut-out; piecewise linear between tabulated points inside the band.
struct TurbinePowerCurve {
    std::string name;
    double rated_power_mw = 0.0;
    double cut_in_ms = 0.0;
    double cut_out_ms = 0.0;
    std::vector<std::pair<double, double>> points;  // (speed m/s, power MW), strictly increasing speed
};

struct WindPowerSeries {
    double installed_capacity_mw = 0.0;
    std::vector<double> power_mw;
};

struct FarmOptions {
    // The capacity sweep is continuous, so fractional turbine counts are the
    // default; integer mode rounds the farm down to whole turbines.
    bool integer_turbines = false;
};

void validate_curve(const TurbinePowerCurve& c);
void validate_speeds(const WindSpeedSeries& s);

WindStats summarize(const WindSpeedSeries& series);  // throws ValidationError on empty series

// Left-closed right-open bins of the given width starting at 0, covering
// [0, max]; the final bin is right-closed. Returns (lower edge, count) pairs.
std::vector<std::pair<double, std::size_t>> histogram(const WindSpeedSeries& series,
                                                      double bin_width);

double turbine_power(const TurbinePowerCurve& curve, double speed_ms);

// Static farm output: capacity-ratio scaling of the single-turbine curve,
// no availability derating.
WindPowerSeries farm_power(const TurbinePowerCurve& curve, const WindSpeedSeries& day,
                           double installed_capacity_mw, const FarmOptions& opts = {});

// The bundled 12-point 2 MW curve approximating a V90-class machine
// (cut-in 4 m/s, rated plateau from 13 m/s, cut-out 25 m/s).
TurbinePowerCurve default_power_curve();

std::vector<WindDay> load_wind(const std::filesystem::path& path);
void write_wind(const std::vector<WindDay>& days, const std::filesystem::path& path);
WindSpeedSeries concat_series(const std::vector<WindDay>& days, const std::string& site = "");
WindSpeedSeries day_series(const WindDay& day, const std::string& site = "");

TurbinePowerCurve load_curve(const std::filesystem::path& path);
void write_curve(const TurbinePowerCurve& c, const std::filesystem::path& path);

void write_stats_csv(const WindStats& stats, const std::filesystem::path& path);
void write_histogram_csv(const std::vector<std::pair<double, std::size_t>>& bins,
                         const std::filesystem::path& path);

}  // namespace windmarket
