#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "windmarket/pricing.hpp"

namespace windmarket {

// Everything a command needs, assembled from an optional key=value config
// file with command-line flags taking precedence.
struct RunConfig {
    std::string fleet_path;
    std::string demand_path;
    std::string wind_path;
    std::string curve_path;  // empty = bundled default curve
    std::string out_dir = "out";

    std::vector<double> grid;  // empty = default_grid()
    double time_limit_seconds = 60.0;
    double mip_gap = 1e-4;
    long node_limit = 100000000;
    UpliftConvention uplift_convention = UpliftConvention::MakeWhole;
    bool curtailment = false;
    bool net_price_takers = false;
    bool integer_turbines = false;
    int jobs = 1;
    unsigned seed = 1;  // synthetic data regeneration only

    std::string day;           // solve: day label, empty = first day
    double capacity_mw = 0.0;  // solve
    double bin_width_ms = 1.0; // windstats
    std::string track_unit;    // sweep: unit highlighted in unit_trajectory.dat
};

// 0 to 1000 MW in 50 MW steps with 505.5 MW inserted exactly.
std::vector<double> default_grid();

// "a,b,c" lists and "lo:hi:step" ranges, combined freely. Values are sorted
// and deduplicated.
std::vector<double> parse_grid(const std::string& text);

// key = value lines, '#' comments. Unknown keys are rejected.
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

}  // namespace windmarket
