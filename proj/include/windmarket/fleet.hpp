#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace windmarket {

enum class Tech { Hydro, SmallHydro, Gas, Coal, Wind };

std::string to_string(Tech t);
Tech tech_from_string(const std::string& s);  // throws ParseError on unknown tag

// One dispatchable unit of the day-ahead market. Wind-tagged units are carried
// through the data model but are not committed; wind enters the dispatch as an
// exogenous hourly injection.
struct Generator {
    std::string id;
    std::string name;
    Tech tech = Tech::Hydro;
    double p_max_mw = 0.0;
    double p_min_mw = 0.0;
    double ramp_up_mw = 0.0;    // max increase between consecutive hours
    double ramp_down_mw = 0.0;  // max decrease between consecutive hours
    double energy_cost_cop_mwh = 0.0;
    double startup_cost_cop = 0.0;
    bool initial_on = false;
    double initial_power_mw = 0.0;
};

struct DemandProfile {
    std::string day_label;
    std::vector<double> demand_mw;  // hourly, loaders enforce exactly 24 entries
};

struct Fleet {
    std::vector<Generator> generators;
    std::string currency_unit = "COP";
    std::string metadata;

    const Generator* find(const std::string& id) const;
};

enum class Participation { Mandatory, Optional, PriceTaker };

// Spot-market participation from rated capacity: above 20 MW mandatory,
// 10-20 MW optional (boundaries inclusive), below 10 MW price taker.
Participation classify_participation(const Generator& g);

struct FleetLoadOptions {
    // Hydro and small-hydro units bid zero start-up cost; accepting nonzero
    // values requires an explicit override.
    bool allow_nonzero_hydro_startup = false;
};

// Throws ValidationError naming the violated invariant and the unit id.
void validate_generator(const Generator& g, const FleetLoadOptions& opts = {});
void validate_fleet(const Fleet& f, const FleetLoadOptions& opts = {});

enum class FleetFormat { Csv, Json };

Fleet load_fleet(const std::filesystem::path& path, FleetFormat format,
                 const FleetLoadOptions& opts = {});
Fleet load_fleet(const std::filesystem::path& path, const FleetLoadOptions& opts = {});  // by extension
void write_fleet(const Fleet& f, const std::filesystem::path& path, FleetFormat format);

std::vector<DemandProfile> load_demand(const std::filesystem::path& path);
void write_demand(const std::vector<DemandProfile>& days, const std::filesystem::path& path);

}  // namespace windmarket
