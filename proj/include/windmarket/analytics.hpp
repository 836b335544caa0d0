#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "windmarket/pricing.hpp"
#include "windmarket/uc.hpp"

namespace windmarket {

struct UnitCellStats {
    std::string id;
    double energy_mwh = 0.0;
    int hours_on = 0;  // hours with dispatch above 1e-4 MW
    double net_revenue_cop = 0.0;
};

// One (day, installed capacity) solve with its pricing and settlement.
struct SweepCell {
    std::string day_label;
    double capacity_mw = 0.0;
    SolveStatus status = SolveStatus::Infeasible;
    bool ok = false;  // a feasible schedule exists and post-processing succeeded
    double objective_cop = 0.0;
    double rel_gap = 0.0;
    long nodes = 0;
    double demand_energy_mwh = 0.0;
    double wind_energy_mwh = 0.0;  // delivered (net of curtailment)
    double avg_cost_cop_mwh = 0.0;
    PriceReport prices;
    SettlementReport settlement;
    std::vector<UnitCellStats> units;
    std::map<std::string, double> energy_by_tech;  // keys Hydro/SmallHydro/Gas/Coal/Wind
    std::string error;
};

struct SweepResult {
    std::vector<double> grid;        // strictly increasing capacities, MW
    std::vector<std::string> days;
    std::vector<SweepCell> cells;    // day-major: cells[d * grid.size() + c]

    const SweepCell& cell(std::size_t day, std::size_t cap) const {
        return cells[day * grid.size() + cap];
    }
};

struct SweepConfig {
    std::vector<double> grid;
    SolveLimits limits;
    SimplexOptions lp_options;
    UpliftConvention convention = UpliftConvention::MakeWhole;
    UCOptions uc_options;
    FarmOptions farm_options;
    int jobs = 1;
};

// One independent solve per (day, capacity); cell failures are recorded in the
// cell and never abort the sweep. Wind days are matched to demand days by
// label. Results are collected in deterministic order regardless of jobs.
SweepResult run_sweep(const Fleet& fleet, const std::vector<DemandProfile>& days,
                      const std::vector<WindDay>& wind_days, const TurbinePowerCurve& curve,
                      const SweepConfig& config);

struct CostStats {
    double capacity_mw = 0.0;
    int n_days = 0;
    double min = 0.0, mean = 0.0, max = 0.0, std_dev = 0.0;  // COP/MWh
};

// Per-capacity statistics of the daily average generation cost
// (objective divided by the day's total energy). Capacities with no
// successful cell are excluded.
std::vector<CostStats> avg_daily_cost(const SweepResult& sweep);

struct ShareRow {
    double capacity_mw = 0.0;
    std::string tech;
    double mean_share = 0.0;
    double std_share = 0.0;
};

std::vector<ShareRow> share_by_type(const SweepResult& sweep);

struct TrajectoryPoint {
    double capacity_mw = 0.0;
    double mean_hours_on = 0.0;
    double mean_net_revenue_cop = 0.0;
    double relative_revenue = 0.0;  // vs the capacity-0 cell; NaN when undefined
};

// Operating hours and revenue of one unit across the capacity grid,
// normalized against the zero-capacity baseline.
std::vector<TrajectoryPoint> unit_trajectory(const SweepResult& sweep, const std::string& id);

// Tidy CSV files plus gnuplot-ready .dat files for the standard figures.
// track_unit selects the unit highlighted in unit_trajectory.dat (skipped when
// empty or unknown).
void write_sweep_reports(const SweepResult& sweep, const std::filesystem::path& out_dir,
                         const std::string& track_unit = "");

}  // namespace windmarket
