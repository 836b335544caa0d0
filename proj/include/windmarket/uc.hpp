#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "windmarket/bnb.hpp"
#include "windmarket/fleet.hpp"
#include "windmarket/lp.hpp"
#include "windmarket/wind.hpp"

namespace windmarket {

struct UCOptions {
    bool allow_wind_curtailment = false;
    // When set, price-taker units (below 10 MW) are excluded from the
    // commitment and their full capacity is netted off the demand.
    bool net_price_takers = false;
};

// One day-ahead commitment problem: the committed units, the demand to serve,
// and the exogenous zero-cost wind injection.
struct UCInstance {
    std::vector<Generator> units;       // committed units, wind-tagged and netted units excluded
    DemandProfile demand;               // as loaded
    std::vector<double> net_demand_mw;  // demand after price-taker netting
    WindPowerSeries wind;
    UCOptions options;
    std::vector<std::string> warnings;

    int horizon() const { return static_cast<int>(demand.demand_mw.size()); }
    int num_units() const { return static_cast<int>(units.size()); }
};

// Committed/dispatch solution. Row order matches UCInstance::units.
struct UCSchedule {
    std::vector<std::string> unit_ids;
    int horizon = 0;
    std::vector<std::vector<double>> p;                // [unit][hour] MW
    std::vector<std::vector<std::uint8_t>> on;         // theta
    std::vector<std::vector<std::uint8_t>> startup;    // tau
    std::vector<double> curtailed_mw;                  // per hour, zero unless curtailment enabled
    double objective_value = 0.0;

    bool empty() const { return unit_ids.empty(); }
};

struct Violation {
    std::string family;  // balance | capacity | ramp | startup | curtailment
    std::string unit_id; // empty for system-wide rows
    int hour = 0;
    double magnitude = 0.0;
    std::string message;
};

// Assemble an instance from already-prepared wind power. Checks horizons,
// filters wind-tagged units, applies price-taker netting, and attaches an
// infeasibility warning when wind exceeds demand with curtailment disabled.
UCInstance make_instance(const Fleet& fleet, DemandProfile demand, WindPowerSeries wind,
                         const UCOptions& options = {});

// Assemble an instance for one day at the given installed wind capacity,
// converting the day's wind speeds through the turbine curve.
UCInstance build_instance(const Fleet& fleet, const DemandProfile& demand,
                          const WindSpeedSeries& day_speeds, const TurbinePowerCurve& curve,
                          double installed_capacity_mw, const UCOptions& options = {},
                          const FarmOptions& farm = {});

// Variable layout of the commitment MILP: dispatch block, then commitment
// flags, then start-up flags, then optional hourly curtailment slacks.
struct UcVarMap {
    int units = 0;
    int horizon = 0;
    bool curtailment = false;

    int p(int g, int t) const { return g * horizon + t; }
    int theta(int g, int t) const { return units * horizon + g * horizon + t; }
    int tau(int g, int t) const { return 2 * units * horizon + g * horizon + t; }
    int curtail(int t) const { return 3 * units * horizon + t; }
    int num_vars() const { return 3 * units * horizon + (curtailment ? horizon : 0); }
};

UcVarMap uc_var_map(const UCInstance& inst);

// Minimization MILP with hourly power balance, commitment-linked capacity
// limits, hour-to-hour ramp limits and the three-inequality start-up linkage.
// Wind enters the balance as a fixed zero-cost injection; the first hour is
// anchored to each unit's initial state.
MixedIntegerProgram to_milp(const UCInstance& inst);

// Generation plus start-up cost of a schedule, recomputed from first
// principles independent of any solver-reported objective.
double evaluate_cost(const UCInstance& inst, const UCSchedule& sched);

// Empty iff the schedule satisfies every model constraint within tolerance
// (1e-6 relative, 1e-4 MW absolute on power residuals).
std::vector<Violation> check_feasibility(const UCInstance& inst, const UCSchedule& sched);

// Solve one instance end to end: build the MILP, run branch and bound,
// extract the schedule (binaries rounded within 1e-6), and re-verify it with
// check_feasibility. A post-round feasibility failure throws SolverError.
// The schedule is empty when the solver produced no incumbent.
std::pair<SolveResult, UCSchedule> solve_uc(const UCInstance& inst, const SolveLimits& limits = {},
                                            const SimplexOptions& lp_options = {});

void write_schedule_csv(const UCSchedule& sched, const std::filesystem::path& path);
void write_schedule_json(const UCInstance& inst, const UCSchedule& sched, const SolveResult& result,
                         const std::filesystem::path& path);

}  // namespace windmarket
