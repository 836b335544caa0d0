#include "windmarket/uc.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "windmarket/csv.hpp"
#include "windmarket/errors.hpp"

namespace windmarket {

namespace {

double power_tol(double scale) { return std::max(1e-4, 1e-6 * std::fabs(scale)); }

}  // namespace

UCInstance make_instance(const Fleet& fleet, DemandProfile demand, WindPowerSeries wind,
                         const UCOptions& options) {
    if (demand.demand_mw.empty()) throw ValidationError("instance: empty demand profile");
    if (wind.power_mw.size() != demand.demand_mw.size())
        throw ValidationError("instance: demand has " + std::to_string(demand.demand_mw.size()) +
                              " hours but wind has " + std::to_string(wind.power_mw.size()));
    UCInstance inst;
    inst.demand = std::move(demand);
    inst.wind = std::move(wind);
    inst.options = options;
    inst.net_demand_mw = inst.demand.demand_mw;

    for (const auto& g : fleet.generators) {
        if (g.tech == Tech::Wind) continue;  // wind enters through the exogenous series
        if (options.net_price_takers && classify_participation(g) == Participation::PriceTaker) {
            for (double& d : inst.net_demand_mw) d -= g.p_max_mw;
            continue;
        }
        inst.units.push_back(g);
    }
    if (inst.units.empty()) throw ValidationError("instance: no committable units");

    for (int t = 0; t < inst.horizon(); ++t) {
        if (inst.net_demand_mw[static_cast<std::size_t>(t)] <= 0.0)
            inst.warnings.push_back("net demand is not positive at hour " + std::to_string(t));
        if (!options.allow_wind_curtailment &&
            inst.wind.power_mw[static_cast<std::size_t>(t)] >
                inst.net_demand_mw[static_cast<std::size_t>(t)] + power_tol(inst.net_demand_mw[static_cast<std::size_t>(t)]))
            inst.warnings.push_back("wind exceeds demand at hour " + std::to_string(t) +
                                    " while curtailment is disabled; model will be infeasible");
    }
    return inst;
}

UCInstance build_instance(const Fleet& fleet, const DemandProfile& demand,
                          const WindSpeedSeries& day_speeds, const TurbinePowerCurve& curve,
                          double installed_capacity_mw, const UCOptions& options,
                          const FarmOptions& farm) {
    WindPowerSeries wind = farm_power(curve, day_speeds, installed_capacity_mw, farm);
    return make_instance(fleet, demand, std::move(wind), options);
}

UcVarMap uc_var_map(const UCInstance& inst) {
    UcVarMap map;
    map.units = inst.num_units();
    map.horizon = inst.horizon();
    map.curtailment = inst.options.allow_wind_curtailment;
    return map;
}

MixedIntegerProgram to_milp(const UCInstance& inst) {
    const UcVarMap map = uc_var_map(inst);
    const int G = map.units, T = map.horizon;
    MixedIntegerProgram mip;
    LinearProgram& lp = mip.lp;

    for (int g = 0; g < G; ++g)
        for (int t = 0; t < T; ++t)
            lp.add_variable(inst.units[static_cast<std::size_t>(g)].energy_cost_cop_mwh, 0.0,
                            inst.units[static_cast<std::size_t>(g)].p_max_mw);
    for (int g = 0; g < G; ++g)
        for (int t = 0; t < T; ++t) lp.add_variable(0.0, 0.0, 1.0);  // theta
    for (int g = 0; g < G; ++g)
        for (int t = 0; t < T; ++t)
            lp.add_variable(inst.units[static_cast<std::size_t>(g)].startup_cost_cop, 0.0, 1.0);  // tau
    if (map.curtailment)
        for (int t = 0; t < T; ++t)
            lp.add_variable(0.0, 0.0, inst.wind.power_mw[static_cast<std::size_t>(t)]);

    for (int g = 0; g < G; ++g)
        for (int t = 0; t < T; ++t) {
            mip.binary_vars.push_back(map.theta(g, t));
            mip.binary_vars.push_back(map.tau(g, t));
        }

    // Hourly balance: total dispatch plus delivered wind equals demand.
    std::vector<std::pair<int, double>> row;
    for (int t = 0; t < T; ++t) {
        row.clear();
        for (int g = 0; g < G; ++g) row.emplace_back(map.p(g, t), 1.0);
        if (map.curtailment) row.emplace_back(map.curtail(t), -1.0);
        lp.add_row(RowSense::EQ, inst.net_demand_mw[static_cast<std::size_t>(t)] -
                                     inst.wind.power_mw[static_cast<std::size_t>(t)], row);
    }
    for (int g = 0; g < G; ++g) {
        const Generator& u = inst.units[static_cast<std::size_t>(g)];
        const double theta0 = u.initial_on ? 1.0 : 0.0;
        for (int t = 0; t < T; ++t) {
            // Capacity window linked to the commitment flag.
            lp.add_row(RowSense::LE, 0.0, {{map.p(g, t), 1.0}, {map.theta(g, t), -u.p_max_mw}});
            if (u.p_min_mw > 0.0)
                lp.add_row(RowSense::GE, 0.0, {{map.p(g, t), 1.0}, {map.theta(g, t), -u.p_min_mw}});
            // Ramps, anchored to the initial operating point in the first hour.
            if (t == 0) {
                lp.add_row(RowSense::LE, u.ramp_up_mw + u.initial_power_mw, {{map.p(g, t), 1.0}});
                lp.add_row(RowSense::LE, u.ramp_down_mw - u.initial_power_mw,
                           {{map.p(g, t), -1.0}});
            } else {
                lp.add_row(RowSense::LE, u.ramp_up_mw,
                           {{map.p(g, t), 1.0}, {map.p(g, t - 1), -1.0}});
                lp.add_row(RowSense::LE, u.ramp_down_mw,
                           {{map.p(g, t), -1.0}, {map.p(g, t - 1), 1.0}});
            }
            // Start-up linkage.
            if (t == 0) {
                lp.add_row(RowSense::LE, theta0, {{map.theta(g, t), 1.0}, {map.tau(g, t), -1.0}});
                lp.add_row(RowSense::LE, 1.0 - theta0, {{map.tau(g, t), 1.0}});
            } else {
                lp.add_row(RowSense::LE, 0.0,
                           {{map.theta(g, t), 1.0}, {map.theta(g, t - 1), -1.0}, {map.tau(g, t), -1.0}});
                lp.add_row(RowSense::LE, 1.0, {{map.tau(g, t), 1.0}, {map.theta(g, t - 1), 1.0}});
            }
            lp.add_row(RowSense::LE, 0.0, {{map.tau(g, t), 1.0}, {map.theta(g, t), -1.0}});
        }
    }
    mip.validate();
    return mip;
}

namespace {

void check_dims(const UCInstance& inst, const UCSchedule& sched) {
    const std::size_t G = static_cast<std::size_t>(inst.num_units());
    if (sched.horizon != inst.horizon() || sched.p.size() != G || sched.on.size() != G ||
        sched.startup.size() != G)
        throw ValidationError("schedule dimensions do not match the instance");
    for (std::size_t g = 0; g < G; ++g)
        if (sched.p[g].size() != static_cast<std::size_t>(sched.horizon) ||
            sched.on[g].size() != sched.p[g].size() || sched.startup[g].size() != sched.p[g].size())
            throw ValidationError("schedule dimensions do not match the instance");
}

}  // namespace

double evaluate_cost(const UCInstance& inst, const UCSchedule& sched) {
    check_dims(inst, sched);
    double total = 0.0;
    for (int g = 0; g < inst.num_units(); ++g) {
        const Generator& u = inst.units[static_cast<std::size_t>(g)];
        for (int t = 0; t < sched.horizon; ++t) {
            total += u.energy_cost_cop_mwh * sched.p[static_cast<std::size_t>(g)][static_cast<std::size_t>(t)];
            total += u.startup_cost_cop *
                     static_cast<double>(sched.startup[static_cast<std::size_t>(g)][static_cast<std::size_t>(t)]);
        }
    }
    return total;
}

std::vector<Violation> check_feasibility(const UCInstance& inst, const UCSchedule& sched) {
    check_dims(inst, sched);
    std::vector<Violation> out;
    const int G = inst.num_units(), T = sched.horizon;
    auto add = [&](const std::string& family, const std::string& id, int hour, double mag,
                   const std::string& msg) {
        out.push_back({family, id, hour, mag, msg});
    };

    for (int t = 0; t < T; ++t) {
        double injected = inst.wind.power_mw[static_cast<std::size_t>(t)];
        double curt = t < static_cast<int>(sched.curtailed_mw.size())
                          ? sched.curtailed_mw[static_cast<std::size_t>(t)]
                          : 0.0;
        for (int g = 0; g < G; ++g) injected += sched.p[static_cast<std::size_t>(g)][static_cast<std::size_t>(t)];
        double residual = injected - curt - inst.net_demand_mw[static_cast<std::size_t>(t)];
        if (std::fabs(residual) > power_tol(inst.net_demand_mw[static_cast<std::size_t>(t)]))
            add("balance", "", t, std::fabs(residual),
                "power balance residual " + csv::format_fixed(residual, 6) + " MW at hour " +
                    std::to_string(t));
        if (curt < -power_tol(inst.wind.power_mw[static_cast<std::size_t>(t)]) ||
            curt > inst.wind.power_mw[static_cast<std::size_t>(t)] +
                       power_tol(inst.wind.power_mw[static_cast<std::size_t>(t)]))
            add("curtailment", "", t, curt, "curtailment outside [0, wind] at hour " + std::to_string(t));
        if (!inst.options.allow_wind_curtailment && std::fabs(curt) > 1e-9)
            add("curtailment", "", t, curt, "curtailment present while disabled");
    }

    for (int g = 0; g < G; ++g) {
        const Generator& u = inst.units[static_cast<std::size_t>(g)];
        const auto& p = sched.p[static_cast<std::size_t>(g)];
        const auto& on = sched.on[static_cast<std::size_t>(g)];
        const auto& su = sched.startup[static_cast<std::size_t>(g)];
        for (int t = 0; t < T; ++t) {
            double pt = p[static_cast<std::size_t>(t)];
            double cap = on[static_cast<std::size_t>(t)] ? u.p_max_mw : 0.0;
            double floor = on[static_cast<std::size_t>(t)] ? u.p_min_mw : 0.0;
            if (pt > cap + power_tol(u.p_max_mw))
                add("capacity", u.id, t, pt - cap,
                    "dispatch above committed capacity (" + csv::format_fixed(pt, 4) + " > " +
                        csv::format_fixed(cap, 4) + ")");
            if (pt < floor - power_tol(std::max(u.p_max_mw, u.p_min_mw)))
                add("capacity", u.id, t, floor - pt,
                    "dispatch below committed minimum (" + csv::format_fixed(pt, 4) + " < " +
                        csv::format_fixed(floor, 4) + ")");
            double prev = t == 0 ? u.initial_power_mw : p[static_cast<std::size_t>(t - 1)];
            double delta = pt - prev;
            double rtol = power_tol(std::max({u.ramp_up_mw, u.ramp_down_mw, std::fabs(pt), std::fabs(prev)}));
            if (delta > u.ramp_up_mw + rtol)
                add("ramp", u.id, t, delta - u.ramp_up_mw, "ramp-up limit exceeded at hour " + std::to_string(t));
            if (-delta > u.ramp_down_mw + rtol)
                add("ramp", u.id, t, -delta - u.ramp_down_mw,
                    "ramp-down limit exceeded at hour " + std::to_string(t));
            int prev_on = t == 0 ? (u.initial_on ? 1 : 0) : static_cast<int>(on[static_cast<std::size_t>(t - 1)]);
            int on_t = static_cast<int>(on[static_cast<std::size_t>(t)]);
            int su_t = static_cast<int>(su[static_cast<std::size_t>(t)]);
            if (su_t < on_t - prev_on || su_t > 1 - prev_on || su_t > on_t)
                add("startup", u.id, t, 1.0,
                    "start-up flags inconsistent at hour " + std::to_string(t) + " (prev_on=" +
                        std::to_string(prev_on) + ", on=" + std::to_string(on_t) + ", startup=" +
                        std::to_string(su_t) + ")");
        }
    }
    return out;
}

std::pair<SolveResult, UCSchedule> solve_uc(const UCInstance& inst, const SolveLimits& limits,
                                            const SimplexOptions& lp_options) {
    MixedIntegerProgram mip = to_milp(inst);
    SolveResult res = branch_and_bound(mip, limits, lp_options);
    UCSchedule sched;
    if (!res.has_solution()) return {res, sched};

    const UcVarMap map = uc_var_map(inst);
    const int G = map.units, T = map.horizon;
    sched.horizon = T;
    sched.curtailed_mw.assign(static_cast<std::size_t>(T), 0.0);
    for (int g = 0; g < G; ++g) sched.unit_ids.push_back(inst.units[static_cast<std::size_t>(g)].id);
    sched.p.assign(static_cast<std::size_t>(G), std::vector<double>(static_cast<std::size_t>(T), 0.0));
    sched.on.assign(static_cast<std::size_t>(G), std::vector<std::uint8_t>(static_cast<std::size_t>(T), 0));
    sched.startup.assign(static_cast<std::size_t>(G), std::vector<std::uint8_t>(static_cast<std::size_t>(T), 0));
    for (int g = 0; g < G; ++g)
        for (int t = 0; t < T; ++t) {
            double theta = res.x[static_cast<std::size_t>(map.theta(g, t))];
            double tau = res.x[static_cast<std::size_t>(map.tau(g, t))];
            if (std::fabs(theta - std::round(theta)) > 1e-6 || std::fabs(tau - std::round(tau)) > 1e-6)
                throw SolverError("solve_uc: solution binaries exceed the integrality tolerance");
            sched.p[static_cast<std::size_t>(g)][static_cast<std::size_t>(t)] =
                std::max(0.0, res.x[static_cast<std::size_t>(map.p(g, t))]);
            sched.on[static_cast<std::size_t>(g)][static_cast<std::size_t>(t)] =
                static_cast<std::uint8_t>(std::lround(theta));
            sched.startup[static_cast<std::size_t>(g)][static_cast<std::size_t>(t)] =
                static_cast<std::uint8_t>(std::lround(tau));
        }
    if (map.curtailment)
        for (int t = 0; t < T; ++t)
            sched.curtailed_mw[static_cast<std::size_t>(t)] =
                std::max(0.0, res.x[static_cast<std::size_t>(map.curtail(t))]);
    sched.objective_value = evaluate_cost(inst, sched);

    auto violations = check_feasibility(inst, sched);
    if (!violations.empty())
        throw SolverError("solve_uc: rounded schedule fails feasibility: " + violations.front().message +
                          " (" + std::to_string(violations.size()) + " violations)");
    return {res, sched};
}

void write_schedule_csv(const UCSchedule& sched, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(path.string() + ": cannot open file for writing");
    out << "generator,hour,p,on,startup\n";
    for (std::size_t g = 0; g < sched.unit_ids.size(); ++g)
        for (int t = 0; t < sched.horizon; ++t)
            out << sched.unit_ids[g] << ',' << t << ','
                << csv::format_fixed(sched.p[g][static_cast<std::size_t>(t)], 6) << ','
                << static_cast<int>(sched.on[g][static_cast<std::size_t>(t)]) << ','
                << static_cast<int>(sched.startup[g][static_cast<std::size_t>(t)]) << '\n';
}

void write_schedule_json(const UCInstance& inst, const UCSchedule& sched, const SolveResult& result,
                         const std::filesystem::path& path) {
    nlohmann::json j;
    j["day"] = inst.demand.day_label;
    j["status"] = to_string(result.status);
    j["objective_cop"] = sched.empty() ? result.objective : sched.objective_value;
    j["solver_objective_cop"] = result.objective;
    j["best_bound_cop"] = result.best_bound;
    j["rel_gap"] = result.rel_gap;
    j["nodes"] = result.node_count;
    j["installed_wind_mw"] = inst.wind.installed_capacity_mw;
    j["warnings"] = inst.warnings;
    j["curtailed_mw"] = sched.curtailed_mw;
    j["violations"] = nlohmann::json::array();
    if (!sched.empty()) {
        for (const auto& v : check_feasibility(inst, sched))
            j["violations"].push_back({{"family", v.family},
                                       {"unit", v.unit_id},
                                       {"hour", v.hour},
                                       {"magnitude", v.magnitude},
                                       {"message", v.message}});
        j["units"] = nlohmann::json::array();
        for (std::size_t g = 0; g < sched.unit_ids.size(); ++g) {
            j["units"].push_back({{"id", sched.unit_ids[g]},
                                  {"p_mw", sched.p[g]},
                                  {"on", sched.on[g]},
                                  {"startup", sched.startup[g]}});
        }
    }
    std::ofstream out(path);
    if (!out) throw ParseError(path.string() + ": cannot open file for writing");
    out << j.dump(1) << '\n';
}

}  // namespace windmarket
