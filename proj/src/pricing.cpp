#include "windmarket/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "windmarket/csv.hpp"
#include "windmarket/errors.hpp"

namespace windmarket {

namespace {

constexpr double kDispatchedMw = 1e-4;  // threshold for "dispatched at t"

void require_feasible(const UCInstance& inst, const UCSchedule& sched) {
    auto violations = check_feasibility(inst, sched);
    if (!violations.empty())
        throw ValidationError("pricing requires a feasible schedule: " + violations.front().message);
}

}  // namespace

std::string to_string(UpliftConvention c) {
    return c == UpliftConvention::MakeWhole ? "make-whole" : "as-printed";
}

UpliftConvention uplift_convention_from_string(const std::string& s) {
    if (s == "make-whole") return UpliftConvention::MakeWhole;
    if (s == "as-printed") return UpliftConvention::AsPrinted;
    throw ParseError("unknown uplift convention '" + s + "' (expected make-whole or as-printed)");
}

std::vector<double> marginal_prices(const UCInstance& inst, const UCSchedule& sched) {
    require_feasible(inst, sched);
    std::vector<double> mpo(static_cast<std::size_t>(sched.horizon), 0.0);
    for (int t = 0; t < sched.horizon; ++t) {
        double price = 0.0;
        bool any = false;
        for (int g = 0; g < inst.num_units(); ++g) {
            if (sched.p[static_cast<std::size_t>(g)][static_cast<std::size_t>(t)] > kDispatchedMw) {
                price = std::max(price, inst.units[static_cast<std::size_t>(g)].energy_cost_cop_mwh);
                any = true;
            }
        }
        mpo[static_cast<std::size_t>(t)] = any ? price : 0.0;
    }
    return mpo;
}

namespace {

struct CostSplit {
    double c_mpo = 0.0;
    double c_plant = 0.0;
};

CostSplit unit_costs(const UCInstance& inst, const UCSchedule& sched, int g,
                     const std::vector<double>& mpo) {
    CostSplit cs;
    const Generator& u = inst.units[static_cast<std::size_t>(g)];
    for (int t = 0; t < sched.horizon; ++t) {
        double pt = sched.p[static_cast<std::size_t>(g)][static_cast<std::size_t>(t)];
        cs.c_mpo += mpo[static_cast<std::size_t>(t)] * pt;
        cs.c_plant += u.energy_cost_cop_mwh * pt +
                      u.startup_cost_cop *
                          static_cast<double>(sched.startup[static_cast<std::size_t>(g)][static_cast<std::size_t>(t)]);
    }
    return cs;
}

}  // namespace

double uplift(const UCInstance& inst, const UCSchedule& sched, const std::vector<double>& mpo,
              UpliftConvention convention) {
    if (static_cast<int>(mpo.size()) != sched.horizon)
        throw ValidationError("uplift: marginal price series does not match the horizon");
    double demand_total = 0.0;
    for (double d : inst.net_demand_mw) demand_total += d;
    if (!(demand_total > 0.0)) throw ValidationError("uplift: total demand must be positive");

    double unrecovered = 0.0;
    for (int g = 0; g < inst.num_units(); ++g) {
        CostSplit cs = unit_costs(inst, sched, g, mpo);
        double gap = convention == UpliftConvention::MakeWhole ? cs.c_plant - cs.c_mpo
                                                               : cs.c_mpo - cs.c_plant;
        unrecovered += std::max(0.0, gap);
    }
    return unrecovered / demand_total;
}

std::vector<double> spot_price(const std::vector<double>& mpo, double uplift_value) {
    if (uplift_value < 0.0) throw ValidationError("spot_price: uplift must be >= 0");
    std::vector<double> spot(mpo.size());
    for (std::size_t t = 0; t < mpo.size(); ++t) spot[t] = mpo[t] + uplift_value;
    return spot;
}

PriceReport compute_prices(const UCInstance& inst, const UCSchedule& sched,
                           UpliftConvention convention) {
    PriceReport report;
    report.mpo = marginal_prices(inst, sched);
    report.uplift = uplift(inst, sched, report.mpo, convention);
    report.spot = spot_price(report.mpo, report.uplift);
    report.all_wind_hour.assign(report.mpo.size(), 0);
    for (int t = 0; t < sched.horizon; ++t) {
        bool any = false;
        for (int g = 0; g < inst.num_units() && !any; ++g)
            any = sched.p[static_cast<std::size_t>(g)][static_cast<std::size_t>(t)] > kDispatchedMw;
        report.all_wind_hour[static_cast<std::size_t>(t)] = any ? 0 : 1;
    }
    return report;
}

SettlementReport settle(const UCInstance& inst, const UCSchedule& sched, const PriceReport& prices) {
    if (static_cast<int>(prices.spot.size()) != sched.horizon ||
        static_cast<int>(prices.mpo.size()) != sched.horizon)
        throw ValidationError("settle: price series does not match the horizon");
    SettlementReport report;
    for (int t = 0; t < sched.horizon; ++t)
        report.demand_payment +=
            prices.spot[static_cast<std::size_t>(t)] * inst.net_demand_mw[static_cast<std::size_t>(t)];

    for (int g = 0; g < inst.num_units(); ++g) {
        SettlementEntry e;
        e.id = inst.units[static_cast<std::size_t>(g)].id;
        CostSplit cs = unit_costs(inst, sched, g, prices.mpo);
        e.c_mpo = cs.c_mpo;
        e.c_plant = cs.c_plant;
        double energy = 0.0, uplift_share = 0.0;
        for (int t = 0; t < sched.horizon; ++t) {
            double pt = sched.p[static_cast<std::size_t>(g)][static_cast<std::size_t>(t)];
            energy += prices.spot[static_cast<std::size_t>(t)] * pt;
            uplift_share += prices.uplift * pt;
        }
        e.energy_revenue = energy;
        e.keeper = e.c_plant >= e.c_mpo;  // costs not covered at marginal prices
        if (e.keeper) {
            e.retained_uplift = uplift_share;
        } else {
            e.reimbursement = uplift_share;
        }
        e.net_revenue = e.energy_revenue - e.reimbursement;
        report.units.push_back(std::move(e));
    }

    SettlementEntry w;
    w.id = "wind";
    w.c_plant = 0.0;  // zero-cost resource
    double wind_uplift_share = 0.0;
    for (int t = 0; t < sched.horizon; ++t) {
        double delivered = inst.wind.power_mw[static_cast<std::size_t>(t)] -
                           (t < static_cast<int>(sched.curtailed_mw.size())
                                ? sched.curtailed_mw[static_cast<std::size_t>(t)]
                                : 0.0);
        w.energy_revenue += prices.spot[static_cast<std::size_t>(t)] * delivered;
        w.c_mpo += prices.mpo[static_cast<std::size_t>(t)] * delivered;
        wind_uplift_share += prices.uplift * delivered;
    }
    w.keeper = w.c_plant >= w.c_mpo;
    if (w.keeper) {
        w.retained_uplift = wind_uplift_share;
    } else {
        w.reimbursement = wind_uplift_share;
    }
    w.net_revenue = w.energy_revenue - w.reimbursement;
    report.wind = std::move(w);
    return report;
}

void write_prices_csv(const PriceReport& prices, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(path.string() + ": cannot open file for writing");
    out << "hour,mpo,spot\n";
    for (std::size_t t = 0; t < prices.mpo.size(); ++t)
        out << t << ',' << csv::format_fixed(prices.mpo[t], 6) << ','
            << csv::format_fixed(prices.spot[t], 6) << '\n';
}

void write_settlement_csv(const SettlementReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(path.string() + ": cannot open file for writing");
    out << "generator,energy_revenue,c_plant,c_mpo,reimbursement,net_revenue\n";
    auto line = [&](const SettlementEntry& e) {
        out << e.id << ',' << csv::format_fixed(e.energy_revenue, 2) << ','
            << csv::format_fixed(e.c_plant, 2) << ',' << csv::format_fixed(e.c_mpo, 2) << ','
            << csv::format_fixed(e.reimbursement, 2) << ',' << csv::format_fixed(e.net_revenue, 2)
            << '\n';
    };
    for (const auto& e : report.units) line(e);
    line(report.wind);
}

}  // namespace windmarket
