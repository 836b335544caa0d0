#include "uc_enum_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "dense_lp_oracle.hpp"

namespace oracle {

EnumResult enumerate_uc(const windmarket::UCInstance& inst) {
    using windmarket::LinearProgram;
    using windmarket::RowSense;
    const int G = inst.num_units();
    const int T = inst.horizon();
    const int bits = G * T;
    if (bits > 22) throw std::runtime_error("enumerate_uc: instance too large to enumerate");

    EnumResult best;
    best.objective = std::numeric_limits<double>::infinity();

    for (std::uint32_t pattern = 0; pattern < (1u << bits); ++pattern) {
        auto on = [&](int g, int t) { return (pattern >> (g * T + t)) & 1u; };

        // Start-up cost from the pattern; tau = 1 exactly on off->on edges.
        double fixed = 0.0;
        for (int g = 0; g < G; ++g) {
            int prev = inst.units[static_cast<std::size_t>(g)].initial_on ? 1 : 0;
            for (int t = 0; t < T; ++t) {
                int now = static_cast<int>(on(g, t));
                if (now == 1 && prev == 0)
                    fixed += inst.units[static_cast<std::size_t>(g)].startup_cost_cop;
                prev = now;
            }
        }
        if (fixed >= best.objective) continue;

        // Dispatch LP for this pattern.
        LinearProgram lp;
        for (int g = 0; g < G; ++g) {
            const auto& u = inst.units[static_cast<std::size_t>(g)];
            for (int t = 0; t < T; ++t) {
                double lo = on(g, t) ? u.p_min_mw : 0.0;
                double hi = on(g, t) ? u.p_max_mw : 0.0;
                lp.add_variable(u.energy_cost_cop_mwh, lo, hi);
            }
        }
        auto pvar = [&](int g, int t) { return g * T + t; };
        for (int t = 0; t < T; ++t) {
            std::vector<std::pair<int, double>> row;
            for (int g = 0; g < G; ++g) row.emplace_back(pvar(g, t), 1.0);
            lp.add_row(RowSense::EQ,
                       inst.net_demand_mw[static_cast<std::size_t>(t)] -
                           inst.wind.power_mw[static_cast<std::size_t>(t)],
                       row);
        }
        for (int g = 0; g < G; ++g) {
            const auto& u = inst.units[static_cast<std::size_t>(g)];
            for (int t = 0; t < T; ++t) {
                if (t == 0) {
                    lp.add_row(RowSense::LE, u.ramp_up_mw + u.initial_power_mw, {{pvar(g, t), 1.0}});
                    lp.add_row(RowSense::LE, u.ramp_down_mw - u.initial_power_mw,
                               {{pvar(g, t), -1.0}});
                } else {
                    lp.add_row(RowSense::LE, u.ramp_up_mw, {{pvar(g, t), 1.0}, {pvar(g, t - 1), -1.0}});
                    lp.add_row(RowSense::LE, u.ramp_down_mw, {{pvar(g, t), -1.0}, {pvar(g, t - 1), 1.0}});
                }
            }
        }

        Result lp_res = solve(lp);
        if (lp_res.status != Status::Optimal) continue;
        double total = fixed + lp_res.objective;
        if (total < best.objective) {
            best.feasible = true;
            best.objective = total;
        }
    }
    return best;
}

}  // namespace oracle
