#include "windmarket/analytics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <thread>

#include "windmarket/csv.hpp"
#include "windmarket/errors.hpp"

namespace windmarket {

namespace {

constexpr double kDispatchedMw = 1e-4;

struct MeanStd {
    double mean = 0.0, std_dev = 0.0;
};

MeanStd mean_std(const std::vector<double>& v) {
    MeanStd out;
    if (v.empty()) return out;
    double sum = 0.0;
    for (double x : v) sum += x;
    out.mean = sum / static_cast<double>(v.size());
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - out.mean) * (x - out.mean);
        out.std_dev = std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
    return out;
}

SweepCell solve_cell(const Fleet& fleet, const DemandProfile& day, const WindDay& wind_day,
                     const TurbinePowerCurve& curve, double capacity, const SweepConfig& cfg) {
    SweepCell cell;
    cell.day_label = day.day_label;
    cell.capacity_mw = capacity;
    try {
        UCInstance inst = build_instance(fleet, day, day_series(wind_day), curve, capacity,
                                         cfg.uc_options, cfg.farm_options);
        auto [res, sched] = solve_uc(inst, cfg.limits, cfg.lp_options);
        cell.status = res.status;
        cell.rel_gap = res.rel_gap;
        cell.nodes = res.node_count;
        if (sched.empty()) {
            cell.error = "no feasible schedule (" + to_string(res.status) + ")";
            return cell;
        }
        cell.objective_cop = sched.objective_value;
        for (double d : day.demand_mw) cell.demand_energy_mwh += d;
        for (int t = 0; t < sched.horizon; ++t)
            cell.wind_energy_mwh += inst.wind.power_mw[static_cast<std::size_t>(t)] -
                                    sched.curtailed_mw[static_cast<std::size_t>(t)];
        cell.avg_cost_cop_mwh = cell.objective_cop / cell.demand_energy_mwh;
        cell.prices = compute_prices(inst, sched, cfg.convention);
        cell.settlement = settle(inst, sched, cell.prices);
        for (int g = 0; g < inst.num_units(); ++g) {
            UnitCellStats us;
            us.id = inst.units[static_cast<std::size_t>(g)].id;
            for (int t = 0; t < sched.horizon; ++t) {
                double pt = sched.p[static_cast<std::size_t>(g)][static_cast<std::size_t>(t)];
                us.energy_mwh += pt;
                if (pt > kDispatchedMw) ++us.hours_on;
            }
            us.net_revenue_cop = cell.settlement.units[static_cast<std::size_t>(g)].net_revenue;
            cell.energy_by_tech[to_string(inst.units[static_cast<std::size_t>(g)].tech)] += us.energy_mwh;
            cell.units.push_back(std::move(us));
        }
        cell.energy_by_tech["Wind"] += cell.wind_energy_mwh;
        cell.ok = true;
    } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = e.what();
    }
    return cell;
}

}  // namespace

SweepResult run_sweep(const Fleet& fleet, const std::vector<DemandProfile>& days,
                      const std::vector<WindDay>& wind_days, const TurbinePowerCurve& curve,
                      const SweepConfig& config) {
    if (config.grid.empty()) throw ValidationError("sweep: empty capacity grid");
    for (std::size_t i = 1; i < config.grid.size(); ++i)
        if (!(config.grid[i] > config.grid[i - 1]))
            throw ValidationError("sweep: capacity grid must be strictly increasing");
    if (days.empty()) throw ValidationError("sweep: no demand days");

    std::vector<const WindDay*> wind_of_day;
    for (const auto& d : days) {
        const WindDay* w = nullptr;
        for (const auto& c : wind_days)
            if (c.day_label == d.day_label) { w = &c; break; }
        if (!w)
            throw ValidationError("sweep: no wind day labelled '" + d.day_label + "'");
        wind_of_day.push_back(w);
    }

    SweepResult sweep;
    sweep.grid = config.grid;
    for (const auto& d : days) sweep.days.push_back(d.day_label);
    const std::size_t n_cells = days.size() * config.grid.size();
    sweep.cells.resize(n_cells);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t k = next.fetch_add(1);
            if (k >= n_cells) return;
            std::size_t d = k / config.grid.size();
            std::size_t c = k % config.grid.size();
            sweep.cells[k] = solve_cell(fleet, days[d], *wind_of_day[d], curve,
                                        config.grid[c], config);
        }
    };
    int jobs = std::max(1, config.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return sweep;
}

std::vector<CostStats> avg_daily_cost(const SweepResult& sweep) {
    std::vector<CostStats> out;
    for (std::size_t c = 0; c < sweep.grid.size(); ++c) {
        std::vector<double> costs;
        for (std::size_t d = 0; d < sweep.days.size(); ++d) {
            const SweepCell& cell = sweep.cell(d, c);
            if (cell.ok) costs.push_back(cell.avg_cost_cop_mwh);
        }
        if (costs.empty()) continue;  // excluded, caller sees the hole in the grid
        CostStats s;
        s.capacity_mw = sweep.grid[c];
        s.n_days = static_cast<int>(costs.size());
        s.min = *std::min_element(costs.begin(), costs.end());
        s.max = *std::max_element(costs.begin(), costs.end());
        MeanStd ms = mean_std(costs);
        s.mean = ms.mean;
        s.std_dev = ms.std_dev;
        out.push_back(s);
    }
    return out;
}

std::vector<ShareRow> share_by_type(const SweepResult& sweep) {
    static const char* kTechs[] = {"Hydro", "SmallHydro", "Gas", "Coal", "Wind"};
    std::vector<ShareRow> out;
    for (std::size_t c = 0; c < sweep.grid.size(); ++c) {
        for (const char* tech : kTechs) {
            std::vector<double> shares;
            for (std::size_t d = 0; d < sweep.days.size(); ++d) {
                const SweepCell& cell = sweep.cell(d, c);
                if (!cell.ok) continue;
                double e = 0.0;
                auto it = cell.energy_by_tech.find(tech);
                if (it != cell.energy_by_tech.end()) e = it->second;
                shares.push_back(e / cell.demand_energy_mwh);
            }
            if (shares.empty()) continue;
            MeanStd ms = mean_std(shares);
            out.push_back({sweep.grid[c], tech, ms.mean, ms.std_dev});
        }
    }
    return out;
}

std::vector<TrajectoryPoint> unit_trajectory(const SweepResult& sweep, const std::string& id) {
    bool known = false;
    for (const auto& cell : sweep.cells) {
        for (const auto& us : cell.units)
            if (us.id == id) { known = true; break; }
        if (known) break;
    }
    if (!known) throw ValidationError("unit_trajectory: unknown generator id '" + id + "'");

    std::vector<TrajectoryPoint> out;
    double baseline = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t c = 0; c < sweep.grid.size(); ++c) {
        std::vector<double> hours, revenue;
        for (std::size_t d = 0; d < sweep.days.size(); ++d) {
            const SweepCell& cell = sweep.cell(d, c);
            if (!cell.ok) continue;
            for (const auto& us : cell.units)
                if (us.id == id) {
                    hours.push_back(static_cast<double>(us.hours_on));
                    revenue.push_back(us.net_revenue_cop);
                }
        }
        if (hours.empty()) continue;
        TrajectoryPoint p;
        p.capacity_mw = sweep.grid[c];
        p.mean_hours_on = mean_std(hours).mean;
        p.mean_net_revenue_cop = mean_std(revenue).mean;
        if (sweep.grid[c] == 0.0) baseline = p.mean_net_revenue_cop;
        p.relative_revenue = (std::isfinite(baseline) && baseline != 0.0)
                                 ? p.mean_net_revenue_cop / baseline
                                 : std::numeric_limits<double>::quiet_NaN();
        out.push_back(p);
    }
    return out;
}

namespace {

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p);
    if (!out) throw ParseError(p.string() + ": cannot open file for writing");
    return out;
}

std::string nan_str(double v, int decimals) {
    return std::isfinite(v) ? csv::format_fixed(v, decimals) : std::string("nan");
}

}  // namespace

void write_sweep_reports(const SweepResult& sweep, const std::filesystem::path& out_dir,
                         const std::string& track_unit) {
    std::filesystem::create_directories(out_dir);

    {
        auto out = open_out(out_dir / "sweep_cells.csv");
        out << "day,capacity_mw,status,ok,rel_gap,nodes,objective_cop,demand_mwh,wind_mwh,"
               "avg_cost_cop_mwh,uplift_cop_mwh,error\n";
        for (std::size_t d = 0; d < sweep.days.size(); ++d)
            for (std::size_t c = 0; c < sweep.grid.size(); ++c) {
                const SweepCell& cell = sweep.cell(d, c);
                out << cell.day_label << ',' << csv::format_fixed(cell.capacity_mw, 1) << ','
                    << to_string(cell.status) << ',' << (cell.ok ? 1 : 0) << ','
                    << nan_str(cell.rel_gap, 8) << ',' << cell.nodes << ','
                    << csv::format_fixed(cell.objective_cop, 2) << ','
                    << csv::format_fixed(cell.demand_energy_mwh, 3) << ','
                    << csv::format_fixed(cell.wind_energy_mwh, 3) << ','
                    << csv::format_fixed(cell.avg_cost_cop_mwh, 4) << ','
                    << csv::format_fixed(cell.prices.uplift, 4) << ',' << cell.error << '\n';
            }
    }
    {
        auto out = open_out(out_dir / "prices_by_cell.csv");
        out << "day,capacity_mw,hour,mpo,spot\n";
        for (std::size_t d = 0; d < sweep.days.size(); ++d)
            for (std::size_t c = 0; c < sweep.grid.size(); ++c) {
                const SweepCell& cell = sweep.cell(d, c);
                if (!cell.ok) continue;
                for (std::size_t t = 0; t < cell.prices.mpo.size(); ++t)
                    out << cell.day_label << ',' << csv::format_fixed(cell.capacity_mw, 1) << ','
                        << t << ',' << csv::format_fixed(cell.prices.mpo[t], 4) << ','
                        << csv::format_fixed(cell.prices.spot[t], 4) << '\n';
            }
    }
    {
        auto out = open_out(out_dir / "settlement_by_cell.csv");
        out << "day,capacity_mw,generator,energy_revenue,c_plant,c_mpo,reimbursement,net_revenue\n";
        for (std::size_t d = 0; d < sweep.days.size(); ++d)
            for (std::size_t c = 0; c < sweep.grid.size(); ++c) {
                const SweepCell& cell = sweep.cell(d, c);
                if (!cell.ok) continue;
                auto line = [&](const SettlementEntry& e) {
                    out << cell.day_label << ',' << csv::format_fixed(cell.capacity_mw, 1) << ','
                        << e.id << ',' << csv::format_fixed(e.energy_revenue, 2) << ','
                        << csv::format_fixed(e.c_plant, 2) << ',' << csv::format_fixed(e.c_mpo, 2)
                        << ',' << csv::format_fixed(e.reimbursement, 2) << ','
                        << csv::format_fixed(e.net_revenue, 2) << '\n';
                };
                for (const auto& e : cell.settlement.units) line(e);
                line(cell.settlement.wind);
            }
    }

    auto costs = avg_daily_cost(sweep);
    {
        auto out = open_out(out_dir / "avg_cost_by_capacity.csv");
        out << "capacity_mw,n_days,min,mean,max,std\n";
        for (const auto& s : costs)
            out << csv::format_fixed(s.capacity_mw, 1) << ',' << s.n_days << ','
                << csv::format_fixed(s.min, 4) << ',' << csv::format_fixed(s.mean, 4) << ','
                << csv::format_fixed(s.max, 4) << ',' << csv::format_fixed(s.std_dev, 4) << '\n';
    }
    {
        auto out = open_out(out_dir / "avg_cost.dat");
        out << "# capacity_mw mean std min max (COP/MWh)\n";
        for (const auto& s : costs)
            out << csv::format_fixed(s.capacity_mw, 1) << ' ' << csv::format_fixed(s.mean, 4)
                << ' ' << csv::format_fixed(s.std_dev, 4) << ' ' << csv::format_fixed(s.min, 4)
                << ' ' << csv::format_fixed(s.max, 4) << '\n';
    }

    auto shares = share_by_type(sweep);
    {
        auto out = open_out(out_dir / "share_by_type.csv");
        out << "capacity_mw,tech,mean_share,std_share\n";
        for (const auto& r : shares)
            out << csv::format_fixed(r.capacity_mw, 1) << ',' << r.tech << ','
                << csv::format_fixed(r.mean_share, 9) << ',' << csv::format_fixed(r.std_share, 9)
                << '\n';
    }
    {
        static const char* kTechs[] = {"Hydro", "SmallHydro", "Gas", "Coal", "Wind"};
        auto at = [&](double cap, const char* tech) -> const ShareRow* {
            for (const auto& r : shares)
                if (r.capacity_mw == cap && r.tech == tech) return &r;
            return nullptr;
        };
        auto out = open_out(out_dir / "share_by_type.dat");
        out << "# capacity_mw hydro small_hydro gas coal wind (mean shares)\n";
        auto chg = open_out(out_dir / "share_change.dat");
        chg << "# capacity_mw hydro small_hydro gas coal wind (share change vs 0 MW, pp)\n";
        for (double cap : sweep.grid) {
            const ShareRow* any = at(cap, "Hydro");
            if (!any) continue;
            out << csv::format_fixed(cap, 1);
            chg << csv::format_fixed(cap, 1);
            for (const char* tech : kTechs) {
                const ShareRow* r = at(cap, tech);
                const ShareRow* r0 = at(sweep.grid.front(), tech);
                double share = r ? r->mean_share : 0.0;
                double base = r0 ? r0->mean_share : 0.0;
                out << ' ' << csv::format_fixed(share, 9);
                chg << ' ' << csv::format_fixed(100.0 * (share - base), 6);
            }
            out << '\n';
            chg << '\n';
        }
    }

    {
        // Mean spot price per hour per capacity, plus the three-case figure file.
        auto out = open_out(out_dir / "spot_price_by_hour.csv");
        out << "capacity_mw,hour,mean_spot,std_spot\n";
        std::size_t horizon = 0;
        for (const auto& cell : sweep.cells)
            if (cell.ok) { horizon = cell.prices.spot.size(); break; }
        std::vector<std::vector<double>> mean_by_cap(sweep.grid.size());
        for (std::size_t c = 0; c < sweep.grid.size(); ++c) {
            mean_by_cap[c].assign(horizon, std::numeric_limits<double>::quiet_NaN());
            for (std::size_t t = 0; t < horizon; ++t) {
                std::vector<double> vals;
                for (std::size_t d = 0; d < sweep.days.size(); ++d) {
                    const SweepCell& cell = sweep.cell(d, c);
                    if (cell.ok) vals.push_back(cell.prices.spot[t]);
                }
                if (vals.empty()) continue;
                MeanStd ms = mean_std(vals);
                mean_by_cap[c][t] = ms.mean;
                out << csv::format_fixed(sweep.grid[c], 1) << ',' << t << ','
                    << csv::format_fixed(ms.mean, 4) << ',' << csv::format_fixed(ms.std_dev, 4)
                    << '\n';
            }
        }
        auto dat = open_out(out_dir / "spot_price.dat");
        dat << "# hour";
        std::vector<std::size_t> cols;
        for (double cap : {0.0, 505.5, 1000.0}) {
            for (std::size_t c = 0; c < sweep.grid.size(); ++c)
                if (sweep.grid[c] == cap) {
                    cols.push_back(c);
                    dat << " spot@" << csv::format_fixed(cap, 1) << "MW";
                }
        }
        dat << '\n';
        for (std::size_t t = 0; t < horizon; ++t) {
            dat << t;
            for (std::size_t c : cols) dat << ' ' << nan_str(mean_by_cap[c][t], 4);
            dat << '\n';
        }
    }

    {
        // All unit trajectories in tidy form; the tracked unit as a .dat file.
        std::vector<std::string> ids;
        for (const auto& cell : sweep.cells) {
            if (!cell.ok) continue;
            for (const auto& us : cell.units) ids.push_back(us.id);
            break;
        }
        auto out = open_out(out_dir / "unit_trajectory.csv");
        out << "generator,capacity_mw,mean_hours_on,mean_net_revenue_cop,relative_revenue\n";
        for (const auto& id : ids) {
            auto traj = unit_trajectory(sweep, id);
            for (const auto& p : traj)
                out << id << ',' << csv::format_fixed(p.capacity_mw, 1) << ','
                    << csv::format_fixed(p.mean_hours_on, 4) << ','
                    << csv::format_fixed(p.mean_net_revenue_cop, 2) << ','
                    << nan_str(p.relative_revenue, 6) << '\n';
        }
        if (!track_unit.empty()) {
            bool known = std::find(ids.begin(), ids.end(), track_unit) != ids.end();
            if (known) {
                auto dat = open_out(out_dir / "unit_trajectory.dat");
                dat << "# capacity_mw mean_hours_on relative_revenue (generator " << track_unit
                    << ")\n";
                for (const auto& p : unit_trajectory(sweep, track_unit))
                    dat << csv::format_fixed(p.capacity_mw, 1) << ' '
                        << csv::format_fixed(p.mean_hours_on, 4) << ' '
                        << nan_str(p.relative_revenue, 6) << '\n';
            }
        }
    }
}

}  // namespace windmarket
