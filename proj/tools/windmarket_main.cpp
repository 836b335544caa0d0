// Day-ahead market simulator CLI: solve one day, sweep installed wind
// capacity, summarize a wind record, or validate input files.
#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "windmarket/analytics.hpp"
#include "windmarket/config.hpp"
#include "windmarket/csv.hpp"
#include "windmarket/errors.hpp"
#include "windmarket/version.hpp"

using namespace windmarket;

namespace {

// Exit codes: 0 success, 1 usage/config, 2 data validation, 3 infeasible
// model, 4 solver limit with no incumbent, 5 internal error.
enum ExitCode { kOk = 0, kUsage = 1, kBadData = 2, kInfeasible = 3, kNoIncumbent = 4, kInternal = 5 };

struct CliFlags {
    std::string config;
    std::optional<std::string> fleet, demand, wind, curve, out, day, track_unit, uplift, grid;
    std::optional<double> time_limit, mip_gap, capacity, bin_width;
    std::optional<long> node_limit;
    std::optional<int> jobs;
    std::optional<unsigned> seed;
    bool curtailment = false, net_price_takers = false, integer_turbines = false;
};

void add_common(CLI::App* cmd, CliFlags& f) {
    cmd->add_option("--config", f.config, "key = value config file; flags override it");
    cmd->add_option("--fleet", f.fleet, "generator fleet CSV/JSON");
    cmd->add_option("--demand", f.demand, "demand CSV (day_label,h00..h23)");
    cmd->add_option("--wind", f.wind, "wind speed CSV (day_label,h00..h23, m/s)");
    cmd->add_option("--curve", f.curve, "turbine power curve CSV (default: bundled V90-class)");
    cmd->add_option("--grid", f.grid, "capacity grid, e.g. 0:1000:50,505.5");
    cmd->add_option("--time-limit", f.time_limit, "seconds per day-instance solve");
    cmd->add_option("--mip-gap", f.mip_gap, "relative optimality gap");
    cmd->add_option("--node-limit", f.node_limit, "branch-and-bound node limit");
    cmd->add_option("--uplift-convention", f.uplift, "make-whole | as-printed");
    cmd->add_flag("--curtailment", f.curtailment, "allow wind curtailment slack");
    cmd->add_flag("--net-price-takers", f.net_price_takers,
                  "net price-taker units off the demand");
    cmd->add_flag("--integer-turbines", f.integer_turbines, "round farms to whole turbines");
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--jobs", f.jobs, "parallel solves for sweeps");
    cmd->add_option("--seed", f.seed, "seed for synthetic data regeneration tools");
    cmd->add_option("--track-unit", f.track_unit, "generator highlighted in unit_trajectory.dat");
}

RunConfig merge(const CliFlags& f) {
    RunConfig cfg;
    if (!f.config.empty()) apply_config_file(cfg, f.config);
    if (f.fleet) cfg.fleet_path = *f.fleet;
    if (f.demand) cfg.demand_path = *f.demand;
    if (f.wind) cfg.wind_path = *f.wind;
    if (f.curve) cfg.curve_path = *f.curve;
    if (f.out) cfg.out_dir = *f.out;
    if (f.grid) cfg.grid = parse_grid(*f.grid);
    if (f.time_limit) cfg.time_limit_seconds = *f.time_limit;
    if (f.mip_gap) cfg.mip_gap = *f.mip_gap;
    if (f.node_limit) cfg.node_limit = *f.node_limit;
    if (f.uplift) cfg.uplift_convention = uplift_convention_from_string(*f.uplift);
    if (f.curtailment) cfg.curtailment = true;
    if (f.net_price_takers) cfg.net_price_takers = true;
    if (f.integer_turbines) cfg.integer_turbines = true;
    if (f.jobs) cfg.jobs = *f.jobs;
    if (f.seed) cfg.seed = *f.seed;
    if (f.day) cfg.day = *f.day;
    if (f.capacity) cfg.capacity_mw = *f.capacity;
    if (f.bin_width) cfg.bin_width_ms = *f.bin_width;
    if (f.track_unit) cfg.track_unit = *f.track_unit;
    if (cfg.grid.empty()) cfg.grid = default_grid();
    return cfg;
}

SolveLimits limits_of(const RunConfig& cfg) {
    SolveLimits lim;
    lim.mip_gap = cfg.mip_gap;
    lim.time_limit_seconds = cfg.time_limit_seconds;
    lim.node_limit = cfg.node_limit;
    return lim;
}

TurbinePowerCurve curve_of(const RunConfig& cfg) {
    return cfg.curve_path.empty() ? default_power_curve() : load_curve(cfg.curve_path);
}

const DemandProfile& pick_day(const std::vector<DemandProfile>& days, const std::string& label) {
    if (label.empty()) return days.front();
    for (const auto& d : days)
        if (d.day_label == label) return d;
    throw ValidationError("no demand day labelled '" + label + "'");
}

const WindDay& pick_wind(const std::vector<WindDay>& days, const std::string& label) {
    for (const auto& d : days)
        if (d.day_label == label) return d;
    throw ValidationError("no wind day labelled '" + label + "'");
}

int cmd_solve(const RunConfig& cfg) {
    if (cfg.fleet_path.empty() || cfg.demand_path.empty()) {
        std::cerr << "solve: --fleet and --demand are required\n";
        return kUsage;
    }
    Fleet fleet = load_fleet(cfg.fleet_path);
    auto days = load_demand(cfg.demand_path);
    const DemandProfile& day = pick_day(days, cfg.day);

    UCOptions uc_opts{cfg.curtailment, cfg.net_price_takers};
    UCInstance inst;
    if (cfg.capacity_mw > 0.0 || !cfg.wind_path.empty()) {
        if (cfg.wind_path.empty()) {
            std::cerr << "solve: --wind is required for a nonzero capacity\n";
            return kUsage;
        }
        auto wind_days = load_wind(cfg.wind_path);
        inst = build_instance(fleet, day, day_series(pick_wind(wind_days, day.day_label)),
                              curve_of(cfg), cfg.capacity_mw, uc_opts,
                              FarmOptions{cfg.integer_turbines});
    } else {
        WindPowerSeries none;
        none.power_mw.assign(day.demand_mw.size(), 0.0);
        inst = make_instance(fleet, day, std::move(none), uc_opts);
    }
    for (const auto& w : inst.warnings) std::cerr << "warning: " << w << '\n';

    auto [res, sched] = solve_uc(inst, limits_of(cfg));
    std::cout << "day " << day.day_label << "  capacity " << csv::format_fixed(cfg.capacity_mw, 1)
              << " MW  status " << to_string(res.status) << "  nodes " << res.node_count << '\n';
    if (!sched.empty()) {
        std::cout << "objective " << csv::format_fixed(sched.objective_value, 2) << " COP  gap "
                  << csv::format_fixed(res.rel_gap, 8) << '\n';
        std::filesystem::create_directories(cfg.out_dir);
        write_schedule_csv(sched, std::filesystem::path(cfg.out_dir) / "schedule.csv");
        write_schedule_json(inst, sched, res, std::filesystem::path(cfg.out_dir) / "schedule.json");
        PriceReport prices = compute_prices(inst, sched, cfg.uplift_convention);
        write_prices_csv(prices, std::filesystem::path(cfg.out_dir) / "prices.csv");
        SettlementReport settlement = settle(inst, sched, prices);
        write_settlement_csv(settlement, std::filesystem::path(cfg.out_dir) / "settlement.csv");
        std::cout << "uplift " << csv::format_fixed(prices.uplift, 4) << " COP/MWh  reports in "
                  << cfg.out_dir << '\n';
        return kOk;
    }
    if (res.status == SolveStatus::Infeasible) {
        std::cerr << "model is infeasible\n";
        return kInfeasible;
    }
    std::cerr << "solver hit a limit with no incumbent (" << to_string(res.status) << ")\n";
    return kNoIncumbent;
}

int cmd_sweep(const RunConfig& cfg) {
    if (cfg.fleet_path.empty() || cfg.demand_path.empty() || cfg.wind_path.empty()) {
        std::cerr << "sweep: --fleet, --demand and --wind are required\n";
        return kUsage;
    }
    SweepConfig sc;
    sc.grid = cfg.grid;
    sc.limits = limits_of(cfg);
    sc.convention = cfg.uplift_convention;
    sc.uc_options = UCOptions{cfg.curtailment, cfg.net_price_takers};
    sc.farm_options = FarmOptions{cfg.integer_turbines};
    sc.jobs = cfg.jobs;

    Fleet fleet = load_fleet(cfg.fleet_path);
    auto days = load_demand(cfg.demand_path);
    auto wind_days = load_wind(cfg.wind_path);
    SweepResult sweep = run_sweep(fleet, days, wind_days, curve_of(cfg), sc);
    write_sweep_reports(sweep, cfg.out_dir, cfg.track_unit);

    std::size_t ok = 0, failed = 0;
    for (const auto& cell : sweep.cells) (cell.ok ? ok : failed)++;
    std::cout << "sweep: " << sweep.days.size() << " days x " << sweep.grid.size()
              << " capacities = " << sweep.cells.size() << " cells (" << ok << " ok, " << failed
              << " failed)\n";
    for (const auto& s : avg_daily_cost(sweep))
        std::cout << "  " << csv::format_fixed(s.capacity_mw, 1) << " MW: mean avg cost "
                  << csv::format_fixed(s.mean, 1) << " COP/MWh over " << s.n_days << " days\n";
    std::cout << "reports in " << cfg.out_dir << '\n';
    if (failed > 0)
        std::cerr << "warning: " << failed << " cells failed; see sweep_cells.csv\n";
    return ok > 0 ? kOk : kInfeasible;
}

int cmd_windstats(const RunConfig& cfg) {
    if (cfg.wind_path.empty()) {
        std::cerr << "windstats: --wind is required\n";
        return kUsage;
    }
    if (!(cfg.bin_width_ms > 0.0)) {
        std::cerr << "windstats: --bin-width must be > 0\n";
        return kUsage;
    }
    auto days = load_wind(cfg.wind_path);
    WindSpeedSeries series = concat_series(days, cfg.wind_path);
    WindStats stats = summarize(series);
    auto bins = histogram(series, cfg.bin_width_ms);
    std::filesystem::create_directories(cfg.out_dir);
    write_stats_csv(stats, std::filesystem::path(cfg.out_dir) / "wind_stats.csv");
    write_histogram_csv(bins, std::filesystem::path(cfg.out_dir) / "wind_histogram.csv");
    std::cout << "samples " << series.speeds_ms.size() << "  mean "
              << csv::format_fixed(stats.mean, 2) << "  median " << csv::format_fixed(stats.median, 2)
              << "  std " << csv::format_fixed(stats.std_dev, 2) << "  min "
              << csv::format_fixed(stats.min, 2) << "  max " << csv::format_fixed(stats.max, 2)
              << " m/s\n";
    std::cout << "reports in " << cfg.out_dir << '\n';
    return kOk;
}

int cmd_validate(const RunConfig& cfg) {
    int checked = 0;
    if (!cfg.fleet_path.empty()) {
        Fleet f = load_fleet(cfg.fleet_path);
        std::cout << "fleet ok: " << f.generators.size() << " generators\n";
        ++checked;
    }
    if (!cfg.demand_path.empty()) {
        auto d = load_demand(cfg.demand_path);
        std::cout << "demand ok: " << d.size() << " days\n";
        ++checked;
    }
    if (!cfg.wind_path.empty()) {
        auto w = load_wind(cfg.wind_path);
        std::cout << "wind ok: " << w.size() << " days\n";
        ++checked;
    }
    if (!cfg.curve_path.empty()) {
        TurbinePowerCurve c = load_curve(cfg.curve_path);
        std::cout << "curve ok: " << c.points.size() << " points, rated "
                  << csv::format_fixed(c.rated_power_mw, 2) << " MW\n";
        ++checked;
    }
    if (checked == 0) {
        std::cerr << "validate: pass at least one of --fleet/--demand/--wind/--curve\n";
        return kUsage;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"day-ahead electricity market simulator with wind integration"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    CliFlags flags;
    double capacity = 0.0, bin_width = 0.0;

    CLI::App* solve = app.add_subcommand("solve", "solve one day at one installed wind capacity");
    add_common(solve, flags);
    solve->add_option("--day", flags.day, "day label (default: first)");
    solve->add_option("--capacity", capacity, "installed wind capacity, MW");

    CLI::App* sweep = app.add_subcommand("sweep", "solve all days across the capacity grid");
    add_common(sweep, flags);

    CLI::App* windstats = app.add_subcommand("windstats", "wind record statistics and histogram");
    add_common(windstats, flags);
    windstats->add_option("--bin-width", bin_width, "histogram bin width, m/s (default 1)");

    CLI::App* validate = app.add_subcommand("validate", "load and validate input files");
    add_common(validate, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (solve->parsed() && solve->count("--capacity")) flags.capacity = capacity;
        if (windstats->parsed() && windstats->count("--bin-width")) flags.bin_width = bin_width;
        RunConfig cfg = merge(flags);
        if (solve->parsed()) return cmd_solve(cfg);
        if (sweep->parsed()) return cmd_sweep(cfg);
        if (windstats->parsed()) return cmd_windstats(cfg);
        if (validate->parsed()) return cmd_validate(cfg);
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadData;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadData;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
}
