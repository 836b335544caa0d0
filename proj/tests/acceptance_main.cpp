// Acceptance suite: runs every gate criterion end to end on the bundled data
// and prints one PASS/FAIL line per criterion. Exits nonzero when any
// criterion fails. Criterion 6 needs the original study dataset and is
// skipped (not failed) when it is absent.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/dense_lp_oracle.hpp"
#include "support/toys.hpp"
#include "support/uc_enum_oracle.hpp"
#include "windmarket/analytics.hpp"
#include "windmarket/config.hpp"
#include "windmarket/csv.hpp"
#include "windmarket/pricing.hpp"
#include "windmarket/simplex.hpp"

using namespace windmarket;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << criterion << ": " << detail
              << std::endl;
    if (!pass) ++g_failures;
}

void report_skip(int criterion, const std::string& detail) {
    std::cout << "SKIP  criterion " << criterion << ": " << detail << std::endl;
}

double now_seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

fs::path data_dir() { return WINDMARKET_DATA; }

// ---- criterion 1: branch and bound equals exhaustive enumeration ----------
void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(42001);
    SolveLimits limits;
    limits.mip_gap = 0.0;
    int matched = 0, infeasible_agreed = 0;
    double worst = 0.0;
    bool ok = true;
    while (matched < 50) {
        auto inst = toys::random_instance(rng);
        auto ref = oracle::enumerate_uc(inst);
        auto res = branch_and_bound(to_milp(inst), limits);
        if (!ref.feasible) {
            if (res.status != SolveStatus::Infeasible) {
                ok = false;
                break;
            }
            ++infeasible_agreed;
            continue;
        }
        if (res.status != SolveStatus::Optimal) {
            ok = false;
            break;
        }
        double rel = std::fabs(res.objective - ref.objective) /
                     std::max(1.0, std::fabs(ref.objective));
        worst = std::max(worst, rel);
        if (rel > 1e-6) {
            ok = false;
            break;
        }
        ++matched;
    }
    double secs = now_seconds(t0);
    ok = ok && secs < 60.0;
    std::ostringstream detail;
    detail << "50 random UC instances vs enumeration, worst rel diff " << worst << ", "
           << infeasible_agreed << " infeasible agreed, " << csv::format_fixed(secs, 1) << " s";
    report(1, ok, detail.str());
}

// ---- criterion 2: LP vs dense tableau oracle + complementary slackness ----
LinearProgram random_feasible_lp(std::mt19937& rng, int n, int m) {
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    std::uniform_real_distribution<double> x0d(0.0, 5.0);
    std::uniform_real_distribution<double> slackd(0.1, 2.0);
    std::uniform_real_distribution<double> costd(-5.0, 5.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    LinearProgram lp;
    std::vector<double> x0;
    for (int j = 0; j < n; ++j) {
        lp.add_variable(costd(rng), 0.0, 10.0);
        x0.push_back(x0d(rng));
    }
    for (int i = 0; i < m; ++i) {
        std::vector<std::pair<int, double>> row;
        double act = 0.0;
        for (int j = 0; j < n; ++j) {
            if (u01(rng) < 0.6) {
                double a = coef(rng);
                if (std::fabs(a) < 0.1) a = 0.1;
                row.emplace_back(j, a);
                act += a * x0[static_cast<std::size_t>(j)];
            }
        }
        if (row.empty()) {
            row.emplace_back(i % n, 1.0);
            act = x0[static_cast<std::size_t>(i % n)];
        }
        double pick = u01(rng);
        if (pick < 0.4) lp.add_row(RowSense::LE, act + slackd(rng), row);
        else if (pick < 0.8) lp.add_row(RowSense::GE, act - slackd(rng), row);
        else lp.add_row(RowSense::EQ, act, row);
    }
    return lp;
}

void criterion_2() {
    std::mt19937 rng(42002);
    std::uniform_int_distribution<int> nd(3, 12), md(2, 12);
    double worst_obj = 0.0, worst_cs = 0.0;
    bool ok = true;
    for (int trial = 0; trial < 100 && ok; ++trial) {
        LinearProgram lp = random_feasible_lp(rng, nd(rng), md(rng));
        auto mine = simplex_solve(lp);
        auto ref = oracle::solve(lp);
        if (mine.status != SolveStatus::Optimal || ref.status != oracle::Status::Optimal) {
            ok = false;
            break;
        }
        double dobj = std::fabs(mine.objective - ref.objective) /
                      std::max(1.0, std::fabs(ref.objective));
        worst_obj = std::max(worst_obj, dobj);
        // Complementary slackness: dual times row slack, reduced cost times
        // distance to the nearest bound.
        for (int i = 0; i < lp.num_rows(); ++i) {
            double act = 0.0;
            for (int k = lp.row_start[i]; k < lp.row_start[i + 1]; ++k)
                act += lp.coef[static_cast<std::size_t>(k)] *
                       mine.x[static_cast<std::size_t>(lp.col_index[static_cast<std::size_t>(k)])];
            worst_cs = std::max(worst_cs,
                                std::fabs(mine.duals[static_cast<std::size_t>(i)] *
                                          (lp.rhs[static_cast<std::size_t>(i)] - act)));
        }
        for (int j = 0; j < lp.num_vars(); ++j) {
            double dist = std::min(mine.x[static_cast<std::size_t>(j)] - lp.lower[static_cast<std::size_t>(j)],
                                   lp.upper[static_cast<std::size_t>(j)] - mine.x[static_cast<std::size_t>(j)]);
            worst_cs = std::max(worst_cs,
                                std::fabs(mine.reduced_costs[static_cast<std::size_t>(j)]) *
                                    std::max(0.0, dist));
        }
        if (dobj > 1e-7 || worst_cs > 1e-7) ok = false;
    }
    std::ostringstream detail;
    detail << "100 random LPs vs dense oracle, worst rel obj diff " << worst_obj
           << ", worst complementary-slackness residual " << worst_cs;
    report(2, ok, detail.str());
}

// ---- criteria 3+4+5: desk-fleet sweep, feasibility, pricing, trends -------
struct SweepOutcome {
    SweepResult sweep;
    Fleet fleet;
    std::vector<DemandProfile> days;
    std::vector<WindDay> wind;
    double seconds = 0.0;
};

SweepOutcome run_desk_sweep() {
    SweepOutcome out;
    out.fleet = load_fleet(data_dir() / "fleet_desk.csv");
    out.days = load_demand(data_dir() / "demand_desk.csv");
    out.wind = load_wind(data_dir() / "wind.csv");
    SweepConfig cfg;
    cfg.grid = parse_grid("0:1000:100,505.5");
    cfg.limits = SolveLimits{};
    auto t0 = std::chrono::steady_clock::now();
    out.sweep = run_sweep(out.fleet, out.days, out.wind, default_power_curve(), cfg);
    out.seconds = now_seconds(t0);
    return out;
}

void criterion_3(const SweepOutcome& desk) {
    // Every optimally solved schedule must verify clean. Sweeps re-verify via
    // solve_uc already; here the verification is repeated independently on
    // fresh instances plus a batch of randomized solves.
    bool ok = true;
    std::size_t checked = 0;
    std::mt19937 rng(42003);
    for (int trial = 0; trial < 20; ++trial) {
        auto inst = toys::random_instance(rng);
        auto [res, sched] = solve_uc(inst);
        if (res.status != SolveStatus::Optimal) continue;
        auto violations = check_feasibility(inst, sched);
        ok = ok && violations.empty();
        ++checked;
    }
    for (std::size_t d = 0; d < desk.sweep.days.size() && ok; ++d) {
        for (std::size_t c = 0; c < desk.sweep.grid.size(); ++c) {
            const SweepCell& cell = desk.sweep.cell(d, c);
            if (cell.status == SolveStatus::Optimal && !cell.ok) ok = false;
        }
    }
    std::ostringstream detail;
    detail << checked << " randomized optimal schedules re-verified plus "
           << desk.sweep.cells.size() << " sweep cells, zero violations req";
    report(3, ok, detail.str());
}

void criterion_4(const SweepOutcome& desk) {
    bool ok = true;
    double worst_conserve = 0.0;
    for (const auto& cell : desk.sweep.cells) {
        if (!cell.ok) { ok = false; break; }
        if (!(cell.prices.uplift >= 0.0)) ok = false;
        for (std::size_t t = 0; t < cell.prices.spot.size(); ++t) {
            double diff = cell.prices.spot[t] - cell.prices.mpo[t];
            if (std::fabs(diff - cell.prices.uplift) > 1e-9 * (1.0 + cell.prices.uplift))
                ok = false;
        }
        double landed = cell.settlement.wind.net_revenue + cell.settlement.wind.reimbursement;
        for (const auto& e : cell.settlement.units) landed += e.net_revenue + e.reimbursement;
        double rel = std::fabs(cell.settlement.demand_payment - landed) /
                     std::max(1.0, std::fabs(cell.settlement.demand_payment));
        worst_conserve = std::max(worst_conserve, rel);
        if (rel > 1e-6) ok = false;
    }

    // With every start-up cost removed the uplift must be exactly zero.
    Fleet free_start = desk.fleet;
    for (auto& g : free_start.generators) {
        g.startup_cost_cop = 0.0;
        g.initial_on = false;
        g.initial_power_mw = 0.0;
    }
    WindPowerSeries none;
    none.power_mw.assign(24, 0.0);
    auto inst = make_instance(free_start, desk.days[0], std::move(none));
    auto [res, sched] = solve_uc(inst);
    bool zero_uplift = false;
    if (res.status == SolveStatus::Optimal) {
        auto prices = compute_prices(inst, sched);
        zero_uplift = prices.uplift == 0.0;
    }
    ok = ok && zero_uplift;

    std::ostringstream detail;
    detail << "spot-mpo identity and uplift >= 0 on " << desk.sweep.cells.size()
           << " cells, worst money-conservation residual " << worst_conserve
           << ", zero-startup uplift exact " << (zero_uplift ? "yes" : "no");
    report(4, ok, detail.str());
}

void criterion_5(const SweepOutcome& desk) {
    bool ok = true;
    std::ostringstream detail;

    auto costs = avg_daily_cost(desk.sweep);
    auto cost_at = [&](double cap) -> const CostStats* {
        for (const auto& s : costs)
            if (s.capacity_mw == cap) return &s;
        return nullptr;
    };
    const CostStats *a = cost_at(0.0), *b = cost_at(505.5), *c = cost_at(1000.0);
    bool order = a && b && c && a->mean > b->mean && b->mean > c->mean;
    ok = ok && order;
    if (a && b && c)
        detail << "(a) mean cost " << csv::format_fixed(a->mean, 0) << " > "
               << csv::format_fixed(b->mean, 0) << " > " << csv::format_fixed(c->mean, 0)
               << (order ? " ok" : " VIOLATED");

    auto traj = unit_trajectory(desk.sweep, "g3");
    bool hours_mono = true, rev_mono = true;
    for (std::size_t i = 1; i < traj.size(); ++i) {
        if (traj[i].mean_hours_on > traj[i - 1].mean_hours_on + 1e-9) hours_mono = false;
        if (std::isfinite(traj[i].relative_revenue) && std::isfinite(traj[i - 1].relative_revenue) &&
            traj[i].relative_revenue > traj[i - 1].relative_revenue + 1e-6)
            rev_mono = false;
    }
    bool baseline = !traj.empty() && traj.front().capacity_mw == 0.0 &&
                    std::fabs(traj.front().relative_revenue - 1.0) < 1e-9;
    ok = ok && hours_mono && rev_mono && baseline;
    detail << "; (b) peaker hours " << (hours_mono ? "non-increasing" : "VIOLATED")
           << ", relative revenue " << (rev_mono ? "non-increasing" : "VIOLATED");

    auto shares = share_by_type(desk.sweep);
    auto share_at = [&](double cap, const std::string& tech) -> double {
        for (const auto& r : shares)
            if (r.capacity_mw == cap && r.tech == tech) return r.mean_share;
        return -1.0;
    };
    bool wind_up = true;
    double sh_min = 2.0, sh_max = -1.0;
    for (std::size_t i = 0; i < desk.sweep.grid.size(); ++i) {
        double cap = desk.sweep.grid[i];
        double w = share_at(cap, "Wind");
        if (i > 0 && w <= share_at(desk.sweep.grid[i - 1], "Wind")) wind_up = false;
        double sh = share_at(cap, "SmallHydro");
        sh_min = std::min(sh_min, sh);
        sh_max = std::max(sh_max, sh);
    }
    bool sh_const = sh_max - sh_min <= 0.01;  // within one percentage point
    ok = ok && wind_up && sh_const;
    detail << "; (c) wind share " << (wind_up ? "increasing" : "VIOLATED") << ", small-hydro span "
           << csv::format_fixed(100.0 * (sh_max - sh_min), 4) << " pp";

    bool fast = desk.seconds < 300.0;
    ok = ok && fast;
    detail << "; sweep " << csv::format_fixed(desk.seconds, 1) << " s";
    report(5, ok, detail.str());
}

// ---- criterion 6: conditional reproduction of the study tables ------------
void criterion_6() {
    const char* env = std::getenv("WINDMARKET_ORIGINAL_DATA");
    if (!env || !fs::exists(fs::path(env) / "fleet.csv")) {
        report_skip(6, "original study dataset not present (set WINDMARKET_ORIGINAL_DATA "
                       "to a directory with fleet.csv, demand.csv, wind.csv)");
        return;
    }
    fs::path dir = env;
    Fleet fleet = load_fleet(dir / "fleet.csv");
    auto days = load_demand(dir / "demand.csv");
    auto wind = load_wind(dir / "wind.csv");
    TurbinePowerCurve curve = fs::exists(dir / "curve.csv") ? load_curve(dir / "curve.csv")
                                                            : default_power_curve();
    SweepConfig cfg;
    cfg.grid = {0.0, 505.5, 1000.0};
    auto sweep = run_sweep(fleet, days, wind, curve, cfg);
    auto costs = avg_daily_cost(sweep);
    const double expected[3] = {125477.5, 118265.5, 111504.9};
    bool ok = costs.size() == 3;
    std::ostringstream detail;
    detail << "case means";
    for (std::size_t i = 0; i < costs.size() && i < 3; ++i) {
        double rel = std::fabs(costs[i].mean - expected[i]) / expected[i];
        detail << " " << csv::format_fixed(costs[i].mean, 1) << " (ref "
               << csv::format_fixed(expected[i], 1) << ")";
        if (rel > 0.02) ok = false;
    }
    WindStats stats = summarize(concat_series(wind));
    const double ref[5] = {8.49, 9.03, 2.24, 0.25, 13.45};
    double got[5] = {stats.mean, stats.median, stats.std_dev, stats.min, stats.max};
    for (int i = 0; i < 5; ++i)
        if (std::fabs(got[i] - ref[i]) > 0.01) ok = false;
    report(6, ok, detail.str());
}

// ---- criterion 7: 51-unit fleet scale target -------------------------------
void criterion_7() {
    Fleet fleet = load_fleet(data_dir() / "fleet_full.csv");
    auto days = load_demand(data_dir() / "demand_full.csv");
    WindPowerSeries none;
    none.power_mw.assign(24, 0.0);
    auto inst = make_instance(fleet, days[0], std::move(none));
    auto t0 = std::chrono::steady_clock::now();
    auto [res, sched] = solve_uc(inst);  // default limits: 60 s, gap 1e-4
    double secs = now_seconds(t0);
    bool status_ok = res.status == SolveStatus::Optimal ||
                     (res.status == SolveStatus::GapLimit && res.rel_gap <= 0.01);
    bool ok = status_ok && secs < 60.0 && !sched.empty();
    std::ostringstream detail;
    detail << "51-unit fleet x 24 h: status " << to_string(res.status) << ", gap "
           << csv::format_fixed(res.rel_gap, 8) << ", " << res.node_count << " nodes, "
           << csv::format_fixed(secs, 1) << " s";
    report(7, ok, detail.str());
}

// ---- criterion 8: byte-identical sweep reruns ------------------------------
void criterion_8() {
    fs::path out_a = fs::temp_directory_path() / "accept_sweep_a";
    fs::path out_b = fs::temp_directory_path() / "accept_sweep_b";
    fs::remove_all(out_a);
    fs::remove_all(out_b);
    std::string base = std::string(WINDMARKET_CLI) + " sweep --fleet " +
                       (data_dir() / "fleet_desk.csv").string() + " --demand " +
                       (data_dir() / "demand_desk.csv").string() + " --wind " +
                       (data_dir() / "wind.csv").string() +
                       " --grid 0,505.5,1000 --track-unit g3 --jobs 2 --out ";
    int rc_a = std::system((base + out_a.string() + " > /dev/null 2>&1").c_str());
    int rc_b = std::system((base + out_b.string() + " > /dev/null 2>&1").c_str());
    bool ok = WEXITSTATUS(rc_a) == 0 && WEXITSTATUS(rc_b) == 0;
    int compared = 0;
    if (ok) {
        for (const auto& entry : fs::directory_iterator(out_a)) {
            std::ifstream fa(entry.path(), std::ios::binary);
            std::ifstream fb(out_b / entry.path().filename(), std::ios::binary);
            std::stringstream sa, sb;
            sa << fa.rdbuf();
            sb << fb.rdbuf();
            if (!fb.good() || sa.str() != sb.str()) {
                ok = false;
                break;
            }
            ++compared;
        }
        ok = ok && compared > 0;
    }
    std::ostringstream detail;
    detail << "two sweep runs, " << compared << " report files byte-identical";
    report(8, ok, detail.str());
}

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    SweepOutcome desk = run_desk_sweep();
    criterion_3(desk);
    criterion_4(desk);
    criterion_5(desk);
    criterion_6();
    criterion_7();
    criterion_8();
    std::cout << (g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << " ("
              << csv::format_fixed(now_seconds(t0), 1) << " s total)" << std::endl;
    return g_failures == 0 ? 0 : 1;
}
