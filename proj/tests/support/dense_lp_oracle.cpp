#include "dense_lp_oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace oracle {

namespace {

constexpr double kTol = 1e-9;
constexpr double kInfty = std::numeric_limits<double>::infinity();

// Standard-form problem: min c.x, T x = b, x >= 0, with artificials appended.
struct Tableau {
    int rows = 0, cols = 0;                 // cols excludes the rhs column
    std::vector<std::vector<double>> t;     // rows x (cols + 1), last column is rhs
    std::vector<int> basis;                 // basic variable per row
    std::vector<double> cost;               // phase-2 costs, size cols
    int first_artificial = 0;

    double& rhs(int i) { return t[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols)]; }

    void pivot(int r, int j) {
        auto& row = t[static_cast<std::size_t>(r)];
        double piv = row[static_cast<std::size_t>(j)];
        for (double& v : row) v /= piv;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            auto& other = t[static_cast<std::size_t>(i)];
            double f = other[static_cast<std::size_t>(j)];
            if (f == 0.0) continue;
            for (int k = 0; k <= cols; ++k)
                other[static_cast<std::size_t>(k)] -= f * row[static_cast<std::size_t>(k)];
        }
        basis[static_cast<std::size_t>(r)] = j;
    }

    // Reduced costs computed from scratch each iteration: d = c - c_B . T.
    std::vector<double> reduced(const std::vector<double>& c) const {
        std::vector<double> d(c);
        for (int i = 0; i < rows; ++i) {
            double cb = c[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])];
            if (cb == 0.0) continue;
            for (int j = 0; j < cols; ++j)
                d[static_cast<std::size_t>(j)] -=
                    cb * t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
        return d;
    }

    // Bland's rule; returns false at optimality, throws on unboundedness.
    bool iterate(const std::vector<double>& c, bool allow_artificial_entering) {
        std::vector<double> d = reduced(c);
        int enter = -1;
        for (int j = 0; j < cols; ++j) {
            if (!allow_artificial_entering && j >= first_artificial) continue;
            if (d[static_cast<std::size_t>(j)] < -kTol) { enter = j; break; }
        }
        if (enter < 0) return false;
        int leave = -1;
        double best = kInfty;
        for (int i = 0; i < rows; ++i) {
            double a = t[static_cast<std::size_t>(i)][static_cast<std::size_t>(enter)];
            if (a > kTol) {
                double ratio = t[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols)] / a;
                if (ratio < best - kTol ||
                    (ratio < best + kTol &&
                     (leave < 0 || basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])))
                {
                    best = ratio;
                    leave = i;
                }
            }
        }
        if (leave < 0) throw std::runtime_error("oracle: unbounded");
        pivot(leave, enter);
        return true;
    }
};

}  // namespace

Result solve(const windmarket::LinearProgram& lp) {
    using windmarket::RowSense;
    const int n = lp.num_vars();
    const int m = lp.num_rows();

    // Variable transformation to x' >= 0 space.
    //  kind 0: x = shift + x'            (finite lower bound)
    //  kind 1: x = shift - x'            (upper bound only)
    //  kind 2: x = x'_pos - x'_neg       (free)
    struct Map {
        int kind = 0;
        double shift = 0.0;
        int col = 0, col2 = 0;
    };
    std::vector<Map> vmap(static_cast<std::size_t>(n));
    int std_cols = 0;
    for (int j = 0; j < n; ++j) {
        Map& mp = vmap[static_cast<std::size_t>(j)];
        if (std::isfinite(lp.lower[static_cast<std::size_t>(j)])) {
            mp.kind = 0;
            mp.shift = lp.lower[static_cast<std::size_t>(j)];
            mp.col = std_cols++;
        } else if (std::isfinite(lp.upper[static_cast<std::size_t>(j)])) {
            mp.kind = 1;
            mp.shift = lp.upper[static_cast<std::size_t>(j)];
            mp.col = std_cols++;
        } else {
            mp.kind = 2;
            mp.col = std_cols++;
            mp.col2 = std_cols++;
        }
    }

    // Rows: the original constraints plus one bound row per two-sided variable.
    struct DenseRow {
        std::vector<double> a;
        RowSense sense;
        double rhs;
    };
    std::vector<DenseRow> rows;
    auto blank = [&] { return std::vector<double>(static_cast<std::size_t>(std_cols), 0.0); };
    auto add_entry = [&](std::vector<double>& a, int j, double coef, double& rhs) {
        const Map& mp = vmap[static_cast<std::size_t>(j)];
        if (mp.kind == 0) {
            a[static_cast<std::size_t>(mp.col)] += coef;
            rhs -= coef * mp.shift;
        } else if (mp.kind == 1) {
            a[static_cast<std::size_t>(mp.col)] -= coef;
            rhs -= coef * mp.shift;
        } else {
            a[static_cast<std::size_t>(mp.col)] += coef;
            a[static_cast<std::size_t>(mp.col2)] -= coef;
        }
    };
    for (int i = 0; i < m; ++i) {
        DenseRow r{blank(), lp.sense[static_cast<std::size_t>(i)], lp.rhs[static_cast<std::size_t>(i)]};
        for (int k = lp.row_start[i]; k < lp.row_start[i + 1]; ++k)
            add_entry(r.a, lp.col_index[static_cast<std::size_t>(k)],
                      lp.coef[static_cast<std::size_t>(k)], r.rhs);
        rows.push_back(std::move(r));
    }
    for (int j = 0; j < n; ++j) {
        const Map& mp = vmap[static_cast<std::size_t>(j)];
        if (mp.kind == 0 && std::isfinite(lp.upper[static_cast<std::size_t>(j)])) {
            DenseRow r{blank(), RowSense::LE,
                       lp.upper[static_cast<std::size_t>(j)] - lp.lower[static_cast<std::size_t>(j)]};
            r.a[static_cast<std::size_t>(mp.col)] = 1.0;
            rows.push_back(std::move(r));
        }
        // kind 1 has no second finite bound by construction; free vars have none.
    }

    // Objective in the transformed space (the shift constant does not affect
    // pivoting and the reported objective is recomputed in original space).
    std::vector<double> std_cost(static_cast<std::size_t>(std_cols), 0.0);
    for (int j = 0; j < n; ++j) {
        const Map& mp = vmap[static_cast<std::size_t>(j)];
        double c = lp.objective[static_cast<std::size_t>(j)];
        if (mp.kind == 0) std_cost[static_cast<std::size_t>(mp.col)] += c;
        else if (mp.kind == 1) std_cost[static_cast<std::size_t>(mp.col)] -= c;
        else {
            std_cost[static_cast<std::size_t>(mp.col)] += c;
            std_cost[static_cast<std::size_t>(mp.col2)] -= c;
        }
    }

    // Slacks/surpluses, then sign-normalize rhs, then one artificial per row.
    const int mrows = static_cast<int>(rows.size());
    int slack_cols = 0;
    for (const auto& r : rows) slack_cols += r.sense != RowSense::EQ ? 1 : 0;
    const int total = std_cols + slack_cols + mrows;

    Tableau tab;
    tab.rows = mrows;
    tab.cols = total;
    tab.first_artificial = std_cols + slack_cols;
    tab.t.assign(static_cast<std::size_t>(mrows), std::vector<double>(static_cast<std::size_t>(total) + 1, 0.0));
    tab.basis.assign(static_cast<std::size_t>(mrows), 0);
    tab.cost.assign(static_cast<std::size_t>(total), 0.0);
    for (int j = 0; j < std_cols; ++j) tab.cost[static_cast<std::size_t>(j)] = std_cost[static_cast<std::size_t>(j)];

    int next_slack = std_cols;
    for (int i = 0; i < mrows; ++i) {
        auto& trow = tab.t[static_cast<std::size_t>(i)];
        for (int j = 0; j < std_cols; ++j) trow[static_cast<std::size_t>(j)] = rows[static_cast<std::size_t>(i)].a[static_cast<std::size_t>(j)];
        trow[static_cast<std::size_t>(total)] = rows[static_cast<std::size_t>(i)].rhs;
        if (rows[static_cast<std::size_t>(i)].sense == RowSense::LE)
            trow[static_cast<std::size_t>(next_slack++)] = 1.0;
        else if (rows[static_cast<std::size_t>(i)].sense == RowSense::GE)
            trow[static_cast<std::size_t>(next_slack++)] = -1.0;
        if (trow[static_cast<std::size_t>(total)] < 0.0)
            for (double& v : trow) v = -v;
        int art = tab.first_artificial + i;
        trow[static_cast<std::size_t>(art)] = 1.0;
        tab.basis[static_cast<std::size_t>(i)] = art;
    }

    // Phase 1: minimize the artificial sum.
    std::vector<double> phase1(static_cast<std::size_t>(total), 0.0);
    for (int i = 0; i < mrows; ++i) phase1[static_cast<std::size_t>(tab.first_artificial + i)] = 1.0;
    Result res;
    try {
        while (tab.iterate(phase1, true)) {}
    } catch (const std::runtime_error&) {
        throw;  // phase 1 cannot be unbounded; surface loudly if it happens
    }
    double infeas = 0.0;
    for (int i = 0; i < mrows; ++i)
        if (tab.basis[static_cast<std::size_t>(i)] >= tab.first_artificial)
            infeas += tab.rhs(i);
    if (infeas > 1e-7) {
        res.status = Status::Infeasible;
        return res;
    }
    // Drive remaining zero-valued artificials out of the basis where possible.
    for (int i = 0; i < mrows; ++i) {
        if (tab.basis[static_cast<std::size_t>(i)] < tab.first_artificial) continue;
        for (int j = 0; j < tab.first_artificial; ++j) {
            if (std::fabs(tab.t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) > kTol) {
                tab.pivot(i, j);
                break;
            }
        }
    }

    // Phase 2.
    try {
        while (tab.iterate(tab.cost, false)) {}
    } catch (const std::runtime_error&) {
        res.status = Status::Unbounded;
        return res;
    }

    std::vector<double> std_x(static_cast<std::size_t>(total), 0.0);
    for (int i = 0; i < mrows; ++i)
        std_x[static_cast<std::size_t>(tab.basis[static_cast<std::size_t>(i)])] = tab.rhs(i);
    res.status = Status::Optimal;
    res.x.assign(static_cast<std::size_t>(n), 0.0);
    res.objective = 0.0;
    for (int j = 0; j < n; ++j) {
        const Map& mp = vmap[static_cast<std::size_t>(j)];
        double v;
        if (mp.kind == 0) v = mp.shift + std_x[static_cast<std::size_t>(mp.col)];
        else if (mp.kind == 1) v = mp.shift - std_x[static_cast<std::size_t>(mp.col)];
        else v = std_x[static_cast<std::size_t>(mp.col)] - std_x[static_cast<std::size_t>(mp.col2)];
        res.x[static_cast<std::size_t>(j)] = v;
        res.objective += lp.objective[static_cast<std::size_t>(j)] * v;
    }
    return res;
}

}  // namespace oracle
