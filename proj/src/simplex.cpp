#include "windmarket/simplex.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "windmarket/errors.hpp"

namespace windmarket {

namespace {

using Clock = std::chrono::steady_clock;

struct Csc {
    int rows = 0, cols = 0;
    std::vector<int> ptr, idx;
    std::vector<double> val;
};

Csc to_csc(const LinearProgram& lp) {
    Csc a;
    a.rows = lp.num_rows();
    a.cols = lp.num_vars();
    a.ptr.assign(static_cast<std::size_t>(a.cols) + 1, 0);
    for (int j : lp.col_index) ++a.ptr[static_cast<std::size_t>(j) + 1];
    for (int j = 0; j < a.cols; ++j) a.ptr[static_cast<std::size_t>(j) + 1] += a.ptr[static_cast<std::size_t>(j)];
    a.idx.resize(lp.col_index.size());
    a.val.resize(lp.col_index.size());
    std::vector<int> next(a.ptr.begin(), a.ptr.end() - 1);
    for (int i = 0; i < a.rows; ++i) {
        for (int k = lp.row_start[i]; k < lp.row_start[i + 1]; ++k) {
            int j = lp.col_index[static_cast<std::size_t>(k)];
            int slot = next[static_cast<std::size_t>(j)]++;
            a.idx[static_cast<std::size_t>(slot)] = i;
            a.val[static_cast<std::size_t>(slot)] = lp.coef[static_cast<std::size_t>(k)];
        }
    }
    return a;
}

enum class VStat : std::uint8_t { Basic, AtLower, AtUpper, Free };

struct Eta {
    int r = 0;
    double pivot = 0.0;
    std::vector<std::pair<int, double>> col;  // entries of the transformed column, excluding row r
};

class Simplex {
public:
    Simplex(const LinearProgram& lp, const SimplexOptions& opt)
        : opt_(opt), m_(lp.num_rows()), nstruct_(lp.num_vars()), ntot_(lp.num_vars() + lp.num_rows()) {
        lp.validate();
        a_ = to_csc(lp);
        cost_.assign(static_cast<std::size_t>(ntot_), 0.0);
        lb_.resize(static_cast<std::size_t>(ntot_));
        ub_.resize(static_cast<std::size_t>(ntot_));
        for (int j = 0; j < nstruct_; ++j) {
            cost_[static_cast<std::size_t>(j)] = lp.objective[static_cast<std::size_t>(j)];
            lb_[static_cast<std::size_t>(j)] = lp.lower[static_cast<std::size_t>(j)];
            ub_[static_cast<std::size_t>(j)] = lp.upper[static_cast<std::size_t>(j)];
        }
        for (int i = 0; i < m_; ++i) {
            double lo = 0.0, hi = 0.0;
            switch (lp.sense[static_cast<std::size_t>(i)]) {
                case RowSense::LE: lo = 0.0; hi = kInf; break;
                case RowSense::GE: lo = -kInf; hi = 0.0; break;
                case RowSense::EQ: lo = 0.0; hi = 0.0; break;
            }
            lb_[static_cast<std::size_t>(nstruct_ + i)] = lo;
            ub_[static_cast<std::size_t>(nstruct_ + i)] = hi;
        }
        b_ = lp.rhs;
        max_iters_ = opt.max_iterations > 0 ? opt.max_iterations
                                            : 2000 + 60L * (static_cast<long>(m_) + ntot_);
        has_deadline_ = std::isfinite(opt.time_limit_seconds);
        if (has_deadline_)
            deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                           std::chrono::duration<double>(opt.time_limit_seconds));
    }

    SolveResult run(const SimplexBasis* start, SimplexBasis* final_basis) {
        auto t0 = Clock::now();
        SolveResult res;
        init_basis(start);
        Outcome oc = phase_loop(1);
        if (oc == Outcome::Continue) {
            refactorize();
            recompute_basics();
            if (max_infeasibility() > feas_tol_scale() * 10.0) {
                oc = phase_loop(1);  // tolerance-level cleanup after refactorization
            } else {
                oc = Outcome::Continue;
            }
        }
        if (oc == Outcome::Continue) oc = phase_loop(2);
        if (oc == Outcome::Continue) {
            // Final cleanup: refactor, recompute, and confirm optimality held.
            for (int round = 0; round < 3 && oc == Outcome::Continue; ++round) {
                refactorize();
                recompute_basics();
                if (max_infeasibility() > feas_tol_scale()) {
                    oc = phase_loop(1);
                    if (oc == Outcome::Continue) oc = phase_loop(2);
                    continue;
                }
                Eigen::VectorXd y = duals(2);
                if (price(2, y).q < 0) break;  // still optimal after clean recomputation
                oc = phase_loop(2);
            }
        }
        res.iterations = iterations_;
        res.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        if (final_basis) {
            final_basis->vstat.assign(vstat_.size(), 0);
            for (std::size_t j = 0; j < vstat_.size(); ++j)
                final_basis->vstat[j] = static_cast<std::uint8_t>(vstat_[j]);
            final_basis->basic_of_row = basic_of_row_;
        }
        switch (oc) {
            case Outcome::Continue: {
                res.status = SolveStatus::Optimal;
                res.x.assign(x_.begin(), x_.begin() + nstruct_);
                double obj = 0.0;
                for (int j = 0; j < nstruct_; ++j) obj += cost_[static_cast<std::size_t>(j)] * x_[static_cast<std::size_t>(j)];
                res.objective = obj;
                res.best_bound = obj;
                res.rel_gap = 0.0;
                Eigen::VectorXd y = duals(2);
                res.duals.assign(y.data(), y.data() + m_);
                res.reduced_costs.resize(static_cast<std::size_t>(nstruct_));
                for (int j = 0; j < nstruct_; ++j)
                    res.reduced_costs[static_cast<std::size_t>(j)] =
                        vstat_[static_cast<std::size_t>(j)] == VStat::Basic
                            ? 0.0
                            : cost_[static_cast<std::size_t>(j)] - col_dot(j, y);
                break;
            }
            case Outcome::Infeasible: {
                res.status = SolveStatus::Infeasible;
                Eigen::VectorXd y = duals(1);
                res.duals.assign(y.data(), y.data() + m_);  // phase-1 certificate direction
                break;
            }
            case Outcome::Unbounded: res.status = SolveStatus::Unbounded; break;
            case Outcome::TimeLimit: res.status = SolveStatus::TimeLimit; break;
        }
        return res;
    }

private:
    enum class Outcome { Continue, Infeasible, Unbounded, TimeLimit };

    struct Pricing {
        int q = -1;
        int sigma = 0;  // +1 entering rises, -1 entering falls
    };

    struct Ratio {
        double t = kInf;
        int leave_row = -1;  // -1 means bound flip of the entering variable
        VStat leave_to = VStat::AtLower;
        bool unbounded = false;
    };

    double feas_tol(int j) const {
        double s = 1.0;
        if (std::isfinite(lb_[static_cast<std::size_t>(j)])) s = std::max(s, std::fabs(lb_[static_cast<std::size_t>(j)]));
        if (std::isfinite(ub_[static_cast<std::size_t>(j)])) s = std::max(s, std::fabs(ub_[static_cast<std::size_t>(j)]));
        return opt_.primal_tol * s;
    }
    double feas_tol_scale() const {
        double s = 1.0;
        for (double b : b_) s = std::max(s, std::fabs(b));
        return opt_.primal_tol * s;
    }

    void init_basis(const SimplexBasis* start) {
        vstat_.assign(static_cast<std::size_t>(ntot_), VStat::AtLower);
        x_.assign(static_cast<std::size_t>(ntot_), 0.0);
        basic_of_row_.resize(static_cast<std::size_t>(m_));
        if (start && adopt_basis(*start)) {
            refactorize();
            recompute_basics();
            return;
        }
        for (int j = 0; j < nstruct_; ++j) set_nonbasic_default(j);
        for (int i = 0; i < m_; ++i) {
            int s = nstruct_ + i;
            basic_of_row_[static_cast<std::size_t>(i)] = s;
            vstat_[static_cast<std::size_t>(s)] = VStat::Basic;
        }
        refactorize();
        recompute_basics();
    }

    void set_nonbasic_default(int j) {
        if (std::isfinite(lb_[static_cast<std::size_t>(j)])) {
            vstat_[static_cast<std::size_t>(j)] = VStat::AtLower;
            x_[static_cast<std::size_t>(j)] = lb_[static_cast<std::size_t>(j)];
        } else if (std::isfinite(ub_[static_cast<std::size_t>(j)])) {
            vstat_[static_cast<std::size_t>(j)] = VStat::AtUpper;
            x_[static_cast<std::size_t>(j)] = ub_[static_cast<std::size_t>(j)];
        } else {
            vstat_[static_cast<std::size_t>(j)] = VStat::Free;
            x_[static_cast<std::size_t>(j)] = 0.0;
        }
    }

    // Adopt a starting basis when its shape is consistent; bounds may have
    // changed since it was captured, which only shows up as phase-1 work.
    bool adopt_basis(const SimplexBasis& start) {
        if (start.vstat.size() != static_cast<std::size_t>(ntot_) ||
            start.basic_of_row.size() != static_cast<std::size_t>(m_))
            return false;
        std::vector<char> seen(static_cast<std::size_t>(ntot_), 0);
        for (int i = 0; i < m_; ++i) {
            int v = start.basic_of_row[static_cast<std::size_t>(i)];
            if (v < 0 || v >= ntot_ || seen[static_cast<std::size_t>(v)]) return false;
            if (start.vstat[static_cast<std::size_t>(v)] != 0) return false;
            seen[static_cast<std::size_t>(v)] = 1;
        }
        for (int j = 0; j < ntot_; ++j) {
            auto st = start.vstat[static_cast<std::size_t>(j)];
            if (st == 0) {
                if (!seen[static_cast<std::size_t>(j)]) return false;
                vstat_[static_cast<std::size_t>(j)] = VStat::Basic;
            } else if (st == 1) {
                if (std::isfinite(lb_[static_cast<std::size_t>(j)])) {
                    vstat_[static_cast<std::size_t>(j)] = VStat::AtLower;
                    x_[static_cast<std::size_t>(j)] = lb_[static_cast<std::size_t>(j)];
                } else {
                    set_nonbasic_default(j);
                }
            } else if (st == 2) {
                if (std::isfinite(ub_[static_cast<std::size_t>(j)])) {
                    vstat_[static_cast<std::size_t>(j)] = VStat::AtUpper;
                    x_[static_cast<std::size_t>(j)] = ub_[static_cast<std::size_t>(j)];
                } else {
                    set_nonbasic_default(j);
                }
            } else {
                vstat_[static_cast<std::size_t>(j)] = VStat::Free;
                x_[static_cast<std::size_t>(j)] = 0.0;
            }
        }
        basic_of_row_ = start.basic_of_row;
        return true;
    }

    void refactorize() {
        std::vector<Eigen::Triplet<double>> tr;
        tr.reserve(static_cast<std::size_t>(m_) * 4);
        for (int i = 0; i < m_; ++i) {
            int v = basic_of_row_[static_cast<std::size_t>(i)];
            if (v >= nstruct_) {
                tr.emplace_back(v - nstruct_, i, 1.0);
            } else {
                for (int k = a_.ptr[static_cast<std::size_t>(v)]; k < a_.ptr[static_cast<std::size_t>(v) + 1]; ++k)
                    tr.emplace_back(a_.idx[static_cast<std::size_t>(k)], i, a_.val[static_cast<std::size_t>(k)]);
            }
        }
        Eigen::SparseMatrix<double> basis(m_, m_);
        basis.setFromTriplets(tr.begin(), tr.end());
        basis.makeCompressed();
        lu_.compute(basis);
        if (lu_.info() != Eigen::Success) {
            if (++repair_count_ > 3) throw SolverError("simplex: basis factorization failed repeatedly");
            // Repair by restarting from the all-slack basis.
            for (int j = 0; j < ntot_; ++j) {
                if (vstat_[static_cast<std::size_t>(j)] != VStat::Basic) continue;
                if (std::isfinite(lb_[static_cast<std::size_t>(j)])) {
                    vstat_[static_cast<std::size_t>(j)] = VStat::AtLower;
                    x_[static_cast<std::size_t>(j)] = lb_[static_cast<std::size_t>(j)];
                } else if (std::isfinite(ub_[static_cast<std::size_t>(j)])) {
                    vstat_[static_cast<std::size_t>(j)] = VStat::AtUpper;
                    x_[static_cast<std::size_t>(j)] = ub_[static_cast<std::size_t>(j)];
                } else {
                    vstat_[static_cast<std::size_t>(j)] = VStat::Free;
                    x_[static_cast<std::size_t>(j)] = 0.0;
                }
            }
            for (int i = 0; i < m_; ++i) {
                int s = nstruct_ + i;
                basic_of_row_[static_cast<std::size_t>(i)] = s;
                vstat_[static_cast<std::size_t>(s)] = VStat::Basic;
            }
            refactorize();
            recompute_basics();
            return;
        }
        etas_.clear();
        pivots_since_refactor_ = 0;
    }

    void recompute_basics() {
        Eigen::VectorXd r = Eigen::Map<const Eigen::VectorXd>(b_.data(), m_);
        for (int j = 0; j < ntot_; ++j) {
            if (vstat_[static_cast<std::size_t>(j)] == VStat::Basic) continue;
            double xj = x_[static_cast<std::size_t>(j)];
            if (xj == 0.0) continue;
            if (j >= nstruct_) {
                r[j - nstruct_] -= xj;
            } else {
                for (int k = a_.ptr[static_cast<std::size_t>(j)]; k < a_.ptr[static_cast<std::size_t>(j) + 1]; ++k)
                    r[a_.idx[static_cast<std::size_t>(k)]] -= a_.val[static_cast<std::size_t>(k)] * xj;
            }
        }
        Eigen::VectorXd xb = ftran(std::move(r));
        for (int i = 0; i < m_; ++i) x_[static_cast<std::size_t>(basic_of_row_[static_cast<std::size_t>(i)])] = xb[i];
    }

    Eigen::VectorXd ftran(Eigen::VectorXd v) const {
        Eigen::VectorXd w = lu_.solve(v);
        for (const Eta& e : etas_) {
            double t = w[e.r] / e.pivot;
            if (t != 0.0)
                for (const auto& [i, wi] : e.col) w[i] -= wi * t;
            w[e.r] = t;
        }
        return w;
    }

    Eigen::VectorXd btran(Eigen::VectorXd v) {
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
            double s = v[it->r];
            for (const auto& [i, wi] : it->col) s -= wi * v[i];
            v[it->r] = s / it->pivot;
        }
        return lu_.transpose().solve(v);
    }

    void fill_column(int j, Eigen::VectorXd& out) const {
        out.setZero(m_);
        if (j >= nstruct_) {
            out[j - nstruct_] = 1.0;
        } else {
            for (int k = a_.ptr[static_cast<std::size_t>(j)]; k < a_.ptr[static_cast<std::size_t>(j) + 1]; ++k)
                out[a_.idx[static_cast<std::size_t>(k)]] = a_.val[static_cast<std::size_t>(k)];
        }
    }

    double col_dot(int j, const Eigen::VectorXd& y) const {
        if (j >= nstruct_) return y[j - nstruct_];
        double d = 0.0;
        for (int k = a_.ptr[static_cast<std::size_t>(j)]; k < a_.ptr[static_cast<std::size_t>(j) + 1]; ++k)
            d += a_.val[static_cast<std::size_t>(k)] * y[a_.idx[static_cast<std::size_t>(k)]];
        return d;
    }

    double max_infeasibility() const {
        double worst = 0.0;
        for (int i = 0; i < m_; ++i) {
            int v = basic_of_row_[static_cast<std::size_t>(i)];
            double xv = x_[static_cast<std::size_t>(v)];
            if (xv < lb_[static_cast<std::size_t>(v)]) worst = std::max(worst, lb_[static_cast<std::size_t>(v)] - xv);
            if (xv > ub_[static_cast<std::size_t>(v)]) worst = std::max(worst, xv - ub_[static_cast<std::size_t>(v)]);
        }
        return worst;
    }

    // Phase gradient over basic positions: phase 1 drives bound violations to
    // zero, phase 2 uses the true costs.
    Eigen::VectorXd duals(int phase) {
        Eigen::VectorXd g(m_);
        for (int i = 0; i < m_; ++i) {
            int v = basic_of_row_[static_cast<std::size_t>(i)];
            if (phase == 1) {
                double xv = x_[static_cast<std::size_t>(v)];
                double tol = feas_tol(v);
                if (xv > ub_[static_cast<std::size_t>(v)] + tol) g[i] = 1.0;
                else if (xv < lb_[static_cast<std::size_t>(v)] - tol) g[i] = -1.0;
                else g[i] = 0.0;
            } else {
                g[i] = cost_[static_cast<std::size_t>(v)];
            }
        }
        return btran(std::move(g));
    }

    Pricing price(int phase, const Eigen::VectorXd& y) const {
        Pricing best;
        double best_score = 0.0;
        for (int j = 0; j < ntot_; ++j) {
            VStat st = vstat_[static_cast<std::size_t>(j)];
            if (st == VStat::Basic) continue;
            if (lb_[static_cast<std::size_t>(j)] == ub_[static_cast<std::size_t>(j)]) continue;  // fixed
            double c = phase == 1 ? 0.0 : cost_[static_cast<std::size_t>(j)];
            double d = c - col_dot(j, y);
            double tol = opt_.dual_tol * (1.0 + std::fabs(c));
            int sigma = 0;
            double score = 0.0;
            if ((st == VStat::AtLower || st == VStat::Free) && d < -tol) {
                sigma = 1;
                score = -d;
            } else if ((st == VStat::AtUpper || st == VStat::Free) && d > tol) {
                sigma = -1;
                score = d;
            } else {
                continue;
            }
            if (bland_) return {j, sigma};  // Bland: lowest eligible index
            if (score > best_score) {
                best_score = score;
                best = {j, sigma};
            }
        }
        return best;
    }

    Ratio ratio_test(int phase, int q, int sigma, const Eigen::VectorXd& w) const {
        double winf = 0.0;
        for (int i = 0; i < m_; ++i) winf = std::max(winf, std::fabs(w[i]));
        double wdrop = 1e-9 * (1.0 + winf);

        Ratio best;
        double range = ub_[static_cast<std::size_t>(q)] - lb_[static_cast<std::size_t>(q)];
        best.t = range;  // bound flip distance, may be +inf
        double best_w = 0.0;
        for (int i = 0; i < m_; ++i) {
            double wi = w[i];
            if (std::fabs(wi) <= wdrop) continue;
            double rate = -static_cast<double>(sigma) * wi;  // d x_B[i] / d t
            int v = basic_of_row_[static_cast<std::size_t>(i)];
            double xv = x_[static_cast<std::size_t>(v)];
            double lo = lb_[static_cast<std::size_t>(v)], hi = ub_[static_cast<std::size_t>(v)];
            double tol = feas_tol(v);
            double ti = kInf;
            VStat to = VStat::AtLower;
            if (phase == 1 && xv < lo - tol) {
                // Infeasible below: blocks only when rising to its lower bound.
                if (rate > 0.0) { ti = (lo - xv) / rate; to = VStat::AtLower; }
            } else if (phase == 1 && xv > hi + tol) {
                if (rate < 0.0) { ti = (hi - xv) / rate; to = VStat::AtUpper; }
            } else {
                if (rate > 0.0 && std::isfinite(hi)) { ti = (hi - xv) / rate; to = VStat::AtUpper; }
                else if (rate < 0.0 && std::isfinite(lo)) { ti = (lo - xv) / rate; to = VStat::AtLower; }
            }
            if (!(ti < kInf)) continue;
            if (ti < 0.0) ti = 0.0;  // basic already at (or slightly past) its bound
            double tie = 1e-9 * (1.0 + std::min(best.t, ti));
            if (ti < best.t - tie) {
                best.t = ti;
                best.leave_row = i;
                best.leave_to = to;
                best_w = std::fabs(wi);
            } else if (ti <= best.t + tie && best.leave_row >= 0) {
                // Tie: prefer the numerically larger pivot, then the lower index.
                if (std::fabs(wi) > best_w * (1.0 + 1e-12) ||
                    (std::fabs(wi) >= best_w * (1.0 - 1e-12) &&
                     v < basic_of_row_[static_cast<std::size_t>(best.leave_row)])) {
                    best.t = std::min(best.t, ti);
                    best.leave_row = i;
                    best.leave_to = to;
                    best_w = std::fabs(wi);
                }
            }
        }
        if (!(best.t < kInf)) best.unbounded = true;
        if (best.leave_row >= 0 && std::isfinite(range) && range <= best.t)
            best.leave_row = -1;  // flip is at least as tight; prefer it (no basis change)
        return best;
    }

    void apply_step(int q, int sigma, double t, const Eigen::VectorXd& w, const Ratio& ratio) {
        double step = static_cast<double>(sigma) * t;
        if (t != 0.0) {
            for (int i = 0; i < m_; ++i) {
                double wi = w[i];
                if (wi == 0.0) continue;
                x_[static_cast<std::size_t>(basic_of_row_[static_cast<std::size_t>(i)])] -= wi * step;
            }
        }
        if (ratio.leave_row < 0) {
            // Bound flip: the entering variable moves to its opposite bound.
            vstat_[static_cast<std::size_t>(q)] =
                sigma > 0 ? VStat::AtUpper : VStat::AtLower;
            x_[static_cast<std::size_t>(q)] = sigma > 0 ? ub_[static_cast<std::size_t>(q)] : lb_[static_cast<std::size_t>(q)];
            return;
        }
        int r = ratio.leave_row;
        int leaving = basic_of_row_[static_cast<std::size_t>(r)];
        x_[static_cast<std::size_t>(q)] += step;
        x_[static_cast<std::size_t>(leaving)] = ratio.leave_to == VStat::AtLower
                                                    ? lb_[static_cast<std::size_t>(leaving)]
                                                    : ub_[static_cast<std::size_t>(leaving)];
        vstat_[static_cast<std::size_t>(leaving)] = ratio.leave_to;
        vstat_[static_cast<std::size_t>(q)] = VStat::Basic;
        basic_of_row_[static_cast<std::size_t>(r)] = q;

        Eta e;
        e.r = r;
        e.pivot = w[r];
        double winf = 0.0;
        for (int i = 0; i < m_; ++i) winf = std::max(winf, std::fabs(w[i]));
        double keep = 1e-12 * (1.0 + winf);
        for (int i = 0; i < m_; ++i)
            if (i != r && std::fabs(w[i]) > keep) e.col.emplace_back(i, w[i]);
        etas_.push_back(std::move(e));
        ++pivots_since_refactor_;
    }

    Outcome phase_loop(int phase) {
        Eigen::VectorXd col(m_);
        int stale_retries = 0;
        for (;;) {
            if (++iterations_ > max_iters_)
                throw SolverError("simplex: iteration limit exceeded (possible numerical stall)");
            if (has_deadline_ && (iterations_ & 0xF) == 0 && Clock::now() > deadline_)
                return Outcome::TimeLimit;
            if (pivots_since_refactor_ >= opt_.refactor_interval ||
                etas_.size() > static_cast<std::size_t>(2 * opt_.refactor_interval)) {
                refactorize();
                recompute_basics();
            }
            if (phase == 1 && max_infeasibility() <= feas_tol_scale()) return Outcome::Continue;

            Eigen::VectorXd y = duals(phase);
            Pricing pr = price(phase, y);
            if (pr.q < 0) {
                if (phase == 1) return Outcome::Infeasible;  // infeasibility minimized but nonzero
                return Outcome::Continue;                    // phase-2 optimal
            }
            fill_column(pr.q, col);
            Eigen::VectorXd w = ftran(col);
            Ratio ratio = ratio_test(phase, pr.q, pr.sigma, w);
            if (ratio.unbounded) {
                if (phase == 2) return Outcome::Unbounded;
                throw SolverError("simplex: unbounded phase-1 direction");
            }
            if (ratio.leave_row >= 0) {
                double winf = 0.0;
                for (int i = 0; i < m_; ++i) winf = std::max(winf, std::fabs(w[i]));
                if (std::fabs(w[ratio.leave_row]) < 1e-8 * (1.0 + winf)) {
                    // Tiny pivot. Refactor and retry with a clean basis; if it
                    // persists on a fresh factorization, give up honestly.
                    if (pivots_since_refactor_ > 0 && stale_retries < 8) {
                        ++stale_retries;
                        refactorize();
                        recompute_basics();
                        continue;
                    }
                    throw SolverError("simplex: no acceptable pivot (numerical failure)");
                }
            }
            stale_retries = 0;
            apply_step(pr.q, pr.sigma, ratio.t, w, ratio);

            if (ratio.t <= 1e-10) {
                if (++degen_streak_ > opt_.bland_trigger) bland_ = true;
            } else {
                degen_streak_ = 0;
                bland_ = false;
            }
        }
    }

    const SimplexOptions opt_;
    int m_, nstruct_, ntot_;
    Csc a_;
    std::vector<double> cost_, lb_, ub_, b_;
    long max_iters_ = 0;
    bool has_deadline_ = false;
    Clock::time_point deadline_;

    std::vector<VStat> vstat_;
    std::vector<int> basic_of_row_;
    std::vector<double> x_;
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
    std::vector<Eta> etas_;
    int pivots_since_refactor_ = 0;
    long iterations_ = 0;
    int degen_streak_ = 0;
    bool bland_ = false;
    int repair_count_ = 0;
};

}  // namespace

SolveResult simplex_solve(const LinearProgram& lp, const SimplexOptions& options) {
    return simplex_solve(lp, options, nullptr, nullptr);
}

SolveResult simplex_solve(const LinearProgram& lp, const SimplexOptions& options,
                          const SimplexBasis* start, SimplexBasis* final) {
    if (lp.num_rows() == 0) {
        // No constraints: each variable sits at its cheapest bound.
        lp.validate();
        SolveResult res;
        res.x.resize(static_cast<std::size_t>(lp.num_vars()));
        double obj = 0.0;
        for (int j = 0; j < lp.num_vars(); ++j) {
            double c = lp.objective[static_cast<std::size_t>(j)];
            double v;
            if (c > 0.0) v = lp.lower[static_cast<std::size_t>(j)];
            else if (c < 0.0) v = lp.upper[static_cast<std::size_t>(j)];
            else v = std::isfinite(lp.lower[static_cast<std::size_t>(j)]) ? lp.lower[static_cast<std::size_t>(j)]
                     : std::isfinite(lp.upper[static_cast<std::size_t>(j)]) ? lp.upper[static_cast<std::size_t>(j)]
                                                                            : 0.0;
            if (!std::isfinite(v)) {
                res.status = SolveStatus::Unbounded;
                res.x.clear();
                return res;
            }
            res.x[static_cast<std::size_t>(j)] = v;
            obj += c * v;
        }
        res.status = SolveStatus::Optimal;
        res.objective = obj;
        res.best_bound = obj;
        res.rel_gap = 0.0;
        res.reduced_costs = lp.objective;
        if (final) {
            final->vstat.assign(static_cast<std::size_t>(lp.num_vars()), 1);
            final->basic_of_row.clear();
        }
        return res;
    }
    Simplex solver(lp, options);
    return solver.run(start, final);
}

}  // namespace windmarket
