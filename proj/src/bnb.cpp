#include "windmarket/bnb.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <queue>
#include <vector>

#include "windmarket/errors.hpp"

namespace windmarket {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kIntegralityTol = 1e-6;

struct Node {
    int parent = -1;
    int branch_var = -1;
    double branch_val = 0.0;
    double bound = -kInf;  // parent relaxation objective: a valid subtree lower bound
    long seq = 0;
    int depth = 0;
    // Parent's optimal basis; reoptimizing from it costs a handful of pivots
    // instead of a cold solve. Internal to this one call.
    std::shared_ptr<SimplexBasis> start;
};

struct HeapEntry {
    double bound;
    long seq;
    int idx;
    bool operator>(const HeapEntry& o) const {
        if (bound != o.bound) return bound > o.bound;
        return seq > o.seq;
    }
};

double rel_gap(double incumbent, double bound) {
    if (!std::isfinite(incumbent)) return kInf;
    return (incumbent - bound) / std::max(1e-12, std::fabs(incumbent));
}

}  // namespace

SolveResult branch_and_bound(const MixedIntegerProgram& mip, const SolveLimits& limits,
                             const SimplexOptions& lp_options) {
    mip.validate();
    auto t0 = Clock::now();
    const double budget = limits.time_limit_seconds;

    LinearProgram scratch = mip.lp;  // bounds and objective are rewritten per node
    const std::vector<double> root_lb = mip.lp.lower;
    const std::vector<double> root_ub = mip.lp.upper;

    // Zero-cost binaries lie on a degenerate optimal face of the relaxation;
    // a deterministic sub-tolerance objective nudge parks them at their upper
    // bound instead of an arbitrary fractional vertex. Weights decrease
    // strictly with the variable index so that coupled zero-cost binaries
    // (e.g. a commitment flag and the start-up flag it gates) break their tie
    // toward the lower-indexed one. Nudges are all negative, so node bounds
    // stay valid lower bounds.
    double cmax = 0.0;
    for (double c : mip.lp.objective) cmax = std::max(cmax, std::fabs(c));
    const double nudge = std::max(1e-6, 1e-8 * cmax);
    const double span = std::max(1, mip.lp.num_vars() - 1);
    std::vector<double> node_cost = mip.lp.objective;
    for (int j : mip.binary_vars)
        if (node_cost[static_cast<std::size_t>(j)] == 0.0)
            node_cost[static_cast<std::size_t>(j)] =
                -nudge * (1.0 + (mip.lp.num_vars() - 1 - j) / span);
    scratch.objective = node_cost;

    std::vector<Node> arena;
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>> heap;
    long seq = 0;
    arena.push_back(Node{});
    heap.push({-kInf, seq++, 0});

    SolveResult out;
    out.node_count = 0;
    std::vector<double> best_x;
    double best_obj = kInf;
    bool root_unbounded = false;
    bool hit_time = false, hit_nodes = false;
    double global_bound = -kInf;

    const auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };

    while (!heap.empty()) {
        if (elapsed() > budget) { hit_time = true; break; }
        if (out.node_count >= limits.node_limit) { hit_nodes = true; break; }

        HeapEntry top = heap.top();
        global_bound = std::isfinite(best_obj) ? std::min(top.bound, best_obj) : top.bound;
        if (std::isfinite(best_obj)) {
            double prune_tol = 1e-9 * (1.0 + std::fabs(best_obj));
            if (top.bound >= best_obj - prune_tol) break;  // best-first: everything left prunes
            if (rel_gap(best_obj, top.bound) <= limits.mip_gap) break;
        }
        heap.pop();
        const int idx = top.idx;

        // Rebuild this node's bound fixings from the ancestor chain.
        scratch.lower = root_lb;
        scratch.upper = root_ub;
        for (int a = idx; a > 0; a = arena[static_cast<std::size_t>(a)].parent) {
            const Node& n = arena[static_cast<std::size_t>(a)];
            scratch.lower[static_cast<std::size_t>(n.branch_var)] = n.branch_val;
            scratch.upper[static_cast<std::size_t>(n.branch_var)] = n.branch_val;
        }

        SimplexOptions node_opt = lp_options;
        node_opt.time_limit_seconds = std::min(node_opt.time_limit_seconds, budget - elapsed());
        auto final_basis = std::make_shared<SimplexBasis>();
        SolveResult rel = simplex_solve(scratch, node_opt,
                                        arena[static_cast<std::size_t>(idx)].start.get(),
                                        final_basis.get());
        ++out.node_count;
        out.iterations += rel.iterations;

        if (rel.status == SolveStatus::TimeLimit) { hit_time = true; break; }
        if (rel.status == SolveStatus::Infeasible) continue;
        if (rel.status == SolveStatus::Unbounded) {
            if (idx == 0) { root_unbounded = true; break; }
            throw SolverError("branch_and_bound: unbounded node below a bounded root");
        }

        double node_bound = rel.objective;
        if (std::isfinite(best_obj) &&
            node_bound >= best_obj - 1e-9 * (1.0 + std::fabs(best_obj)))
            continue;

        // Most fractional binary, ties to the lowest index.
        int branch = -1;
        double best_frac = kIntegralityTol;
        for (int j : mip.binary_vars) {
            double v = rel.x[static_cast<std::size_t>(j)];
            double dist = std::fabs(v - std::round(v));
            double score = std::min(v - std::floor(v), std::ceil(v) - v);
            if (dist > kIntegralityTol && score > best_frac) {
                best_frac = score;
                branch = j;
            }
        }

        if (branch < 0) {
            // Integral relaxation: round and evaluate against the true objective.
            std::vector<double> x = rel.x;
            for (int j : mip.binary_vars)
                x[static_cast<std::size_t>(j)] = std::round(x[static_cast<std::size_t>(j)]);
            double obj = 0.0;
            for (int j = 0; j < mip.lp.num_vars(); ++j)
                obj += mip.lp.objective[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
            if (obj < best_obj - 1e-12 * (1.0 + std::fabs(obj))) {
                best_obj = obj;
                best_x = std::move(x);
            }
            continue;
        }

        int depth = arena[static_cast<std::size_t>(idx)].depth + 1;
        arena.push_back(Node{idx, branch, 1.0, node_bound, seq, depth, final_basis});
        heap.push({node_bound, seq, static_cast<int>(arena.size()) - 1});
        ++seq;
        arena.push_back(Node{idx, branch, 0.0, node_bound, seq, depth, final_basis});
        heap.push({node_bound, seq, static_cast<int>(arena.size()) - 1});
        ++seq;
    }

    out.wall_seconds = elapsed();
    if (root_unbounded) {
        out.status = SolveStatus::Unbounded;
        return out;
    }

    const bool have_incumbent = std::isfinite(best_obj);
    if (!hit_time && !hit_nodes) {
        // Search completed: either gap-closed or tree exhausted.
        if (!have_incumbent) {
            out.status = SolveStatus::Infeasible;
            return out;
        }
        out.status = SolveStatus::Optimal;
        out.x = std::move(best_x);
        out.objective = best_obj;
        out.best_bound = heap.empty() ? best_obj : std::min(best_obj, heap.top().bound);
        out.rel_gap = std::max(0.0, rel_gap(best_obj, out.best_bound));
        return out;
    }

    // Stopped at a limit. The last popped node may still be unexplored, so its
    // bound participates in the global bound alongside the open nodes.
    double open_bound = heap.empty() ? (have_incumbent ? best_obj : kInf) : heap.top().bound;
    out.best_bound = std::min(std::isfinite(global_bound) ? global_bound : kInf, open_bound);
    if (!std::isfinite(out.best_bound)) out.best_bound = -kInf;
    if (have_incumbent) {
        out.status = SolveStatus::GapLimit;
        out.x = std::move(best_x);
        out.objective = best_obj;
        out.rel_gap = std::max(0.0, rel_gap(best_obj, out.best_bound));
    } else {
        out.status = hit_time ? SolveStatus::TimeLimit : SolveStatus::GapLimit;
        out.rel_gap = kInf;
    }
    return out;
}

}  // namespace windmarket
