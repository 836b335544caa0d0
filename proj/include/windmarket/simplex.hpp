#pragma once

#include "windmarket/lp.hpp"

namespace windmarket {

struct SimplexOptions {
    double primal_tol = 1e-7;
    double dual_tol = 1e-7;
    long max_iterations = 0;  // 0 = automatic from problem size
    double time_limit_seconds = kInf;
    int refactor_interval = 100;  // pivots between basis refactorizations
    int bland_trigger = 60;       // consecutive degenerate pivots before Bland's rule
};

// Snapshot of a simplex basis, used by branch and bound to reoptimize child
// relaxations from the parent vertex inside a single solve. Solver state is
// never shared across solves.
struct SimplexBasis {
    std::vector<std::uint8_t> vstat;  // per variable: 0 basic, 1 lower, 2 upper, 3 free
    std::vector<int> basic_of_row;
};

// Bounded-variable revised simplex over the sparse row-form LP. Phase 1
// minimizes the total bound violation of the basic variables starting from the
// all-slack basis (or a supplied basis); phase 2 runs Dantzig pricing with a
// Bland fallback under degeneracy. The basis is held as a sparse LU
// factorization plus product-form eta updates, refactored periodically.
//
// Returns Optimal with primal solution, duals and reduced costs; Infeasible or
// Unbounded for those outcomes; TimeLimit when the deadline expires mid-solve.
// Dimension mismatches and numerical breakdown throw SolverError.
SolveResult simplex_solve(const LinearProgram& lp, const SimplexOptions& options = {});

// As above, optionally starting from `start` (ignored when it does not fit the
// problem) and reporting the final basis through `final`.
SolveResult simplex_solve(const LinearProgram& lp, const SimplexOptions& options,
                          const SimplexBasis* start, SimplexBasis* final);

}  // namespace windmarket
