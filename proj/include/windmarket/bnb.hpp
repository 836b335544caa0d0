#pragma once

#include "windmarket/lp.hpp"
#include "windmarket/simplex.hpp"

namespace windmarket {

struct SolveLimits {
    double mip_gap = 1e-4;            // relative optimality gap for early termination
    double time_limit_seconds = 60.0;
    long node_limit = 100000000;
};

// Best-first branch and bound over the binary variables. Node order is by
// bound with ties broken by insertion order; branching picks the most
// fractional binary with ties broken by lowest variable index. Relaxations are
// solved from scratch per node (no warm starts), so identical inputs and
// limits give identical results.
//
// Status mapping: Optimal when the gap closed to mip_gap or the tree was
// exhausted; GapLimit when a limit stopped the search but an incumbent exists
// (rel_gap reports the honest remaining gap); TimeLimit when time ran out with
// no incumbent; Infeasible/Unbounded from the root relaxation.
SolveResult branch_and_bound(const MixedIntegerProgram& mip, const SolveLimits& limits = {},
                             const SimplexOptions& lp_options = {});

}  // namespace windmarket
