#pragma once

#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace windmarket {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense : std::uint8_t { LE, EQ, GE };

// Sparse minimization LP in row form. Rows are stored CSR-style; variable
// bounds may be infinite on either side.
struct LinearProgram {
    std::vector<double> objective;
    std::vector<double> lower;
    std::vector<double> upper;

    std::vector<int> row_start;  // size num_rows()+1, row_start[0] == 0
    std::vector<int> col_index;
    std::vector<double> coef;
    std::vector<RowSense> sense;
    std::vector<double> rhs;

    LinearProgram() { row_start.push_back(0); }

    int num_vars() const { return static_cast<int>(objective.size()); }
    int num_rows() const { return static_cast<int>(rhs.size()); }

    int add_variable(double cost, double lb, double ub);
    void add_row(RowSense s, double right, const std::vector<std::pair<int, double>>& entries);

    void validate() const;  // throws SolverError on malformed data
};

struct MixedIntegerProgram {
    LinearProgram lp;
    std::vector<int> binary_vars;  // indices into lp variables, bounds within [0,1]

    void validate() const;
};

enum class SolveStatus : std::uint8_t { Optimal, Infeasible, Unbounded, GapLimit, TimeLimit };

std::string to_string(SolveStatus s);

struct SolveResult {
    SolveStatus status = SolveStatus::Infeasible;
    std::vector<double> x;  // primal values, empty when no solution is available
    double objective = std::numeric_limits<double>::quiet_NaN();
    double best_bound = std::numeric_limits<double>::quiet_NaN();
    double rel_gap = std::numeric_limits<double>::infinity();
    long node_count = 0;    // branch-and-bound nodes, 0 for plain LP solves
    long iterations = 0;    // total simplex iterations
    double wall_seconds = 0.0;

    // LP solves additionally report duals and reduced costs so optimality
    // conditions can be verified externally.
    std::vector<double> duals;
    std::vector<double> reduced_costs;

    bool has_solution() const { return !x.empty(); }
};

// Plain-text dump, one line per nonzero, for external cross-checking.
void dump_mip(const MixedIntegerProgram& mip, std::ostream& out);

}  // namespace windmarket
