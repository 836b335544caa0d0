#include "windmarket/lp.hpp"

#include <cmath>

#include "windmarket/csv.hpp"
#include "windmarket/errors.hpp"

namespace windmarket {

int LinearProgram::add_variable(double cost, double lb, double ub) {
    objective.push_back(cost);
    lower.push_back(lb);
    upper.push_back(ub);
    return num_vars() - 1;
}

void LinearProgram::add_row(RowSense s, double right,
                            const std::vector<std::pair<int, double>>& entries) {
    for (const auto& [j, a] : entries) {
        if (j < 0 || j >= num_vars()) throw SolverError("add_row: variable index out of range");
        if (a == 0.0) continue;
        col_index.push_back(j);
        coef.push_back(a);
    }
    row_start.push_back(static_cast<int>(col_index.size()));
    sense.push_back(s);
    rhs.push_back(right);
}

void LinearProgram::validate() const {
    if (lower.size() != objective.size() || upper.size() != objective.size())
        throw SolverError("lp: bound arrays do not match variable count");
    if (row_start.size() != rhs.size() + 1 || sense.size() != rhs.size())
        throw SolverError("lp: row arrays are inconsistent");
    for (int j = 0; j < num_vars(); ++j) {
        if (std::isnan(objective[j])) throw SolverError("lp: objective coefficient is NaN");
        if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j])
            throw SolverError("lp: invalid bounds on variable " + std::to_string(j));
        if (std::isinf(objective[j])) throw SolverError("lp: objective coefficient is infinite");
    }
    for (std::size_t k = 0; k < coef.size(); ++k) {
        if (!std::isfinite(coef[k])) throw SolverError("lp: matrix coefficient is not finite");
        if (col_index[k] < 0 || col_index[k] >= num_vars())
            throw SolverError("lp: matrix column index out of range");
    }
    for (double b : rhs)
        if (!std::isfinite(b)) throw SolverError("lp: right-hand side is not finite");
}

void MixedIntegerProgram::validate() const {
    lp.validate();
    for (int j : binary_vars) {
        if (j < 0 || j >= lp.num_vars())
            throw SolverError("mip: binary index out of range");
        if (lp.lower[j] < 0.0 || lp.upper[j] > 1.0)
            throw SolverError("mip: binary variable " + std::to_string(j) +
                              " has bounds outside [0,1]");
    }
}

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "Optimal";
        case SolveStatus::Infeasible: return "Infeasible";
        case SolveStatus::Unbounded: return "Unbounded";
        case SolveStatus::GapLimit: return "GapLimit";
        case SolveStatus::TimeLimit: return "TimeLimit";
    }
    return "?";
}

void dump_mip(const MixedIntegerProgram& mip, std::ostream& out) {
    const LinearProgram& lp = mip.lp;
    out << "mip " << lp.num_vars() << ' ' << lp.num_rows() << ' ' << mip.binary_vars.size()
        << '\n';
    for (int j = 0; j < lp.num_vars(); ++j)
        if (lp.objective[j] != 0.0)
            out << "obj " << j << ' ' << csv::format_fixed(lp.objective[j], 9) << '\n';
    for (int j = 0; j < lp.num_vars(); ++j) {
        out << "bnd " << j << ' '
            << (std::isinf(lp.lower[j]) ? std::string("-inf") : csv::format_fixed(lp.lower[j], 9))
            << ' '
            << (std::isinf(lp.upper[j]) ? std::string("inf") : csv::format_fixed(lp.upper[j], 9))
            << '\n';
    }
    for (int i = 0; i < lp.num_rows(); ++i) {
        const char* s = lp.sense[i] == RowSense::LE ? "<=" : lp.sense[i] == RowSense::EQ ? "=" : ">=";
        out << "row " << i << ' ' << s << ' ' << csv::format_fixed(lp.rhs[i], 9) << '\n';
    }
    for (int i = 0; i < lp.num_rows(); ++i)
        for (int k = lp.row_start[i]; k < lp.row_start[i + 1]; ++k)
            out << "a " << i << ' ' << lp.col_index[k] << ' ' << csv::format_fixed(lp.coef[k], 9)
                << '\n';
    for (int j : mip.binary_vars) out << "bin " << j << '\n';
}

}  // namespace windmarket
