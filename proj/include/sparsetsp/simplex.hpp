#ifndef SPARSETSP_SIMPLEX_HPP
#define SPARSETSP_SIMPLEX_HPP

#include <limits>
#include <utility>
#include <vector>

namespace sparsetsp {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// min c'x  s.t.  row_i: a_i'x {=, <=} b_i,  lower <= x <= upper.
struct LinearProgram {
    enum class Sense { kEq, kLe };
    struct Row {
        std::vector<std::pair<int, double>> coeffs;
        Sense sense = Sense::kLe;
        double rhs = 0;
    };

    int num_cols = 0;
    std::vector<double> objective;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<Row> rows;

    int add_column(double obj, double lb, double ub) {
        objective.push_back(obj);
        lower.push_back(lb);
        upper.push_back(ub);
        return num_cols++;
    }
};

enum class SolveStatus { kOptimal, kInfeasible, kIterationLimit, kUnbounded };

struct SimplexResult {
    SolveStatus status = SolveStatus::kIterationLimit;
    double objective = 0;
    std::vector<double> x;              // structural variable values
    std::vector<double> reduced_costs;  // c_j - y'A_j per structural column
    std::vector<double> duals;          // y per row
    // 0 basic, 1 at lower, 2 at upper; structural columns first, then one
    // entry per row's logical variable.
    std::vector<char> col_status;
    long long iterations = 0;
};

struct SimplexOptions {
    double feas_tol = 1e-9;
    double opt_tol = 1e-9;
    long long max_iterations = 0;  // 0: derived from problem size
    // col_status of a previous solve over the same columns whose rows form
    // a prefix of the current rows; logicals of appended rows start basic.
    const std::vector<char>* warm_basis = nullptr;
};

/// Bounded-variable primal simplex (dense basis inverse, Dantzig pricing
/// with Bland's-rule fallback on stalling).
SimplexResult solve_simplex(const LinearProgram& lp,
                            const SimplexOptions& opts = {});

}  // namespace sparsetsp

#endif
