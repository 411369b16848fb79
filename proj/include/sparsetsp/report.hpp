#ifndef SPARSETSP_REPORT_HPP
#define SPARSETSP_REPORT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sparsetsp/exact.hpp"
#include "sparsetsp/sparsify.hpp"

namespace sparsetsp {

enum class Feasibility { kFeasible, kInfeasible, kUnknown };

struct EvaluationReport {
    std::string instance;
    int n = 0;
    std::int64_t m = 0;
    std::int64_t m_hat = 0;
    double pruning_rate = 0;
    Feasibility feasible = Feasibility::kUnknown;
    std::int64_t l_opt = 0;
    bool l_opt_proven = false;
    std::optional<std::int64_t> l_hat;
    bool l_hat_proven = false;
    long long lp_solves_original = 0;
    long long lp_solves_pruned = 0;
    double seconds_original = 0;
    double seconds_pruned = 0;

    /// l_hat / l_opt; +inf when the pruned instance has no tour.
    double ratio() const;
};

struct EvaluationBudget {
    long long lp_solve_budget = 1'000'000;
};

/// Solve the original and the retained-edge-restricted instance exactly
/// (Held-Karp when within reach, branch and cut otherwise). Known tours
/// of the retained graph (e.g. inserted ones) seed the restricted solve.
EvaluationReport evaluate_instance(const Instance& inst,
                                   const SparsifiedInstance& s,
                                   const EvaluationBudget& budget = {},
                                   const std::vector<Tour>& known_tours = {});

/// include_timing=false omits the wall-clock columns so that byte-level
/// comparisons of reruns are meaningful.
void write_report_csv(const std::vector<EvaluationReport>& reports,
                      std::ostream& out, bool include_timing = true);
std::vector<EvaluationReport> read_report_csv(std::istream& in);

struct SummaryRow {
    std::size_t count = 0;
    std::size_t infeasible = 0;
    std::size_t unproven = 0;
    double mean_pruning = 0;
    double mean_ratio = 0;  // over feasible instances
    double max_ratio = 0;   // over feasible instances
    bool has_infeasible = false;
    std::vector<double> bounds;
    std::vector<std::size_t> bound_counts;  // bound 1.0 counts equality
};

SummaryRow aggregate_summary(const std::vector<EvaluationReport>& reports,
                             const std::vector<double>& bounds = {1.0, 1.02,
                                                                  1.05});

void write_summary_csv(const SummaryRow& s, std::ostream& out);
std::string summary_to_string(const SummaryRow& s);

}  // namespace sparsetsp

#endif
