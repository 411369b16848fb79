#ifndef SPARSETSP_LP_HPP
#define SPARSETSP_LP_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "sparsetsp/graph.hpp"
#include "sparsetsp/simplex.hpp"
#include "sparsetsp/tsplib.hpp"

namespace sparsetsp {

struct LpSolution {
    SolveStatus status = SolveStatus::kIterationLimit;
    std::vector<double> values;         // per edge, in [0,1]
    std::vector<double> reduced_costs;  // per edge
    std::vector<char> col_status;       // basis snapshot (see SimplexResult)
    double objective = 0;
    long long iterations = 0;
};

struct SubtourCut {
    std::vector<int> vertices;  // W, 3 <= |W| <= n-1
};

/// The symmetric TSP relaxation over an explicit edge list: one [0,1]
/// variable per undirected edge, one degree-2 equality per vertex, plus
/// accumulated subtour and tour-elimination rows.
class TspRelaxation {
public:
    TspRelaxation(int n, std::vector<Edge> edges);

    int n() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    void set_objective(const std::vector<double>& coeffs);
    const std::vector<double>& objective() const { return lp_.objective; }

    /// Branching support: clamp one edge variable.
    void set_edge_bounds(int edge_idx, double lb, double ub);
    void reset_edge_bounds();

    void add_subtour_cut(const SubtourCut& cut);
    /// sum of the given edge variables <= rhs (tour elimination uses n-1).
    void add_edge_sum_leq(const std::vector<int>& edge_idxs, double rhs);
    std::size_t num_extra_rows() const { return lp_.rows.size() - n_; }
    void truncate_extra_rows(std::size_t keep);

    /// Re-solves warm-start from this object's previous basis whenever rows
    /// have only been appended since; bound and objective edits are fine.
    LpSolution solve(const SimplexOptions& opts = {}) const;

private:
    void note_bound_change();

    int n_;
    std::vector<Edge> edges_;
    LinearProgram lp_;
    mutable std::vector<char> warm_;  // col_status of the last solve
    mutable int bound_changes_ = 0;   // moved bounds since that solve
};

/// Connected-component subtour separation on the support graph of edges
/// with value >= eps. Empty result iff the support is connected.
std::vector<SubtourCut> separate_components(int n, const std::vector<Edge>& edges,
                                            const std::vector<double>& values,
                                            double eps = 1e-6);

/// Global min-cut separation (Stoer-Wagner on the support graph): returns
/// a cut for the smaller side of any partition with boundary < 2 - tol.
std::vector<SubtourCut> separate_mincut(int n, const std::vector<Edge>& edges,
                                        const std::vector<double>& values,
                                        double tol = 1e-6);

/// Divide by the max component; all-zero when max <= 1e-12.
std::vector<double> normalize_by_max(const std::vector<double>& v);

struct CuttingPlaneResult {
    LpSolution solution;  // x-tilde^k
    int rounds_used = 0;
    std::vector<double> normalized_reduced_costs;  // r-hat^k
    std::vector<double> objective_per_solve;       // root first
};

/// Solve the root relaxation, then up to max_rounds of component-based
/// subtour cuts.
CuttingPlaneResult cutting_plane_features(const Instance& inst, int max_rounds);

/// Root solve + one round of component cuts, then `copies` re-solves with
/// objective coefficients scaled by U[1-magnitude, 1+magnitude] factors;
/// returns the mean of the per-copy max-normalized reduced costs.
std::vector<double> perturbed_mean_reduced_costs(
    const Instance& inst, int copies, std::uint64_t seed,
    double magnitude = 0.1,
    std::vector<std::vector<double>>* per_copy = nullptr);

/// A Tour iff the solution is integral (tol 1e-6) and its 1-edges form a
/// single Hamiltonian cycle.
std::optional<Tour> integral_tour_check(const LpSolution& sol,
                                        const std::vector<Edge>& edges,
                                        const Instance& inst);

}  // namespace sparsetsp

#endif
