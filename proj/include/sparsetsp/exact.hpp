#ifndef SPARSETSP_EXACT_HPP
#define SPARSETSP_EXACT_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "sparsetsp/graph.hpp"
#include "sparsetsp/lp.hpp"
#include "sparsetsp/tsplib.hpp"

namespace sparsetsp {

struct SizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr int kHeldKarpCap = 18;

/// Exact optimum by subset dynamic programming. Throws SizeError above
/// the cap. Respects a retained-edge list; returns nullopt when the
/// retained graph has no Hamiltonian cycle.
std::optional<Tour> held_karp_restricted(const Instance& inst,
                                         int cap = kHeldKarpCap);

/// Complete-instance convenience wrapper (always feasible).
Tour held_karp(const Instance& inst, int cap = kHeldKarpCap);

struct BranchAndCutOptions {
    long long lp_solve_budget = 1'000'000;
    std::optional<Tour> initial_tour;  // warm incumbent (must be valid)
    bool use_double_tree_start = true;  // only on complete instances
};

struct BranchAndCutResult {
    std::optional<Tour> tour;
    bool proven = false;      // optimality (or infeasibility) was proven
    bool infeasible = false;  // no Hamiltonian cycle exists (proven)
    long long lp_solves = 0;
    long long nodes = 0;
    long long branches = 0;
    double root_bound = 0;
};

/// Best-first branch and cut with lazy subtour separation (connected
/// components on integral supports, Stoer-Wagner min cut on fractional
/// ones); branches on the edge value closest to 1/2.
class BcSolver {
public:
    explicit BcSolver(const Instance& inst, BranchAndCutOptions opts = {});

    /// Permanently forbid one Hamiltonian cycle (sum of its edges <= n-1).
    void ban_tour(const Tour& tour);

    BranchAndCutResult solve();

    const std::vector<Edge>& edges() const { return edges_; }

private:
    const Instance& inst_;
    BranchAndCutOptions opts_;
    std::vector<Edge> edges_;
    TspRelaxation relax_;
    std::size_t num_banned_ = 0;

    std::vector<SubtourCut> pool_;
    std::set<std::vector<int>> pool_index_;
    std::vector<int> active_;
    std::vector<std::vector<int>> banned_tours_;  // sorted edge-index sets

    bool add_to_pool(SubtourCut cut);
    void rebuild_rows();
};

BranchAndCutResult branch_and_cut(const Instance& inst,
                                  const BranchAndCutOptions& opts = {});

struct TourSet {
    std::vector<Tour> tours;
    std::int64_t optimal_length = 0;
    bool truncated = false;
};

struct EnumerationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// All optimal tours via repeated solves with tour-elimination rows,
/// stopping when the optimum degrades or `cap` tours were found.
TourSet enumerate_optimal_tours(const Instance& inst, int cap = 32,
                                const BranchAndCutOptions& opts = {});

}  // namespace sparsetsp

#endif
