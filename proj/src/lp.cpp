#include "sparsetsp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "sparsetsp/mincut.hpp"

namespace sparsetsp {

TspRelaxation::TspRelaxation(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
    for (const Edge& e : edges_)
        lp_.add_column(static_cast<double>(e.w), 0.0, 1.0);
    lp_.rows.resize(n_);
    for (int v = 0; v < n_; ++v) {
        lp_.rows[v].sense = LinearProgram::Sense::kEq;
        lp_.rows[v].rhs = 2.0;
    }
    for (int j = 0; j < num_edges(); ++j) {
        lp_.rows[edges_[j].u].coeffs.emplace_back(j, 1.0);
        lp_.rows[edges_[j].v].coeffs.emplace_back(j, 1.0);
    }
}

void TspRelaxation::set_objective(const std::vector<double>& coeffs) {
    if (coeffs.size() != lp_.objective.size())
        throw ValidationError("objective size mismatch");
    lp_.objective = coeffs;
}

void TspRelaxation::set_edge_bounds(int edge_idx, double lb, double ub) {
    if (lp_.lower[edge_idx] != lb || lp_.upper[edge_idx] != ub)
        note_bound_change();
    lp_.lower[edge_idx] = lb;
    lp_.upper[edge_idx] = ub;
}

void TspRelaxation::reset_edge_bounds() {
    for (std::size_t j = 0; j < lp_.lower.size(); ++j)
        if (lp_.lower[j] != 0.0 || lp_.upper[j] != 1.0) note_bound_change();
    std::fill(lp_.lower.begin(), lp_.lower.end(), 0.0);
    std::fill(lp_.upper.begin(), lp_.upper.end(), 1.0);
}

void TspRelaxation::note_bound_change() {
    // The cached basis survives a handful of moved bounds (phase 1 repairs
    // them cheaply) but not a wholesale rebind, where repair costs more
    // than a cold start.
    if (++bound_changes_ > 32) {
        warm_.clear();
        bound_changes_ = 0;
    }
}

void TspRelaxation::add_subtour_cut(const SubtourCut& cut) {
    if (cut.vertices.size() < 3 || static_cast<int>(cut.vertices.size()) > n_ - 1)
        throw ValidationError("subtour cut needs 3 <= |W| <= n-1");
    std::vector<char> in(n_, 0);
    for (int v : cut.vertices) in[v] = 1;
    LinearProgram::Row row;
    row.sense = LinearProgram::Sense::kLe;
    row.rhs = static_cast<double>(cut.vertices.size()) - 1.0;
    for (int j = 0; j < num_edges(); ++j)
        if (in[edges_[j].u] && in[edges_[j].v]) row.coeffs.emplace_back(j, 1.0);
    lp_.rows.push_back(std::move(row));
}

void TspRelaxation::add_edge_sum_leq(const std::vector<int>& edge_idxs,
                                     double rhs) {
    LinearProgram::Row row;
    row.sense = LinearProgram::Sense::kLe;
    row.rhs = rhs;
    for (int j : edge_idxs) row.coeffs.emplace_back(j, 1.0);
    std::sort(row.coeffs.begin(), row.coeffs.end());
    lp_.rows.push_back(std::move(row));
}

void TspRelaxation::truncate_extra_rows(std::size_t keep) {
    // Removing rows invalidates the cached basis; appends keep it usable.
    if (n_ + keep < lp_.rows.size()) warm_.clear();
    lp_.rows.resize(n_ + keep);
}

LpSolution TspRelaxation::solve(const SimplexOptions& opts) const {
    SimplexOptions local = opts;
    if (!local.warm_basis && !warm_.empty() &&
        warm_.size() <= lp_.objective.size() + lp_.rows.size())
        local.warm_basis = &warm_;
    SimplexResult r = solve_simplex(lp_, local);
    LpSolution sol;
    sol.status = r.status;
    sol.values = std::move(r.x);
    sol.reduced_costs = std::move(r.reduced_costs);
    sol.col_status = std::move(r.col_status);
    sol.objective = r.objective;
    sol.iterations = r.iterations;
    warm_ = sol.col_status;
    bound_changes_ = 0;
    return sol;
}

std::vector<SubtourCut> separate_components(int n, const std::vector<Edge>& edges,
                                            const std::vector<double>& values,
                                            double eps) {
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t j = 0; j < edges.size(); ++j)
        if (values[j] >= eps) parent[find(edges[j].u)] = find(edges[j].v);

    std::vector<std::vector<int>> comps(n);
    for (int v = 0; v < n; ++v) comps[find(v)].push_back(v);
    std::vector<SubtourCut> cuts;
    int count = 0;
    for (auto& c : comps)
        if (!c.empty()) ++count;
    if (count <= 1) return cuts;
    for (auto& c : comps)
        if (c.size() >= 3 && static_cast<int>(c.size()) <= n - 1)
            cuts.push_back({std::move(c)});
    return cuts;
}

std::vector<SubtourCut> separate_mincut(int n, const std::vector<Edge>& edges,
                                        const std::vector<double>& values,
                                        double tol) {
    std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
    for (std::size_t j = 0; j < edges.size(); ++j) {
        if (values[j] <= 1e-9) continue;
        w[edges[j].u * n + edges[j].v] += values[j];
        w[edges[j].v * n + edges[j].u] += values[j];
    }
    // Disconnected supports are handled by component cuts.
    auto comp_cuts = separate_components(n, edges, values, 1e-9);
    if (!comp_cuts.empty()) return comp_cuts;

    MinCutResult mc = stoer_wagner(n, w);
    if (mc.value >= 2.0 - tol) return {};
    std::vector<int> side = mc.side;
    if (static_cast<int>(side.size()) > n / 2) {
        std::vector<char> in(n, 0);
        for (int v : side) in[v] = 1;
        side.clear();
        for (int v = 0; v < n; ++v)
            if (!in[v]) side.push_back(v);
    }
    if (side.size() < 3 || static_cast<int>(side.size()) > n - 1) {
        // A violated set always has >= 3 vertices under degree-2 rows;
        // fall back to the complement if the small side is tiny.
        std::vector<char> in(n, 0);
        for (int v : side) in[v] = 1;
        std::vector<int> other;
        for (int v = 0; v < n; ++v)
            if (!in[v]) other.push_back(v);
        if (other.size() < 3 || static_cast<int>(other.size()) > n - 1) return {};
        side = std::move(other);
    }
    return {SubtourCut{std::move(side)}};
}

std::vector<double> normalize_by_max(const std::vector<double>& v) {
    double mx = 0;
    for (double x : v) mx = std::max(mx, x);
    std::vector<double> out(v.size(), 0.0);
    if (mx <= 1e-12) return out;
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / mx;
    return out;
}

CuttingPlaneResult cutting_plane_features(const Instance& inst, int max_rounds) {
    TspRelaxation relax(inst.n(), instance_edges(inst));
    CuttingPlaneResult res;
    res.solution = relax.solve();
    res.objective_per_solve.push_back(res.solution.objective);
    while (res.rounds_used < max_rounds &&
           res.solution.status == SolveStatus::kOptimal) {
        auto cuts = separate_components(relax.n(), relax.edges(),
                                        res.solution.values);
        if (cuts.empty()) break;
        for (const auto& c : cuts) relax.add_subtour_cut(c);
        res.solution = relax.solve();
        res.objective_per_solve.push_back(res.solution.objective);
        ++res.rounds_used;
    }
    res.normalized_reduced_costs = normalize_by_max(res.solution.reduced_costs);
    return res;
}

std::vector<double> perturbed_mean_reduced_costs(
    const Instance& inst, int copies, std::uint64_t seed, double magnitude,
    std::vector<std::vector<double>>* per_copy) {
    if (copies < 1) throw ValidationError("perturbation copies must be >= 1");
    TspRelaxation relax(inst.n(), instance_edges(inst));
    LpSolution root = relax.solve();
    for (const auto& c :
         separate_components(relax.n(), relax.edges(), root.values))
        relax.add_subtour_cut(c);

    std::vector<double> base = relax.objective();
    std::mt19937_64 rng(seed);
    auto uniform01 = [&rng] { return (rng() >> 11) * 0x1.0p-53; };

    std::vector<double> mean(relax.num_edges(), 0.0);
    std::vector<double> perturbed(base.size());
    for (int c = 0; c < copies; ++c) {
        for (std::size_t j = 0; j < base.size(); ++j) {
            double factor = 1.0 + magnitude * (2.0 * uniform01() - 1.0);
            perturbed[j] = base[j] * factor;
        }
        relax.set_objective(perturbed);
        LpSolution sol = relax.solve();
        std::vector<double> norm = normalize_by_max(sol.reduced_costs);
        for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += norm[j];
        if (per_copy) per_copy->push_back(std::move(norm));
    }
    for (double& v : mean) v /= copies;
    return mean;
}

std::optional<Tour> integral_tour_check(const LpSolution& sol,
                                        const std::vector<Edge>& edges,
                                        const Instance& inst) {
    if (sol.status != SolveStatus::kOptimal) return std::nullopt;
    const double tol = 1e-6;
    const int n = inst.n();
    std::vector<std::vector<int>> adj(n);
    for (std::size_t j = 0; j < edges.size(); ++j) {
        double v = sol.values[j];
        if (v > tol && v < 1.0 - tol) return std::nullopt;
        if (v >= 1.0 - tol) {
            adj[edges[j].u].push_back(edges[j].v);
            adj[edges[j].v].push_back(edges[j].u);
        }
    }
    for (int v = 0; v < n; ++v)
        if (adj[v].size() != 2) return std::nullopt;
    Tour tour;
    tour.order.reserve(n);
    int prev = -1, cur = 0;
    do {
        tour.order.push_back(cur);
        int next = (adj[cur][0] != prev) ? adj[cur][0] : adj[cur][1];
        prev = cur;
        cur = next;
    } while (cur != 0 && static_cast<int>(tour.order.size()) <= n);
    if (static_cast<int>(tour.order.size()) != n) return std::nullopt;
    tour.length = tour_length(tour.order, inst);
    return tour;
}

}  // namespace sparsetsp
