#include "sparsetsp/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace sparsetsp {

namespace {

constexpr std::int64_t kNoEdge = std::numeric_limits<std::int64_t>::max() / 4;

std::vector<int> sorted_edge_indices(const Tour& tour,
                                     const std::vector<int>& lookup, int n) {
    std::vector<int> idxs;
    idxs.reserve(tour.order.size());
    for (std::size_t i = 0; i < tour.order.size(); ++i) {
        int u = tour.order[i];
        int v = tour.order[(i + 1) % tour.order.size()];
        if (u > v) std::swap(u, v);
        int idx = lookup[static_cast<std::size_t>(u) * n + v];
        if (idx < 0)
            throw ValidationError("tour uses an edge absent from the instance");
        idxs.push_back(idx);
    }
    std::sort(idxs.begin(), idxs.end());
    return idxs;
}

}  // namespace

std::optional<Tour> held_karp_restricted(const Instance& inst, int cap) {
    const int n = inst.n();
    if (n < 4) throw ValidationError("exact solving requires n >= 4");
    if (n > cap)
        throw SizeError("n = " + std::to_string(n) +
                        " exceeds the Held-Karp cap (" + std::to_string(cap) +
                        "); use branch_and_cut");

    std::vector<std::int64_t> w(static_cast<std::size_t>(n) * n, kNoEdge);
    for (const Edge& e : instance_edges(inst)) {
        w[static_cast<std::size_t>(e.u) * n + e.v] = e.w;
        w[static_cast<std::size_t>(e.v) * n + e.u] = e.w;
    }

    // dp[mask][last]: cheapest path 0 -> last visiting {0} + mask, where
    // mask ranges over subsets of vertices 1..n-1 and last is in mask.
    const int m = n - 1;
    const std::size_t nmask = std::size_t{1} << m;
    std::vector<std::int64_t> dp(nmask * m, kNoEdge);
    std::vector<std::uint8_t> parent(nmask * m, 0xff);
    for (int last = 0; last < m; ++last)
        dp[(std::size_t{1} << last) * m + last] = w[0 * n + (last + 1)];

    for (std::size_t mask = 1; mask < nmask; ++mask) {
        for (int last = 0; last < m; ++last) {
            if (!(mask >> last & 1)) continue;
            std::int64_t cur = dp[mask * m + last];
            if (cur >= kNoEdge) continue;
            for (int nxt = 0; nxt < m; ++nxt) {
                if (mask >> nxt & 1) continue;
                std::int64_t step = w[(last + 1) * n + (nxt + 1)];
                if (step >= kNoEdge) continue;
                std::size_t nmask2 = mask | (std::size_t{1} << nxt);
                if (cur + step < dp[nmask2 * m + nxt]) {
                    dp[nmask2 * m + nxt] = cur + step;
                    parent[nmask2 * m + nxt] = static_cast<std::uint8_t>(last);
                }
            }
        }
    }

    const std::size_t full = nmask - 1;
    std::int64_t best = kNoEdge;
    int best_last = -1;
    for (int last = 0; last < m; ++last) {
        std::int64_t close = w[(last + 1) * n + 0];
        if (close >= kNoEdge || dp[full * m + last] >= kNoEdge) continue;
        std::int64_t total = dp[full * m + last] + close;
        if (total < best) {
            best = total;
            best_last = last;
        }
    }
    if (best_last < 0) return std::nullopt;

    Tour tour;
    tour.length = best;
    std::vector<int> rev;
    std::size_t mask = full;
    int last = best_last;
    while (last != 0xff && mask) {
        rev.push_back(last + 1);
        int p = parent[mask * m + last];
        mask &= ~(std::size_t{1} << last);
        last = p;
    }
    tour.order.push_back(0);
    for (auto it = rev.rbegin(); it != rev.rend(); ++it) tour.order.push_back(*it);
    return tour;
}

Tour held_karp(const Instance& inst, int cap) {
    auto t = held_karp_restricted(inst, cap);
    if (!t)
        throw ValidationError("retained edge set admits no Hamiltonian cycle");
    return *t;
}

BcSolver::BcSolver(const Instance& inst, BranchAndCutOptions opts)
    : inst_(inst), opts_(std::move(opts)), edges_(instance_edges(inst)),
      relax_(inst.n(), edges_) {}

bool BcSolver::add_to_pool(SubtourCut cut) {
    std::sort(cut.vertices.begin(), cut.vertices.end());
    if (!pool_index_.insert(cut.vertices).second) return false;
    pool_.push_back(std::move(cut));
    active_.push_back(static_cast<int>(pool_.size()) - 1);
    return true;
}

void BcSolver::rebuild_rows() {
    // Every append goes to the relaxation and to active_ in lockstep, so
    // matching counts mean the rows already hold bans + active cuts in
    // order; skipping the rebuild keeps the warm-start basis alive.
    if (relax_.num_extra_rows() == num_banned_ + active_.size()) return;
    relax_.truncate_extra_rows(num_banned_);
    for (int id : active_) relax_.add_subtour_cut(pool_[id]);
}

void BcSolver::ban_tour(const Tour& tour) {
    const int n = inst_.n();
    std::vector<int> lookup(static_cast<std::size_t>(n) * n, -1);
    for (std::size_t j = 0; j < edges_.size(); ++j) {
        lookup[static_cast<std::size_t>(edges_[j].u) * n + edges_[j].v] =
            static_cast<int>(j);
    }
    std::vector<int> idxs = sorted_edge_indices(tour, lookup, n);
    relax_.truncate_extra_rows(num_banned_);
    relax_.add_edge_sum_leq(idxs, static_cast<double>(n) - 1.0);
    banned_tours_.push_back(std::move(idxs));
    ++num_banned_;
}

BranchAndCutResult BcSolver::solve() {
    const int n = inst_.n();
    BranchAndCutResult res;

    std::vector<int> lookup(static_cast<std::size_t>(n) * n, -1);
    for (std::size_t j = 0; j < edges_.size(); ++j)
        lookup[static_cast<std::size_t>(edges_[j].u) * n + edges_[j].v] =
            static_cast<int>(j);

    // A tour may seed the incumbent only if it uses present edges and is
    // not excluded by a tour-elimination row.
    std::optional<Tour> incumbent;
    auto try_incumbent = [&](const Tour& t) {
        std::vector<int> idxs;
        try {
            idxs = sorted_edge_indices(t, lookup, n);
        } catch (const ValidationError&) {
            return;
        }
        for (const auto& banned : banned_tours_)
            if (banned == idxs) return;
        if (!incumbent || t.length < incumbent->length) incumbent = t;
    };
    if (opts_.initial_tour) {
        Tour t = *opts_.initial_tour;
        t.length = tour_length(t.order, inst_);
        try_incumbent(t);
    }
    if (opts_.use_double_tree_start && !inst_.edge_list() && n >= 4) {
        auto [a, b] = double_tree_tours(inst_);
        try_incumbent(a);
        try_incumbent(b);
    }

    struct Node {
        double bound;
        long long id;
        std::vector<std::pair<int, char>> fixed;  // (edge idx, 0/1)
    };
    auto cmp = [](const Node& a, const Node& b) {
        return std::tie(a.bound, a.id) > std::tie(b.bound, b.id);
    };
    std::priority_queue<Node, std::vector<Node>, decltype(cmp)> open(cmp);
    long long next_id = 0;
    open.push({-kInf, next_id++, {}});

    bool exhausted = false, trouble = false;
    auto cutoff = [&]() {
        return incumbent ? static_cast<double>(incumbent->length) - 1.0 + 1e-6
                         : kInf;
    };

    while (!open.empty()) {
        Node node = std::move(const_cast<Node&>(open.top()));
        open.pop();
        if (node.bound > cutoff()) continue;
        ++res.nodes;

        relax_.reset_edge_bounds();
        for (auto [j, val] : node.fixed)
            relax_.set_edge_bounds(j, val ? 1.0 : 0.0, val ? 1.0 : 0.0);
        rebuild_rows();

        LpSolution sol;
        bool pruned = false;
        while (true) {
            if (res.lp_solves >= opts_.lp_solve_budget) {
                exhausted = true;
                break;
            }
            sol = relax_.solve();
            ++res.lp_solves;
            if (sol.status == SolveStatus::kInfeasible) {
                pruned = true;
                break;
            }
            if (sol.status != SolveStatus::kOptimal) {
                trouble = true;
                pruned = true;
                break;
            }
            if (res.nodes == 1)
                res.root_bound = std::max(res.root_bound, sol.objective);
            if (sol.objective > cutoff()) {
                pruned = true;
                break;
            }
            // Reactivate violated pool cuts first.
            std::vector<char> is_active(pool_.size(), 0);
            for (int id : active_) is_active[id] = 1;
            bool added = false;
            for (std::size_t id = 0; id < pool_.size(); ++id) {
                if (is_active[id]) continue;
                double inside = 0;
                std::vector<char> in(n, 0);
                for (int v : pool_[id].vertices) in[v] = 1;
                for (std::size_t j = 0; j < edges_.size(); ++j)
                    if (in[edges_[j].u] && in[edges_[j].v]) inside += sol.values[j];
                if (inside >
                    static_cast<double>(pool_[id].vertices.size()) - 1.0 + 1e-6) {
                    active_.push_back(static_cast<int>(id));
                    relax_.add_subtour_cut(pool_[id]);
                    added = true;
                }
            }
            if (added) continue;

            bool integral = true;
            for (double v : sol.values)
                if (v > 1e-6 && v < 1.0 - 1e-6) {
                    integral = false;
                    break;
                }
            std::vector<SubtourCut> cuts;
            if (integral) {
                cuts = separate_components(n, edges_, sol.values, 0.5);
            } else {
                cuts = separate_mincut(n, edges_, sol.values);
            }
            bool any_new = false;
            for (auto& c : cuts) {
                if (add_to_pool(std::move(c))) {
                    relax_.add_subtour_cut(pool_.back());
                    any_new = true;
                }
            }
            if (any_new) continue;

            if (integral) {
                auto tour = integral_tour_check(sol, edges_, inst_);
                if (tour) {
                    if (!incumbent || tour->length < incumbent->length)
                        incumbent = *tour;
                }
                pruned = true;  // node fully resolved
            }
            break;
        }
        if (exhausted) break;
        if (pruned) continue;

        // Branch on the most fractional edge.
        int branch_edge = -1;
        double best_gap = 1.0;
        for (std::size_t j = 0; j < sol.values.size(); ++j) {
            double v = sol.values[j];
            if (v <= 1e-6 || v >= 1.0 - 1e-6) continue;
            double gap = std::fabs(v - 0.5);
            if (gap < best_gap - 1e-12) {
                best_gap = gap;
                branch_edge = static_cast<int>(j);
            }
        }
        if (branch_edge < 0) {
            trouble = true;  // fractional but no candidate: numerical issue
            continue;
        }
        ++res.branches;
        for (char val : {char{0}, char{1}}) {
            Node child;
            child.bound = sol.objective;
            child.id = next_id++;
            child.fixed = node.fixed;
            child.fixed.emplace_back(branch_edge, val);
            open.push(std::move(child));
        }

        // Keep the active set from growing without bound.
        if (active_.size() > 200) {
            std::vector<int> kept;
            for (int id : active_) {
                std::vector<char> in(n, 0);
                for (int v : pool_[id].vertices) in[v] = 1;
                double inside = 0;
                for (std::size_t j = 0; j < edges_.size(); ++j)
                    if (in[edges_[j].u] && in[edges_[j].v]) inside += sol.values[j];
                if (inside >
                    static_cast<double>(pool_[id].vertices.size()) - 1.0 - 0.5)
                    kept.push_back(id);
            }
            active_ = std::move(kept);
        }
    }

    res.proven = !exhausted && !trouble;
    res.tour = incumbent;
    if (res.proven && !incumbent) res.infeasible = true;
    return res;
}

BranchAndCutResult branch_and_cut(const Instance& inst,
                                  const BranchAndCutOptions& opts) {
    BcSolver solver(inst, opts);
    return solver.solve();
}

TourSet enumerate_optimal_tours(const Instance& inst, int cap,
                                const BranchAndCutOptions& opts) {
    if (cap < 1) throw ValidationError("enumeration cap must be >= 1");
    BcSolver solver(inst, opts);
    TourSet ts;
    BranchAndCutResult first = solver.solve();
    if (!first.proven)
        throw EnumerationError("initial solve exceeded its budget");
    if (!first.tour)
        throw EnumerationError("instance has no Hamiltonian cycle");
    ts.optimal_length = first.tour->length;
    ts.tours.push_back(*first.tour);

    bool exhausted_all = false;
    while (static_cast<int>(ts.tours.size()) < cap) {
        solver.ban_tour(ts.tours.back());
        BranchAndCutResult r = solver.solve();
        if (!r.proven)
            throw EnumerationError("enumeration solve exceeded its budget");
        if (r.infeasible || !r.tour || r.tour->length > ts.optimal_length) {
            exhausted_all = true;
            break;
        }
        ts.tours.push_back(*r.tour);
    }
    ts.truncated = !exhausted_all && static_cast<int>(ts.tours.size()) == cap;
    return ts;
}

}  // namespace sparsetsp
