#include "sparsetsp/graph.hpp"

#include <algorithm>
#include <numeric>

namespace sparsetsp {

namespace {

class DisjointSet {
public:
    explicit DisjointSet(int n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }

private:
    std::vector<int> parent_;
    std::vector<int> rank_;
};

bool edge_order(const Edge& a, const Edge& b) {
    return std::tie(a.w, a.u, a.v) < std::tie(b.w, b.u, b.v);
}

}  // namespace

std::vector<Edge> instance_edges(const Instance& inst) {
    std::vector<Edge> edges;
    if (inst.edge_list()) {
        edges.reserve(inst.edge_list()->size());
        for (auto [u, v] : *inst.edge_list())
            edges.push_back({u, v, inst.weight(u, v)});
    } else {
        edges.reserve(inst.complete_edge_count());
        for (int u = 0; u < inst.n(); ++u)
            for (int v = u + 1; v < inst.n(); ++v)
                edges.push_back({u, v, inst.weight(u, v)});
    }
    return edges;
}

std::vector<Edge> minimum_spanning_tree(const WeightedGraph& g) {
    std::vector<Edge> sorted = g.edges;
    std::sort(sorted.begin(), sorted.end(), edge_order);
    DisjointSet ds(g.n);
    std::vector<Edge> tree;
    tree.reserve(g.n - 1);
    for (const Edge& e : sorted) {
        if (ds.unite(e.u, e.v)) {
            tree.push_back(e);
            if (static_cast<int>(tree.size()) == g.n - 1) break;
        }
    }
    if (static_cast<int>(tree.size()) != g.n - 1)
        throw ConnectivityError("graph is disconnected");
    return tree;
}

int MstExtraction::level_of(int u, int v) const {
    if (u > v) std::swap(u, v);
    if (index_.empty()) {
        for (std::size_t j = 0; j < levels.size(); ++j)
            for (const Edge& e : levels[j]) index_[{e.u, e.v}] = static_cast<int>(j) + 1;
    }
    auto it = index_.find({u, v});
    return it == index_.end() ? 0 : it->second;
}

MstExtraction successive_mst_extract(const WeightedGraph& g, int k) {
    MstExtraction out;
    WeightedGraph residual = g;
    for (int iter = 1; iter <= k; ++iter) {
        std::vector<Edge> tree;
        try {
            tree = minimum_spanning_tree(residual);
        } catch (const ConnectivityError&) {
            throw ConnectivityError("residual graph disconnected after " +
                                    std::to_string(iter - 1) + " of " +
                                    std::to_string(k) + " extraction levels");
        }
        std::vector<Edge> rest;
        rest.reserve(residual.edges.size() - tree.size());
        std::size_t t = 0;
        std::vector<Edge> sorted_tree = tree;
        std::sort(sorted_tree.begin(), sorted_tree.end(), edge_order);
        std::vector<Edge> sorted_res = residual.edges;
        std::sort(sorted_res.begin(), sorted_res.end(), edge_order);
        for (const Edge& e : sorted_res) {
            if (t < sorted_tree.size() && e == sorted_tree[t]) {
                ++t;
            } else {
                rest.push_back(e);
            }
        }
        residual.edges = std::move(rest);
        out.levels.push_back(std::move(tree));
    }
    return out;
}

std::int64_t tour_length(const std::vector<int>& order, const Instance& inst) {
    const int n = inst.n();
    if (static_cast<int>(order.size()) != n)
        throw ValidationError("tour does not cover all vertices");
    std::vector<char> seen(n, 0);
    for (int v : order) {
        if (v < 0 || v >= n || seen[v])
            throw ValidationError("tour has repeated or invalid vertex");
        seen[v] = 1;
    }
    std::int64_t len = 0;
    for (int i = 0; i < n; ++i) len += inst.weight(order[i], order[(i + 1) % n]);
    return len;
}

std::pair<Tour, Tour> double_tree_tours(const Instance& inst) {
    const int n = inst.n();
    if (n < 3) throw ValidationError("double-tree requires n >= 3");
    WeightedGraph g{n, instance_edges(inst)};
    std::vector<Edge> tree = minimum_spanning_tree(g);

    std::vector<std::vector<int>> adj(n);
    for (const Edge& e : tree) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());

    auto preorder = [&](bool ascending) {
        std::vector<int> order;
        order.reserve(n);
        std::vector<char> visited(n, 0);
        std::vector<int> stack = {0};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (visited[v]) continue;
            visited[v] = 1;
            order.push_back(v);
            // Stack reverses, so push children opposite to the visit order.
            if (ascending) {
                for (auto it = adj[v].rbegin(); it != adj[v].rend(); ++it)
                    if (!visited[*it]) stack.push_back(*it);
            } else {
                for (int w : adj[v])
                    if (!visited[w]) stack.push_back(w);
            }
        }
        return order;
    };

    Tour left, right;
    left.order = preorder(true);
    left.length = tour_length(left.order, inst);
    right.order = preorder(false);
    right.length = tour_length(right.order, inst);
    return {left, right};
}

}  // namespace sparsetsp
