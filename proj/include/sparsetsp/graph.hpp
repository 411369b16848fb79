#ifndef SPARSETSP_GRAPH_HPP
#define SPARSETSP_GRAPH_HPP

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "sparsetsp/tsplib.hpp"

namespace sparsetsp {

struct Edge {
    int u, v;  // u < v
    std::int64_t w;
    friend bool operator==(const Edge&, const Edge&) = default;
};

struct WeightedGraph {
    int n = 0;
    std::vector<Edge> edges;
};

/// All n(n-1)/2 edges of the complete graph over an instance, or the
/// retained subset if the instance carries an edge list.
std::vector<Edge> instance_edges(const Instance& inst);

struct Tour {
    std::vector<int> order;  // permutation of 0..n-1
    std::int64_t length = 0;
};

struct ConnectivityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Kruskal MST with deterministic (weight, u, v) tie-breaking.
std::vector<Edge> minimum_spanning_tree(const WeightedGraph& g);

struct MstExtraction {
    // levels[j] holds the edges of the MST extracted at iteration j+1.
    std::vector<std::vector<Edge>> levels;
    int level_of(int u, int v) const;  // 1-based level, 0 if absent

private:
    mutable std::map<std::pair<int, int>, int> index_;
};

/// Repeatedly compute and remove MSTs; k iterations record k(n-1) edges.
/// Throws ConnectivityError (with completed levels in the message) if the
/// residual graph disconnects early.
MstExtraction successive_mst_extract(const WeightedGraph& g, int k);

/// Length of the closed tour visiting `order`; validates the permutation.
std::int64_t tour_length(const std::vector<int>& order, const Instance& inst);

/// Double-tree 2-approximation: pre-order DFS of the MST rooted at vertex
/// 0, children ascending (first tour) and descending (second tour).
std::pair<Tour, Tour> double_tree_tours(const Instance& inst);

}  // namespace sparsetsp

#endif
