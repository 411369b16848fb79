#ifndef SPARSETSP_MINCUT_HPP
#define SPARSETSP_MINCUT_HPP

#include <vector>

namespace sparsetsp {

struct MinCutResult {
    double value = 0;
    std::vector<int> side;  // vertices on one side of the cut
};

/// Stoer-Wagner global minimum cut on a dense weight matrix (n x n,
/// symmetric, non-negative). n >= 2.
MinCutResult stoer_wagner(int n, const std::vector<double>& weights);

}  // namespace sparsetsp

#endif
