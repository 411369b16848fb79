#include "sparsetsp/mincut.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace sparsetsp {

MinCutResult stoer_wagner(int n, const std::vector<double>& weights) {
    if (n < 2) throw std::invalid_argument("min cut requires n >= 2");
    std::vector<std::vector<double>> w(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w[i][j] = weights[i * n + j];

    // merged[v] lists the original vertices contracted into v.
    std::vector<std::vector<int>> merged(n);
    for (int i = 0; i < n; ++i) merged[i] = {i};
    std::vector<int> active(n);
    for (int i = 0; i < n; ++i) active[i] = i;

    MinCutResult best;
    best.value = std::numeric_limits<double>::infinity();

    while (active.size() > 1) {
        // Maximum-adjacency ordering starting from the first active vertex.
        std::vector<double> conn(n, 0.0);
        std::vector<char> added(n, 0);
        std::vector<int> order;
        order.reserve(active.size());
        for (std::size_t step = 0; step < active.size(); ++step) {
            int sel = -1;
            for (int v : active)
                if (!added[v] && (sel < 0 || conn[v] > conn[sel])) sel = v;
            added[sel] = 1;
            order.push_back(sel);
            for (int v : active)
                if (!added[v]) conn[v] += w[sel][v];
        }
        int t = order.back();
        int s = order[order.size() - 2];
        double cut_of_phase = conn[t];
        if (cut_of_phase < best.value) {
            best.value = cut_of_phase;
            best.side = merged[t];
        }
        // Contract t into s.
        for (int v : active) {
            if (v == s || v == t) continue;
            w[s][v] += w[t][v];
            w[v][s] = w[s][v];
        }
        merged[s].insert(merged[s].end(), merged[t].begin(), merged[t].end());
        active.erase(std::find(active.begin(), active.end(), t));
    }
    std::sort(best.side.begin(), best.side.end());
    return best;
}

}  // namespace sparsetsp
