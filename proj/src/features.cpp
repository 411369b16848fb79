#include "sparsetsp/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "sparsetsp/graph.hpp"
#include "sparsetsp/lp.hpp"

namespace sparsetsp {

int default_k(int n) {
    if (n < 2) throw ValidationError("default_k requires n >= 2");
    return static_cast<int>(std::ceil(std::log2(static_cast<double>(n))));
}

std::vector<std::array<double, 6>> local_features(const Instance& inst) {
    const int n = inst.n();
    std::int64_t gmax = 0, gmin = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> vmax(n, 0),
        vmin(n, std::numeric_limits<std::int64_t>::max());
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            std::int64_t w = inst.weight(u, v);
            gmax = std::max(gmax, w);
            gmin = std::min(gmin, w);
            vmax[u] = std::max(vmax[u], w);
            vmin[u] = std::min(vmin[u], w);
            vmax[v] = std::max(vmax[v], w);
            vmin[v] = std::min(vmin[v], w);
        }

    std::vector<std::array<double, 6>> out;
    out.reserve(inst.complete_edge_count());
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            double a = 1.0 + static_cast<double>(inst.weight(u, v));
            out.push_back({a / (1.0 + gmax),
                           a / (1.0 + vmax[u]),
                           a / (1.0 + vmax[v]),
                           (1.0 + gmin) / a,
                           (1.0 + vmin[u]) / a,
                           (1.0 + vmin[v]) / a});
        }
    return out;
}

std::vector<double> mst_feature(const Instance& inst, int k) {
    if (k < 1) throw ValidationError("MST feature requires k >= 1");
    const int n = inst.n();
    WeightedGraph g{n, instance_edges(inst)};
    MstExtraction ext = successive_mst_extract(g, k);
    std::vector<double> out;
    out.reserve(g.edges.size());
    for (const Edge& e : g.edges) {
        int level = ext.level_of(e.u, e.v);
        out.push_back(level == 0 ? 0.0 : 1.0 / level);
    }
    return out;
}

LpFeatures lp_features(const Instance& inst, int rounds, int copies,
                       std::uint64_t seed, double magnitude) {
    LpFeatures out;
    CuttingPlaneResult cp = cutting_plane_features(inst, rounds);
    out.r_hat = cp.normalized_reduced_costs;
    out.r_tilde = perturbed_mean_reduced_costs(inst, copies, seed, magnitude);
    auto tour = integral_tour_check(cp.solution, instance_edges(inst), inst);
    if (tour) {
        out.solved_at_root = true;
        out.root_tour = tour;
    }
    return out;
}

LabeledEdgeSet label_edges(const Instance& inst, const TourSet& tours) {
    if (tours.tours.empty())
        throw LabelingError("cannot label edges from an empty tour set");
    const int n = inst.n();
    std::vector<char> positive(static_cast<std::size_t>(n) * n, 0);
    for (const Tour& t : tours.tours) {
        for (std::size_t i = 0; i < t.order.size(); ++i) {
            int u = t.order[i], v = t.order[(i + 1) % t.order.size()];
            if (u > v) std::swap(u, v);
            positive[static_cast<std::size_t>(u) * n + v] = 1;
        }
    }
    std::int64_t wmax = 1;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) wmax = std::max(wmax, inst.weight(u, v));

    LabeledEdgeSet out;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            out.labels.push_back(positive[static_cast<std::size_t>(u) * n + v]);
            out.sample_weights.push_back(static_cast<double>(inst.weight(u, v)) /
                                         static_cast<double>(wmax));
        }
    return out;
}

FeatureMatrix assemble_features(const Instance& inst, const FeatureConfig& cfg,
                                const TourSet* tours) {
    const int n = inst.n();
    const int k = default_k(n);
    int rounds = cfg.cut_rounds >= 0 ? cfg.cut_rounds : k;
    int copies = cfg.copies >= 0 ? cfg.copies : k;
    int mst_k = cfg.mst_iterations >= 1 ? cfg.mst_iterations : k;

    auto local = local_features(inst);
    auto mst = mst_feature(inst, mst_k);
    auto lp = lp_features(inst, rounds, copies, cfg.seed,
                          cfg.perturbation_magnitude);

    FeatureMatrix fm;
    fm.solved_at_root = lp.solved_at_root;
    std::size_t idx = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++idx) {
            fm.edges.emplace_back(u, v);
            const auto& q = local[idx];
            fm.rows.push_back({q[0], q[1], q[2], q[3], q[4], q[5],
                               lp.r_hat[idx], lp.r_tilde[idx], mst[idx]});
        }
    if (tours) {
        LabeledEdgeSet lab = label_edges(inst, *tours);
        fm.labels = std::move(lab.labels);
        fm.sample_weights = std::move(lab.sample_weights);
    }
    return fm;
}

void write_feature_csv(const FeatureMatrix& fm, std::ostream& out) {
    out << "u,v";
    for (const char* name : kFeatureNames) out << ',' << name;
    if (fm.labels) out << ",label";
    if (fm.sample_weights) out << ",sample_weight";
    out << '\n';
    char buf[32];
    for (std::size_t i = 0; i < fm.rows.size(); ++i) {
        out << (fm.edges[i].first + 1) << ',' << (fm.edges[i].second + 1);
        for (double v : fm.rows[i]) {
            std::snprintf(buf, sizeof buf, "%.12g", v);
            out << ',' << buf;
        }
        if (fm.labels) out << ',' << (*fm.labels)[i];
        if (fm.sample_weights) {
            std::snprintf(buf, sizeof buf, "%.12g", (*fm.sample_weights)[i]);
            out << ',' << buf;
        }
        out << '\n';
    }
}

FeatureMatrix read_feature_csv(std::istream& in) {
    FeatureMatrix fm;
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("empty feature CSV");
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
    }
    if (header.size() < 11 || header[0] != "u" || header[1] != "v")
        throw ParseError("unexpected feature CSV header");
    for (std::size_t i = 0; i < kFeatureNames.size(); ++i)
        if (header[2 + i] != kFeatureNames[i])
            throw ParseError("feature CSV column mismatch: " + header[2 + i]);
    bool has_label = false, has_weight = false;
    for (std::size_t i = 11; i < header.size(); ++i) {
        if (header[i] == "label") has_label = true;
        else if (header[i] == "sample_weight") has_weight = true;
        else throw ParseError("unknown feature CSV column: " + header[i]);
    }
    if (has_label) fm.labels.emplace();
    if (has_weight) fm.sample_weights.emplace();

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != header.size())
            throw ParseError("feature CSV row has wrong column count");
        fm.edges.emplace_back(std::stoi(cells[0]) - 1, std::stoi(cells[1]) - 1);
        std::array<double, 9> row;
        for (int i = 0; i < 9; ++i) row[i] = std::stod(cells[2 + i]);
        fm.rows.push_back(row);
        std::size_t pos = 11;
        if (has_label) fm.labels->push_back(std::stoi(cells[pos++]));
        if (has_weight) fm.sample_weights->push_back(std::stod(cells[pos++]));
    }
    return fm;
}

void save_feature_csv(const FeatureMatrix& fm, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot open file for writing: " + path);
    write_feature_csv(fm, f);
}

FeatureMatrix load_feature_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open file: " + path);
    return read_feature_csv(f);
}

}  // namespace sparsetsp
