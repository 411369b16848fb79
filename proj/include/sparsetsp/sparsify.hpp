#ifndef SPARSETSP_SPARSIFY_HPP
#define SPARSETSP_SPARSIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sparsetsp/features.hpp"
#include "sparsetsp/graph.hpp"
#include "sparsetsp/tsplib.hpp"

namespace sparsetsp {

struct TrainingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TrainConfig {
    double class_weight_neg = 0.01;
    double class_weight_pos = 0.99;
    bool undersample = true;
    std::uint64_t seed = 0;
    int epochs = 4000;
    double learning_rate = 1.0;
    double l2 = 1e-4;
};

/// Logistic-regression edge classifier with the standardization
/// statistics baked in.
struct Model {
    int version = 1;
    std::vector<std::string> feature_names;
    std::vector<double> means;
    std::vector<double> stds;   // strictly positive (zero variance -> 1)
    std::vector<double> weights;
    double bias = 0;
    double threshold = 0.5;
    TrainConfig config;
    // Confusion counts over the full (pre-undersampling) training data at
    // threshold 0.5.
    double train_loss = 0;
    long long tp = 0, fp = 0, tn = 0, fn = 0;
};

/// Weighted logistic regression by batch gradient descent; sample weight
/// = class weight x per-edge weight; negatives undersampled per instance.
Model train_model(const std::vector<FeatureMatrix>& data,
                  const TrainConfig& cfg = {});

struct PredictionMask {
    std::vector<char> keep;
    std::vector<double> probability;
};

PredictionMask predict_mask(const Model& model, const FeatureMatrix& feats,
                            std::optional<double> threshold = std::nullopt);

struct SparsifiedInstance {
    Instance base;  // without an edge list
    std::vector<std::pair<int, int>> retained;  // sorted, u < v
    std::vector<std::pair<int, int>> inserted;  // subset of retained
    std::size_t m_hat() const { return retained.size(); }
    double pruning_rate() const;
    /// The base instance restricted to the retained edges.
    Instance to_instance() const;
};

/// keep_mask is indexed like the complete u<v edge enumeration.
SparsifiedInstance prune_instance(const Instance& inst,
                                  const std::vector<char>& keep_mask);

/// Union the edges of each (validated) tour into the retained set.
SparsifiedInstance insert_tour_edges(SparsifiedInstance s,
                                     const std::vector<Tour>& tours);

/// Retain exactly the k(n-1) successive-MST edges.
SparsifiedInstance mst_only_sparsify(const Instance& inst, int k);

/// TSPLIB text with an EDGE_DATA_SECTION; refuses an empty retained set.
std::string write_sparsified(const SparsifiedInstance& s);

void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

}  // namespace sparsetsp

#endif
