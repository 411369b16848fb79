#include "sparsetsp/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>

#include <json.hpp>

namespace sparsetsp {

namespace {

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    double e = std::exp(z);
    return e / (1.0 + e);
}

struct Sample {
    std::array<double, 9> x;
    int y;
    double weight;  // class weight x sample weight
};

}  // namespace

Model train_model(const std::vector<FeatureMatrix>& data,
                  const TrainConfig& cfg) {
    if (cfg.class_weight_neg <= 0 || cfg.class_weight_pos <= 0)
        throw TrainingError("class weights must be positive");

    std::mt19937_64 rng(cfg.seed);
    std::vector<Sample> samples;
    long long total_pos = 0, total_neg = 0;

    for (std::size_t mi = 0; mi < data.size(); ++mi) {
        const FeatureMatrix& fm = data[mi];
        if (!fm.labels)
            throw TrainingError("training matrix " + std::to_string(mi) +
                                " has no labels");
        std::vector<std::size_t> pos, neg;
        for (std::size_t i = 0; i < fm.rows.size(); ++i) {
            for (double v : fm.rows[i])
                if (!std::isfinite(v))
                    throw TrainingError("non-finite feature in matrix " +
                                        std::to_string(mi) + " row " +
                                        std::to_string(i));
            ((*fm.labels)[i] ? pos : neg).push_back(i);
        }
        total_pos += static_cast<long long>(pos.size());
        total_neg += static_cast<long long>(neg.size());

        std::vector<std::size_t> keep_neg = neg;
        if (cfg.undersample && neg.size() > pos.size()) {
            // Uniform without replacement, per instance.
            std::shuffle(keep_neg.begin(), keep_neg.end(), rng);
            keep_neg.resize(pos.size());
            std::sort(keep_neg.begin(), keep_neg.end());
        }
        auto push = [&](std::size_t i) {
            Sample s;
            s.x = fm.rows[i];
            s.y = (*fm.labels)[i];
            double sw = fm.sample_weights ? (*fm.sample_weights)[i] : 1.0;
            s.weight = (s.y ? cfg.class_weight_pos : cfg.class_weight_neg) * sw;
            samples.push_back(s);
        };
        for (std::size_t i : pos) push(i);
        for (std::size_t i : keep_neg) push(i);
    }
    if (total_pos == 0 || total_neg == 0)
        throw TrainingError("training data must contain both classes");

    Model model;
    model.feature_names.assign(kFeatureNames.begin(), kFeatureNames.end());
    model.config = cfg;
    model.means.assign(9, 0.0);
    model.stds.assign(9, 1.0);
    model.weights.assign(9, 0.0);

    const double inv_n = 1.0 / static_cast<double>(samples.size());
    for (const Sample& s : samples)
        for (int j = 0; j < 9; ++j) model.means[j] += s.x[j] * inv_n;
    for (int j = 0; j < 9; ++j) {
        double var = 0;
        for (const Sample& s : samples) {
            double d = s.x[j] - model.means[j];
            var += d * d * inv_n;
        }
        model.stds[j] = var > 1e-24 ? std::sqrt(var) : 1.0;
    }
    for (Sample& s : samples)
        for (int j = 0; j < 9; ++j)
            s.x[j] = (s.x[j] - model.means[j]) / model.stds[j];

    double weight_sum = 0;
    for (const Sample& s : samples) weight_sum += s.weight;

    std::array<double, 9> grad{};
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        grad.fill(0.0);
        double grad_b = 0;
        for (const Sample& s : samples) {
            double z = model.bias;
            for (int j = 0; j < 9; ++j) z += model.weights[j] * s.x[j];
            double err = s.weight * (sigmoid(z) - s.y);
            for (int j = 0; j < 9; ++j) grad[j] += err * s.x[j];
            grad_b += err;
        }
        double lr = cfg.learning_rate / (1.0 + 5.0 * epoch / cfg.epochs);
        for (int j = 0; j < 9; ++j) {
            grad[j] = grad[j] / weight_sum + cfg.l2 * model.weights[j];
            model.weights[j] -= lr * grad[j];
        }
        model.bias -= lr * grad_b / weight_sum;
    }

    // Final loss on the training samples.
    double loss = 0;
    for (const Sample& s : samples) {
        double z = model.bias;
        for (int j = 0; j < 9; ++j) z += model.weights[j] * s.x[j];
        double p = sigmoid(z);
        p = std::clamp(p, 1e-15, 1.0 - 1e-15);
        loss -= s.weight * (s.y ? std::log(p) : std::log(1.0 - p));
    }
    model.train_loss = loss / weight_sum;

    // Confusion counts at threshold 0.5 over the full training matrices.
    for (const FeatureMatrix& fm : data) {
        PredictionMask mask = predict_mask(model, fm, 0.5);
        for (std::size_t i = 0; i < fm.rows.size(); ++i) {
            int y = (*fm.labels)[i];
            bool keep = mask.keep[i];
            if (y && keep) ++model.tp;
            else if (y && !keep) ++model.fn;
            else if (!y && keep) ++model.fp;
            else ++model.tn;
        }
    }
    return model;
}

PredictionMask predict_mask(const Model& model, const FeatureMatrix& feats,
                            std::optional<double> threshold) {
    if (model.feature_names.size() != kFeatureNames.size())
        throw SchemaError("model has wrong feature count");
    for (std::size_t j = 0; j < kFeatureNames.size(); ++j)
        if (model.feature_names[j] != kFeatureNames[j])
            throw SchemaError("model feature column mismatch: " +
                              model.feature_names[j]);
    double thr = threshold.value_or(model.threshold);
    PredictionMask out;
    out.keep.reserve(feats.rows.size());
    out.probability.reserve(feats.rows.size());
    for (const auto& row : feats.rows) {
        double z = model.bias;
        for (int j = 0; j < 9; ++j)
            z += model.weights[j] * (row[j] - model.means[j]) / model.stds[j];
        double p = sigmoid(z);
        out.probability.push_back(p);
        out.keep.push_back(p >= thr ? 1 : 0);
    }
    return out;
}

double SparsifiedInstance::pruning_rate() const {
    double m = static_cast<double>(base.complete_edge_count());
    return 1.0 - static_cast<double>(retained.size()) / m;
}

Instance SparsifiedInstance::to_instance() const {
    Instance inst = base;
    inst.set_edge_list(retained);
    return inst;
}

SparsifiedInstance prune_instance(const Instance& inst,
                                  const std::vector<char>& keep_mask) {
    if (static_cast<std::int64_t>(keep_mask.size()) != inst.complete_edge_count())
        throw ValidationError("keep mask does not cover all edges");
    SparsifiedInstance s;
    s.base = inst;
    std::size_t idx = 0;
    for (int u = 0; u < inst.n(); ++u)
        for (int v = u + 1; v < inst.n(); ++v, ++idx)
            if (keep_mask[idx]) s.retained.emplace_back(u, v);
    return s;
}

SparsifiedInstance insert_tour_edges(SparsifiedInstance s,
                                     const std::vector<Tour>& tours) {
    std::set<std::pair<int, int>> retained(s.retained.begin(), s.retained.end());
    for (const Tour& t : tours) {
        tour_length(t.order, s.base);  // validates the permutation
        for (std::size_t i = 0; i < t.order.size(); ++i) {
            int u = t.order[i], v = t.order[(i + 1) % t.order.size()];
            if (u > v) std::swap(u, v);
            if (retained.insert({u, v}).second) s.inserted.emplace_back(u, v);
        }
    }
    s.retained.assign(retained.begin(), retained.end());
    std::sort(s.inserted.begin(), s.inserted.end());
    return s;
}

SparsifiedInstance mst_only_sparsify(const Instance& inst, int k) {
    if (k < 1) throw ValidationError("MST sparsification requires k >= 1");
    WeightedGraph g{inst.n(), instance_edges(inst)};
    MstExtraction ext = successive_mst_extract(g, k);
    SparsifiedInstance s;
    s.base = inst;
    for (const auto& level : ext.levels)
        for (const Edge& e : level) s.retained.emplace_back(e.u, e.v);
    std::sort(s.retained.begin(), s.retained.end());
    return s;
}

std::string write_sparsified(const SparsifiedInstance& s) {
    if (s.retained.empty())
        throw ValidationError("refusing to write an empty retained-edge set");
    return write_instance(s.to_instance());
}

void save_model(const Model& model, const std::string& path) {
    nlohmann::json j;
    j["version"] = model.version;
    j["feature_names"] = model.feature_names;
    j["means"] = model.means;
    j["stds"] = model.stds;
    j["weights"] = model.weights;
    j["bias"] = model.bias;
    j["threshold"] = model.threshold;
    j["seed"] = model.config.seed;
    j["train_config"] = {
        {"class_weight_neg", model.config.class_weight_neg},
        {"class_weight_pos", model.config.class_weight_pos},
        {"undersample", model.config.undersample},
        {"epochs", model.config.epochs},
        {"learning_rate", model.config.learning_rate},
        {"l2", model.config.l2},
    };
    j["train_stats"] = {{"loss", model.train_loss},
                        {"tp", model.tp},
                        {"fp", model.fp},
                        {"tn", model.tn},
                        {"fn", model.fn}};
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot open file for writing: " + path);
    f << j.dump(2) << "\n";
}

Model load_model(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw SchemaError("cannot open model file: " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("malformed model file: ") + e.what());
    }
    Model m;
    try {
        m.version = j.at("version").get<int>();
        if (m.version != 1)
            throw SchemaError("unsupported model version " +
                              std::to_string(m.version));
        m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        m.means = j.at("means").get<std::vector<double>>();
        m.stds = j.at("stds").get<std::vector<double>>();
        m.weights = j.at("weights").get<std::vector<double>>();
        m.bias = j.at("bias").get<double>();
        m.threshold = j.at("threshold").get<double>();
        m.config.seed = j.at("seed").get<std::uint64_t>();
        const auto& tc = j.at("train_config");
        m.config.class_weight_neg = tc.at("class_weight_neg").get<double>();
        m.config.class_weight_pos = tc.at("class_weight_pos").get<double>();
        m.config.undersample = tc.at("undersample").get<bool>();
        m.config.epochs = tc.at("epochs").get<int>();
        m.config.learning_rate = tc.at("learning_rate").get<double>();
        m.config.l2 = tc.at("l2").get<double>();
        if (j.contains("train_stats")) {
            const auto& ts = j.at("train_stats");
            m.train_loss = ts.at("loss").get<double>();
            m.tp = ts.at("tp").get<long long>();
            m.fp = ts.at("fp").get<long long>();
            m.tn = ts.at("tn").get<long long>();
            m.fn = ts.at("fn").get<long long>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("model file missing field: ") + e.what());
    }
    if (m.feature_names.size() != m.weights.size() ||
        m.means.size() != m.weights.size() || m.stds.size() != m.weights.size())
        throw SchemaError("model arrays have inconsistent lengths");
    for (double s : m.stds)
        if (!(s > 0)) throw SchemaError("model stds must be strictly positive");
    return m;
}

}  // namespace sparsetsp
