#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sparsetsp/exact.hpp"
#include "sparsetsp/features.hpp"
#include "sparsetsp/graph.hpp"
#include "sparsetsp/report.hpp"
#include "sparsetsp/sparsify.hpp"
#include "sparsetsp/tsplib.hpp"

namespace fs = std::filesystem;
using namespace sparsetsp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitBudget = 3;

nlohmann::json tours_to_json(const TourSet& ts) {
    nlohmann::json j;
    j["optimal_length"] = ts.optimal_length;
    j["truncated"] = ts.truncated;
    auto& arr = j["tours"] = nlohmann::json::array();
    for (const Tour& t : ts.tours) {
        nlohmann::json order = nlohmann::json::array();
        for (int v : t.order) order.push_back(v + 1);
        arr.push_back(order);
    }
    return j;
}

TourSet tours_from_json(const nlohmann::json& j, const Instance& inst) {
    TourSet ts;
    ts.optimal_length = j.at("optimal_length").get<std::int64_t>();
    ts.truncated = j.value("truncated", false);
    for (const auto& order_j : j.at("tours")) {
        Tour t;
        for (const auto& v : order_j) t.order.push_back(v.get<int>() - 1);
        t.length = tour_length(t.order, inst);
        ts.tours.push_back(std::move(t));
    }
    return ts;
}

TourSet load_tours(const std::string& path, const Instance& inst) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open tour file: " + path);
    nlohmann::json j;
    f >> j;
    return tours_from_json(j, inst);
}

std::pair<double, double> parse_class_weights(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--class-weights expects NEG,POS");
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

std::vector<double> parse_bounds(const std::string& s) {
    std::vector<double> bounds;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) bounds.push_back(std::stod(cell));
    if (bounds.empty()) throw CLI::ValidationError("--bounds is empty");
    return bounds;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"TSP instance sparsification toolkit"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Generate random EUC_2D instances");
    int gen_n = 100, gen_count = 1;
    std::uint64_t gen_seed = 0;
    double gen_box = 1e6;
    std::string gen_out_dir = ".";
    gen->add_option("--n", gen_n, "Vertex count")->required();
    gen->add_option("--count", gen_count, "Number of instances");
    gen->add_option("--seed", gen_seed, "Base RNG seed");
    gen->add_option("--box", gen_box, "Coordinate bound");
    gen->add_option("--out-dir", gen_out_dir, "Output directory")->required();

    // solve
    auto* solve = app.add_subcommand("solve", "Solve an instance exactly");
    std::string solve_path, solve_method = "auto", solve_out;
    bool solve_all = false;
    int solve_cap = 32;
    long long solve_budget = 1'000'000;
    solve->add_option("instance", solve_path, "TSPLIB file")->required();
    solve->add_flag("--all-optimal", solve_all, "Enumerate all optimal tours");
    solve->add_option("--cap", solve_cap, "Enumeration cap");
    solve->add_option("--method", solve_method, "held-karp | bc | auto");
    solve->add_option("--budget", solve_budget, "LP-solve budget");
    solve->add_option("--out", solve_out, "Write tours JSON here");

    // features
    auto* feat = app.add_subcommand("features", "Compute per-edge features");
    std::string feat_path, feat_labels, feat_out;
    int feat_rounds = -1, feat_copies = -1, feat_mst = -1;
    std::uint64_t feat_seed = 0;
    double feat_magnitude = 0.1;
    feat->add_option("instance", feat_path)->required();
    feat->add_option("--k-rounds", feat_rounds, "Cut rounds (default ceil(log2 n))");
    feat->add_option("--copies", feat_copies, "Perturbation copies");
    feat->add_option("--mst-k", feat_mst, "MST iterations");
    feat->add_option("--seed", feat_seed, "Perturbation seed");
    feat->add_option("--magnitude", feat_magnitude, "Perturbation magnitude");
    feat->add_option("--labels", feat_labels, "Tours JSON for supervision");
    feat->add_option("--out", feat_out, "Feature CSV path")->required();

    // train
    auto* train = app.add_subcommand("train", "Train the edge classifier");
    std::vector<std::string> train_data;
    std::string train_weights = "0.01,0.99", train_out;
    std::uint64_t train_seed = 0;
    int train_epochs = 4000;
    double train_lr = 1.0, train_l2 = 1e-4, train_threshold = 0.5;
    bool train_no_undersample = false;
    train->add_option("--data", train_data, "Labeled feature CSVs")->required();
    train->add_option("--class-weights", train_weights, "NEG,POS");
    train->add_option("--seed", train_seed, "Undersampling seed");
    train->add_option("--epochs", train_epochs, "Gradient-descent epochs");
    train->add_option("--lr", train_lr, "Learning rate");
    train->add_option("--l2", train_l2, "L2 strength");
    train->add_option("--threshold", train_threshold, "Stored decision threshold");
    train->add_flag("--no-undersample", train_no_undersample);
    train->add_option("--out", train_out, "Model JSON path")->required();

    // sparsify
    auto* spars = app.add_subcommand("sparsify", "Prune an instance");
    std::string spars_path, spars_model, spars_out;
    double spars_threshold = -1;
    bool spars_double_tree = false, spars_mst_only = false;
    int spars_k = -1;
    std::uint64_t spars_seed = 0;
    spars->add_option("instance", spars_path)->required();
    spars->add_option("--model", spars_model, "Model JSON");
    spars->add_option("--threshold", spars_threshold, "Decision threshold override");
    spars->add_flag("--insert-double-tree", spars_double_tree,
                    "Insert both double-tree tours");
    spars->add_flag("--mst-only", spars_mst_only, "Successive-MST sparsification");
    spars->add_option("--k", spars_k, "MST iterations for --mst-only");
    spars->add_option("--seed", spars_seed, "Feature seed (learned mode)");
    spars->add_option("--out", spars_out, "Pruned TSPLIB path")->required();

    // evaluate
    auto* eval = app.add_subcommand("evaluate", "Compare pruned vs original");
    std::string eval_orig, eval_pruned, eval_out, eval_tours;
    long long eval_budget = 1'000'000;
    bool eval_no_timing = false;
    eval->add_option("instance", eval_orig)->required();
    eval->add_option("pruned", eval_pruned)->required();
    eval->add_option("--budget", eval_budget, "LP-solve budget");
    eval->add_option("--known-tours", eval_tours,
                     "Tours JSON valid in the pruned instance");
    eval->add_flag("--no-timing", eval_no_timing,
                   "Omit wall-clock columns for byte-stable output");
    eval->add_option("--out", eval_out, "Report CSV path")->required();

    // report
    auto* rep = app.add_subcommand("report", "Aggregate evaluation reports");
    std::vector<std::string> rep_in;
    std::string rep_bounds = "1.0,1.02,1.05", rep_out;
    rep->add_option("--in", rep_in, "Report CSVs")->required();
    rep->add_option("--bounds", rep_bounds, "Optimality-ratio bounds");
    rep->add_option("--out", rep_out, "Summary CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            fs::create_directories(gen_out_dir);
            for (int i = 0; i < gen_count; ++i) {
                Instance inst = generate_random_instance(gen_n, gen_seed + i, gen_box);
                fs::path p = fs::path(gen_out_dir) / (inst.name() + ".tsp");
                save_instance(inst, p.string());
                std::cout << p.string() << "\n";
            }
        } else if (*solve) {
            Instance inst = load_instance(solve_path);
            if (solve_all) {
                BranchAndCutOptions opts;
                opts.lp_solve_budget = solve_budget;
                TourSet ts = enumerate_optimal_tours(inst, solve_cap, opts);
                nlohmann::json j = tours_to_json(ts);
                if (!solve_out.empty()) {
                    std::ofstream f(solve_out);
                    f << j.dump(2) << "\n";
                } else {
                    std::cout << j.dump(2) << "\n";
                }
                std::cout << "optimal length " << ts.optimal_length << ", "
                          << ts.tours.size() << " tour(s)"
                          << (ts.truncated ? " (truncated)" : "") << "\n";
            } else {
                std::optional<Tour> tour;
                bool proven = true;
                if (solve_method == "held-karp" ||
                    (solve_method == "auto" && inst.n() <= kHeldKarpCap &&
                     !inst.edge_list())) {
                    tour = held_karp_restricted(inst);
                    if (!tour) {
                        std::cout << "infeasible (no Hamiltonian cycle)\n";
                        return kExitOk;
                    }
                } else if (solve_method == "bc" || solve_method == "auto") {
                    BranchAndCutOptions opts;
                    opts.lp_solve_budget = solve_budget;
                    opts.use_double_tree_start = !inst.edge_list();
                    BranchAndCutResult r = branch_and_cut(inst, opts);
                    tour = r.tour;
                    proven = r.proven;
                    if (r.infeasible) {
                        std::cout << "infeasible (no Hamiltonian cycle)\n";
                        return kExitOk;
                    }
                } else {
                    std::cerr << "unknown --method: " << solve_method << "\n";
                    return kExitUsage;
                }
                if (!tour) {
                    std::cerr << "budget exhausted with no tour found\n";
                    return kExitBudget;
                }
                std::cout << "length " << tour->length
                          << (proven ? " (proven optimal)" : " (not proven)")
                          << "\norder:";
                for (int v : tour->order) std::cout << ' ' << v + 1;
                std::cout << "\n";
                if (!proven) return kExitBudget;
            }
        } else if (*feat) {
            Instance inst = load_instance(feat_path);
            FeatureConfig cfg;
            cfg.cut_rounds = feat_rounds;
            cfg.copies = feat_copies;
            cfg.mst_iterations = feat_mst;
            cfg.seed = feat_seed;
            cfg.perturbation_magnitude = feat_magnitude;
            std::optional<TourSet> tours;
            if (!feat_labels.empty()) tours = load_tours(feat_labels, inst);
            FeatureMatrix fm =
                assemble_features(inst, cfg, tours ? &*tours : nullptr);
            save_feature_csv(fm, feat_out);
            if (fm.solved_at_root)
                std::cout << "note: cutting-plane solution was an optimal tour\n";
            std::cout << "wrote " << fm.rows.size() << " feature rows to "
                      << feat_out << "\n";
        } else if (*train) {
            std::vector<FeatureMatrix> data;
            for (const auto& p : train_data) data.push_back(load_feature_csv(p));
            TrainConfig cfg;
            std::tie(cfg.class_weight_neg, cfg.class_weight_pos) =
                parse_class_weights(train_weights);
            cfg.seed = train_seed;
            cfg.epochs = train_epochs;
            cfg.learning_rate = train_lr;
            cfg.l2 = train_l2;
            cfg.undersample = !train_no_undersample;
            Model model = train_model(data, cfg);
            model.threshold = train_threshold;
            save_model(model, train_out);
            long long pos = model.tp + model.fn, neg = model.tn + model.fp;
            std::cout << "trained on " << pos << " positive / " << neg
                      << " negative edges; loss " << model.train_loss
                      << "; confusion tp=" << model.tp << " fp=" << model.fp
                      << " tn=" << model.tn << " fn=" << model.fn << "\n";
        } else if (*spars) {
            Instance inst = load_instance(spars_path);
            SparsifiedInstance s;
            if (spars_mst_only) {
                int k = spars_k >= 1 ? spars_k : default_k(inst.n());
                s = mst_only_sparsify(inst, k);
            } else {
                if (spars_model.empty()) {
                    std::cerr << "--model is required unless --mst-only\n";
                    return kExitUsage;
                }
                Model model = load_model(spars_model);
                FeatureConfig cfg;
                cfg.seed = spars_seed;
                FeatureMatrix fm = assemble_features(inst, cfg);
                std::optional<double> thr;
                if (spars_threshold >= 0) thr = spars_threshold;
                PredictionMask mask = predict_mask(model, fm, thr);
                s = prune_instance(inst, mask.keep);
            }
            if (spars_double_tree) {
                auto [a, b] = double_tree_tours(inst);
                s = insert_tour_edges(std::move(s), {a, b});
            }
            save_instance(s.to_instance(), spars_out);
            std::cout << "retained " << s.m_hat() << " of "
                      << inst.complete_edge_count() << " edges (pruning rate "
                      << s.pruning_rate() << ") -> " << spars_out << "\n";
        } else if (*eval) {
            Instance inst = load_instance(eval_orig);
            Instance pruned = load_instance(eval_pruned);
            if (!pruned.edge_list())
                throw ValidationError("pruned file has no EDGE_DATA_SECTION");
            if (pruned.n() != inst.n())
                throw ValidationError("instance/pruned dimension mismatch");
            SparsifiedInstance s;
            s.base = pruned;
            s.base.clear_edge_list();
            s.retained = *pruned.edge_list();
            std::vector<Tour> known;
            if (!eval_tours.empty()) {
                TourSet ts = load_tours(eval_tours, inst);
                known = ts.tours;
            }
            EvaluationBudget budget{eval_budget};
            EvaluationReport r = evaluate_instance(inst, s, budget, known);
            std::ofstream f(eval_out);
            if (!f) throw ValidationError("cannot write " + eval_out);
            write_report_csv({r}, f, !eval_no_timing);
            std::cout << "l_opt " << r.l_opt << ", l_hat "
                      << (r.l_hat ? std::to_string(*r.l_hat) : "inf")
                      << ", ratio ";
            if (r.l_hat) std::cout << r.ratio();
            else std::cout << "inf";
            std::cout << ", pruning rate " << r.pruning_rate << "\n";
            if (!r.l_opt_proven || (r.l_hat && !r.l_hat_proven) ||
                r.feasible == Feasibility::kUnknown)
                return kExitBudget;
        } else if (*rep) {
            std::vector<EvaluationReport> all;
            for (const auto& p : rep_in) {
                std::ifstream f(p);
                if (!f) throw ParseError("cannot open report: " + p);
                auto part = read_report_csv(f);
                all.insert(all.end(), part.begin(), part.end());
            }
            SummaryRow s = aggregate_summary(all, parse_bounds(rep_bounds));
            std::ofstream f(rep_out);
            if (!f) throw ValidationError("cannot write " + rep_out);
            write_summary_csv(s, f);
            std::cout << summary_to_string(s);
        }
    } catch (const EnumerationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitOk;
}
