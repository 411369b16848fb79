#ifndef SPARSETSP_FEATURES_HPP
#define SPARSETSP_FEATURES_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sparsetsp/exact.hpp"
#include "sparsetsp/tsplib.hpp"

namespace sparsetsp {

inline constexpr std::array<const char*, 9> kFeatureNames = {
    "q_a", "q_b", "q_c", "q_d", "q_e", "q_f", "r_hat", "r_tilde", "q_mst"};

/// ceil(log2(n)); the shared default for cut rounds, perturbation copies
/// and MST iterations.
int default_k(int n);

struct FeatureConfig {
    int cut_rounds = -1;       // -1: default_k(n)
    int copies = -1;           // -1: default_k(n)
    int mst_iterations = -1;   // -1: default_k(n)
    std::uint64_t seed = 0;
    double perturbation_magnitude = 0.1;
};

struct FeatureMatrix {
    std::vector<std::pair<int, int>> edges;  // 0-indexed, u < v
    std::vector<std::array<double, 9>> rows;
    std::optional<std::vector<int>> labels;
    std::optional<std::vector<double>> sample_weights;
    bool solved_at_root = false;
};

/// q_a..q_f of the complete graph; rows/columns exclude the diagonal.
std::vector<std::array<double, 6>> local_features(const Instance& inst);

/// 1/j for edges extracted at successive-MST level j, 0 elsewhere; edge
/// order matches instance_edges().
std::vector<double> mst_feature(const Instance& inst, int k);

struct LpFeatures {
    std::vector<double> r_hat;
    std::vector<double> r_tilde;
    bool solved_at_root = false;
    std::optional<Tour> root_tour;  // set when solved_at_root
};

LpFeatures lp_features(const Instance& inst, int rounds, int copies,
                       std::uint64_t seed, double magnitude = 0.1);

struct LabeledEdgeSet {
    std::vector<int> labels;            // 1 iff edge on any optimal tour
    std::vector<double> sample_weights; // A_ij / max A_ij
};

struct LabelingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

LabeledEdgeSet label_edges(const Instance& inst, const TourSet& tours);

FeatureMatrix assemble_features(const Instance& inst, const FeatureConfig& cfg,
                                const TourSet* tours = nullptr);

/// Header u,v,q_a,...,q_mst[,label][,sample_weight]; 1-indexed vertices,
/// reals at 12 significant digits.
void write_feature_csv(const FeatureMatrix& fm, std::ostream& out);
FeatureMatrix read_feature_csv(std::istream& in);
void save_feature_csv(const FeatureMatrix& fm, const std::string& path);
FeatureMatrix load_feature_csv(const std::string& path);

}  // namespace sparsetsp

#endif
