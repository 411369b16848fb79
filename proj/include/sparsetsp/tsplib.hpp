#ifndef SPARSETSP_TSPLIB_HPP
#define SPARSETSP_TSPLIB_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sparsetsp {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class EdgeWeightKind { kEuc2d, kCeil2d, kAtt, kGeo, kExplicit };

enum class ExplicitLayout { kFullMatrix, kUpperRow, kLowerDiagRow, kUpperDiagRow };

const char* to_string(EdgeWeightKind kind);

/// A symmetric TSP instance. Vertices are 0-indexed internally; the
/// TSPLIB parser/writer translates to the 1-indexed external convention.
class Instance {
public:
    Instance() = default;
    Instance(std::string name, EdgeWeightKind kind,
             std::vector<std::pair<double, double>> coords);
    Instance(std::string name, int n, std::vector<std::int64_t> full_matrix);

    const std::string& name() const { return name_; }
    int n() const { return n_; }
    EdgeWeightKind weight_kind() const { return kind_; }
    bool has_coords() const { return !coords_.empty(); }
    const std::vector<std::pair<double, double>>& coords() const { return coords_; }

    /// Derived integer weight of edge (u, v), 0-indexed. Throws on u == v.
    std::int64_t weight(int u, int v) const;

    /// Number of edges of the underlying complete graph, n(n-1)/2.
    std::int64_t complete_edge_count() const {
        return static_cast<std::int64_t>(n_) * (n_ - 1) / 2;
    }

    /// Retained-edge subset (0-indexed, u < v), present on sparsified
    /// instances parsed from EDGE_DATA_SECTION documents.
    const std::optional<std::vector<std::pair<int, int>>>& edge_list() const {
        return edge_list_;
    }
    void set_edge_list(std::vector<std::pair<int, int>> edges);
    void clear_edge_list() { edge_list_.reset(); }

private:
    std::string name_;
    int n_ = 0;
    EdgeWeightKind kind_ = EdgeWeightKind::kEuc2d;
    std::vector<std::pair<double, double>> coords_;
    std::vector<std::int64_t> matrix_;  // n*n, only for kExplicit
    std::optional<std::vector<std::pair<int, int>>> edge_list_;
};

/// Parse a TSPLIB document. Unknown keywords are skipped with a warning
/// on stderr; EOF terminates parsing.
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);

/// Serialize an instance, including its retained-edge list (as
/// EDGE_DATA_FORMAT: EDGE_LIST) when one is present.
std::string write_instance(const Instance& inst);
void save_instance(const Instance& inst, const std::string& path);

/// n points uniform in [0, box]^2 with EUC_2D weights; deterministic in
/// (n, seed, box).
Instance generate_random_instance(int n, std::uint64_t seed, double box,
                                  const std::string& name = "");

}  // namespace sparsetsp

#endif
