#include "sparsetsp/tsplib.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

namespace sparsetsp {

namespace {

// nint() as defined by the TSPLIB technical report.
long long nint(double x) { return static_cast<long long>(x + 0.5); }

std::int64_t euc_2d(double dx, double dy) {
    return nint(std::sqrt(dx * dx + dy * dy));
}

std::int64_t ceil_2d(double dx, double dy) {
    return static_cast<std::int64_t>(std::ceil(std::sqrt(dx * dx + dy * dy)));
}

std::int64_t att(double dx, double dy) {
    double r = std::sqrt((dx * dx + dy * dy) / 10.0);
    long long t = nint(r);
    return (t < r) ? t + 1 : t;
}

double geo_radians(double x) {
    const double kPi = 3.141592;
    double deg = static_cast<double>(nint(x));
    double min = x - deg;
    return kPi * (deg + 5.0 * min / 3.0) / 180.0;
}

std::int64_t geo(double lat1, double lon1, double lat2, double lon2) {
    const double kEarthRadius = 6378.388;
    double q1 = std::cos(lon1 - lon2);
    double q2 = std::cos(lat1 - lat2);
    double q3 = std::cos(lat1 + lat2);
    return static_cast<std::int64_t>(
        kEarthRadius * std::acos(0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)) + 1.0);
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

const char* to_string(EdgeWeightKind kind) {
    switch (kind) {
        case EdgeWeightKind::kEuc2d: return "EUC_2D";
        case EdgeWeightKind::kCeil2d: return "CEIL_2D";
        case EdgeWeightKind::kAtt: return "ATT";
        case EdgeWeightKind::kGeo: return "GEO";
        case EdgeWeightKind::kExplicit: return "EXPLICIT";
    }
    return "?";
}

Instance::Instance(std::string name, EdgeWeightKind kind,
                   std::vector<std::pair<double, double>> coords)
    : name_(std::move(name)),
      n_(static_cast<int>(coords.size())),
      kind_(kind),
      coords_(std::move(coords)) {
    if (kind_ == EdgeWeightKind::kExplicit)
        throw ValidationError("explicit instances require a weight matrix");
}

Instance::Instance(std::string name, int n, std::vector<std::int64_t> full_matrix)
    : name_(std::move(name)),
      n_(n),
      kind_(EdgeWeightKind::kExplicit),
      matrix_(std::move(full_matrix)) {
    if (static_cast<int>(matrix_.size()) != n * n)
        throw ValidationError("weight matrix size does not match dimension");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (matrix_[i * n + j] != matrix_[j * n + i])
                throw ValidationError("explicit weight matrix is not symmetric");
            if (matrix_[i * n + j] < 0)
                throw ValidationError("negative edge weight");
        }
}

std::int64_t Instance::weight(int u, int v) const {
    if (u == v) throw ValidationError("self-loop weight requested");
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw ValidationError("vertex index out of range");
    if (kind_ == EdgeWeightKind::kExplicit) return matrix_[u * n_ + v];
    auto [x1, y1] = coords_[u];
    auto [x2, y2] = coords_[v];
    switch (kind_) {
        case EdgeWeightKind::kEuc2d: return euc_2d(x1 - x2, y1 - y2);
        case EdgeWeightKind::kCeil2d: return ceil_2d(x1 - x2, y1 - y2);
        case EdgeWeightKind::kAtt: return att(x1 - x2, y1 - y2);
        case EdgeWeightKind::kGeo:
            return geo(geo_radians(x1), geo_radians(y1), geo_radians(x2),
                       geo_radians(y2));
        default: break;
    }
    throw ValidationError("unreachable weight kind");
}

void Instance::set_edge_list(std::vector<std::pair<int, int>> edges) {
    std::set<std::pair<int, int>> seen;
    for (auto& [u, v] : edges) {
        if (u > v) std::swap(u, v);
        if (u == v || u < 0 || v >= n_)
            throw ValidationError("invalid edge in edge list");
        if (!seen.insert({u, v}).second)
            throw ValidationError("duplicate edge in edge list");
    }
    std::sort(edges.begin(), edges.end());
    edge_list_ = std::move(edges);
}

Instance parse_instance(const std::string& text) {
    std::istringstream in(text);
    std::string line;

    std::string name = "unnamed";
    int dimension = -1;
    std::string type, ewt, ewf, edf;
    std::vector<std::pair<double, double>> coords;
    std::vector<std::int64_t> raw_weights;
    std::vector<std::pair<int, int>> edge_list;
    bool saw_coords = false, saw_weights = false, saw_edges = false;

    auto read_numbers = [&](std::size_t count, std::vector<std::int64_t>& out) {
        std::int64_t v;
        while (out.size() < count && in >> v) out.push_back(v);
        if (out.size() < count)
            throw ParseError("EDGE_WEIGHT_SECTION ended early");
    };

    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        std::string key = line, value;
        auto colon = line.find(':');
        if (colon != std::string::npos) {
            key = trim(line.substr(0, colon));
            value = trim(line.substr(colon + 1));
        }
        if (key == "EOF") break;
        if (key == "NAME") {
            name = value;
        } else if (key == "TYPE") {
            type = value;
            if (type != "TSP")
                throw ParseError("unsupported TYPE: " + type + " (only TSP)");
        } else if (key == "COMMENT") {
            // ignored
        } else if (key == "DIMENSION") {
            dimension = std::stoi(value);
        } else if (key == "EDGE_WEIGHT_TYPE") {
            ewt = value;
        } else if (key == "EDGE_WEIGHT_FORMAT") {
            ewf = value;
        } else if (key == "EDGE_DATA_FORMAT") {
            edf = value;
            if (edf != "EDGE_LIST")
                throw ParseError("unsupported EDGE_DATA_FORMAT: " + edf);
        } else if (key == "NODE_COORD_SECTION") {
            if (dimension <= 0) throw ParseError("missing keyword DIMENSION");
            coords.resize(dimension);
            for (int i = 0; i < dimension; ++i) {
                int idx;
                double x, y;
                if (!(in >> idx >> x >> y))
                    throw ParseError("NODE_COORD_SECTION ended early");
                if (idx < 1 || idx > dimension)
                    throw ParseError("node index out of range in NODE_COORD_SECTION");
                coords[idx - 1] = {x, y};
            }
            saw_coords = true;
        } else if (key == "EDGE_WEIGHT_SECTION") {
            if (dimension <= 0) throw ParseError("missing keyword DIMENSION");
            std::size_t n = dimension;
            std::size_t count;
            if (ewf == "FULL_MATRIX") count = n * n;
            else if (ewf == "UPPER_ROW") count = n * (n - 1) / 2;
            else if (ewf == "LOWER_DIAG_ROW" || ewf == "UPPER_DIAG_ROW")
                count = n * (n + 1) / 2;
            else if (ewf.empty())
                throw ParseError("missing keyword EDGE_WEIGHT_FORMAT");
            else
                throw ParseError("unsupported EDGE_WEIGHT_FORMAT: " + ewf);
            read_numbers(count, raw_weights);
            saw_weights = true;
        } else if (key == "EDGE_DATA_SECTION") {
            long long u;
            while (in >> u && u != -1) {
                long long v;
                if (!(in >> v)) throw ParseError("EDGE_DATA_SECTION ended early");
                edge_list.emplace_back(static_cast<int>(u - 1),
                                       static_cast<int>(v - 1));
            }
            saw_edges = true;
        } else {
            std::cerr << "warning: ignoring unknown TSPLIB keyword: " << key
                      << "\n";
        }
    }

    if (dimension <= 0) throw ParseError("missing keyword DIMENSION");
    if (ewt.empty()) throw ParseError("missing keyword EDGE_WEIGHT_TYPE");
    if (!saw_coords && !saw_weights)
        throw ParseError(
            "missing section: need NODE_COORD_SECTION or EDGE_WEIGHT_SECTION");

    Instance inst;
    if (ewt == "EXPLICIT") {
        if (!saw_weights) throw ParseError("missing keyword EDGE_WEIGHT_SECTION");
        std::size_t n = dimension;
        std::vector<std::int64_t> full(n * n, 0);
        std::size_t pos = 0;
        if (ewf == "FULL_MATRIX") {
            full = raw_weights;
        } else if (ewf == "UPPER_ROW") {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    full[i * n + j] = full[j * n + i] = raw_weights[pos++];
        } else if (ewf == "LOWER_DIAG_ROW") {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j <= i; ++j)
                    full[i * n + j] = full[j * n + i] = raw_weights[pos++];
        } else {  // UPPER_DIAG_ROW
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j)
                    full[i * n + j] = full[j * n + i] = raw_weights[pos++];
        }
        inst = Instance(name, dimension, std::move(full));
    } else {
        EdgeWeightKind kind;
        if (ewt == "EUC_2D") kind = EdgeWeightKind::kEuc2d;
        else if (ewt == "CEIL_2D") kind = EdgeWeightKind::kCeil2d;
        else if (ewt == "ATT") kind = EdgeWeightKind::kAtt;
        else if (ewt == "GEO") kind = EdgeWeightKind::kGeo;
        else throw ParseError("unsupported EDGE_WEIGHT_TYPE: " + ewt);
        if (!saw_coords) throw ParseError("missing keyword NODE_COORD_SECTION");
        inst = Instance(name, kind, std::move(coords));
    }
    if (saw_edges) inst.set_edge_list(std::move(edge_list));
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_instance(ss.str());
}

std::string write_instance(const Instance& inst) {
    std::ostringstream out;
    out << "NAME : " << inst.name() << "\n";
    out << "TYPE : TSP\n";
    out << "DIMENSION : " << inst.n() << "\n";
    out << "EDGE_WEIGHT_TYPE : " << to_string(inst.weight_kind()) << "\n";
    if (inst.weight_kind() == EdgeWeightKind::kExplicit) {
        out << "EDGE_WEIGHT_FORMAT : FULL_MATRIX\n";
        out << "EDGE_WEIGHT_SECTION\n";
        for (int i = 0; i < inst.n(); ++i) {
            for (int j = 0; j < inst.n(); ++j)
                out << (j ? " " : "") << (i == j ? 0 : inst.weight(i, j));
            out << "\n";
        }
    } else {
        out << "NODE_COORD_SECTION\n";
        char buf[96];
        for (int i = 0; i < inst.n(); ++i) {
            auto [x, y] = inst.coords()[i];
            std::snprintf(buf, sizeof buf, "%d %.17g %.17g\n", i + 1, x, y);
            out << buf;
        }
    }
    if (inst.edge_list()) {
        out << "EDGE_DATA_FORMAT : EDGE_LIST\n";
        out << "EDGE_DATA_SECTION\n";
        for (auto [u, v] : *inst.edge_list())
            out << (u + 1) << " " << (v + 1) << "\n";
        out << "-1\n";
    }
    out << "EOF\n";
    return out.str();
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot open file for writing: " + path);
    f << write_instance(inst);
}

Instance generate_random_instance(int n, std::uint64_t seed, double box,
                                  const std::string& name) {
    if (n < 4) throw ValidationError("instance generation requires n >= 4");
    std::mt19937_64 rng(seed);
    auto uniform = [&rng](double hi) {
        // 53-bit mantissa mapping; deterministic across standard libraries.
        return (rng() >> 11) * 0x1.0p-53 * hi;
    };
    std::vector<std::pair<double, double>> coords(n);
    for (auto& [x, y] : coords) {
        x = uniform(box);
        y = uniform(box);
    }
    std::string nm = name.empty()
                         ? "rand-n" + std::to_string(n) + "-s" + std::to_string(seed)
                         : name;
    return Instance(nm, EdgeWeightKind::kEuc2d, std::move(coords));
}

}  // namespace sparsetsp
