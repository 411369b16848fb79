#include <doctest.h>

#include <cmath>
#include <random>

#include "sparsetsp/graph.hpp"
#include "sparsetsp/simplex.hpp"
#include "sparsetsp/tsplib.hpp"
#include "test_util.hpp"

using namespace sparsetsp;

namespace {

LinearProgram degree_two_lp(const Instance& inst) {
    LinearProgram lp;
    std::vector<Edge> edges = instance_edges(inst);
    for (const Edge& e : edges) lp.add_column(static_cast<double>(e.w), 0.0, 1.0);
    lp.rows.resize(inst.n());
    for (auto& row : lp.rows) {
        row.sense = LinearProgram::Sense::kEq;
        row.rhs = 2.0;
    }
    for (std::size_t j = 0; j < edges.size(); ++j) {
        lp.rows[edges[j].u].coeffs.emplace_back(static_cast<int>(j), 1.0);
        lp.rows[edges[j].v].coeffs.emplace_back(static_cast<int>(j), 1.0);
    }
    return lp;
}

// The degree-2 polytope with [0,1] bounds has half-integral vertices, so
// the LP optimum equals the best point of {0, 1/2, 1}^m.
double half_integral_optimum(const LinearProgram& lp, const Instance& inst) {
    const int m = lp.num_cols;
    const int n = inst.n();
    std::vector<Edge> edges = instance_edges(inst);
    double best = 1e18;
    std::vector<int> digit(m, 0);
    while (true) {
        std::vector<double> deg(n, 0.0);
        double obj = 0;
        for (int j = 0; j < m; ++j) {
            double x = digit[j] * 0.5;
            obj += lp.objective[j] * x;
            deg[edges[j].u] += x;
            deg[edges[j].v] += x;
        }
        bool feasible = true;
        for (int v = 0; v < n; ++v)
            if (std::fabs(deg[v] - 2.0) > 1e-9) {
                feasible = false;
                break;
            }
        if (feasible) best = std::min(best, obj);
        int i = 0;
        while (i < m && digit[i] == 2) digit[i++] = 0;
        if (i == m) break;
        ++digit[i];
    }
    return best;
}

}  // namespace

TEST_CASE("simple inequality LP") {
    // min -x - y s.t. x + y <= 1, 0 <= x, y <= 1.
    LinearProgram lp;
    lp.add_column(-1.0, 0.0, 1.0);
    lp.add_column(-1.0, 0.0, 1.0);
    lp.rows.push_back({{{0, 1.0}, {1, 1.0}}, LinearProgram::Sense::kLe, 1.0});
    SimplexResult r = solve_simplex(lp);
    REQUIRE(r.status == SolveStatus::kOptimal);
    CHECK(r.objective == doctest::Approx(-1.0));
    CHECK(r.x[0] + r.x[1] == doctest::Approx(1.0));
}

TEST_CASE("equality row forces the split") {
    // min x s.t. x + y = 2, 0 <= x, y <= 2.
    LinearProgram lp;
    lp.add_column(1.0, 0.0, 2.0);
    lp.add_column(0.0, 0.0, 2.0);
    lp.rows.push_back({{{0, 1.0}, {1, 1.0}}, LinearProgram::Sense::kEq, 2.0});
    SimplexResult r = solve_simplex(lp);
    REQUIRE(r.status == SolveStatus::kOptimal);
    CHECK(r.objective == doctest::Approx(0.0));
    CHECK(r.x[0] == doctest::Approx(0.0));
    CHECK(r.x[1] == doctest::Approx(2.0));
}

TEST_CASE("infeasible equality is detected") {
    LinearProgram lp;
    lp.add_column(1.0, 0.0, 1.0);
    lp.add_column(1.0, 0.0, 1.0);
    lp.rows.push_back({{{0, 1.0}, {1, 1.0}}, LinearProgram::Sense::kEq, 5.0});
    CHECK(solve_simplex(lp).status == SolveStatus::kInfeasible);
}

TEST_CASE("bounds-only problems solve at the bounds") {
    LinearProgram lp;
    lp.add_column(3.0, -1.0, 2.0);
    lp.add_column(-2.0, 0.0, 4.0);
    SimplexResult r = solve_simplex(lp);
    REQUIRE(r.status == SolveStatus::kOptimal);
    CHECK(r.x[0] == doctest::Approx(-1.0));
    CHECK(r.x[1] == doctest::Approx(4.0));
    CHECK(r.objective == doctest::Approx(-11.0));
}

TEST_CASE("uniform degree-2 relaxations have objective n") {
    for (int n : {4, 5, 6}) {
        SimplexResult r = solve_simplex(degree_two_lp(tst::uniform_instance(n)));
        REQUIRE(r.status == SolveStatus::kOptimal);
        CHECK(r.objective == doctest::Approx(static_cast<double>(n)));
    }
}

TEST_CASE("degree-2 LP optimum matches half-integral enumeration") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Instance inst = generate_random_instance(5, 200 + seed, 100.0);
        LinearProgram lp = degree_two_lp(inst);
        SimplexResult r = solve_simplex(lp);
        REQUIRE(r.status == SolveStatus::kOptimal);
        CHECK(r.objective ==
              doctest::Approx(half_integral_optimum(lp, inst)).epsilon(1e-7));
    }
}

TEST_CASE("strong duality identity holds at optimum") {
    // c'x = y'b + sum_j d_j x_j for bounded-variable simplex.
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Instance inst = generate_random_instance(6, 300 + seed, 100.0);
        LinearProgram lp = degree_two_lp(inst);
        SimplexResult r = solve_simplex(lp);
        REQUIRE(r.status == SolveStatus::kOptimal);
        double rhs = 0;
        for (std::size_t i = 0; i < lp.rows.size(); ++i)
            rhs += r.duals[i] * lp.rows[i].rhs;
        for (int j = 0; j < lp.num_cols; ++j) rhs += r.reduced_costs[j] * r.x[j];
        CHECK(r.objective == doctest::Approx(rhs).epsilon(1e-6));
        // Strictly interior (basic) variables price out to zero.
        for (int j = 0; j < lp.num_cols; ++j)
            if (r.x[j] > 1e-6 && r.x[j] < 1.0 - 1e-6)
                CHECK(std::fabs(r.reduced_costs[j]) < 1e-6);
    }
}

TEST_CASE("unbounded problems are reported") {
    LinearProgram lp;
    lp.add_column(-1.0, 0.0, kInf);
    CHECK(solve_simplex(lp).status == SolveStatus::kUnbounded);
}
