#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sparsetsp/report.hpp"
#include "test_util.hpp"

using namespace sparsetsp;

namespace {

SparsifiedInstance keep_edges(const Instance& inst,
                              const std::vector<std::pair<int, int>>& edges) {
    SparsifiedInstance s;
    s.base = inst;
    s.retained = edges;
    std::sort(s.retained.begin(), s.retained.end());
    return s;
}

EvaluationReport stub_report(const std::string& name, double pruning,
                             std::int64_t l_opt,
                             std::optional<std::int64_t> l_hat) {
    EvaluationReport r;
    r.instance = name;
    r.n = 10;
    r.m = 45;
    r.m_hat = static_cast<std::int64_t>((1.0 - pruning) * 45);
    r.pruning_rate = pruning;
    r.l_opt = l_opt;
    r.l_opt_proven = true;
    r.l_hat = l_hat;
    r.l_hat_proven = l_hat.has_value();
    r.feasible = l_hat ? Feasibility::kFeasible : Feasibility::kInfeasible;
    return r;
}

}  // namespace

TEST_CASE("ratio is l_hat over l_opt, infinity when absent") {
    EvaluationReport r = stub_report("a", 0.5, 100, 104);
    CHECK(r.ratio() == doctest::Approx(1.04));
    EvaluationReport inf = stub_report("b", 0.5, 100, std::nullopt);
    CHECK(std::isinf(inf.ratio()));
}

TEST_CASE("evaluating an unpruned instance gives ratio one") {
    Instance inst = generate_random_instance(7, 10000, 1000.0);
    std::vector<char> mask(inst.complete_edge_count(), 1);
    SparsifiedInstance s = prune_instance(inst, mask);
    EvaluationReport rep = evaluate_instance(inst, s);
    CHECK(rep.feasible == Feasibility::kFeasible);
    CHECK(rep.pruning_rate == doctest::Approx(0.0));
    CHECK(rep.ratio() == doctest::Approx(1.0));
    CHECK(rep.l_opt_proven);
    CHECK(rep.l_hat_proven);
}

TEST_CASE("retaining one optimal tour keeps the ratio at one") {
    Instance inst = generate_random_instance(8, 10001, 1000.0);
    Tour opt = held_karp(inst);
    SparsifiedInstance s = keep_edges(inst, tst::canonical_edges(opt.order));
    EvaluationReport rep = evaluate_instance(inst, s);
    CHECK(rep.feasible == Feasibility::kFeasible);
    CHECK(rep.ratio() == doctest::Approx(1.0));
    CHECK(rep.pruning_rate == doctest::Approx(1.0 - 8.0 / 28.0));
}

TEST_CASE("the rectangle double-tree retention scores 64/60") {
    Instance rect = tst::rectangle_instance();
    auto [left, right] = double_tree_tours(rect);
    REQUIRE(left.length == 64);
    SparsifiedInstance s = keep_edges(rect, tst::canonical_edges(left.order));
    EvaluationReport rep = evaluate_instance(rect, s);
    CHECK(rep.l_opt == 60);
    REQUIRE(rep.l_hat.has_value());
    CHECK(*rep.l_hat == 64);
    CHECK(rep.ratio() == doctest::Approx(64.0 / 60.0));
}

TEST_CASE("infeasible retention is proven at desk scale") {
    Instance inst = generate_random_instance(6, 10002, 1000.0);
    SparsifiedInstance s =
        keep_edges(inst, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
    EvaluationReport rep = evaluate_instance(inst, s);
    CHECK(rep.feasible == Feasibility::kInfeasible);
    CHECK(!rep.l_hat.has_value());
    CHECK(std::isinf(rep.ratio()));
}

TEST_CASE("report CSV round-trips") {
    std::vector<EvaluationReport> reports = {
        stub_report("x1", 0.8, 100, 100),
        stub_report("x2", 0.75, 200, 208),
        stub_report("x3", 0.9, 150, std::nullopt),
    };
    reports[1].lp_solves_original = 17;
    reports[1].lp_solves_pruned = 3;

    std::ostringstream out;
    write_report_csv(reports, out, /*include_timing=*/false);
    std::istringstream in(out.str());
    std::vector<EvaluationReport> back = read_report_csv(in);
    REQUIRE(back.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back[i].instance == reports[i].instance);
        CHECK(back[i].l_opt == reports[i].l_opt);
        CHECK(back[i].l_hat == reports[i].l_hat);
        CHECK(back[i].feasible == reports[i].feasible);
        CHECK(back[i].pruning_rate ==
              doctest::Approx(reports[i].pruning_rate).epsilon(1e-10));
        CHECK(back[i].lp_solves_original == reports[i].lp_solves_original);
        CHECK(back[i].lp_solves_pruned == reports[i].lp_solves_pruned);
    }
    // The timing-free form is stable across rewrites.
    std::ostringstream out2;
    write_report_csv(back, out2, false);
    CHECK(out.str() == out2.str());
    // The infeasible row carries the infinity marker.
    CHECK(out.str().find(",inf,") != std::string::npos);

    std::istringstream bad("nonsense header\n");
    CHECK_THROWS_AS(read_report_csv(bad), ParseError);
}

TEST_CASE("summary aggregation worked examples") {
    SummaryRow single = aggregate_summary({stub_report("a", 0.5, 100, 100)});
    CHECK(single.mean_ratio == doctest::Approx(1.0));
    CHECK(single.max_ratio == doctest::Approx(1.0));
    CHECK(single.bound_counts[0] == 1);  // ratio == 1

    SummaryRow pair = aggregate_summary(
        {stub_report("a", 0.5, 100, 100), stub_report("b", 0.5, 100, 104)});
    CHECK(pair.bound_counts[0] == 1);  // == 1
    CHECK(pair.bound_counts[1] == 1);  // < 1.02
    CHECK(pair.bound_counts[2] == 2);  // < 1.05
    CHECK(pair.max_ratio == doctest::Approx(1.04));
    CHECK(pair.mean_ratio == doctest::Approx(1.02));

    SummaryRow with_inf = aggregate_summary(
        {stub_report("a", 0.5, 100, 100), stub_report("b", 0.5, 100, std::nullopt)});
    CHECK(with_inf.has_infeasible);
    CHECK(with_inf.infeasible == 1);
    CHECK(summary_to_string(with_inf).find("inf") != std::string::npos);
    std::ostringstream csv;
    write_summary_csv(with_inf, csv);
    CHECK(csv.str().find("inf") != std::string::npos);

    CHECK_THROWS_AS(aggregate_summary({}), ValidationError);
}
