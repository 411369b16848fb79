#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "sparsetsp/tsplib.hpp"
#include "test_util.hpp"

using namespace sparsetsp;

TEST_CASE("explicit full matrix of zeros") {
    std::string doc =
        "NAME : zeros\n"
        "TYPE : TSP\n"
        "DIMENSION : 4\n"
        "EDGE_WEIGHT_TYPE : EXPLICIT\n"
        "EDGE_WEIGHT_FORMAT : FULL_MATRIX\n"
        "EDGE_WEIGHT_SECTION\n"
        "0 0 0 0\n0 0 0 0\n0 0 0 0\n0 0 0 0\n"
        "EOF\n";
    Instance inst = parse_instance(doc);
    CHECK(inst.n() == 4);
    CHECK(inst.weight_kind() == EdgeWeightKind::kExplicit);
    for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v)
            if (u != v) CHECK(inst.weight(u, v) == 0);
}

TEST_CASE("euclidean rounding") {
    Instance inst("e", EdgeWeightKind::kEuc2d,
                  {{0, 0}, {3, 4}, {1, 1}, {0, 10}, {0, 0}});
    CHECK(inst.weight(0, 1) == 5);
    CHECK(inst.weight(0, 2) == 1);  // nint(1.414...)
    CHECK(inst.weight(0, 3) == 10);
    CHECK(inst.weight(0, 4) == 0);  // coincident points
}

TEST_CASE("ceiling distances") {
    Instance inst("c", EdgeWeightKind::kCeil2d, {{0, 0}, {1, 1}, {5, 5}});
    CHECK(inst.weight(0, 1) == 2);  // ceil(sqrt(2))
    CHECK(inst.weight(0, 2) == 8);  // ceil(7.07...)
}

TEST_CASE("pseudo-euclidean ATT rounds up") {
    Instance inst("a", EdgeWeightKind::kAtt, {{0, 0}, {10, 10}, {0, 10}});
    // r = sqrt(200/10) = 4.47..., nint = 4 < r, so 5.
    CHECK(inst.weight(0, 1) == 5);
    // r = sqrt(100/10) = 3.162..., nint = 3 < r, so 4.
    CHECK(inst.weight(0, 2) == 4);
}

TEST_CASE("geographical distances") {
    Instance inst("g", EdgeWeightKind::kGeo, {{0, 0}, {0, 1}, {0, 0}});
    // One degree of longitude on the equator with the TSPLIB constants:
    // int(6378.388 * (3.141592/180) + 1) = 112.
    CHECK(inst.weight(0, 1) == 112);
    // The standard formula int(R * acos(...) + 1) gives 1 even for
    // coincident points; faithfulness beats intuition here.
    CHECK(inst.weight(0, 2) == 1);
    CHECK(inst.weight(0, 1) == inst.weight(1, 0));
}

TEST_CASE("explicit lookup is the identity") {
    Instance inst = tst::explicit_instance(3, {42, 7, 9});
    CHECK(inst.weight(0, 1) == 42);
    CHECK(inst.weight(1, 0) == 42);
    CHECK(inst.weight(1, 2) == 9);
}

TEST_CASE("self-loop weight is rejected") {
    Instance inst = tst::uniform_instance(4);
    CHECK_THROWS_AS(inst.weight(2, 2), ValidationError);
}

TEST_CASE("triangular explicit layouts expand to the full matrix") {
    // Target matrix: w(0,1)=1, w(0,2)=2, w(1,2)=3.
    std::string head =
        "TYPE : TSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EXPLICIT\n";
    Instance upper = parse_instance(
        head + "EDGE_WEIGHT_FORMAT : UPPER_ROW\nEDGE_WEIGHT_SECTION\n1 2 3\nEOF\n");
    Instance lower_diag = parse_instance(
        head +
        "EDGE_WEIGHT_FORMAT : LOWER_DIAG_ROW\nEDGE_WEIGHT_SECTION\n0 1 0 2 3 0\nEOF\n");
    Instance upper_diag = parse_instance(
        head +
        "EDGE_WEIGHT_FORMAT : UPPER_DIAG_ROW\nEDGE_WEIGHT_SECTION\n0 1 2 0 3 0\nEOF\n");
    Instance full = parse_instance(
        head +
        "EDGE_WEIGHT_FORMAT : FULL_MATRIX\nEDGE_WEIGHT_SECTION\n0 1 2 1 0 3 2 3 0\nEOF\n");
    for (const Instance* inst : {&upper, &lower_diag, &upper_diag, &full}) {
        CHECK(inst->weight(0, 1) == 1);
        CHECK(inst->weight(0, 2) == 2);
        CHECK(inst->weight(1, 2) == 3);
    }
}

TEST_CASE("parser errors name the problem") {
    CHECK_THROWS_WITH_AS(
        parse_instance("TYPE : TSP\nEDGE_WEIGHT_TYPE : EUC_2D\nEOF\n"),
        doctest::Contains("DIMENSION"), ParseError);
    CHECK_THROWS_WITH_AS(parse_instance("TYPE : ATSP\nDIMENSION : 4\nEOF\n"),
                         doctest::Contains("TYPE"), ParseError);
    CHECK_THROWS_AS(parse_instance("TYPE : TSP\nDIMENSION : 4\n"
                                   "EDGE_WEIGHT_TYPE : EUC_2D\nEOF\n"),
                    ParseError);  // no coordinate or weight section
    // Asymmetric explicit matrix.
    CHECK_THROWS_AS(
        parse_instance("TYPE : TSP\nDIMENSION : 2\nEDGE_WEIGHT_TYPE : EXPLICIT\n"
                       "EDGE_WEIGHT_FORMAT : FULL_MATRIX\n"
                       "EDGE_WEIGHT_SECTION\n0 1 2 0\nEOF\n"),
        ValidationError);
}

TEST_CASE("unknown keywords are skipped") {
    std::string doc =
        "NAME : odd\nTYPE : TSP\nDIMENSION : 4\n"
        "DISPLAY_DATA_TYPE : COORD_DISPLAY\n"
        "EDGE_WEIGHT_TYPE : EUC_2D\n"
        "NODE_COORD_SECTION\n1 0 0\n2 0 10\n3 20 0\n4 20 10\nEOF\n";
    Instance inst = parse_instance(doc);
    CHECK(inst.n() == 4);
    CHECK(inst.weight(0, 1) == 10);
}

TEST_CASE("write/parse round-trip preserves weights") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        Instance inst = generate_random_instance(9, seed, 1000.0);
        Instance back = parse_instance(write_instance(inst));
        CHECK(back.n() == inst.n());
        CHECK(back.weight_kind() == inst.weight_kind());
        CHECK(back.name() == inst.name());
        for (int u = 0; u < inst.n(); ++u)
            for (int v = u + 1; v < inst.n(); ++v)
                CHECK(back.weight(u, v) == inst.weight(u, v));
    }
    // Explicit instances round-trip through FULL_MATRIX.
    Instance k4 = tst::k4_example();
    Instance back = parse_instance(write_instance(k4));
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) CHECK(back.weight(u, v) == k4.weight(u, v));
}

TEST_CASE("edge list round-trip") {
    Instance inst = tst::uniform_instance(4);
    inst.set_edge_list({{0, 1}, {1, 2}, {0, 2}});
    std::string doc = write_instance(inst);
    CHECK(doc.find("EDGE_DATA_FORMAT : EDGE_LIST") != std::string::npos);
    Instance back = parse_instance(doc);
    REQUIRE(back.edge_list().has_value());
    CHECK(*back.edge_list() ==
          std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
}

TEST_CASE("edge list validation") {
    Instance inst = tst::uniform_instance(4);
    CHECK_THROWS_AS(inst.set_edge_list({{0, 0}}), ValidationError);
    CHECK_THROWS_AS(inst.set_edge_list({{0, 1}, {1, 0}}), ValidationError);
    CHECK_THROWS_AS(inst.set_edge_list({{0, 9}}), ValidationError);
}

TEST_CASE("random generation is deterministic per seed") {
    Instance a = generate_random_instance(10, 7, 1e6);
    Instance b = generate_random_instance(10, 7, 1e6);
    Instance c = generate_random_instance(10, 8, 1e6);
    CHECK(a.coords() == b.coords());
    CHECK(a.coords() != c.coords());
    CHECK(a.name() == "rand-n10-s7");
    CHECK_THROWS_AS(generate_random_instance(3, 1, 1e6), ValidationError);
    for (auto [x, y] : a.coords()) {
        CHECK(x >= 0.0);
        CHECK(x <= 1e6);
        CHECK(y >= 0.0);
        CHECK(y <= 1e6);
    }
}
