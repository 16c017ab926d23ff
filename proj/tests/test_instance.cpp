#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "core/clustering.hpp"
#include "core/error.hpp"
#include "core/instance.hpp"
#include "oracles.hpp"

using namespace gtsp;

namespace {

NodeSet parse_tsp_text(const std::string& text) {
    std::istringstream in(text);
    return parse_tsplib(in);
}

GtspInstance parse_gtsp_text(const std::string& text) {
    std::istringstream in(text);
    return parse_gtsp(in);
}

std::string coord_header(const std::string& kind, int n) {
    return "NAME : tiny\nTYPE : TSP\nDIMENSION : " + std::to_string(n) +
           "\nEDGE_WEIGHT_TYPE : " + kind + "\nNODE_COORD_SECTION\n";
}

std::string matrix_header(const std::string& format, int n) {
    return "NAME : tiny\nTYPE : TSP\nDIMENSION : " + std::to_string(n) +
           "\nEDGE_WEIGHT_TYPE : EXPLICIT\nEDGE_WEIGHT_FORMAT : " + format +
           "\nEDGE_WEIGHT_SECTION\n";
}

// The same four-node distance set in every explicit layout:
//   0 1 2 3
//   1 0 4 5
//   2 4 0 6
//   3 5 6 0
void check_reference_matrix(const NodeSet& nodes) {
    REQUIRE(nodes.count() == 4);
    const int want[4][4] = {{0, 1, 2, 3}, {1, 0, 4, 5}, {2, 4, 0, 6}, {3, 5, 6, 0}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(nodes.distance(i, j) == want[i][j]);
}

std::string temp_file(const std::string& tag, const std::string& content) {
    std::string path = std::string("/tmp/gtsp_test_") + tag;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_SUITE("instance") {

TEST_CASE("euclidean distances round to the nearest integer") {
    auto nodes = NodeSet::from_coords("t", WeightKind::Euc2d,
                                      {{0, 0}, {3, 4}, {1, 1}, {0.6, 0}});
    CHECK(nodes.distance(0, 1) == 5);
    CHECK(nodes.distance(0, 2) == 1);  // sqrt(2) rounds down
    CHECK(nodes.distance(0, 3) == 1);  // 0.6 rounds up
    CHECK(nodes.distance(1, 1) == 0);
    CHECK(nodes.distance(1, 0) == nodes.distance(0, 1));
}

TEST_CASE("ceiling distances round up") {
    auto nodes = NodeSet::from_coords("t", WeightKind::Ceil2d, {{0, 0}, {1, 1}, {3, 4}});
    CHECK(nodes.distance(0, 1) == 2);
    CHECK(nodes.distance(0, 2) == 5);
}

TEST_CASE("pseudo-euclidean distances follow the scaled round-up rule") {
    auto nodes = NodeSet::from_coords("t", WeightKind::Att, {{0, 0}, {10, 10}});
    // sqrt(200 / 10) = 4.47..., nint gives 4, which is below r, so 5.
    CHECK(nodes.distance(0, 1) == 5);
    CHECK(nodes.distance(0, 1) == oracle::att_ref(0, 0, 10, 10));
}

TEST_CASE("att instance matches the reference formula on every pair") {
    auto nodes = load_tsplib(oracle::tsp_path("att48"));
    REQUIRE(nodes.count() == 48);
    const auto& xy = nodes.coords();
    for (int i = 0; i < nodes.count(); ++i)
        for (int j = i + 1; j < nodes.count(); ++j)
            REQUIRE(nodes.distance(i, j) ==
                    oracle::att_ref(xy[i].first, xy[i].second, xy[j].first, xy[j].second));
}

TEST_CASE("geographical instance matches the reference formula on every pair") {
    for (const char* base : {"gr96", "gr202"}) {
        auto nodes = load_tsplib(oracle::tsp_path(base));
        const auto& xy = nodes.coords();
        for (int i = 0; i < nodes.count(); ++i)
            for (int j = i + 1; j < nodes.count(); ++j)
                REQUIRE(nodes.distance(i, j) ==
                        oracle::geo_ref(xy[i].first, xy[i].second, xy[j].first, xy[j].second));
    }
}

TEST_CASE("all four explicit layouts expand to the same matrix") {
    check_reference_matrix(parse_tsp_text(matrix_header("FULL_MATRIX", 4) +
                                          "0 1 2 3\n1 0 4 5\n2 4 0 6\n3 5 6 0\nEOF\n"));
    check_reference_matrix(parse_tsp_text(matrix_header("UPPER_ROW", 4) +
                                          "1 2 3\n4 5\n6\nEOF\n"));
    check_reference_matrix(parse_tsp_text(matrix_header("LOWER_DIAG_ROW", 4) +
                                          "0\n1 0\n2 4 0\n3 5 6 0\nEOF\n"));
    check_reference_matrix(parse_tsp_text(matrix_header("UPPER_DIAG_ROW", 4) +
                                          "0 1 2 3\n0 4 5\n0 6\n0\nEOF\n"));
}

TEST_CASE("token layout in the weight section is free-form") {
    check_reference_matrix(parse_tsp_text(matrix_header("FULL_MATRIX", 4) +
                                          "0 1 2\n3 1 0 4 5 2 4\n0 6 3 5 6 0\nEOF\n"));
}

TEST_CASE("diagonal sentinels in a full matrix are normalized to zero") {
    auto nodes = parse_tsp_text(matrix_header("FULL_MATRIX", 3) +
                                "9999 5 4\n5 9999 3\n4 3 9999\nEOF\n");
    for (int i = 0; i < 3; ++i) CHECK(nodes.distance(i, i) == 0);
    CHECK(nodes.distance(0, 1) == 5);
}

TEST_CASE("unsupported variants are rejected by name") {
    CHECK_THROWS_WITH_AS(parse_tsp_text("NAME : x\nTYPE : TSP\nDIMENSION : 2\n"
                                        "EDGE_WEIGHT_TYPE : MAX_2D\nNODE_COORD_SECTION\n"
                                        "1 0 0\n2 1 1\nEOF\n"),
                         doctest::Contains("MAX_2D"), FormatError);
    CHECK_THROWS_WITH_AS(parse_tsp_text("NAME : x\nTYPE : ATSP\nDIMENSION : 2\n"
                                        "EDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n"
                                        "1 0 0\n2 1 1\nEOF\n"),
                         doctest::Contains("ATSP"), FormatError);
    CHECK_THROWS_AS(parse_tsp_text(matrix_header("UPPER_COL", 3) + "1 2 3\nEOF\n"), FormatError);
}

TEST_CASE("parse errors carry line numbers") {
    // Node 3 of 3 is missing; the error points at the section end.
    try {
        parse_tsp_text(coord_header("EUC_2D", 3) + "1 0 0\n2 1 1\nEOF\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_tsp_text(coord_header("EUC_2D", 2) + "1 0 0\n1 1 1\nEOF\n"),
                    ParseError);  // duplicate id
    CHECK_THROWS_AS(parse_tsp_text(coord_header("EUC_2D", 2) + "1 0 zero\n2 1 1\nEOF\n"),
                    ParseError);  // bad coordinate token
    CHECK_THROWS_AS(parse_tsp_text(matrix_header("FULL_MATRIX", 3) + "0 1 2\n1 0 3\nEOF\n"),
                    ParseError);  // short matrix
}

TEST_CASE("benchmark files report their catalog sizes") {
    CHECK(load_tsplib(oracle::tsp_path("att48")).count() == 48);
    CHECK(load_tsplib(oracle::tsp_path("pcb442")).count() == 442);
    CHECK(load_tsplib(oracle::tsp_path("gr96")).weight_kind() == WeightKind::Geo);
    CHECK(load_tsplib(oracle::tsp_path("gr48")).weight_kind() == WeightKind::Explicit);
}

TEST_CASE("published optimal tours reproduce their published lengths") {
    struct Row {
        const char* base;
        std::int64_t length;
    };
    // Optimal closed-tour lengths distributed with the benchmark library.
    const Row rows[] = {
        {"eil51", 426},     {"eil76", 538},    {"st70", 675},     {"berlin52", 7542},
        {"kroA100", 21282}, {"kroC100", 20749}, {"kroD100", 21294}, {"lin105", 14379},
        {"rd100", 7910},    {"pr76", 108159},  {"ch130", 6110},   {"ch150", 6528},
        {"eil101", 629},    {"a280", 2579},    {"pcb442", 50778}, {"att48", 10628},
        {"gr48", 5046},     {"gr120", 6942},   {"gr96", 55209},   {"gr202", 40160},
    };
    for (const auto& row : rows) {
        CAPTURE(row.base);
        auto nodes = load_tsplib(oracle::tsp_path(row.base));
        auto tour = oracle::read_opt_tour(oracle::data_dir() + "/tours/" + row.base + ".opt.tour");
        REQUIRE(static_cast<int>(tour.size()) == nodes.count());
        std::int64_t total = 0;
        for (std::size_t i = 0; i < tour.size(); ++i)
            total += nodes.distance(tour[i], tour[(i + 1) % tour.size()]);
        CHECK(total == row.length);
    }
}

TEST_CASE("explicit matrices must be symmetric with a zero diagonal") {
    CHECK_THROWS_AS(NodeSet::from_matrix("bad", {{0, 1}, {2, 0}}), InvalidInput);
    CHECK_THROWS_AS(NodeSet::from_matrix("bad", {{1, 2}, {2, 0}}), InvalidInput);
    CHECK_THROWS_AS(NodeSet::from_matrix("bad", {{0, -1}, {-1, 0}}), InvalidInput);
    CHECK_THROWS_AS(NodeSet::from_matrix("bad", {{0, 1, 2}, {1, 0}}), InvalidInput);
}

TEST_CASE("clustered files parse sets and expose the partition") {
    auto inst = parse_gtsp_text(
        "NAME : tiny\nTYPE : GTSP\nDIMENSION : 3\nGTSP_SETS : 2\n"
        "EDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n"
        "1 0 0\n2 3 4\n3 6 0\nGTSP_SET_SECTION\n1 1 2 -1\n2 3 -1\nEOF\n");
    CHECK(inst.name() == "tiny");
    CHECK(inst.node_count() == 3);
    CHECK(inst.cluster_count() == 2);
    CHECK(inst.cluster_of(0) == 0);
    CHECK(inst.cluster_of(2) == 1);
    CHECK(inst.members(0) == std::vector<int>{0, 1});
    CHECK(inst.members(1) == std::vector<int>{2});
    CHECK(inst.distance(0, 1) == 5);
}

TEST_CASE("partition violations in set sections are named") {
    std::string head =
        "NAME : tiny\nTYPE : GTSP\nDIMENSION : 3\nGTSP_SETS : 2\n"
        "EDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n"
        "1 0 0\n2 3 4\n3 6 0\nGTSP_SET_SECTION\n";
    CHECK_THROWS_AS(parse_gtsp_text(head + "1 1 2 -1\n2 2 3 -1\nEOF\n"), ParseError);  // node twice
    CHECK_THROWS_AS(parse_gtsp_text(head + "1 1 -1\n2 3 -1\nEOF\n"), ParseError);      // node 2 lost
    CHECK_THROWS_AS(parse_gtsp_text(head + "1 1 2 -1\n1 3 -1\nEOF\n"), ParseError);    // set id twice
    CHECK_THROWS_AS(parse_gtsp_text(head + "1 1 2 3 -1\nEOF\n"), ParseError);          // set count off
    try {
        parse_gtsp_text(head + "1 1 2 -1\n2 2 3 -1\nEOF\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
}

TEST_CASE("written instances parse back unchanged") {
    auto original = cluster_instance(load_tsplib(oracle::tsp_path("eil51")), 11);
    std::ostringstream out;
    write_gtsp(original, out);
    auto reread = parse_gtsp_text(out.str());
    CHECK(reread.name() == original.name());
    CHECK(reread.node_count() == original.node_count());
    CHECK(reread.all_members() == original.all_members());
    for (int i = 0; i < reread.node_count(); ++i)
        for (int j = 0; j < reread.node_count(); ++j)
            REQUIRE(reread.distance(i, j) == original.distance(i, j));
}

TEST_CASE("explicit instances survive the write and parse round trip") {
    auto nodes = NodeSet::from_matrix("m", {{0, 7, 2}, {7, 0, 3}, {2, 3, 0}});
    GtspInstance original("m", std::move(nodes), {{0, 2}, {1}});
    std::ostringstream out;
    write_gtsp(original, out);
    auto reread = parse_gtsp_text(out.str());
    CHECK(reread.all_members() == original.all_members());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(reread.distance(i, j) == original.distance(i, j));
}

TEST_CASE("distributed clustered files load with their stated shape") {
    auto inst = load_gtsp(oracle::data_dir() + "/gtsp/39rat195.gtsp");
    CHECK(inst.name() == "39rat195");
    CHECK(inst.node_count() == 195);
    CHECK(inst.cluster_count() == 39);
}

TEST_CASE("best known sidecars map names to costs") {
    auto path = temp_file("best_known.txt",
                          "# comment line\n11eil51 174\n\n89pcb442 21657\n");
    auto map = load_best_known(path);
    CHECK(map.size() == 2);
    CHECK(map.at("11eil51") == 174);
    CHECK(map.at("89pcb442") == 21657);
    CHECK_THROWS_AS(load_best_known("/tmp/gtsp_test_no_such_sidecar"), IoError);
    std::remove(path.c_str());
}

TEST_CASE("partition validation points at the offending node") {
    auto nodes = NodeSet::from_coords("t", WeightKind::Euc2d, {{0, 0}, {1, 0}, {2, 0}});
    CHECK_THROWS_AS(GtspInstance("t", nodes, {{0, 1}, {1, 2}}), InvalidInput);
    CHECK_THROWS_AS(GtspInstance("t", nodes, {{0}, {2}}), InvalidInput);
    CHECK_THROWS_AS(GtspInstance("t", nodes, {{0, 1, 2}, {}}), InvalidInput);
    CHECK_THROWS_AS(GtspInstance("t", nodes, {{0, 1, 2, 3}}), InvalidInput);
}

TEST_CASE("missing files raise io errors") {
    CHECK_THROWS_AS(load_tsplib("/tmp/gtsp_test_missing.tsp"), IoError);
    CHECK_THROWS_AS(load_gtsp("/tmp/gtsp_test_missing.gtsp"), IoError);
}

}  // TEST_SUITE
