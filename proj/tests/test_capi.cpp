#include "doctest.h"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "gtsp/gtsp.h"
#include "oracles.hpp"

namespace {

std::string temp_path(const std::string& tag) { return "/tmp/gtsp_capi_" + tag; }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

// The four-singleton square with unit sides and length-2 diagonals.
std::string square_path() {
    auto path = temp_path("square.gtsp");
    write_file(path,
               "NAME : square\nTYPE : GTSP\nDIMENSION : 4\nGTSP_SETS : 4\n"
               "EDGE_WEIGHT_TYPE : EXPLICIT\nEDGE_WEIGHT_FORMAT : FULL_MATRIX\n"
               "EDGE_WEIGHT_SECTION\n"
               "0 1 2 1\n1 0 1 2\n2 1 0 1\n1 2 1 0\n"
               "GTSP_SET_SECTION\n1 1 -1\n2 2 -1\n3 3 -1\n4 4 -1\nEOF\n");
    return path;
}

struct InstanceHandle {
    gtsp_instance* ptr = nullptr;
    ~InstanceHandle() { gtsp_instance_free(ptr); }
};

struct SolutionHandle {
    gtsp_solution* ptr = nullptr;
    ~SolutionHandle() { gtsp_solution_free(ptr); }
};

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("version and error strings are always available") {
    REQUIRE(gtsp_version() != nullptr);
    CHECK(std::strlen(gtsp_version()) > 0);
    REQUIRE(gtsp_last_error() != nullptr);
}

TEST_CASE("default parameters load and files override them") {
    gtsp_params params;
    gtsp_params_init(&params);
    CHECK(params.l0 == 3);
    CHECK(params.t == 10);
    CHECK(params.p0 == 0.75);
    CHECK(params.descmax == 200);
    CHECK(params.time_limit_seconds <= 0.0);

    auto path = temp_path("params.txt");
    write_file(path, "l0 = 7\nq = 0.5\n");
    params.time_limit_seconds = 9.0;
    REQUIRE(gtsp_params_load(path.c_str(), &params) == GTSP_OK);
    CHECK(params.l0 == 7);
    CHECK(params.q == 0.5);
    CHECK(params.t == 10);
    CHECK(params.time_limit_seconds == 9.0);  // not a file key

    CHECK(gtsp_params_load(temp_path("nope").c_str(), &params) == GTSP_ERR_IO);
    CHECK(std::strlen(gtsp_last_error()) > 0);

    write_file(path, "l0 = 7\nbogus = 1\n");
    CHECK(gtsp_params_load(path.c_str(), &params) == GTSP_ERR_PARSE);
    std::remove(path.c_str());
}

TEST_CASE("instances load with accessors and best known plumbing") {
    InstanceHandle inst;
    REQUIRE(gtsp_instance_load(square_path().c_str(), &inst.ptr) == GTSP_OK);
    CHECK(gtsp_instance_node_count(inst.ptr) == 4);
    CHECK(gtsp_instance_cluster_count(inst.ptr) == 4);
    CHECK(std::string(gtsp_instance_name(inst.ptr)) == "square");

    int64_t best = 0;
    CHECK(gtsp_instance_best_known(inst.ptr, &best) == GTSP_ERR_INVALID);
    REQUIRE(gtsp_instance_set_best_known(inst.ptr, 4) == GTSP_OK);
    REQUIRE(gtsp_instance_best_known(inst.ptr, &best) == GTSP_OK);
    CHECK(best == 4);

    CHECK(gtsp_instance_load(temp_path("missing.gtsp").c_str(), &inst.ptr) == GTSP_ERR_IO);
    CHECK(gtsp_instance_load(nullptr, &inst.ptr) == GTSP_ERR_INVALID);
}

TEST_CASE("tsplib files cluster on load") {
    auto eil51 = oracle::tsp_path("eil51");
    InstanceHandle by_default;
    REQUIRE(gtsp_instance_from_tsplib(eil51.c_str(), 0, &by_default.ptr) == GTSP_OK);
    CHECK(gtsp_instance_cluster_count(by_default.ptr) == 11);
    CHECK(std::string(gtsp_instance_name(by_default.ptr)) == "11eil51");

    InstanceHandle pinned;
    REQUIRE(gtsp_instance_from_tsplib(eil51.c_str(), 7, &pinned.ptr) == GTSP_OK);
    CHECK(gtsp_instance_cluster_count(pinned.ptr) == 7);
    CHECK(std::string(gtsp_instance_name(pinned.ptr)) == "7eil51");

    InstanceHandle bad;
    CHECK(gtsp_instance_from_tsplib(eil51.c_str(), 99, &bad.ptr) == GTSP_ERR_INVALID);
}

TEST_CASE("malformed files map to parse and format errors") {
    auto path = temp_path("broken.gtsp");
    write_file(path, "NAME : b\nTYPE : GTSP\nDIMENSION : x\n");
    InstanceHandle inst;
    CHECK(gtsp_instance_load(path.c_str(), &inst.ptr) == GTSP_ERR_PARSE);

    write_file(path, "NAME : b\nTYPE : GTSP\nDIMENSION : 2\nGTSP_SETS : 2\n"
                     "EDGE_WEIGHT_TYPE : XRAY\nNODE_COORD_SECTION\n1 0 0\n2 1 1\n"
                     "GTSP_SET_SECTION\n1 1 -1\n2 2 -1\nEOF\n");
    CHECK(gtsp_instance_load(path.c_str(), &inst.ptr) == GTSP_ERR_FORMAT);
    std::remove(path.c_str());
}

TEST_CASE("instances round-trip through write and the buffer protocol") {
    InstanceHandle inst;
    REQUIRE(gtsp_instance_load(square_path().c_str(), &inst.ptr) == GTSP_OK);

    size_t needed = 0;
    REQUIRE(gtsp_instance_format(inst.ptr, nullptr, 0, &needed) == GTSP_ERR_BUFFER);
    REQUIRE(needed > 0);
    std::vector<char> small(needed - 1);
    CHECK(gtsp_instance_format(inst.ptr, small.data(), small.size(), &needed) == GTSP_ERR_BUFFER);
    std::vector<char> buffer(needed);
    REQUIRE(gtsp_instance_format(inst.ptr, buffer.data(), buffer.size(), &needed) == GTSP_OK);
    CHECK(std::strlen(buffer.data()) == needed - 1);
    CHECK(std::string(buffer.data()).find("GTSP_SET_SECTION") != std::string::npos);

    auto copy_path = temp_path("square_copy.gtsp");
    REQUIRE(gtsp_instance_write(inst.ptr, copy_path.c_str()) == GTSP_OK);
    InstanceHandle copy;
    REQUIRE(gtsp_instance_load(copy_path.c_str(), &copy.ptr) == GTSP_OK);
    CHECK(gtsp_instance_node_count(copy.ptr) == 4);
    CHECK(gtsp_instance_cluster_count(copy.ptr) == 4);
    std::remove(copy_path.c_str());
}

TEST_CASE("solving through the interface produces a validated tour") {
    InstanceHandle inst;
    REQUIRE(gtsp_instance_load(square_path().c_str(), &inst.ptr) == GTSP_OK);
    REQUIRE(gtsp_instance_set_best_known(inst.ptr, 4) == GTSP_OK);

    gtsp_params params;
    gtsp_params_init(&params);
    params.descmax = 10;
    SolutionHandle sol;
    REQUIRE(gtsp_solve(inst.ptr, &params, 5, &sol.ptr) == GTSP_OK);

    int64_t cost = 0;
    REQUIRE(gtsp_solution_cost(sol.ptr, &cost) == GTSP_OK);
    CHECK(cost == 4);
    CHECK(gtsp_solution_length(sol.ptr) == 4);

    std::vector<char> seen_cluster(4, 0);
    for (int i = 0; i < 4; ++i) {
        int cluster = -1, node = -1;
        REQUIRE(gtsp_solution_visit(sol.ptr, i, &cluster, &node) == GTSP_OK);
        REQUIRE(cluster >= 0);
        REQUIRE(cluster < 4);
        CHECK(node == cluster);  // singleton clusters carry their own id
        CHECK(!seen_cluster[static_cast<std::size_t>(cluster)]);
        seen_cluster[static_cast<std::size_t>(cluster)] = 1;
    }
    int bad_cluster = 0, bad_node = 0;
    CHECK(gtsp_solution_visit(sol.ptr, 4, &bad_cluster, &bad_node) == GTSP_ERR_INVALID);

    int generations = -1;
    int64_t descents = -1;
    double wall = -1.0;
    REQUIRE(gtsp_solution_stats(sol.ptr, &generations, &descents, &wall) == GTSP_OK);
    CHECK(generations >= 0);
    CHECK(descents >= 1);
    CHECK(wall >= 0.0);

    double dev = -1.0;
    REQUIRE(gtsp_solution_dev(sol.ptr, &dev) == GTSP_OK);
    CHECK(dev == 0.0);

    size_t needed = 0;
    REQUIRE(gtsp_solution_format(sol.ptr, nullptr, 0, &needed) == GTSP_ERR_BUFFER);
    std::vector<char> line(needed);
    REQUIRE(gtsp_solution_format(sol.ptr, line.data(), line.size(), &needed) == GTSP_OK);

    int64_t recomputed = 0;
    REQUIRE(gtsp_tour_cost(inst.ptr, line.data(), &recomputed) == GTSP_OK);
    CHECK(recomputed == 4);
}

TEST_CASE("solutions without a best known cost refuse a deviation") {
    InstanceHandle inst;
    REQUIRE(gtsp_instance_load(square_path().c_str(), &inst.ptr) == GTSP_OK);
    gtsp_params params;
    gtsp_params_init(&params);
    params.descmax = 5;
    params.max_generations = 1;
    SolutionHandle sol;
    REQUIRE(gtsp_solve(inst.ptr, &params, 6, &sol.ptr) == GTSP_OK);
    double dev = 0.0;
    CHECK(gtsp_solution_dev(sol.ptr, &dev) == GTSP_ERR_INVALID);
}

TEST_CASE("tour lines are re-validated before costing") {
    InstanceHandle inst;
    REQUIRE(gtsp_instance_load(square_path().c_str(), &inst.ptr) == GTSP_OK);
    int64_t cost = 0;
    REQUIRE(gtsp_tour_cost(inst.ptr, "4 ; 1:1 2:2 3:3 4:4", &cost) == GTSP_OK);
    CHECK(cost == 4);
    CHECK(gtsp_tour_cost(inst.ptr, "5 ; 1:1 2:2 3:3 4:4", &cost) == GTSP_ERR_INFEASIBLE);
    CHECK(gtsp_tour_cost(inst.ptr, "4 ; 1:1 2:2 3:3", &cost) == GTSP_ERR_INFEASIBLE);
    CHECK(gtsp_tour_cost(inst.ptr, "4 ; 1:1 1:1 3:3 4:4", &cost) == GTSP_ERR_INFEASIBLE);
    CHECK(gtsp_tour_cost(inst.ptr, "not a tour", &cost) == GTSP_ERR_INFEASIBLE);
    CHECK(gtsp_tour_cost(inst.ptr, nullptr, &cost) == GTSP_ERR_INVALID);
}

TEST_CASE("solver arguments are checked before running") {
    gtsp_params params;
    gtsp_params_init(&params);
    SolutionHandle sol;
    CHECK(gtsp_solve(nullptr, &params, 1, &sol.ptr) == GTSP_ERR_INVALID);

    InstanceHandle inst;
    REQUIRE(gtsp_instance_load(square_path().c_str(), &inst.ptr) == GTSP_OK);
    params.p0 = 2.0;
    CHECK(gtsp_solve(inst.ptr, &params, 1, &sol.ptr) == GTSP_ERR_INVALID);
}

TEST_CASE("best known lookups read the sidecar") {
    auto path = temp_path("best.txt");
    write_file(path, "square 4\nother 10\n");
    int64_t cost = 0;
    REQUIRE(gtsp_best_known_lookup(path.c_str(), "square", &cost) == GTSP_OK);
    CHECK(cost == 4);
    CHECK(gtsp_best_known_lookup(path.c_str(), "unknown", &cost) == GTSP_ERR_INVALID);
    CHECK(gtsp_best_known_lookup(temp_path("missing_best").c_str(), "square", &cost) ==
          GTSP_ERR_IO);
    std::remove(path.c_str());
}

TEST_CASE("benchmarks run end to end through the interface") {
    auto cfg_path = temp_path("bench_cfg.txt");
    write_file(cfg_path, "instance = " + square_path() +
                             "\nruns = 2\nseed = 4\ntime_limit = 10\ndescmax = 10\n"
                             "max_generations = 2\n");
    char* text = nullptr;
    REQUIRE(gtsp_bench_run(cfg_path.c_str(), 0, &text) == GTSP_OK);
    REQUIRE(text != nullptr);
    CHECK(std::string(text).find("square,4,4,2") != std::string::npos);
    gtsp_string_free(text);

    CHECK(gtsp_bench_run(temp_path("missing_cfg").c_str(), 0, &text) == GTSP_ERR_IO);
    std::remove(cfg_path.c_str());
}

}  // TEST_SUITE
