#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/instance.hpp"
#include "core/rng.hpp"

namespace gtsp {

// A closed tour over clusters: position i is visited by node nodes[i], which
// belongs to cluster clusters[i]. Both vectors have length m and clusters is
// a permutation of 0..m-1. The tour is cyclic; position 0 is not special.
struct GtspTour {
    std::vector<int> clusters;
    std::vector<int> nodes;

    int size() const { return static_cast<int>(clusters.size()); }
};

std::int64_t tour_cost(const GtspInstance& inst, const GtspTour& tour);

// Throws InvalidInput with the first violated condition: lengths, cluster
// permutation, node membership.
void validate_tour(const GtspInstance& inst, const GtspTour& tour);

// --- 2-opt: drop edges (i, i+1) and (j, j+1 mod m), reverse positions
// i+1..j. Valid for 0 <= i < j < m with (i, j) != (0, m-1). Symmetric
// distances make the reversed segment's internal edges free.
std::int64_t delta_two_opt(const GtspInstance& inst, const GtspTour& tour, int i, int j);
void apply_two_opt(GtspTour& tour, int i, int j);

// --- Swap: exchange the occupants of two positions. Any p != q.
std::int64_t delta_swap(const GtspInstance& inst, const GtspTour& tour, int p, int q);
void apply_swap(GtspTour& tour, int p, int q);

// Best node per cluster for a fixed cyclic cluster order, by layered shortest
// path restarted from every node of the smallest cluster. nodes aligns with
// order; cost is the closed tour cost.
struct PickResult {
    std::vector<int> nodes;
    std::int64_t cost;
};
PickResult optimize_picks(const GtspInstance& inst, const std::vector<int>& order);

// Random cluster order, nodes filled in by optimize_picks.
GtspTour semi_random_tour(const GtspInstance& inst, Rng& rng);

// Cut the position sequence into four parts A B C D and rejoin as A C B D.
// Needs m >= 4; smaller tours are left untouched.
void double_bridge(GtspTour& tour, Rng& rng);

// "cost ; c1:p1 c2:p2 ..." with 1-based cluster and node ids.
std::string format_tour_line(const GtspTour& tour, std::int64_t cost);

struct ParsedTour {
    std::int64_t cost;
    GtspTour tour;
};
ParsedTour parse_tour_line(const std::string& line);

}  // namespace gtsp
