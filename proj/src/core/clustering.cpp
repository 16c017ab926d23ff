#include "core/clustering.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "core/error.hpp"

namespace gtsp {

int default_cluster_count(int n) { return (n + 4) / 5; }

std::vector<std::vector<int>> cluster_members(const NodeSet& nodes, int m) {
    int n = nodes.count();
    if (m < 2) throw InvalidInput("cluster count must be at least 2");
    if (m > n) throw InvalidInput("cluster count exceeds node count");

    std::vector<int> centers;
    centers.reserve(static_cast<std::size_t>(m));

    std::int64_t best = -1;
    int best_i = 0, best_j = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (nodes.dist(i, j) > best) {
                best = nodes.dist(i, j);
                best_i = i;
                best_j = j;
            }
    centers.push_back(best_i);
    centers.push_back(best_j);

    // min_dist[v] tracks the distance from v to its nearest chosen center.
    std::vector<std::int64_t> min_dist(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        min_dist[v] = std::min<std::int64_t>(nodes.dist(v, best_i), nodes.dist(v, best_j));

    std::vector<char> chosen(static_cast<std::size_t>(n), 0);
    chosen[static_cast<std::size_t>(best_i)] = 1;
    chosen[static_cast<std::size_t>(best_j)] = 1;
    while (static_cast<int>(centers.size()) < m) {
        int pick = -1;
        std::int64_t pick_dist = -1;
        for (int v = 0; v < n; ++v)
            if (!chosen[static_cast<std::size_t>(v)] && min_dist[v] > pick_dist) {
                pick_dist = min_dist[v];
                pick = v;
            }
        centers.push_back(pick);
        chosen[static_cast<std::size_t>(pick)] = 1;
        for (int v = 0; v < n; ++v)
            min_dist[v] = std::min<std::int64_t>(min_dist[v], nodes.dist(v, pick));
    }

    // Each center anchors its own cluster; with coincident points a nearest
    // scan could otherwise leave a later cluster empty.
    std::vector<int> home_of(static_cast<std::size_t>(n), -1);
    for (int c = 0; c < m; ++c) home_of[static_cast<std::size_t>(centers[static_cast<std::size_t>(c)])] = c;
    std::vector<std::vector<int>> members(static_cast<std::size_t>(m));
    for (int v = 0; v < n; ++v) {
        int home = home_of[static_cast<std::size_t>(v)];
        if (home == -1) {
            std::int64_t home_dist = std::numeric_limits<std::int64_t>::max();
            for (int c = 0; c < m; ++c) {
                std::int64_t d = nodes.dist(v, centers[static_cast<std::size_t>(c)]);
                if (d < home_dist) {
                    home_dist = d;
                    home = c;
                }
            }
        }
        members[static_cast<std::size_t>(home)].push_back(v);
    }
    return members;
}

GtspInstance cluster_instance(NodeSet nodes, int m) {
    auto members = cluster_members(nodes, m);
    std::string name = std::to_string(m) + nodes.name();
    return GtspInstance(std::move(name), std::move(nodes), std::move(members));
}

}  // namespace gtsp
