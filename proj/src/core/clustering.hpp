#pragma once

#include <vector>

#include "core/instance.hpp"

namespace gtsp {

// ceil(n / 5), the conventional cluster count for derived instances.
int default_cluster_count(int n);

// Partitions nodes into m clusters around greedily spread centers: the first
// two centers are a mutually farthest pair, each further center maximizes its
// minimum distance to the centers chosen so far, and every node then joins
// its nearest center. All ties break toward the lowest index, which makes the
// partition a pure function of the distance matrix.
std::vector<std::vector<int>> cluster_members(const NodeSet& nodes, int m);

// Same partition wrapped into an instance named "<m><nodes.name()>".
GtspInstance cluster_instance(NodeSet nodes, int m);

}  // namespace gtsp
