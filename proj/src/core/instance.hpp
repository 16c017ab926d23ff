#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "core/error.hpp"

namespace gtsp {

enum class WeightKind { Euc2d, Ceil2d, Geo, Att, Explicit };

const char* to_string(WeightKind kind);

// A set of nodes with a symmetric non-negative integer distance between every
// pair. Distances are precomputed into a full n x n matrix at construction so
// every lookup afterwards is one array read.
class NodeSet {
public:
    static NodeSet from_coords(std::string name, WeightKind kind,
                               std::vector<std::pair<double, double>> coords);
    // weights must be a full symmetric matrix with zero diagonal.
    static NodeSet from_matrix(std::string name, std::vector<std::vector<std::int64_t>> weights);

    const std::string& name() const { return name_; }
    int count() const { return n_; }
    WeightKind weight_kind() const { return kind_; }
    bool has_coords() const { return !coords_.empty(); }
    const std::vector<std::pair<double, double>>& coords() const { return coords_; }

    // Bounds-checked distance; 0-based indices.
    std::int64_t distance(int i, int j) const;

    // Unchecked fast path for inner loops.
    std::int32_t dist(int i, int j) const { return matrix_[static_cast<std::size_t>(i) * n_ + j]; }

private:
    NodeSet() = default;
    void build_matrix();

    std::string name_;
    int n_ = 0;
    WeightKind kind_ = WeightKind::Explicit;
    std::vector<std::pair<double, double>> coords_;
    std::vector<std::int32_t> matrix_;
};

// Immutable problem: a NodeSet plus a partition of its nodes into m clusters.
// Safe to share across threads once constructed.
class GtspInstance {
public:
    // members must partition {0..n-1}; every cluster non-empty.
    GtspInstance(std::string name, NodeSet nodes, std::vector<std::vector<int>> members);

    const std::string& name() const { return name_; }
    int node_count() const { return nodes_.count(); }
    int cluster_count() const { return static_cast<int>(members_.size()); }
    const NodeSet& nodes() const { return nodes_; }

    int cluster_of(int node) const;
    const std::vector<int>& members(int cluster) const;
    const std::vector<std::vector<int>>& all_members() const { return members_; }

    std::optional<std::int64_t> best_known() const { return best_known_; }
    void set_best_known(std::int64_t cost) { best_known_ = cost; }

    std::int64_t distance(int i, int j) const { return nodes_.distance(i, j); }
    std::int32_t dist(int i, int j) const { return nodes_.dist(i, j); }

private:
    std::string name_;
    NodeSet nodes_;
    std::vector<std::vector<int>> members_;
    std::vector<int> cluster_of_;
    std::optional<std::int64_t> best_known_;
};

// TSPLIB .tsp input. The distance semantics (rounding included) follow the
// TSPLIB technical definitions for EUC_2D, CEIL_2D, GEO, ATT and EXPLICIT
// with formats FULL_MATRIX, UPPER_ROW, LOWER_DIAG_ROW, UPPER_DIAG_ROW.
// Anything else is rejected with a FormatError naming the offending kind.
NodeSet parse_tsplib(std::istream& in);
NodeSet load_tsplib(const std::string& path);

// Clustered instance input: a TSPLIB body plus GTSP_SETS and a
// GTSP_SET_SECTION whose lines read "k v1 v2 ... -1" with 1-based node ids.
GtspInstance parse_gtsp(std::istream& in);
GtspInstance load_gtsp(const std::string& path);

void write_gtsp(const GtspInstance& inst, std::ostream& out);
void write_gtsp_file(const GtspInstance& inst, const std::string& path);

// Sidecar of best known costs: one "instance_name cost" pair per line.
std::unordered_map<std::string, std::int64_t> load_best_known(const std::string& path);

}  // namespace gtsp
