#include "core/tour.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <sstream>

#include "core/error.hpp"

namespace gtsp {

namespace {

void check_position(const GtspTour& tour, int pos, const char* what) {
    if (pos < 0 || pos >= tour.size())
        throw InvalidInput(std::string(what) + " position out of range");
}

std::int64_t parse_int_token(const std::string& tok, const char* what) {
    std::int64_t value = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        throw InvalidInput("expected integer " + std::string(what) + ", got '" + tok + "'");
    return value;
}

}  // namespace

std::int64_t tour_cost(const GtspInstance& inst, const GtspTour& tour) {
    int m = tour.size();
    if (m == 0) throw InvalidInput("empty tour");
    std::int64_t total = 0;
    for (int i = 0; i < m; ++i)
        total += inst.dist(tour.nodes[static_cast<std::size_t>(i)],
                           tour.nodes[static_cast<std::size_t>((i + 1) % m)]);
    return total;
}

void validate_tour(const GtspInstance& inst, const GtspTour& tour) {
    int m = inst.cluster_count();
    if (tour.size() != m)
        throw InvalidInput("tour visits " + std::to_string(tour.size()) + " clusters, expected " +
                           std::to_string(m));
    if (static_cast<int>(tour.nodes.size()) != m)
        throw InvalidInput("tour has " + std::to_string(tour.nodes.size()) + " nodes, expected " +
                           std::to_string(m));
    std::vector<char> seen(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < m; ++i) {
        int c = tour.clusters[static_cast<std::size_t>(i)];
        if (c < 0 || c >= m)
            throw InvalidInput("cluster id " + std::to_string(c) + " out of range");
        if (seen[static_cast<std::size_t>(c)])
            throw InvalidInput("cluster " + std::to_string(c) + " visited twice");
        seen[static_cast<std::size_t>(c)] = 1;
        int v = tour.nodes[static_cast<std::size_t>(i)];
        if (v < 0 || v >= inst.node_count())
            throw InvalidInput("node id " + std::to_string(v) + " out of range");
        if (inst.cluster_of(v) != c)
            throw InvalidInput("node " + std::to_string(v) + " does not belong to cluster " +
                               std::to_string(c));
    }
}

std::int64_t delta_two_opt(const GtspInstance& inst, const GtspTour& tour, int i, int j) {
    int m = tour.size();
    if (i < 0 || j <= i || j >= m || (i == 0 && j == m - 1))
        throw InvalidInput("invalid 2-opt edge pair");
    int na = tour.nodes[static_cast<std::size_t>(i)];
    int nb = tour.nodes[static_cast<std::size_t>(i + 1)];
    int nc = tour.nodes[static_cast<std::size_t>(j)];
    int nd = tour.nodes[static_cast<std::size_t>((j + 1) % m)];
    return static_cast<std::int64_t>(inst.dist(na, nc)) + inst.dist(nb, nd) - inst.dist(na, nb) -
           inst.dist(nc, nd);
}

void apply_two_opt(GtspTour& tour, int i, int j) {
    int m = tour.size();
    if (i < 0 || j <= i || j >= m || (i == 0 && j == m - 1))
        throw InvalidInput("invalid 2-opt edge pair");
    std::reverse(tour.clusters.begin() + i + 1, tour.clusters.begin() + j + 1);
    std::reverse(tour.nodes.begin() + i + 1, tour.nodes.begin() + j + 1);
}

std::int64_t delta_swap(const GtspInstance& inst, const GtspTour& tour, int p, int q) {
    check_position(tour, p, "swap");
    check_position(tour, q, "swap");
    if (p == q) throw InvalidInput("swap positions coincide");
    if (p > q) std::swap(p, q);
    int m = tour.size();
    if (m <= 3) {
        // Every pair is adjacent on both sides; recompute directly.
        GtspTour moved = tour;
        apply_swap(moved, p, q);
        return tour_cost(inst, moved) - tour_cost(inst, tour);
    }
    int np = tour.nodes[static_cast<std::size_t>(p)];
    int nq = tour.nodes[static_cast<std::size_t>(q)];
    if (q == p + 1) {
        int a = tour.nodes[static_cast<std::size_t>((p - 1 + m) % m)];
        int b = tour.nodes[static_cast<std::size_t>((q + 1) % m)];
        return static_cast<std::int64_t>(inst.dist(a, nq)) + inst.dist(np, b) - inst.dist(a, np) -
               inst.dist(nq, b);
    }
    if (p == 0 && q == m - 1) {
        int a = tour.nodes[static_cast<std::size_t>(q - 1)];
        int b = tour.nodes[static_cast<std::size_t>(p + 1)];
        return static_cast<std::int64_t>(inst.dist(a, np)) + inst.dist(nq, b) - inst.dist(a, nq) -
               inst.dist(np, b);
    }
    int ap = tour.nodes[static_cast<std::size_t>((p - 1 + m) % m)];
    int bp = tour.nodes[static_cast<std::size_t>(p + 1)];
    int aq = tour.nodes[static_cast<std::size_t>(q - 1)];
    int bq = tour.nodes[static_cast<std::size_t>((q + 1) % m)];
    return static_cast<std::int64_t>(inst.dist(ap, nq)) + inst.dist(nq, bp) + inst.dist(aq, np) +
           inst.dist(np, bq) - inst.dist(ap, np) - inst.dist(np, bp) - inst.dist(aq, nq) -
           inst.dist(nq, bq);
}

void apply_swap(GtspTour& tour, int p, int q) {
    check_position(tour, p, "swap");
    check_position(tour, q, "swap");
    if (p == q) throw InvalidInput("swap positions coincide");
    std::swap(tour.clusters[static_cast<std::size_t>(p)], tour.clusters[static_cast<std::size_t>(q)]);
    std::swap(tour.nodes[static_cast<std::size_t>(p)], tour.nodes[static_cast<std::size_t>(q)]);
}

PickResult optimize_picks(const GtspInstance& inst, const std::vector<int>& order) {
    int m = static_cast<int>(order.size());
    if (m != inst.cluster_count()) throw InvalidInput("order length differs from cluster count");
    if (m == 1) return {{inst.members(order[0]).front()}, 0};

    // Rotate so the smallest cluster is the start layer; each of its nodes
    // seeds one shortest-path pass.
    int rot = 0;
    std::size_t rot_size = std::numeric_limits<std::size_t>::max();
    for (int i = 0; i < m; ++i) {
        std::size_t sz = inst.members(order[static_cast<std::size_t>(i)]).size();
        if (sz < rot_size) {
            rot_size = sz;
            rot = i;
        }
    }
    auto layer = [&](int l) -> const std::vector<int>& {
        return inst.members(order[static_cast<std::size_t>((rot + l) % m)]);
    };

    std::int64_t best_cost = std::numeric_limits<std::int64_t>::max();
    std::vector<int> best_rot_picks;
    std::vector<std::vector<int>> parent(static_cast<std::size_t>(m));
    std::vector<std::int64_t> cur, nxt;
    for (int s : layer(0)) {
        const auto& l1 = layer(1);
        cur.assign(l1.size(), 0);
        for (std::size_t vi = 0; vi < l1.size(); ++vi) cur[vi] = inst.dist(s, l1[vi]);
        for (int l = 2; l < m; ++l) {
            const auto& prev_nodes = layer(l - 1);
            const auto& cur_nodes = layer(l);
            nxt.assign(cur_nodes.size(), std::numeric_limits<std::int64_t>::max());
            auto& par = parent[static_cast<std::size_t>(l)];
            par.assign(cur_nodes.size(), 0);
            for (std::size_t vi = 0; vi < cur_nodes.size(); ++vi) {
                int v = cur_nodes[vi];
                for (std::size_t ui = 0; ui < prev_nodes.size(); ++ui) {
                    std::int64_t c = cur[ui] + inst.dist(prev_nodes[ui], v);
                    if (c < nxt[vi]) {
                        nxt[vi] = c;
                        par[vi] = static_cast<int>(ui);
                    }
                }
            }
            cur.swap(nxt);
        }
        const auto& last = layer(m - 1);
        std::int64_t close_cost = std::numeric_limits<std::int64_t>::max();
        std::size_t close_vi = 0;
        for (std::size_t vi = 0; vi < last.size(); ++vi) {
            std::int64_t c = cur[vi] + inst.dist(last[vi], s);
            if (c < close_cost) {
                close_cost = c;
                close_vi = vi;
            }
        }
        if (close_cost < best_cost) {
            best_cost = close_cost;
            best_rot_picks.assign(static_cast<std::size_t>(m), -1);
            best_rot_picks[0] = s;
            std::size_t vi = close_vi;
            for (int l = m - 1; l >= 2; --l) {
                best_rot_picks[static_cast<std::size_t>(l)] = layer(l)[vi];
                vi = static_cast<std::size_t>(parent[static_cast<std::size_t>(l)][vi]);
            }
            best_rot_picks[1] = layer(1)[vi];
        }
    }

    std::vector<int> picks(static_cast<std::size_t>(m));
    for (int l = 0; l < m; ++l)
        picks[static_cast<std::size_t>((rot + l) % m)] = best_rot_picks[static_cast<std::size_t>(l)];
    return {std::move(picks), best_cost};
}

GtspTour semi_random_tour(const GtspInstance& inst, Rng& rng) {
    std::vector<int> order(static_cast<std::size_t>(inst.cluster_count()));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    auto picked = optimize_picks(inst, order);
    return {std::move(order), std::move(picked.nodes)};
}

void double_bridge(GtspTour& tour, Rng& rng) {
    int m = tour.size();
    if (m < 4) return;
    int p1 = rng.uniform_int(1, m - 3);
    int p2 = rng.uniform_int(p1 + 1, m - 2);
    int p3 = rng.uniform_int(p2 + 1, m - 1);
    auto rejoin = [&](std::vector<int>& xs) {
        std::vector<int> out;
        out.reserve(xs.size());
        out.insert(out.end(), xs.begin(), xs.begin() + p1);
        out.insert(out.end(), xs.begin() + p2, xs.begin() + p3);
        out.insert(out.end(), xs.begin() + p1, xs.begin() + p2);
        out.insert(out.end(), xs.begin() + p3, xs.end());
        xs = std::move(out);
    };
    rejoin(tour.clusters);
    rejoin(tour.nodes);
}

std::string format_tour_line(const GtspTour& tour, std::int64_t cost) {
    std::ostringstream out;
    out << cost << " ;";
    for (int i = 0; i < tour.size(); ++i)
        out << " " << (tour.clusters[static_cast<std::size_t>(i)] + 1) << ":"
            << (tour.nodes[static_cast<std::size_t>(i)] + 1);
    return out.str();
}

ParsedTour parse_tour_line(const std::string& line) {
    auto semi = line.find(';');
    if (semi == std::string::npos) throw InvalidInput("tour line has no ';' separator");
    std::istringstream head(line.substr(0, semi));
    std::string cost_tok;
    if (!(head >> cost_tok)) throw InvalidInput("tour line has no cost");
    std::string extra;
    if (head >> extra) throw InvalidInput("unexpected token '" + extra + "' before ';'");
    ParsedTour out;
    out.cost = parse_int_token(cost_tok, "tour cost");

    std::istringstream body(line.substr(semi + 1));
    std::string tok;
    while (body >> tok) {
        auto colon = tok.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
            throw InvalidInput("expected 'cluster:node', got '" + tok + "'");
        auto c = parse_int_token(tok.substr(0, colon), "cluster id");
        auto v = parse_int_token(tok.substr(colon + 1), "node id");
        if (c < 1 || v < 1) throw InvalidInput("ids in a tour line are 1-based");
        out.tour.clusters.push_back(static_cast<int>(c) - 1);
        out.tour.nodes.push_back(static_cast<int>(v) - 1);
    }
    if (out.tour.clusters.empty()) throw InvalidInput("tour line has no visits");
    return out;
}

}  // namespace gtsp
