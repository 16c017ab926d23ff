#include "core/bls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"

namespace gtsp {

HistoryMatrix::HistoryMatrix(int m) : m_(m) {
    if (m < 1) throw InvalidInput("history matrix needs at least one cluster");
    stamps_.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0);
}

std::size_t HistoryMatrix::index(int u, int v) const {
    if (u < 0 || u >= m_ || v < 0 || v >= m_)
        throw InvalidInput("history index out of range");
    if (u == v) throw InvalidInput("history diagonal is unused");
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(m_) +
           static_cast<std::size_t>(v);
}

std::int64_t HistoryMatrix::at(int u, int v) const { return stamps_[index(u, v)]; }

void HistoryMatrix::stamp(int u, int v, std::int64_t iter) {
    auto uv = index(u, v);
    auto vu = index(v, u);
    stamps_[uv] = iter;
    stamps_[vu] = iter;
}

BlsParams BlsParams::resolved(int m) const {
    if (m < 1) throw InvalidInput("cluster count must be positive");
    BlsParams out = *this;
    if (out.lmax == 0) out.lmax = std::max(6, (2 * m + 4) / 5);
    if (out.gamma == 0) out.gamma = m;
    if (out.sample_size == 0) out.sample_size = m;
    out.validate();
    return out;
}

void BlsParams::validate() const {
    if (l0 < 1) throw InvalidInput("l0 must be positive");
    if (lmax < l0) throw InvalidInput("lmax must be at least l0");
    if (t < 1) throw InvalidInput("t must be positive");
    if (gamma < 1) throw InvalidInput("gamma must be positive");
    if (!(p0 > 0.0 && p0 <= 1.0)) throw InvalidInput("p0 must be in (0, 1]");
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidInput("q must be in [0, 1]");
    if (descmax < 1) throw InvalidInput("descmax must be positive");
    if (sample_size < 1) throw InvalidInput("sample_size must be positive");
}

bool StopCondition::triggered(std::int64_t best_cost) const {
    if (signal && signal->load(std::memory_order_relaxed)) return true;
    if (target && best_cost <= *target) return true;
    if (has_deadline && std::chrono::steady_clock::now() >= deadline) return true;
    return false;
}

double probability_p(std::int64_t omega, int t, double p0) {
    if (omega < 0 || t < 1) throw InvalidInput("probability_p needs omega >= 0 and t >= 1");
    double p = std::exp(-static_cast<double>(omega) / static_cast<double>(t));
    return p > p0 ? p : p0;
}

PerturbKind choose_perturbation_kind(std::int64_t omega, const BlsParams& params, Rng& rng) {
    double p = probability_p(omega, params.t, params.p0);
    double r = rng.uniform01();
    if (r < p) return PerturbKind::Directed;
    if (r < p + (1.0 - p) * params.q) return PerturbKind::Recency;
    return PerturbKind::Random;
}

namespace {

std::vector<SwapMove> draw_pairs(int m, const BlsParams& params, Rng& rng) {
    std::vector<SwapMove> sampled;
    if (params.exhaustive_candidates) {
        sampled.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(m - 1) / 2);
        for (int u = 0; u < m; ++u)
            for (int v = u + 1; v < m; ++v) sampled.push_back({u, v});
        return sampled;
    }
    sampled.reserve(static_cast<std::size_t>(params.sample_size));
    for (int k = 0; k < params.sample_size; ++k) {
        int u = rng.uniform_int(0, m - 1);
        int v = rng.uniform_int(0, m - 2);
        if (v >= u) ++v;
        if (u > v) std::swap(u, v);
        sampled.push_back({u, v});
    }
    return sampled;
}

std::vector<int> positions_of(const GtspTour& tour) {
    std::vector<int> pos(static_cast<std::size_t>(tour.size()));
    for (int i = 0; i < tour.size(); ++i) pos[static_cast<std::size_t>(tour.clusters[static_cast<std::size_t>(i)])] = i;
    return pos;
}

}  // namespace

std::vector<SwapMove> sample_candidates(PerturbKind kind, const GtspTour& tour,
                                        const HistoryMatrix& history, const BlsState& state,
                                        const BlsParams& params, const GtspInstance& inst,
                                        Rng& rng) {
    int m = tour.size();
    if (m < 3) throw InvalidInput("candidate sampling needs at least 3 clusters");
    auto sampled = draw_pairs(m, params, rng);
    if (kind == PerturbKind::Random) return sampled;

    if (kind == PerturbKind::Recency) {
        std::int64_t oldest = std::numeric_limits<std::int64_t>::max();
        for (const auto& mv : sampled) oldest = std::min(oldest, history.at(mv.u, mv.v));
        std::vector<SwapMove> kept;
        for (const auto& mv : sampled)
            if (history.at(mv.u, mv.v) == oldest) kept.push_back(mv);
        return kept;
    }

    auto pos = positions_of(tour);
    std::int64_t cost = tour_cost(inst, tour);
    std::vector<std::int64_t> delta(sampled.size());
    std::vector<char> qualifies(sampled.size(), 0);
    bool any = false;
    for (std::size_t k = 0; k < sampled.size(); ++k) {
        const auto& mv = sampled[k];
        delta[k] = delta_swap(inst, tour, pos[static_cast<std::size_t>(mv.u)],
                              pos[static_cast<std::size_t>(mv.v)]);
        bool off_tabu = history.at(mv.u, mv.v) + params.gamma < state.iter;
        bool aspires = delta[k] + cost < state.best_cost;
        if (off_tabu || aspires) {
            qualifies[k] = 1;
            any = true;
        }
    }
    if (!any) qualifies.assign(sampled.size(), 1);  // everything tabu: move anyway
    std::int64_t best_delta = std::numeric_limits<std::int64_t>::max();
    for (std::size_t k = 0; k < sampled.size(); ++k)
        if (qualifies[k]) best_delta = std::min(best_delta, delta[k]);
    std::vector<SwapMove> kept;
    for (std::size_t k = 0; k < sampled.size(); ++k)
        if (qualifies[k] && delta[k] == best_delta) kept.push_back(sampled[k]);
    return kept;
}

GtspTour descend(const GtspTour& tour, HistoryMatrix& history, BlsState& state,
                 const GtspInstance& inst) {
    GtspTour t = tour;
    int m = t.size();
    for (;;) {
        std::int64_t best_delta = 0;
        int best_i = -1, best_j = -1;
        for (int i = 0; i + 1 < m; ++i) {
            for (int j = i + 1; j < m; ++j) {
                if (i == 0 && j == m - 1) continue;
                std::int64_t d = delta_two_opt(inst, t, i, j);
                if (d < best_delta) {
                    best_delta = d;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        if (best_i < 0) break;
        apply_two_opt(t, best_i, best_j);
        history.stamp(t.clusters[static_cast<std::size_t>(best_i + 1)],
                      t.clusters[static_cast<std::size_t>(best_j)], state.iter);
        state.iter += 1;
    }
    return t;
}

PerturbResult perturb(const GtspTour& tour, int jumps, HistoryMatrix& history, BlsState& state,
                      const BlsParams& params, const GtspInstance& inst, Rng& rng,
                      bool force_random) {
    if (jumps < 1) throw InvalidInput("perturbation needs at least one jump");
    GtspTour t = tour;
    int m = t.size();
    std::int64_t cost = tour_cost(inst, t);
    auto pos = positions_of(t);
    for (int jump = 0; jump < jumps; ++jump) {
        PerturbKind kind = force_random ? PerturbKind::Random
                                        : choose_perturbation_kind(state.omega, params, rng);
        auto moves = sample_candidates(kind, t, history, state, params, inst, rng);
        const auto& mv = moves[rng.next_below(moves.size())];
        int p = pos[static_cast<std::size_t>(mv.u)];
        int q = pos[static_cast<std::size_t>(mv.v)];
        cost += delta_swap(inst, t, p, q);
        apply_swap(t, p, q);
        pos[static_cast<std::size_t>(t.clusters[static_cast<std::size_t>(p)])] = p;
        pos[static_cast<std::size_t>(t.clusters[static_cast<std::size_t>(q)])] = q;
        history.stamp(mv.u, mv.v, state.iter);
        state.iter += 1;
        if (cost < state.best_cost) {
            state.best = t;
            state.best_cost = cost;
            state.omega = 0;
        }
    }
    return {std::move(t), cost};
}

BlsResult bls_run(const GtspTour& start, const BlsParams& params, const GtspInstance& inst,
                  Rng& rng, const StopCondition& stop, BlsTrace* trace) {
    validate_tour(inst, start);
    int m = inst.cluster_count();
    BlsParams p = params.resolved(m);

    GtspTour t = start;
    std::int64_t c = tour_cost(inst, t);
    HistoryMatrix history(m);
    BlsState state;
    state.best = t;
    state.best_cost = c;
    state.c_p = c;
    state.l = p.l0;

    while (state.desc < p.descmax && !stop.triggered(state.best_cost)) {
        BlsTraceEntry entry{};
        entry.cp_in = state.c_p;
        entry.omega_in = state.omega;
        entry.l_in = state.l;
        entry.best_in = state.best_cost;

        t = descend(t, history, state, inst);
        state.desc += 1;
        auto picked = optimize_picks(inst, t.clusters);
        t.nodes = std::move(picked.nodes);
        c = picked.cost;
        entry.c = c;

        if (c < state.best_cost) {
            state.best = t;
            state.best_cost = c;
            state.omega = 0;
        } else {
            state.omega += 1;
        }
        entry.omega_mid = state.omega;
        entry.best_out = state.best_cost;

        if (m < 3) {
            // No swap move exists; the first locally optimal tour is final.
            if (trace) {
                entry.strong = false;
                entry.omega_out = state.omega;
                entry.l_out = state.l;
                entry.c_after_strong = c;
                entry.cp_out = c;
                trace->push_back(entry);
            }
            break;
        }

        bool strong = state.omega > p.t;
        entry.strong = strong;
        if (strong) {
            auto shaken = perturb(t, p.lmax, history, state, p, inst, rng, true);
            t = std::move(shaken.tour);
            c = shaken.cost;
            state.omega = 0;
        } else if (c == state.c_p) {
            state.l = std::min(state.l + 1, p.lmax);
        } else {
            state.l = p.l0;
        }
        entry.omega_out = state.omega;
        entry.l_out = state.l;
        entry.c_after_strong = c;

        state.c_p = c;
        entry.cp_out = state.c_p;
        if (trace) trace->push_back(entry);

        if (!strong) {
            auto shaken = perturb(t, state.l, history, state, p, inst, rng);
            t = std::move(shaken.tour);
            c = shaken.cost;
        }
    }

    return {std::move(state.best), state.best_cost, state.desc, state.iter};
}

}  // namespace gtsp
