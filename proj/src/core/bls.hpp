#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "core/instance.hpp"
#include "core/rng.hpp"
#include "core/tour.hpp"

namespace gtsp {

// Last iteration at which a move touched a cluster pair. Symmetric, diagonal
// unused, all stamps start at 0.
class HistoryMatrix {
public:
    explicit HistoryMatrix(int m);

    int size() const { return m_; }
    std::int64_t at(int u, int v) const;
    void stamp(int u, int v, std::int64_t iter);

private:
    std::size_t index(int u, int v) const;

    int m_;
    std::vector<std::int64_t> stamps_;
};

// Search parameters. Fields set to 0 are derived from the instance by
// resolved(): lmax becomes max(6, ceil(0.4 m)), gamma and sample_size become
// m. Defaults are tuned on the small benchmark set, not taken from anywhere.
struct BlsParams {
    int l0 = 3;             // jumps right after an escape
    int lmax = 0;           // jumps for a strong perturbation
    int t = 10;             // non-improvement tolerance before a strong perturbation
    int gamma = 0;          // tabu tenure
    double p0 = 0.75;       // floor of the directed-kind probability
    double q = 0.7;         // recency share of the non-directed probability
    int descmax = 200;      // descents per run
    int sample_size = 0;    // candidate pairs drawn per jump
    bool exhaustive_candidates = false;  // enumerate all pairs instead of sampling

    BlsParams resolved(int m) const;
    void validate() const;  // ranges; call on resolved values
};

struct BlsState {
    std::int64_t omega = 0;  // consecutive local optima without a new best
    int l = 0;               // current jump count
    std::int64_t iter = 0;   // global iteration counter
    int desc = 0;            // completed descents
    std::int64_t c_p = 0;    // cost of the previous local optimum
    GtspTour best;
    std::int64_t best_cost = 0;
};

// Polled between descents; any satisfied clause ends the run.
struct StopCondition {
    const std::atomic<bool>* signal = nullptr;
    bool has_deadline = false;
    std::chrono::steady_clock::time_point deadline{};
    std::optional<std::int64_t> target;

    bool triggered(std::int64_t best_cost) const;
};

enum class PerturbKind { Directed, Recency, Random };

// exp(-omega/T) floored at p0.
double probability_p(std::int64_t omega, int t, double p0);

// Directed with probability P, Recency with (1-P)*Q, Random with the rest.
PerturbKind choose_perturbation_kind(std::int64_t omega, const BlsParams& params, Rng& rng);

// Unordered cluster pair, u < v.
struct SwapMove {
    int u;
    int v;
    bool operator==(const SwapMove& o) const { return u == o.u && v == o.v; }
};

// Draws sample_size random pairs (every pair once when exhaustive_candidates)
// and filters them by kind: Directed keeps the minimal-delta pairs among
// those that are off tabu ((H_uv + gamma) < Iter) or aspirating
// (delta + cost < best); Recency keeps the pairs of minimal H_uv; Random
// keeps the whole sample. Directed falls back to the minimal-delta sample
// when the filter empties it, so the result is never empty.
std::vector<SwapMove> sample_candidates(PerturbKind kind, const GtspTour& tour,
                                        const HistoryMatrix& history, const BlsState& state,
                                        const BlsParams& params, const GtspInstance& inst,
                                        Rng& rng);

// Best-improvement 2-opt until no move lowers the cost. Ties go to the
// lexicographically first edge pair. Each applied move stamps the cluster
// pair at the reversed segment's endpoints and advances state.iter.
GtspTour descend(const GtspTour& tour, HistoryMatrix& history, BlsState& state,
                 const GtspInstance& inst);

// jumps swap moves, each drawn uniformly from a freshly sampled candidate
// set; kind is re-chosen per jump unless force_random. Updates history,
// state.iter, and the tracked best (resetting omega on improvement).
struct PerturbResult {
    GtspTour tour;
    std::int64_t cost;
};
PerturbResult perturb(const GtspTour& tour, int jumps, HistoryMatrix& history, BlsState& state,
                      const BlsParams& params, const GtspInstance& inst, Rng& rng,
                      bool force_random = false);

// One record per outer iteration, fields captured at fixed points so the
// counter rules can be replayed externally.
struct BlsTraceEntry {
    std::int64_t c;               // local optimum cost after pick re-optimization
    std::int64_t cp_in, cp_out;
    std::int64_t omega_in, omega_mid, omega_out;
    int l_in, l_out;
    bool strong;
    std::int64_t best_in, best_out;  // around the best comparison, before any jump
    std::int64_t c_after_strong;     // equals c when no strong perturbation ran
};
using BlsTrace = std::vector<BlsTraceEntry>;

struct BlsResult {
    GtspTour best;
    std::int64_t best_cost = 0;
    int descents = 0;
    std::int64_t iterations = 0;
};

// Full search: repeat (descend, re-optimize picks, update counters, perturb)
// until the descent budget, the stop condition, or the target cost ends it.
// Tours with fewer than 3 clusters are solved by the first descent and
// returned without perturbation.
BlsResult bls_run(const GtspTour& start, const BlsParams& params, const GtspInstance& inst,
                  Rng& rng, const StopCondition& stop, BlsTrace* trace = nullptr);

}  // namespace gtsp
