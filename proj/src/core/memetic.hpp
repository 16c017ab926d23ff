#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/bls.hpp"
#include "core/instance.hpp"
#include "core/rng.hpp"
#include "core/tour.hpp"

namespace gtsp {

struct MemeticParams {
    BlsParams bls;
    double p_mut = 0.3;       // per-child double-bridge probability
    int max_generations = 0;  // 0 = cluster count

    void validate() const;
};

// Random-key encoding: sorting clusters by key (ties by cluster id) gives the
// visit order, picks[c] is the node chosen for cluster c. Gene-wise crossover
// therefore always decodes to a feasible tour.
struct Genome {
    std::vector<double> keys;
    std::vector<int> picks;
};

GtspTour decode_genome(const GtspInstance& inst, const Genome& genome);

// Reassigns the genome's own sorted keys along the tour's cluster order and
// copies the picks, so decode_genome reproduces the tour exactly. Duplicate
// keys are re-spaced evenly first; decoding must stay unambiguous.
void write_back(Genome& genome, const GtspTour& tour);

// Fresh genome with uniformly drawn keys arranged to encode the tour.
Genome make_genome(const GtspTour& tour, Rng& rng);

struct Individual {
    Genome genome;
    GtspTour tour;
    std::int64_t cost = 0;
};

// Kept sorted by cost ascending, ties in age order (survivors before
// newcomers), so individuals.front() is the incumbent.
struct Population {
    std::vector<Individual> individuals;
    int generation = 0;

    const Individual& best() const;
};

int population_size(int clusters);  // ceil(m / 2)

// ceil(m/2) semi-random constructions, each improved by a BLS run seeded from
// rng. descents, when given, accumulates the BLS descents executed.
Population init_population(const GtspInstance& inst, const MemeticParams& params, Rng& rng,
                           const StopCondition& stop = {}, std::int64_t* descents = nullptr);

// Best of 3 uniform draws with replacement.
const Individual& tournament_select(const Population& pop, Rng& rng);

// Gene-wise: each cluster's (key, pick) goes to the first child from one
// uniformly chosen parent, to the second child from the other.
std::pair<Genome, Genome> uniform_crossover(const Genome& a, const Genome& b, Rng& rng);

// ceil(size/2) tournament pairs -> crossover -> p_mut double bridge -> pick
// re-optimization -> BLS, then an elitist merge of parents and children keeps
// the best `size` (ties favor survivors; exact duplicates collapse to one).
Population evolve_generation(const Population& pop, const MemeticParams& params,
                             const GtspInstance& inst, Rng& rng, const StopCondition& stop = {},
                             std::int64_t* descents = nullptr);

struct RunReport {
    std::string instance;
    std::uint64_t seed = 0;
    std::int64_t best_cost = 0;
    GtspTour best_tour;
    std::optional<double> dev;  // percent above best known, when known
    double wall_seconds = 0.0;
    int generations = 0;
    std::int64_t descents = 0;
    bool reached_best_known = false;
};

// Full run: population, then up to max_generations evolution steps, stopping
// early on the instance's best known cost or the external stop condition.
RunReport solve(const GtspInstance& inst, const MemeticParams& params, std::uint64_t seed,
                const StopCondition& external = {});

}  // namespace gtsp
