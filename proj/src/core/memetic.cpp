#include "core/memetic.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "core/error.hpp"

namespace gtsp {

void MemeticParams::validate() const {
    if (!(p_mut >= 0.0 && p_mut <= 1.0)) throw InvalidInput("p_mut must be in [0, 1]");
    if (max_generations < 0) throw InvalidInput("max_generations must be non-negative");
}

GtspTour decode_genome(const GtspInstance& inst, const Genome& genome) {
    int m = inst.cluster_count();
    if (static_cast<int>(genome.keys.size()) != m || static_cast<int>(genome.picks.size()) != m)
        throw InvalidInput("genome length differs from cluster count");
    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        double ka = genome.keys[static_cast<std::size_t>(a)];
        double kb = genome.keys[static_cast<std::size_t>(b)];
        return ka != kb ? ka < kb : a < b;
    });
    GtspTour tour;
    tour.clusters = order;
    tour.nodes.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        tour.nodes[static_cast<std::size_t>(i)] =
            genome.picks[static_cast<std::size_t>(tour.clusters[static_cast<std::size_t>(i)])];
    return tour;
}

void write_back(Genome& genome, const GtspTour& tour) {
    std::size_t m = static_cast<std::size_t>(tour.size());
    if (genome.keys.size() != m || genome.picks.size() != m)
        throw InvalidInput("genome length differs from tour length");
    std::vector<double> sorted = genome.keys;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        for (std::size_t i = 0; i < m; ++i)
            sorted[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) {
        auto c = static_cast<std::size_t>(tour.clusters[i]);
        genome.keys[c] = sorted[i];
        genome.picks[c] = tour.nodes[i];
    }
}

Genome make_genome(const GtspTour& tour, Rng& rng) {
    Genome g;
    g.keys.resize(static_cast<std::size_t>(tour.size()));
    g.picks.assign(static_cast<std::size_t>(tour.size()), -1);
    for (auto& k : g.keys) k = rng.uniform01();
    write_back(g, tour);
    return g;
}

const Individual& Population::best() const {
    if (individuals.empty()) throw InvalidInput("population is empty");
    return individuals.front();
}

int population_size(int clusters) {
    if (clusters < 1) throw InvalidInput("cluster count must be positive");
    return (clusters + 1) / 2;
}

namespace {

void sort_by_cost(std::vector<Individual>& xs) {
    std::stable_sort(xs.begin(), xs.end(),
                     [](const Individual& a, const Individual& b) { return a.cost < b.cost; });
}

Individual improve_into_individual(const GtspInstance& inst, const MemeticParams& params,
                                   GtspTour tour, Rng& child_rng, const StopCondition& stop,
                                   std::int64_t* descents) {
    auto res = bls_run(tour, params.bls, inst, child_rng, stop);
    if (descents) *descents += res.descents;
    Individual ind;
    ind.cost = res.best_cost;
    ind.tour = std::move(res.best);
    ind.genome = make_genome(ind.tour, child_rng);
    return ind;
}

}  // namespace

Population init_population(const GtspInstance& inst, const MemeticParams& params, Rng& rng,
                           const StopCondition& stop, std::int64_t* descents) {
    params.validate();
    int size = population_size(inst.cluster_count());
    Population pop;
    pop.individuals.reserve(static_cast<std::size_t>(size));
    for (int k = 0; k < size; ++k) {
        Rng child_rng(rng.next_u64());
        GtspTour tour = semi_random_tour(inst, child_rng);
        pop.individuals.push_back(
            improve_into_individual(inst, params, std::move(tour), child_rng, stop, descents));
    }
    sort_by_cost(pop.individuals);
    return pop;
}

const Individual& tournament_select(const Population& pop, Rng& rng) {
    if (pop.individuals.empty()) throw InvalidInput("population is empty");
    int size = static_cast<int>(pop.individuals.size());
    const Individual* winner = nullptr;
    for (int draw = 0; draw < 3; ++draw) {
        const Individual& cand = pop.individuals[static_cast<std::size_t>(rng.uniform_int(0, size - 1))];
        if (!winner || cand.cost < winner->cost) winner = &cand;
    }
    return *winner;
}

std::pair<Genome, Genome> uniform_crossover(const Genome& a, const Genome& b, Rng& rng) {
    if (a.keys.size() != b.keys.size() || a.picks.size() != b.picks.size())
        throw InvalidInput("crossover parents have different lengths");
    std::size_t m = a.keys.size();
    Genome c1, c2;
    c1.keys.resize(m);
    c1.picks.resize(m);
    c2.keys.resize(m);
    c2.picks.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Genome& first = rng.uniform01() < 0.5 ? a : b;
        const Genome& second = (&first == &a) ? b : a;
        c1.keys[i] = first.keys[i];
        c1.picks[i] = first.picks[i];
        c2.keys[i] = second.keys[i];
        c2.picks[i] = second.picks[i];
    }
    return {std::move(c1), std::move(c2)};
}

Population evolve_generation(const Population& pop, const MemeticParams& params,
                             const GtspInstance& inst, Rng& rng, const StopCondition& stop,
                             std::int64_t* descents) {
    params.validate();
    if (pop.individuals.empty()) throw InvalidInput("population is empty");
    std::size_t size = pop.individuals.size();
    std::size_t pairs = (size + 1) / 2;

    std::vector<Individual> merged = pop.individuals;  // survivors first: merge ties favor them
    merged.reserve(size * 3);
    for (std::size_t pair = 0; pair < pairs; ++pair) {
        const Individual& pa = tournament_select(pop, rng);
        const Individual& pb = tournament_select(pop, rng);
        auto [ga, gb] = uniform_crossover(pa.genome, pb.genome, rng);
        for (Genome* g : {&ga, &gb}) {
            GtspTour tour = decode_genome(inst, *g);
            if (rng.uniform01() < params.p_mut) double_bridge(tour, rng);
            auto picked = optimize_picks(inst, tour.clusters);
            tour.nodes = std::move(picked.nodes);
            Rng child_rng(rng.next_u64());
            merged.push_back(
                improve_into_individual(inst, params, std::move(tour), child_rng, stop, descents));
        }
    }

    sort_by_cost(merged);
    Population next;
    next.generation = pop.generation + 1;
    next.individuals.reserve(size);
    std::vector<const Individual*> skipped;
    for (const auto& ind : merged) {
        if (next.individuals.size() == size) break;
        bool duplicate = false;
        for (const auto& kept : next.individuals)
            if (kept.cost == ind.cost && kept.tour.clusters == ind.tour.clusters &&
                kept.tour.nodes == ind.tour.nodes) {
                duplicate = true;
                break;
            }
        if (duplicate)
            skipped.push_back(&ind);
        else
            next.individuals.push_back(ind);
    }
    for (auto it = skipped.begin(); next.individuals.size() < size && it != skipped.end(); ++it)
        next.individuals.push_back(**it);
    sort_by_cost(next.individuals);
    return next;
}

RunReport solve(const GtspInstance& inst, const MemeticParams& params, std::uint64_t seed,
                const StopCondition& external) {
    params.validate();
    auto started = std::chrono::steady_clock::now();

    StopCondition stop = external;
    if (!stop.target && inst.best_known()) stop.target = *inst.best_known();

    Rng rng(seed);
    RunReport report;
    report.instance = inst.name();
    report.seed = seed;

    Population pop = init_population(inst, params, rng, stop, &report.descents);
    int max_gen =
        params.max_generations > 0 ? params.max_generations : inst.cluster_count();
    while (pop.generation < max_gen && !stop.triggered(pop.best().cost)) {
        pop = evolve_generation(pop, params, inst, rng, stop, &report.descents);
    }

    const Individual& best = pop.best();
    report.best_cost = best.cost;
    report.best_tour = best.tour;
    report.generations = pop.generation;
    if (inst.best_known()) {
        auto bk = *inst.best_known();
        report.dev = 100.0 * (static_cast<double>(best.cost) - static_cast<double>(bk)) /
                     static_cast<double>(bk);
        report.reached_best_known = best.cost <= bk;
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

}  // namespace gtsp
