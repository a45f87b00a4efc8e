#include "dpde/engine.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "dpde/selection.hpp"
#include "dpde/threading.hpp"
#include "dpde/variation.hpp"

namespace dpde {

namespace {

// Randomness domains. Every draw in a run is addressed by
// (seed, domain, generation, row), so both engines can consume the exact
// same substreams regardless of execution order or thread count.
constexpr std::uint64_t kInitDomain = 0xA1;
constexpr std::uint64_t kShuffleDomain = 0xA2;
constexpr std::uint64_t kSelectDomain = 0xA3;
constexpr std::uint64_t kCrossDomain = 0xA4;
constexpr std::uint64_t kMutateDomain = 0xA5;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_run_inputs(const DeConfig& config, const Objective& objective) {
    config.validate();
    if (objective.dim() != config.d) {
        throw std::invalid_argument("run: objective dimension does not match config.d");
    }
}

/// Joint permutation of genome rows and fitness entries.
void shuffle_population(Population& pop, RngStream rng) {
    const std::size_t np = pop.size();
    for (std::size_t i = np - 1; i > 0; --i) {
        const std::size_t j = rng.next_index(i + 1);
        if (j != i) {
            auto ri = pop.genomes.row(i);
            auto rj = pop.genomes.row(j);
            std::swap_ranges(ri.begin(), ri.end(), rj.begin());
            std::swap(pop.fitness[i], pop.fitness[j]);
        }
    }
}

RunRecord make_record(const Population& pop, const RunRecord* previous, Clock::time_point start) {
    RunRecord rec;
    rec.generation = pop.generation;
    const std::size_t np = pop.size();
    const auto best_it = std::min_element(pop.fitness.begin(), pop.fitness.end());
    rec.best_fitness = *best_it;
    rec.mean_fitness =
        std::accumulate(pop.fitness.begin(), pop.fitness.end(), 0.0) / static_cast<double>(np);
    rec.evaluations = static_cast<std::int64_t>(np) * (pop.generation + 1);
    if (previous != nullptr && !(rec.best_fitness < previous->best_fitness)) {
        rec.best_generation = previous->best_generation;
    } else {
        rec.best_generation = pop.generation;
    }
    rec.elapsed_s = seconds_since(start);
    return rec;
}

RunResult finalize(Population pop, std::vector<RunRecord> records, const DeConfig& config) {
    RunResult result;
    const auto best_it = std::min_element(pop.fitness.begin(), pop.fitness.end());
    const std::size_t best_row = static_cast<std::size_t>(best_it - pop.fitness.begin());
    result.best_fitness = *best_it;
    const auto row = pop.genomes.row(best_row);
    result.best_genome.assign(row.begin(), row.end());
    result.population = std::move(pop);
    result.records = std::move(records);
    result.config = config;
    return result;
}

/// Classic per-gene recombination of one row, consuming the row substream in
/// the same order the mask builders do.
void recombine_row(CrossoverKind kind, std::span<const double> parent,
                   std::span<const double> mutant, double cr, RngStream& rng,
                   std::span<double> out) {
    switch (kind) {
    case CrossoverKind::Binomial: {
        const std::size_t d = parent.size();
        const std::size_t j_rand = rng.next_index(d);
        for (std::size_t j = 0; j < d; ++j) {
            const bool cross = rng.next_open01() < cr || j == j_rand;
            out[j] = cross ? mutant[j] : parent[j];
        }
        return;
    }
    case CrossoverKind::ExponentialTraditional:
        exponential_crossover_oracle(parent, mutant, cr, rng, out);
        return;
    case CrossoverKind::NecSequential:
    case CrossoverKind::NecParallel:
        nec_sequential(parent, mutant, cr, rng, out);
        return;
    }
    throw std::invalid_argument("recombine_row: unknown crossover kind");
}

CrossoverMask build_mask(CrossoverKind kind, double cr, int np, int d, RngStream rng,
                         int threads) {
    switch (kind) {
    case CrossoverKind::Binomial:
        return binomial_mask(cr, np, d, rng, threads);
    case CrossoverKind::ExponentialTraditional:
        return exponential_mask(cr, np, d, rng, threads);
    case CrossoverKind::NecSequential:
    case CrossoverKind::NecParallel:
        return nec_parallel_mask(cr, np, d, rng, threads);
    }
    throw std::invalid_argument("build_mask: unknown crossover kind");
}

} // namespace

Population init_population(const DeConfig& config, const Objective& objective, RngStream rng) {
    config.validate();
    if (objective.dim() != config.d) {
        throw std::invalid_argument("init_population: objective dimension mismatch");
    }
    const std::size_t np = static_cast<std::size_t>(config.np);
    const std::size_t d = static_cast<std::size_t>(config.d);
    Population pop;
    pop.genomes = Matrix(np, d);
    pop.generation = 0;
    for (std::size_t i = 0; i < np; ++i) {
        RngStream row = rng.derive(i);
        auto genes = pop.genomes.row(i);
        for (std::size_t j = 0; j < d; ++j) {
            genes[j] = config.lower[j] + row.next_open01() * (config.upper[j] - config.lower[j]);
        }
    }
    pop.fitness = objective.evaluate_batch(pop.genomes);
    return pop;
}

Population replace_greedy(Population parents, const TrialBatch& trials) {
    const std::size_t np = parents.size();
    if (trials.genomes.rows() != np || trials.genomes.cols() != parents.genomes.cols() ||
        trials.fitness.size() != np) {
        throw std::invalid_argument("replace_greedy: shape mismatch");
    }
    for (std::size_t i = 0; i < np; ++i) {
        if (trials.fitness[i] < parents.fitness[i]) { // strict: ties keep the parent
            auto src = trials.genomes.row(i);
            auto dst = parents.genomes.row(i);
            std::copy(src.begin(), src.end(), dst.begin());
            parents.fitness[i] = trials.fitness[i];
        }
    }
    return parents;
}

bool should_stop(const RunRecord& record, const DeConfig& config) {
    if (record.generation >= config.max_gen) {
        return true;
    }
    return config.target_fitness.has_value() && record.best_fitness <= *config.target_fitness;
}

RunResult run_sequential(const DeConfig& config, const Objective& objective,
                         const GenerationObserver& observer) {
    check_run_inputs(config, objective);
    const auto start = Clock::now();
    const RngStream root(config.seed);
    const int np = config.np;
    const std::size_t d = static_cast<std::size_t>(config.d);

    Population pop = init_population(config, objective, root.derive(kInitDomain));
    std::vector<RunRecord> records;
    records.push_back(make_record(pop, nullptr, start));
    if (observer) {
        observer(pop);
    }

    std::vector<double> mutant(d);
    while (!should_stop(records.back(), config)) {
        const std::uint64_t gen = static_cast<std::uint64_t>(pop.generation);
        if (config.shuffle_each_generation) {
            shuffle_population(pop, root.derive(kShuffleDomain).derive(gen));
        }
        const BaseIndexVector r0 =
            select_base_indices(config.selection_kind, np, root.derive(kSelectDomain).derive(gen));

        TrialBatch trials;
        trials.genomes = Matrix(static_cast<std::size_t>(np), d);
        trials.fitness.assign(static_cast<std::size_t>(np), 0.0);
        for (int i = 0; i < np; ++i) {
            const std::size_t row = static_cast<std::size_t>(i);
            RngStream mut_rng = root.derive(kMutateDomain).split(gen, row);
            const auto [r1, r2] = draw_distinct_partners(i, r0[row], np, mut_rng);
            const auto base = pop.genomes.row(static_cast<std::size_t>(r0[row]));
            const auto a = pop.genomes.row(static_cast<std::size_t>(r1));
            const auto b = pop.genomes.row(static_cast<std::size_t>(r2));
            for (std::size_t j = 0; j < d; ++j) {
                mutant[j] = base[j] + config.f * (a[j] - b[j]); // full mutant row, then crossover
            }
            RngStream cross_rng = root.derive(kCrossDomain).split(gen, row);
            recombine_row(config.crossover_kind, pop.genomes.row(row), mutant, config.cr,
                          cross_rng, trials.genomes.row(row));
            trials.fitness[row] = objective.evaluate_row(trials.genomes.row(row));
        }

        pop = replace_greedy(std::move(pop), trials);
        pop.generation += 1;
        records.push_back(make_record(pop, &records.back(), start));
        if (observer) {
            observer(pop);
        }
    }
    return finalize(std::move(pop), std::move(records), config);
}

RunResult run_parallel(const DeConfig& config, const Objective& objective, int threads,
                       const GenerationObserver& observer) {
    check_run_inputs(config, objective);
    const int workers = threads <= 0 ? static_cast<int>(max_threads()) : threads;
    const auto start = Clock::now();
    const RngStream root(config.seed);
    const int np = config.np;
    const int d = config.d;

    Population pop = init_population(config, objective, root.derive(kInitDomain));
    std::vector<RunRecord> records;
    records.push_back(make_record(pop, nullptr, start));
    if (observer) {
        observer(pop);
    }

    while (!should_stop(records.back(), config)) {
        const std::uint64_t gen = static_cast<std::uint64_t>(pop.generation);
        if (config.shuffle_each_generation) {
            shuffle_population(pop, root.derive(kShuffleDomain).derive(gen));
        }
        const BaseIndexVector r0 =
            select_base_indices(config.selection_kind, np, root.derive(kSelectDomain).derive(gen));
        const CrossoverMask mask = build_mask(config.crossover_kind, config.cr, np, d,
                                              root.derive(kCrossDomain).derive(gen), workers);
        TrialBatch trials = masked_mutation(pop, r0, mask, config.f,
                                            root.derive(kMutateDomain).derive(gen), workers);
        trials.fitness = objective.evaluate_batch(trials.genomes, workers);

        pop = replace_greedy(std::move(pop), trials);
        pop.generation += 1;
        records.push_back(make_record(pop, &records.back(), start));
        if (observer) {
            observer(pop);
        }
    }
    return finalize(std::move(pop), std::move(records), config);
}

} // namespace dpde
