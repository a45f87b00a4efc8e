#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dpde/config.hpp"
#include "dpde/objectives.hpp"
#include "dpde/population.hpp"
#include "dpde/rng.hpp"

namespace dpde {

/// One log row per generation (row 0 covers initialization).
struct RunRecord {
    int generation = 0;
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
    int best_generation = 0; // generation where the current best first appeared
    std::int64_t evaluations = 0;
    double elapsed_s = 0.0;

    bool operator==(const RunRecord&) const = default;
};

struct RunResult {
    Population population; // final state
    std::vector<double> best_genome;
    double best_fitness = 0.0;
    std::vector<RunRecord> records;
    DeConfig config;
};

/// Called after initialization and after every completed generation.
using GenerationObserver = std::function<void(const Population&)>;

/// Uniform initialization inside the config box, one evaluation pass,
/// generation 0. Shared by both engines.
Population init_population(const DeConfig& config, const Objective& objective, RngStream rng);

/// Row i of the output takes the trial iff trials.fitness[i] < parents.fitness[i]
/// (strict: ties keep the parent). Parents pass by value so callers may move.
Population replace_greedy(Population parents, const TrialBatch& trials);

/// True iff the generation budget is exhausted or the optional fitness
/// target has been reached.
bool should_stop(const RunRecord& record, const DeConfig& config);

/// Per-individual reference loop: select base row, full differential
/// mutation, recombination by the configured crossover, greedy replacement.
RunResult run_sequential(const DeConfig& config, const Objective& objective,
                         const GenerationObserver& observer = {});

/// Mask-first vectorized engine: base-index vector, crossover mask, masked
/// mutation, batch evaluation, vectorized greedy replacement. Produces the
/// identical population trajectory as run_sequential for any thread count.
/// threads = 0 uses the global cap.
RunResult run_parallel(const DeConfig& config, const Objective& objective, int threads = 0,
                       const GenerationObserver& observer = {});

} // namespace dpde
