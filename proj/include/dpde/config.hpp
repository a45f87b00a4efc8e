#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dpde {

enum class CrossoverKind {
    Binomial,               // uniform crossover, one forced gene per row
    ExponentialTraditional, // per-gene do-while loop
    NecSequential,          // segment length drawn in one shot, applied row by row
    NecParallel,            // segment length drawn in one shot, mask built by matrix compares
};

enum class SelectionKind {
    Random,       // each base index drawn independently
    RandomOffset, // one shared cyclic offset
    Permutation,  // uniformly random permutation
};

std::string_view to_string(CrossoverKind kind);
std::string_view to_string(SelectionKind kind);
CrossoverKind crossover_kind_from_string(std::string_view name);
SelectionKind selection_kind_from_string(std::string_view name);

/// All run parameters. A full run is a pure function of this struct.
struct DeConfig {
    double f = 0.5;  // differential weight
    double cr = 0.2; // crossover rate in [0,1]
    int np = 50;     // population size, >= 4
    int d = 10;      // genome dimension, >= 1
    int max_gen = 100;
    CrossoverKind crossover_kind = CrossoverKind::NecParallel;
    SelectionKind selection_kind = SelectionKind::Random;
    std::uint64_t seed = 1;
    std::optional<double> target_fitness;
    std::vector<double> lower; // length d
    std::vector<double> upper; // length d
    // Row order is permuted once per generation before base-index selection.
    // Only observable through RandomOffset selection; kept on by default.
    bool shuffle_each_generation = true;

    /// Throws std::invalid_argument on any violated invariant.
    void validate() const;

    /// Convenience: fill lower/upper with a shared box.
    void set_uniform_bounds(double lo, double hi);

    bool operator==(const DeConfig&) const = default;
};

} // namespace dpde
