#pragma once

#include <vector>

#include "dpde/matrix.hpp"

namespace dpde {

/// Np x D genomes plus per-row fitness. fitness[i] always equals the
/// objective evaluated at row i once an engine has touched the population.
struct Population {
    Matrix genomes;
    std::vector<double> fitness;
    int generation = 0;

    std::size_t size() const { return genomes.rows(); }
    bool operator==(const Population&) const = default;
};

/// Candidate replacements for one generation; same shape as the parents.
struct TrialBatch {
    Matrix genomes;
    std::vector<double> fitness;
};

} // namespace dpde
