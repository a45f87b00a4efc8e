#include "dpde/config.hpp"

#include <cmath>
#include <stdexcept>

namespace dpde {

std::string_view to_string(CrossoverKind kind) {
    switch (kind) {
    case CrossoverKind::Binomial:
        return "bin";
    case CrossoverKind::ExponentialTraditional:
        return "exp";
    case CrossoverKind::NecSequential:
        return "nec";
    case CrossoverKind::NecParallel:
        return "nec-par";
    }
    return "?";
}

std::string_view to_string(SelectionKind kind) {
    switch (kind) {
    case SelectionKind::Random:
        return "random";
    case SelectionKind::RandomOffset:
        return "offset";
    case SelectionKind::Permutation:
        return "perm";
    }
    return "?";
}

CrossoverKind crossover_kind_from_string(std::string_view name) {
    if (name == "bin") return CrossoverKind::Binomial;
    if (name == "exp") return CrossoverKind::ExponentialTraditional;
    if (name == "nec") return CrossoverKind::NecSequential;
    if (name == "nec-par") return CrossoverKind::NecParallel;
    throw std::invalid_argument("unknown crossover kind: " + std::string(name));
}

SelectionKind selection_kind_from_string(std::string_view name) {
    if (name == "random") return SelectionKind::Random;
    if (name == "offset") return SelectionKind::RandomOffset;
    if (name == "perm") return SelectionKind::Permutation;
    throw std::invalid_argument("unknown selection kind: " + std::string(name));
}

void DeConfig::validate() const {
    if (!(cr >= 0.0 && cr <= 1.0)) {
        throw std::invalid_argument("DeConfig: cr must lie in [0,1]");
    }
    if (!std::isfinite(f)) {
        throw std::invalid_argument("DeConfig: f must be finite");
    }
    if (np < 4) {
        throw std::invalid_argument(
            "DeConfig: np must be >= 4 (target plus three distinct partner rows)");
    }
    if (d < 1) {
        throw std::invalid_argument("DeConfig: d must be >= 1");
    }
    if (max_gen < 0) {
        throw std::invalid_argument("DeConfig: max_gen must be >= 0");
    }
    if (lower.size() != static_cast<std::size_t>(d) ||
        upper.size() != static_cast<std::size_t>(d)) {
        throw std::invalid_argument("DeConfig: bounds must both have length d");
    }
    for (int j = 0; j < d; ++j) {
        if (!(lower[static_cast<std::size_t>(j)] < upper[static_cast<std::size_t>(j)])) {
            throw std::invalid_argument("DeConfig: lower[j] < upper[j] required for all j");
        }
    }
}

void DeConfig::set_uniform_bounds(double lo, double hi) {
    lower.assign(static_cast<std::size_t>(d), lo);
    upper.assign(static_cast<std::size_t>(d), hi);
}

} // namespace dpde
