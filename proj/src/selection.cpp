#include "dpde/selection.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace dpde {

BaseIndexVector select_random(int np, RngStream rng) {
    if (np < 1) {
        throw std::invalid_argument("select_random: np must be >= 1");
    }
    BaseIndexVector r0(static_cast<std::size_t>(np));
    for (auto& r : r0) {
        r = static_cast<int>(rng.next_index(static_cast<std::uint64_t>(np)));
    }
    return r0;
}

BaseIndexVector select_random_offset(int np, RngStream rng) {
    if (np < 2) {
        throw std::invalid_argument("select_random_offset: np must be >= 2");
    }
    // Shared offset in {1, ..., np-1}; zero is impossible, so no row maps
    // to itself.
    const int r_g = 1 + static_cast<int>(rng.next_index(static_cast<std::uint64_t>(np - 1)));
    BaseIndexVector r0(static_cast<std::size_t>(np));
    for (int i = 0; i < np; ++i) {
        r0[static_cast<std::size_t>(i)] = (i + r_g) % np;
    }
    return r0;
}

BaseIndexVector select_permutation(int np, RngStream rng) {
    if (np < 1) {
        throw std::invalid_argument("select_permutation: np must be >= 1");
    }
    BaseIndexVector r0(static_cast<std::size_t>(np));
    std::iota(r0.begin(), r0.end(), 0);
    for (std::size_t i = r0.size() - 1; i > 0; --i) {
        const std::size_t j = rng.next_index(i + 1);
        std::swap(r0[i], r0[j]);
    }
    return r0;
}

BaseIndexVector select_base_indices(SelectionKind kind, int np, RngStream rng) {
    switch (kind) {
    case SelectionKind::Random:
        return select_random(np, std::move(rng));
    case SelectionKind::RandomOffset:
        return select_random_offset(np, std::move(rng));
    case SelectionKind::Permutation:
        return select_permutation(np, std::move(rng));
    }
    throw std::invalid_argument("select_base_indices: unknown kind");
}

} // namespace dpde
