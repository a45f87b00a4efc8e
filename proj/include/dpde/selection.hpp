#pragma once

#include <vector>

#include "dpde/config.hpp"
#include "dpde/rng.hpp"

namespace dpde {

/// One base row index per target row, each in [0, np).
using BaseIndexVector = std::vector<int>;

/// Each entry independently uniform on {0, ..., np-1}.
BaseIndexVector select_random(int np, RngStream rng);

/// r0[i] = (i + r_g) mod np for one shared offset r_g in {1, ..., np-1}.
/// Always a fixed-point-free permutation. Requires np >= 2.
BaseIndexVector select_random_offset(int np, RngStream rng);

/// Uniformly random permutation of 0..np-1 (Fisher-Yates).
BaseIndexVector select_permutation(int np, RngStream rng);

BaseIndexVector select_base_indices(SelectionKind kind, int np, RngStream rng);

} // namespace dpde
