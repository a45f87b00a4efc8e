#pragma once

#include <cstdint>
#include <stdexcept>

namespace dpde {

/**
 * Keyed, splittable random stream built on the SplitMix64 mixer.
 *
 * A stream is identified by a key derived from the root seed and the chain
 * of derive()/split() components that produced it. Drawing values advances a
 * separate position counter, so child streams depend only on the derivation
 * path, never on how many values the parent has consumed. This is what lets
 * a sequential reference loop and a row-parallel batch consume the exact
 * same randomness: both address the substream for (generation, row) by key.
 *
 * Guarantees:
 *  - identical seed and derivation path => identical draw sequence,
 *  - next_open01() is strictly inside (0,1), never 0.0 or 1.0,
 *  - next_index(n) is unbiased (rejection sampling).
 */
class RngStream {
public:
    explicit RngStream(std::uint64_t seed)
        : key_(combine(0x8c2f9d1aa7650e3bULL, seed)), state_(key_) {}

    /// Child stream keyed by a single component.
    [[nodiscard]] RngStream derive(std::uint64_t component) const {
        return RngStream(combine(key_, component), from_key{});
    }

    /// Child stream keyed by (generation, row).
    [[nodiscard]] RngStream split(std::uint64_t generation, std::uint64_t row) const {
        return derive(generation).derive(row);
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double strictly inside (0,1): (n + 1/2) * 2^-53, n in [0, 2^53).
    double next_open01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n).
    std::uint64_t next_index(std::uint64_t n) {
        if (n == 0) {
            throw std::invalid_argument("RngStream::next_index: n must be positive");
        }
        const std::uint64_t reject_below = (0 - n) % n; // 2^64 mod n
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x < reject_below);
        return x % n;
    }

    std::uint64_t key() const { return key_; }

private:
    struct from_key {};
    RngStream(std::uint64_t key, from_key) : key_(key), state_(key) {}

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t combine(std::uint64_t key, std::uint64_t component) {
        return mix(key + 0x9e3779b97f4a7c15ULL * (component + 1));
    }

    std::uint64_t key_;
    std::uint64_t state_;
};

/// Substream addressed by (generation, row); same key => same substream.
inline RngStream split_stream(const RngStream& rng, std::uint64_t generation, std::uint64_t row) {
    return rng.split(generation, row);
}

} // namespace dpde
