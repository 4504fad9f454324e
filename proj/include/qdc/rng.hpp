/** \file
 * Seeded splitmix64 stream. Shot/job/chain streams are derived by mixing,
 * never by sharing state, so runs are reproducible under any scheduling.
 */
#pragma once

#include <cstdint>

namespace qdc {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return p > 0.0 && next_double() < p; }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

private:
    std::uint64_t state_;
};

/// Independent stream for (seed, index). Index 0 keeps the seed itself so a
/// one-element derivation is the identity.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt, std::uint64_t index) {
    return seed + salt * index;
}

// Salts for the executor's job hierarchy. Large odd constants; small
// (chain, block) pairs cannot collide.
inline constexpr std::uint64_t kBlockSalt = 0xc2b2ae3d27d4eb4fULL;
inline constexpr std::uint64_t kChainSalt = 0x9e3779b97f4a7c15ULL;
inline constexpr std::uint64_t kInitSalt = 0xd6e8feb86659fd93ULL;

/// Per-shot stream within a job.
inline Rng shot_rng(std::uint64_t job_seed, std::uint64_t shot) {
    return Rng(mix64(job_seed ^ mix64(shot + 1)));
}

}  // namespace qdc
