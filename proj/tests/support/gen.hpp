// Shared helpers for property-style tests.
#pragma once

#include <cstdint>

#include "qdc/bitstring.hpp"
#include "qdc/circuit.hpp"
#include "qdc/rng.hpp"
#include "qdc/synth.hpp"

namespace qdc::testgen {

inline Circuit random_circuit(std::uint64_t seed, std::uint32_t width, unsigned weight,
                              bool with_mct = true) {
    SynthSpec spec;
    spec.width = width;
    spec.target_weight = weight;
    spec.seed = seed;
    spec.mix_x = 2;
    spec.mix_cnot = 6;
    spec.mix_toffoli = 3;
    spec.mix_mct = with_mct ? 1 : 0;
    return synth_circuit(spec);
}

inline BitString random_bits(Rng& rng, std::uint32_t width) {
    BitString b(width);
    for (std::uint32_t q = 0; q < width; ++q) b.set(q, rng.bernoulli(0.5));
    return b;
}

inline BitString bits_from_mask(std::uint64_t mask, std::uint32_t width) {
    BitString b(width);
    for (std::uint32_t q = 0; q < width; ++q) b.set(q, (mask >> q) & 1);
    return b;
}

}  // namespace qdc::testgen
