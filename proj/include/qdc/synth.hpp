/** \file
 * Seeded synthetic circuit families for benchmarks and experiments.
 */
#pragma once

#include <cstdint>

#include "qdc/circuit.hpp"

namespace qdc {

struct SynthSpec {
    std::uint32_t width{8};
    unsigned target_weight{100};
    std::uint64_t seed{1};
    // Relative draw frequencies per gate kind; zero disables a kind.
    unsigned mix_x{1};
    unsigned mix_cnot{6};
    unsigned mix_toffoli{2};
    unsigned mix_mct{0};
};

/// Random reversible circuit with at least target_weight of weighted gates
/// (the final draw may overshoot by one gate's weight). Deterministic in the
/// seed.
Circuit synth_circuit(const SynthSpec& spec);

/// CNOT-only circuit of exactly `weight` gates on nearest-random pairs.
Circuit synth_cx_circuit(std::uint32_t width, unsigned weight, std::uint64_t seed);

}  // namespace qdc
