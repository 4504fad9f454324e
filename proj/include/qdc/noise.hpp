/** \file
 * Ideal and noisy shot-based simulation of reversible classical circuits.
 *
 * The noise channel is a classical bit flip: after each gate every operand
 * flips with its class probability, idle qubits decay 1 -> 0 between DAG
 * layers, and each measured bit flips with the readout probability. This is
 * exactly the expected-value error model the block analysis works in, and it
 * keeps a shot at O(width) per gate.
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "qdc/bitstring.hpp"
#include "qdc/circuit.hpp"

namespace qdc {

struct NoiseModel {
    double eps_1q{0.0};     // per one-qubit gate, per operand
    double eps_2q{0.0};     // per CNOT/Toffoli/MCT, per operand
    double eps_meas{0.0};   // per measured bit
    double t1_layers{1e12}; // idle 1->0 decay constant, in DAG layers
    std::uint64_t seed{0};

    static NoiseModel noiseless(std::uint64_t seed = 0) { return NoiseModel{0, 0, 0, 1e12, seed}; }

    /// Reads the flat key-value format (eps_1q, eps_2q, eps_meas, t1_layers,
    /// seed; '#' comments).
    static NoiseModel load(const std::string& path);

    void check() const;
};

struct Counts {
    std::map<std::string, std::uint64_t> histogram;  // bitstring text -> occurrences
    std::uint64_t total_shots{0};

    void record(const std::string& outcome) {
        ++histogram[outcome];
        ++total_shots;
    }

    /// Adds every entry of `other` into this dictionary.
    void merge(const Counts& other);

    std::uint64_t count_of(const std::string& outcome) const {
        const auto it = histogram.find(outcome);
        return it == histogram.end() ? 0 : it->second;
    }

    /// "bitstring count" lines, sorted by bitstring.
    std::string to_text() const;

    bool operator==(const Counts&) const = default;
};

/// Applies the gate list as classical reversible logic. Measure gates are
/// the identity on bits. Deterministic.
BitString simulate_ideal(const Circuit& c, const BitString& input);

/// Replays the circuit in DAG-layer order `shots` times under `nm`,
/// measuring every qubit at the end. Shot i draws from a stream derived
/// from (nm.seed, i), so results are independent of shot scheduling.
Counts simulate_noisy(const Circuit& c, const BitString& input, std::uint64_t shots,
                      const NoiseModel& nm);

/// As simulate_noisy, but the final measurement reads only
/// `measured_positions`, producing keys of that width (position j of the
/// span becomes text-form qubit j). Used by routed execution, where only
/// the mapped logical qubits are read out.
Counts simulate_noisy_measured(const Circuit& c, const BitString& input, std::uint64_t shots,
                               const NoiseModel& nm, std::span<const QubitId> measured_positions);

/// Analytic survival-product fidelity estimate in [0,1]: per-gate operand
/// factors, exp(-idle/t1) per DAG layer, and a full-width readout factor.
/// Deterministic; no sampling.
double estimate_fidelity(const Circuit& c, const NoiseModel& nm);

/// Most frequent outcome; ties break to the lexicographically smallest
/// bitstring. Errors on empty counts.
BitString argmax_outcome(const Counts& counts);

}  // namespace qdc
