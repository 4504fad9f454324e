/** \file
 * The Depth Control execution pipeline: run each block noisily, take the
 * argmax outcome as that block's classical result, and re-initialize the
 * next block from it with (noisy) X preparation gates. Also the reverse-DC
 * plan construction and the superposition-input orchestration.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qdc/bitstring.hpp"
#include "qdc/mapper.hpp"
#include "qdc/noise.hpp"
#include "qdc/slicer.hpp"

namespace qdc {

struct JobRecord {
    int block_index{0};  // -1 tags a superposition init job
    int chain{-1};       // superposition chain ordinal; -1 for classical input
    BitString input;
    std::uint64_t shots{0};
    Counts counts;
    BitString argmax;
};

/// Per-selected-input results of a superposition run, kept so metrics can
/// weight per-outcome PSTs by their shot fractions.
struct ChainResult {
    BitString input;
    std::uint64_t shots{0};
    Counts final_counts;
};

struct DcRunReport {
    std::vector<JobRecord> jobs;
    Counts final_counts;
    std::size_t job_count{0};
    std::string mode;
    std::vector<ChainResult> chains;        // superposition runs only
    std::vector<std::string> warnings;
};

/// Runs the plan's blocks in order: block 0 starts from `input`; block i+1
/// starts from an all-zero register prepared with X gates on the 1-bits of
/// block i's argmax (the preparation gates are noisy). Every block gets the
/// full `shots` budget; block i draws from a stream derived from (nm.seed, i).
DcRunReport run_dc(const SlicePlan& plan, const BitString& input, std::uint64_t shots,
                   const NoiseModel& nm);

/// Whole circuit as a single job. Identical to run_dc on a one-block plan
/// with the same seed.
DcRunReport run_baseline(const Circuit& c, const BitString& input, std::uint64_t shots,
                         const NoiseModel& nm);

/// Uncomputation plan: blocks reversed in order, each block's gates reversed
/// (every IR gate is self-inverse). Running it on the forward run's final
/// argmax recovers the original input under noiseless execution. Blocks must
/// be Measure-free.
SlicePlan reverse_dc(const SlicePlan& plan);

struct SuperpositionSpec {
    enum class Init { Circuit, Ghz };
    Init init{Init::Ghz};
    Circuit init_circuit;     // Init::Circuit: run unsliced to sample inputs.
                              // Init::Ghz: width-only carrier (no gates).
    unsigned k{1};            // anticipated number of distinct outcomes
    std::uint64_t total_shots{0};

    static SuperpositionSpec ghz(std::uint32_t width, unsigned k, std::uint64_t total_shots);
    static SuperpositionSpec with_init(Circuit init_circuit, unsigned k,
                                       std::uint64_t total_shots);
};

/// Largest-remainder split of `total` across `observed` counts: exact sum,
/// proportional to within one shot. Exposed for the conservation tests.
std::vector<std::uint64_t> distribute_shots(const std::vector<std::uint64_t>& observed,
                                            std::uint64_t total);

/// Superposition-input DC: runs the init to sample outcomes, keeps the top-k
/// as expected inputs (the rest is treated as noise), splits the shot budget
/// proportionally, runs the plan per input, and merges the final counts into
/// one dictionary. The init run counts as a job. The init may be narrower
/// than the plan (expanded ancillas); sampled inputs zero-pad. Passing
/// `routed` executes each chain over the per-block routed circuits.
DcRunReport run_superposition(const SuperpositionSpec& spec, const SlicePlan& plan,
                              const NoiseModel& nm, const RoutedPlan* routed = nullptr);

/// run_dc over per-block routed circuits (fresh layout per block): block i's
/// argmax is read through its final layout and re-prepared through block
/// i+1's initial layout. Counts stay logical-width (only mapped qubits are
/// measured).
DcRunReport run_dc_routed(const SlicePlan& plan, const RoutedPlan& routed,
                          const BitString& input, std::uint64_t shots, const NoiseModel& nm);

}  // namespace qdc
