/** \file
 * Depth Control slicing: fixed-weight blocks (SDC) and fidelity-thresholded
 * divide-and-conquer blocks (DDC).
 */
#pragma once

#include <span>
#include <string>
#include <vector>

#include "qdc/circuit.hpp"
#include "qdc/noise.hpp"

namespace qdc {

enum class SliceMode { Baseline, Sdc, Ddc };

const char* slice_mode_name(SliceMode m);

/// Contiguous gate run [begin, end) of the plan's circuit.
struct Block {
    std::size_t begin{0};
    std::size_t end{0};
    unsigned weight{0};

    bool operator==(const Block&) const = default;
};

struct SlicePlan {
    Circuit circuit;  // the planned circuit; wide gates may already be expanded
    std::vector<Block> blocks;
    SliceMode mode{SliceMode::Baseline};
    unsigned budget{0};      // SDC
    double threshold{0.0};   // DDC
    bool floor_warning{false};  // a DDC floor block missed the threshold

    std::span<const Gate> block_gates(std::size_t i) const {
        const Block& b = blocks.at(i);
        return {circuit.gates.data() + b.begin, b.end - b.begin};
    }

    /// Mode tag for reports: "baseline", "sdc:5", "ddc:0.9".
    std::string mode_label() const;

    bool operator==(const SlicePlan&) const = default;
};

/// The whole circuit as one block.
SlicePlan plan_baseline(const Circuit& c);

/// Replaces every MCT/SWAP whose weight exceeds `budget` with its basic-gate
/// construction, appending (and reusing) ancilla qubits as needed.
Circuit expand_over_budget(const Circuit& c, unsigned budget);

/// Fixed-budget slicing: walks gates in order, closing a block when the next
/// weighted gate would push past `d`. Zero-weight gates ride along with the
/// open block; gates wider than the budget are expanded first.
SlicePlan slice_static(const Circuit& c, unsigned d);

/// Fidelity-thresholded slicing: a segment whose estimated fidelity meets
/// `threshold` becomes one block, otherwise it splits at half its weighted
/// gate count and both halves recurse. Segments at the single-weighted-gate
/// floor are emitted regardless, flagging the plan when they miss.
SlicePlan slice_dynamic(const Circuit& c, double threshold, const NoiseModel& nm);

/// Number of jobs the plan will queue.
std::size_t plan_job_count(const SlicePlan& p);

/// JSON manifest (self-contained: embeds the planned circuit as QASM).
std::string plan_to_manifest(const SlicePlan& p);
SlicePlan plan_from_manifest(const std::string& json_text);

}  // namespace qdc
