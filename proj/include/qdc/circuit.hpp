/** \file
 * Gate-list circuit IR for reversible classical logic, plus gate-weight
 * accounting, ASAP DAG layering and the ancilla V-chain MCT decomposition.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdc {

using QubitId = std::uint32_t;

enum class GateKind { X, Cnot, Toffoli, Mct, Swap, Measure };

const char* gate_name(GateKind k);

/// One gate. Controlled kinds keep their controls in `controls` and flip
/// `target`; Swap exchanges controls[0] with target; Measure reads `target`
/// into classical bit `cbit`.
struct Gate {
    GateKind kind{GateKind::X};
    std::vector<QubitId> controls;
    QubitId target{0};
    std::optional<std::uint32_t> cbit;

    static Gate x(QubitId q);
    static Gate cnot(QubitId control, QubitId target);
    static Gate toffoli(QubitId c0, QubitId c1, QubitId target);
    static Gate mct(std::vector<QubitId> controls, QubitId target);
    static Gate swap(QubitId a, QubitId b);
    static Gate measure(QubitId q, std::uint32_t cbit);

    /// All qubits the gate touches, controls first.
    std::vector<QubitId> operands() const;

    bool operator==(const Gate& other) const = default;
};

struct Circuit {
    std::uint32_t width{0};
    std::uint32_t creg_width{0};
    std::string name;
    std::vector<Gate> gates;

    Circuit() = default;
    Circuit(std::uint32_t width, std::string name = {})
        : width(width), name(std::move(name)) {}

    Circuit& add(Gate g);

    /// Structural equality: width, creg and gate list. `name` is a label
    /// (typically the source file stem) and does not participate.
    friend bool operator==(const Circuit& a, const Circuit& b) {
        return a.width == b.width && a.creg_width == b.creg_width && a.gates == b.gates;
    }
};

/// Thrown when a gate or circuit violates an IR invariant.
struct CircuitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Checks operand ranges, distinctness and per-kind control arity.
void validate(const Circuit& c);

/// Weighted gate count per the slicing metric: unitary gates (X) and
/// measurements are free, CNOT/Toffoli count one, SWAP counts its three-CNOT
/// construction, a k-controlled MCT counts 1 + 2*(k-2).
unsigned gate_weight(const Gate& g);

/// Sum of gate_weight over the circuit.
unsigned circuit_weight(const Circuit& c);

/// Expands a k>=3 controlled MCT into the Toffoli V-chain over k-2 ancillas
/// starting at `ancilla_base`; `width` bounds the ancilla run. The chain
/// computes the conjunction into the ancillas, writes the target once, then
/// uncomputes so every ancilla returns to 0. Emits exactly gate_weight(g)
/// Toffolis.
std::vector<Gate> decompose_mct(const Gate& g, QubitId ancilla_base, std::uint32_t width);

/// ASAP layering of the gate-list DAG: a gate lands in the earliest layer
/// after every earlier gate it shares a qubit with.
struct DagLayers {
    std::vector<std::vector<std::size_t>> layers;
    std::vector<std::size_t> gate_layer;  // gate index -> layer index

    std::size_t depth() const { return layers.size(); }
};

DagLayers dag_layers(const Circuit& c);

}  // namespace qdc
