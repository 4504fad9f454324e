#include "qdc/circuit.hpp"

#include <algorithm>
#include <unordered_set>

#include "fmt_compat.hpp"

namespace qdc {

const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::X: return "x";
        case GateKind::Cnot: return "cx";
        case GateKind::Toffoli: return "ccx";
        case GateKind::Mct: return "mcx";
        case GateKind::Swap: return "swap";
        case GateKind::Measure: return "measure";
    }
    return "?";
}

Gate Gate::x(QubitId q) { return Gate{GateKind::X, {}, q, {}}; }

Gate Gate::cnot(QubitId control, QubitId target) {
    return Gate{GateKind::Cnot, {control}, target, {}};
}

Gate Gate::toffoli(QubitId c0, QubitId c1, QubitId target) {
    return Gate{GateKind::Toffoli, {c0, c1}, target, {}};
}

Gate Gate::mct(std::vector<QubitId> controls, QubitId target) {
    if (controls.size() < 3)
        throw CircuitError("mcx requires at least 3 controls; use cx/ccx below that");
    return Gate{GateKind::Mct, std::move(controls), target, {}};
}

Gate Gate::swap(QubitId a, QubitId b) { return Gate{GateKind::Swap, {a}, b, {}}; }

Gate Gate::measure(QubitId q, std::uint32_t cbit) {
    return Gate{GateKind::Measure, {}, q, cbit};
}

std::vector<QubitId> Gate::operands() const {
    std::vector<QubitId> ops = controls;
    ops.push_back(target);
    return ops;
}

Circuit& Circuit::add(Gate g) {
    gates.push_back(std::move(g));
    return *this;
}

namespace {

std::size_t expected_controls(GateKind k) {
    switch (k) {
        case GateKind::X:
        case GateKind::Measure: return 0;
        case GateKind::Cnot:
        case GateKind::Swap: return 1;
        case GateKind::Toffoli: return 2;
        case GateKind::Mct: return 3;  // minimum
    }
    return 0;
}

}  // namespace

void validate(const Circuit& c) {
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        const std::size_t want = expected_controls(g.kind);
        const bool arity_ok = g.kind == GateKind::Mct ? g.controls.size() >= want
                                                      : g.controls.size() == want;
        if (!arity_ok)
            throw CircuitError(qfmt("gate %zu (%s): bad control count %zu", i,
                                    gate_name(g.kind), g.controls.size()));
        std::unordered_set<QubitId> seen;
        for (QubitId q : g.operands()) {
            if (q >= c.width)
                throw CircuitError(qfmt("gate %zu (%s): qubit %u out of range (width %u)",
                                        i, gate_name(g.kind), q, c.width));
            if (!seen.insert(q).second)
                throw CircuitError(qfmt("gate %zu (%s): duplicate operand %u", i,
                                        gate_name(g.kind), q));
        }
        if (g.kind == GateKind::Measure && g.cbit && *g.cbit >= c.creg_width)
            throw CircuitError(qfmt("gate %zu: classical bit %u out of range (creg %u)",
                                    i, *g.cbit, c.creg_width));
    }
}

unsigned gate_weight(const Gate& g) {
    switch (g.kind) {
        case GateKind::X:
        case GateKind::Measure: return 0;
        case GateKind::Cnot:
        case GateKind::Toffoli: return 1;
        case GateKind::Swap: return 3;
        case GateKind::Mct:
            return 1 + 2 * (static_cast<unsigned>(g.controls.size()) - 2);
    }
    return 0;
}

unsigned circuit_weight(const Circuit& c) {
    unsigned total = 0;
    for (const Gate& g : c.gates) total += gate_weight(g);
    return total;
}

std::vector<Gate> decompose_mct(const Gate& g, QubitId ancilla_base, std::uint32_t width) {
    if (g.kind != GateKind::Mct) throw CircuitError("decompose_mct: gate is not an mcx");
    const std::size_t k = g.controls.size();
    const std::size_t need = k - 2;
    if (ancilla_base >= width || width - ancilla_base < need)
        throw CircuitError(qfmt("decompose_mct: need %zu ancillas at qubit %u but width is %u",
                                need, ancilla_base, width));
    for (QubitId q : g.operands())
        if (q >= ancilla_base && q < ancilla_base + need)
            throw CircuitError("decompose_mct: ancilla run overlaps gate operands");

    // Compute chain: a0 = c0 & c1, then a_j = a_{j-1} & c_{j+1}.
    std::vector<Gate> compute;
    compute.push_back(Gate::toffoli(g.controls[0], g.controls[1], ancilla_base));
    for (std::size_t j = 1; j + 2 < k; ++j)
        compute.push_back(Gate::toffoli(static_cast<QubitId>(ancilla_base + j - 1),
                                        g.controls[j + 1],
                                        static_cast<QubitId>(ancilla_base + j)));

    std::vector<Gate> out = compute;
    out.push_back(Gate::toffoli(static_cast<QubitId>(ancilla_base + need - 1),
                                g.controls[k - 1], g.target));
    out.insert(out.end(), compute.rbegin(), compute.rend());
    return out;
}

DagLayers dag_layers(const Circuit& c) {
    DagLayers dag;
    dag.gate_layer.resize(c.gates.size());
    std::vector<std::size_t> ready(c.width, 0);  // earliest free layer per qubit
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        std::size_t layer = 0;
        for (QubitId q : c.gates[i].operands()) layer = std::max(layer, ready[q]);
        if (layer == dag.layers.size()) dag.layers.emplace_back();
        dag.layers[layer].push_back(i);
        dag.gate_layer[i] = layer;
        for (QubitId q : c.gates[i].operands()) ready[q] = layer + 1;
    }
    return dag;
}

}  // namespace qdc
