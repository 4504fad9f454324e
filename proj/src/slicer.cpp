#include "qdc/slicer.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "fmt_compat.hpp"
#include "qdc/qasm.hpp"

namespace qdc {

const char* slice_mode_name(SliceMode m) {
    switch (m) {
        case SliceMode::Baseline: return "baseline";
        case SliceMode::Sdc: return "sdc";
        case SliceMode::Ddc: return "ddc";
    }
    return "?";
}

std::string SlicePlan::mode_label() const {
    switch (mode) {
        case SliceMode::Baseline: return "baseline";
        case SliceMode::Sdc: return qfmt("sdc:%u", budget);
        case SliceMode::Ddc: {
            std::string t = qfmt("%g", threshold);
            return "ddc:" + t;
        }
    }
    return "?";
}

SlicePlan plan_baseline(const Circuit& c) {
    SlicePlan p;
    p.circuit = c;
    p.mode = SliceMode::Baseline;
    if (!c.gates.empty())
        p.blocks.push_back({0, c.gates.size(), circuit_weight(c)});
    return p;
}

Circuit expand_over_budget(const Circuit& c, unsigned budget) {
    std::uint32_t extra = 0;
    for (const Gate& g : c.gates)
        if (g.kind == GateKind::Mct && gate_weight(g) > budget)
            extra = std::max(extra, static_cast<std::uint32_t>(g.controls.size()) - 2);

    Circuit out(c.width + extra, c.name);
    out.creg_width = c.creg_width;
    for (const Gate& g : c.gates) {
        if (gate_weight(g) <= budget) {
            out.add(g);
        } else if (g.kind == GateKind::Mct) {
            // Ancillas end at 0 after every V-chain, so one run serves all.
            for (Gate t : decompose_mct(g, c.width, out.width)) out.add(std::move(t));
        } else if (g.kind == GateKind::Swap) {
            out.add(Gate::cnot(g.controls[0], g.target));
            out.add(Gate::cnot(g.target, g.controls[0]));
            out.add(Gate::cnot(g.controls[0], g.target));
        } else {
            throw CircuitError("expand_over_budget: cannot expand gate kind");
        }
    }
    return out;
}

SlicePlan slice_static(const Circuit& c, unsigned d) {
    if (d < 1) throw std::invalid_argument("slice_static: block budget must be >= 1");
    if (c.gates.empty()) throw std::invalid_argument("slice_static: circuit is empty");

    SlicePlan plan;
    plan.mode = SliceMode::Sdc;
    plan.budget = d;
    plan.circuit = expand_over_budget(c, d);

    std::size_t begin = 0;
    unsigned weight = 0;
    for (std::size_t i = 0; i < plan.circuit.gates.size(); ++i) {
        const unsigned w = gate_weight(plan.circuit.gates[i]);
        if (w > 0 && weight + w > d) {
            plan.blocks.push_back({begin, i, weight});
            begin = i;
            weight = 0;
        }
        weight += w;
    }
    plan.blocks.push_back({begin, plan.circuit.gates.size(), weight});
    return plan;
}

namespace {

Circuit segment_circuit(const Circuit& c, std::size_t begin, std::size_t end) {
    Circuit seg(c.width);
    seg.creg_width = c.creg_width;
    seg.gates.assign(c.gates.begin() + static_cast<std::ptrdiff_t>(begin),
                     c.gates.begin() + static_cast<std::ptrdiff_t>(end));
    return seg;
}

unsigned segment_weight(const Circuit& c, std::size_t begin, std::size_t end) {
    unsigned w = 0;
    for (std::size_t i = begin; i < end; ++i) w += gate_weight(c.gates[i]);
    return w;
}

std::size_t count_weighted(const Circuit& c, std::size_t begin, std::size_t end) {
    std::size_t n = 0;
    for (std::size_t i = begin; i < end; ++i)
        if (gate_weight(c.gates[i]) > 0) ++n;
    return n;
}

std::size_t absorb_zero_weight(const Circuit& c, std::size_t cut, std::size_t end) {
    while (cut < end && gate_weight(c.gates[cut]) == 0) ++cut;
    return cut;
}

// Cut after the prefix reaching half the weighted gate count (ceiling), with
// trailing zero-weight gates riding along. Both sides keep at least one
// weighted gate; the caller guarantees two or more exist.
std::size_t split_point(const Circuit& c, std::size_t begin, std::size_t end,
                        unsigned target_weight) {
    unsigned acc = 0;
    std::size_t prev_weighted_cut = begin;
    for (std::size_t i = begin; i < end; ++i) {
        const unsigned w = gate_weight(c.gates[i]);
        if (w == 0) continue;
        acc += w;
        if (acc >= target_weight) {
            const std::size_t cut = absorb_zero_weight(c, i + 1, end);
            // If the crossing gate was the last weighted one, step back so
            // the suffix is not empty of weighted gates.
            return cut < end ? cut : prev_weighted_cut;
        }
        prev_weighted_cut = absorb_zero_weight(c, i + 1, end);
    }
    return end;  // unreachable for target_weight <= segment weight
}

void slice_segment(const Circuit& c, std::size_t begin, std::size_t end, double threshold,
                   const NoiseModel& nm, SlicePlan& plan) {
    const unsigned w = segment_weight(c, begin, end);
    const double fid = estimate_fidelity(segment_circuit(c, begin, end), nm);
    if (fid >= threshold) {
        plan.blocks.push_back({begin, end, w});
        return;
    }
    if (count_weighted(c, begin, end) <= 1) {  // single-gate floor: emit regardless
        plan.blocks.push_back({begin, end, w});
        plan.floor_warning = true;
        return;
    }
    const std::size_t cut = split_point(c, begin, end, (w + 1) / 2);
    slice_segment(c, begin, cut, threshold, nm, plan);
    slice_segment(c, cut, end, threshold, nm, plan);
}

}  // namespace

SlicePlan slice_dynamic(const Circuit& c, double threshold, const NoiseModel& nm) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw std::invalid_argument("slice_dynamic: threshold must lie in (0,1)");
    if (c.gates.empty()) throw std::invalid_argument("slice_dynamic: circuit is empty");

    SlicePlan plan;
    plan.mode = SliceMode::Ddc;
    plan.threshold = threshold;
    plan.circuit = c;
    slice_segment(plan.circuit, 0, plan.circuit.gates.size(), threshold, nm, plan);
    return plan;
}

std::size_t plan_job_count(const SlicePlan& p) { return p.blocks.size(); }

std::string plan_to_manifest(const SlicePlan& p) {
    nlohmann::json j;
    j["mode"] = slice_mode_name(p.mode);
    if (p.mode == SliceMode::Sdc) j["budget"] = p.budget;
    if (p.mode == SliceMode::Ddc) j["threshold"] = p.threshold;
    j["source"] = p.circuit.name;
    j["width"] = p.circuit.width;
    j["floor_warning"] = p.floor_warning;
    j["qasm"] = serialize_qasm(p.circuit);
    nlohmann::json blocks = nlohmann::json::array();
    for (const Block& b : p.blocks)
        blocks.push_back({{"begin", b.begin}, {"end", b.end}, {"weight", b.weight}});
    j["blocks"] = std::move(blocks);
    return j.dump(2) + "\n";
}

SlicePlan plan_from_manifest(const std::string& json_text) {
    const nlohmann::json j = nlohmann::json::parse(json_text);
    SlicePlan p;
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "baseline") p.mode = SliceMode::Baseline;
    else if (mode == "sdc") p.mode = SliceMode::Sdc;
    else if (mode == "ddc") p.mode = SliceMode::Ddc;
    else throw std::runtime_error("manifest: unknown mode '" + mode + "'");
    if (j.contains("budget")) p.budget = j.at("budget").get<unsigned>();
    if (j.contains("threshold")) p.threshold = j.at("threshold").get<double>();
    p.floor_warning = j.value("floor_warning", false);
    p.circuit = parse_qasm(j.at("qasm").get<std::string>(), j.value("source", std::string{}));
    p.circuit.name = j.value("source", std::string{});
    std::size_t expect = 0;
    for (const auto& jb : j.at("blocks")) {
        Block b{jb.at("begin").get<std::size_t>(), jb.at("end").get<std::size_t>(),
                jb.at("weight").get<unsigned>()};
        if (b.begin != expect || b.end < b.begin || b.end > p.circuit.gates.size())
            throw std::runtime_error("manifest: blocks do not tile the gate list");
        expect = b.end;
        p.blocks.push_back(b);
    }
    if (expect != p.circuit.gates.size())
        throw std::runtime_error("manifest: blocks do not cover the gate list");
    return p;
}

}  // namespace qdc
