#include "qdc/noise.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fmt_compat.hpp"
#include "qdc/rng.hpp"

namespace qdc {

NoiseModel NoiseModel::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open noise model: " + path);
    NoiseModel nm;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw std::runtime_error(qfmt("%s:%d: expected key = value", path.c_str(), line_no));
            continue;
        }
        std::istringstream key_in(line.substr(0, eq));
        std::string key;
        key_in >> key;
        std::istringstream val_in(line.substr(eq + 1));
        if (key == "eps_1q") val_in >> nm.eps_1q;
        else if (key == "eps_2q") val_in >> nm.eps_2q;
        else if (key == "eps_meas") val_in >> nm.eps_meas;
        else if (key == "t1_layers") val_in >> nm.t1_layers;
        else if (key == "seed") val_in >> nm.seed;
        else throw std::runtime_error(qfmt("%s:%d: unknown key '%s'", path.c_str(), line_no, key.c_str()));
        if (val_in.fail())
            throw std::runtime_error(qfmt("%s:%d: bad value for '%s'", path.c_str(), line_no, key.c_str()));
    }
    nm.check();
    return nm;
}

void NoiseModel::check() const {
    for (double p : {eps_1q, eps_2q, eps_meas})
        if (!(p >= 0.0 && p <= 1.0))
            throw std::runtime_error("noise model: probabilities must lie in [0,1]");
    if (!(t1_layers > 0.0)) throw std::runtime_error("noise model: t1_layers must be positive");
}

void Counts::merge(const Counts& other) {
    for (const auto& [key, n] : other.histogram) histogram[key] += n;
    total_shots += other.total_shots;
}

std::string Counts::to_text() const {
    std::ostringstream out;
    for (const auto& [key, n] : histogram) out << key << ' ' << n << '\n';
    return out.str();
}

namespace {

// Shared gate application on a raw bit vector.
void apply_gate(const Gate& g, std::vector<std::uint8_t>& bits) {
    switch (g.kind) {
        case GateKind::X:
            bits[g.target] ^= 1;
            return;
        case GateKind::Swap:
            std::swap(bits[g.controls[0]], bits[g.target]);
            return;
        case GateKind::Measure:
            return;  // reading a classical bit does not change it
        case GateKind::Cnot:
        case GateKind::Toffoli:
        case GateKind::Mct: {
            for (QubitId c : g.controls)
                if (!bits[c]) return;
            bits[g.target] ^= 1;
            return;
        }
    }
}

}  // namespace

BitString simulate_ideal(const Circuit& c, const BitString& input) {
    if (input.width() != c.width)
        throw std::invalid_argument(qfmt("simulate_ideal: input width %u != circuit width %u",
                                         input.width(), c.width));
    std::vector<std::uint8_t> bits(c.width);
    for (std::uint32_t q = 0; q < c.width; ++q) bits[q] = input.get(q);
    for (const Gate& g : c.gates) apply_gate(g, bits);
    BitString out(c.width);
    for (std::uint32_t q = 0; q < c.width; ++q) out.set(q, bits[q]);
    return out;
}

namespace {

// Gate noise: every operand flips independently with the class probability.
// A SWAP is three CNOT constituents, so its operands get three chances each.
void apply_gate_noise(const Gate& g, std::vector<std::uint8_t>& bits, const NoiseModel& nm,
                      Rng& rng) {
    switch (g.kind) {
        case GateKind::X:
            if (rng.bernoulli(nm.eps_1q)) bits[g.target] ^= 1;
            return;
        case GateKind::Measure:
            if (rng.bernoulli(nm.eps_meas)) bits[g.target] ^= 1;
            return;
        case GateKind::Cnot:
        case GateKind::Toffoli:
        case GateKind::Mct:
            for (QubitId q : g.operands())
                if (rng.bernoulli(nm.eps_2q)) bits[q] ^= 1;
            return;
        case GateKind::Swap:
            for (int rep = 0; rep < 3; ++rep)
                for (QubitId q : {g.controls[0], g.target})
                    if (rng.bernoulli(nm.eps_2q)) bits[q] ^= 1;
            return;
    }
}

Counts simulate_noisy_impl(const Circuit& c, const BitString& input, std::uint64_t shots,
                           const NoiseModel& nm, std::span<const QubitId> measured) {
    if (input.width() != c.width)
        throw std::invalid_argument(qfmt("simulate_noisy: input width %u != circuit width %u",
                                         input.width(), c.width));
    if (shots == 0) throw std::invalid_argument("simulate_noisy: shots must be >= 1");
    nm.check();
    for (QubitId q : measured)
        if (q >= c.width) throw std::invalid_argument("simulate_noisy: measured qubit out of range");

    const DagLayers dag = dag_layers(c);
    const double p_decay = 1.0 - std::exp(-1.0 / nm.t1_layers);

    // Per-layer idle sets, computed once and replayed every shot.
    std::vector<std::vector<QubitId>> idle_per_layer(dag.depth());
    {
        std::vector<std::uint8_t> active(c.width);
        for (std::size_t l = 0; l < dag.depth(); ++l) {
            std::fill(active.begin(), active.end(), 0);
            for (std::size_t gi : dag.layers[l])
                for (QubitId q : c.gates[gi].operands()) active[q] = 1;
            for (QubitId q = 0; q < c.width; ++q)
                if (!active[q]) idle_per_layer[l].push_back(q);
        }
    }

    Counts counts;
    std::vector<std::uint8_t> bits(c.width);
    std::string key(measured.size(), '0');
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        Rng rng = shot_rng(nm.seed, shot);
        for (std::uint32_t q = 0; q < c.width; ++q) bits[q] = input.get(q);
        for (std::size_t l = 0; l < dag.depth(); ++l) {
            for (std::size_t gi : dag.layers[l]) {
                apply_gate(c.gates[gi], bits);
                apply_gate_noise(c.gates[gi], bits, nm, rng);
            }
            for (QubitId q : idle_per_layer[l])
                if (bits[q] && rng.bernoulli(p_decay)) bits[q] = 0;
        }
        // Final readout of the measured qubits; slot j is text-form qubit j.
        for (std::size_t j = 0; j < measured.size(); ++j) {
            bool v = bits[measured[j]];
            if (rng.bernoulli(nm.eps_meas)) v = !v;
            key[measured.size() - 1 - j] = v ? '1' : '0';
        }
        counts.record(key);
    }
    return counts;
}

}  // namespace

Counts simulate_noisy(const Circuit& c, const BitString& input, std::uint64_t shots,
                      const NoiseModel& nm) {
    std::vector<QubitId> all(c.width);
    for (std::uint32_t q = 0; q < c.width; ++q) all[q] = q;
    return simulate_noisy_impl(c, input, shots, nm, all);
}

Counts simulate_noisy_measured(const Circuit& c, const BitString& input, std::uint64_t shots,
                               const NoiseModel& nm, std::span<const QubitId> measured_positions) {
    return simulate_noisy_impl(c, input, shots, nm, measured_positions);
}

double estimate_fidelity(const Circuit& c, const NoiseModel& nm) {
    nm.check();
    double fid = 1.0;
    for (const Gate& g : c.gates) {
        switch (g.kind) {
            case GateKind::X: fid *= 1.0 - nm.eps_1q; break;
            case GateKind::Measure: fid *= 1.0 - nm.eps_meas; break;
            case GateKind::Cnot:
            case GateKind::Toffoli:
            case GateKind::Mct:
                fid *= std::pow(1.0 - nm.eps_2q, static_cast<double>(g.operands().size()));
                break;
            case GateKind::Swap: fid *= std::pow(1.0 - nm.eps_2q, 6.0); break;
        }
    }
    const DagLayers dag = dag_layers(c);
    for (const auto& layer : dag.layers) {
        std::size_t busy = 0;
        for (std::size_t gi : layer) busy += c.gates[gi].operands().size();
        const double idle = static_cast<double>(c.width) - static_cast<double>(busy);
        fid *= std::exp(-idle / nm.t1_layers);
    }
    fid *= std::pow(1.0 - nm.eps_meas, static_cast<double>(c.width));
    return fid;
}

BitString argmax_outcome(const Counts& counts) {
    if (counts.histogram.empty())
        throw std::invalid_argument("argmax_outcome: empty counts");
    const std::string* best = nullptr;
    std::uint64_t best_n = 0;
    // histogram iterates in lexicographic key order, so strict > keeps the
    // smallest bitstring on ties.
    for (const auto& [key, n] : counts.histogram) {
        if (n > best_n) {
            best = &key;
            best_n = n;
        }
    }
    return BitString::parse(*best);
}

}  // namespace qdc
