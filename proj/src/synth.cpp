#include "qdc/synth.hpp"

#include <algorithm>
#include <stdexcept>

#include "fmt_compat.hpp"
#include "qdc/rng.hpp"

namespace qdc {

namespace {

std::vector<QubitId> draw_distinct(Rng& rng, std::uint32_t width, std::size_t n) {
    std::vector<QubitId> out;
    while (out.size() < n) {
        const QubitId q = static_cast<QubitId>(rng.below(width));
        if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
    }
    return out;
}

}  // namespace

Circuit synth_circuit(const SynthSpec& spec) {
    if (spec.width < 2) throw std::invalid_argument("synth_circuit: width must be >= 2");
    unsigned mix_toffoli = spec.width >= 3 ? spec.mix_toffoli : 0;
    unsigned mix_mct = spec.width >= 4 ? spec.mix_mct : 0;
    const unsigned total_mix = spec.mix_x + spec.mix_cnot + mix_toffoli + mix_mct;
    if (spec.mix_cnot + mix_toffoli + mix_mct == 0)
        throw std::invalid_argument("synth_circuit: mix has no weighted gates");

    Circuit c(spec.width, qfmt("synth-w%u-g%u-s%llu", spec.width, spec.target_weight,
                               static_cast<unsigned long long>(spec.seed)));
    Rng rng(mix64(spec.seed));
    unsigned weight = 0;
    while (weight < spec.target_weight) {
        unsigned pick = static_cast<unsigned>(rng.below(total_mix));
        if (pick < spec.mix_x) {
            c.add(Gate::x(static_cast<QubitId>(rng.below(spec.width))));
            continue;
        }
        pick -= spec.mix_x;
        if (pick < spec.mix_cnot) {
            const auto q = draw_distinct(rng, spec.width, 2);
            c.add(Gate::cnot(q[0], q[1]));
        } else if (pick < spec.mix_cnot + mix_toffoli) {
            const auto q = draw_distinct(rng, spec.width, 3);
            c.add(Gate::toffoli(q[0], q[1], q[2]));
        } else {
            const std::uint32_t k_max = std::min<std::uint32_t>(spec.width - 1, 6);
            const std::uint32_t k = 3 + static_cast<std::uint32_t>(rng.below(k_max - 2));
            auto q = draw_distinct(rng, spec.width, k + 1);
            const QubitId target = q.back();
            q.pop_back();
            c.add(Gate::mct(std::move(q), target));
        }
        weight += gate_weight(c.gates.back());
    }
    return c;
}

Circuit synth_cx_circuit(std::uint32_t width, unsigned weight, std::uint64_t seed) {
    SynthSpec spec;
    spec.width = width;
    spec.target_weight = weight;
    spec.seed = seed;
    spec.mix_x = 0;
    spec.mix_cnot = 1;
    spec.mix_toffoli = 0;
    spec.mix_mct = 0;
    return synth_circuit(spec);
}

}  // namespace qdc
