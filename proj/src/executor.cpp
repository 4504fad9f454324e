#include "qdc/executor.hpp"

#include <algorithm>
#include <numeric>

#include "fmt_compat.hpp"
#include "qdc/rng.hpp"

namespace qdc {

namespace {

NoiseModel with_seed(const NoiseModel& nm, std::uint64_t seed) {
    NoiseModel out = nm;
    out.seed = seed;
    return out;
}

Circuit prep_circuit(std::uint32_t width, const BitString& bits) {
    Circuit prep(width);
    for (std::uint32_t q = 0; q < width; ++q)
        if (bits.get(q)) prep.add(Gate::x(q));
    return prep;
}

}  // namespace

DcRunReport run_dc(const SlicePlan& plan, const BitString& input, std::uint64_t shots,
                   const NoiseModel& nm) {
    if (plan.blocks.empty()) throw std::invalid_argument("run_dc: plan has no blocks");
    if (input.width() != plan.circuit.width)
        throw std::invalid_argument(qfmt("run_dc: input width %u != plan width %u",
                                         input.width(), plan.circuit.width));

    DcRunReport report;
    report.mode = plan.mode_label();
    BitString carried = input;
    for (std::size_t i = 0; i < plan.blocks.size(); ++i) {
        Circuit job_circuit(plan.circuit.width);
        job_circuit.creg_width = plan.circuit.creg_width;
        BitString start = carried;
        if (i > 0) {
            // Re-initialize from the previous argmax with noisy X gates.
            job_circuit = prep_circuit(plan.circuit.width, carried);
            start = BitString::zeros(plan.circuit.width);
        }
        const auto gates = plan.block_gates(i);
        job_circuit.gates.insert(job_circuit.gates.end(), gates.begin(), gates.end());

        const NoiseModel job_nm = with_seed(nm, derive_seed(nm.seed, kBlockSalt, i));
        JobRecord job;
        job.block_index = static_cast<int>(i);
        job.input = carried;
        job.shots = shots;
        job.counts = simulate_noisy(job_circuit, start, shots, job_nm);
        job.argmax = argmax_outcome(job.counts);
        carried = job.argmax;
        report.jobs.push_back(std::move(job));
    }
    report.final_counts = report.jobs.back().counts;
    report.job_count = report.jobs.size();
    return report;
}

DcRunReport run_baseline(const Circuit& c, const BitString& input, std::uint64_t shots,
                         const NoiseModel& nm) {
    return run_dc(plan_baseline(c), input, shots, nm);
}

SlicePlan reverse_dc(const SlicePlan& plan) {
    for (const Gate& g : plan.circuit.gates)
        if (g.kind == GateKind::Measure)
            throw CircuitError("reverse_dc: blocks must be measure-free");

    SlicePlan rev = plan;
    std::reverse(rev.circuit.gates.begin(), rev.circuit.gates.end());
    const std::size_t n = plan.circuit.gates.size();
    rev.blocks.clear();
    for (auto it = plan.blocks.rbegin(); it != plan.blocks.rend(); ++it)
        rev.blocks.push_back({n - it->end, n - it->begin, it->weight});
    return rev;
}

SuperpositionSpec SuperpositionSpec::ghz(std::uint32_t width, unsigned k,
                                         std::uint64_t total_shots) {
    SuperpositionSpec s;
    s.init = Init::Ghz;
    s.init_circuit = Circuit(width, "ghz");
    s.k = k;
    s.total_shots = total_shots;
    return s;
}

SuperpositionSpec SuperpositionSpec::with_init(Circuit init_circuit, unsigned k,
                                               std::uint64_t total_shots) {
    SuperpositionSpec s;
    s.init = Init::Circuit;
    s.init_circuit = std::move(init_circuit);
    s.k = k;
    s.total_shots = total_shots;
    return s;
}

std::vector<std::uint64_t> distribute_shots(const std::vector<std::uint64_t>& observed,
                                            std::uint64_t total) {
    const std::uint64_t sum = std::accumulate(observed.begin(), observed.end(), std::uint64_t{0});
    if (sum == 0) throw std::invalid_argument("distribute_shots: no observed counts");
    std::vector<std::uint64_t> shots(observed.size());
    std::vector<std::pair<std::uint64_t, std::size_t>> remainders;  // (remainder, index)
    std::uint64_t assigned = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const unsigned __int128 num =
            static_cast<unsigned __int128>(observed[i]) * total;
        shots[i] = static_cast<std::uint64_t>(num / sum);
        assigned += shots[i];
        remainders.push_back({static_cast<std::uint64_t>(num % sum), i});
    }
    // Hand out the leftover shots by largest remainder; ties go to the larger
    // observed count, then the earlier index.
    std::stable_sort(remainders.begin(), remainders.end(),
                     [&](const auto& a, const auto& b) {
                         if (a.first != b.first) return a.first > b.first;
                         return observed[a.second] > observed[b.second];
                     });
    for (std::size_t j = 0; assigned < total; ++j, ++assigned) ++shots[remainders[j].second];
    return shots;
}

namespace {

// The IR has no Hadamard, so the GHZ init is a built-in sampler: each shot is
// a fair coin between all-zeros and all-ones, read out with eps_meas flips.
Counts sample_ghz_init(std::uint32_t width, std::uint64_t shots, const NoiseModel& nm) {
    Counts counts;
    std::string key(width, '0');
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        Rng rng = shot_rng(nm.seed, shot);
        const bool one = rng.bernoulli(0.5);
        for (std::uint32_t q = 0; q < width; ++q) {
            bool v = one;
            if (rng.bernoulli(nm.eps_meas)) v = !v;
            key[width - 1 - q] = v ? '1' : '0';
        }
        counts.record(key);
    }
    return counts;
}

}  // namespace

DcRunReport run_superposition(const SuperpositionSpec& spec, const SlicePlan& plan,
                              const NoiseModel& nm, const RoutedPlan* routed) {
    if (spec.k < 1) throw std::invalid_argument("run_superposition: k must be >= 1");
    if (spec.total_shots < spec.k)
        throw std::invalid_argument("run_superposition: k exceeds the shot budget");
    if (spec.init_circuit.width > plan.circuit.width)
        throw std::invalid_argument(
            qfmt("run_superposition: init width %u exceeds plan width %u",
                 spec.init_circuit.width, plan.circuit.width));

    const NoiseModel init_nm = with_seed(nm, nm.seed + kInitSalt);
    Counts init_counts =
        spec.init == SuperpositionSpec::Init::Ghz
            ? sample_ghz_init(spec.init_circuit.width, spec.total_shots, init_nm)
            : simulate_noisy(spec.init_circuit, BitString::zeros(spec.init_circuit.width),
                             spec.total_shots, init_nm);

    DcRunReport report;
    report.mode = plan.mode_label() + (routed ? "+routed" : "") + "+superposition";

    JobRecord init_job;
    init_job.block_index = -1;
    init_job.input = BitString::zeros(spec.init_circuit.width);
    init_job.shots = spec.total_shots;
    init_job.argmax = argmax_outcome(init_counts);
    init_job.counts = std::move(init_counts);

    // Top-k outcomes by count; ties resolve to the smaller bitstring.
    std::vector<std::pair<std::string, std::uint64_t>> ranked(
        init_job.counts.histogram.begin(), init_job.counts.histogram.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    unsigned k = spec.k;
    if (k > ranked.size()) {
        report.warnings.push_back(qfmt("requested k=%u but only %zu distinct outcomes observed",
                                       k, ranked.size()));
        k = static_cast<unsigned>(ranked.size());
    }
    ranked.resize(k);

    std::vector<std::uint64_t> observed;
    for (const auto& [key, n] : ranked) observed.push_back(n);
    const std::vector<std::uint64_t> shot_split = distribute_shots(observed, spec.total_shots);

    report.jobs.push_back(std::move(init_job));
    for (std::size_t ci = 0; ci < ranked.size(); ++ci) {
        if (shot_split[ci] == 0) {
            report.warnings.push_back(
                qfmt("input %s received zero shots after rounding; dropped",
                     ranked[ci].first.c_str()));
            continue;
        }
        const BitString chain_input =
            BitString::parse(ranked[ci].first).padded(plan.circuit.width);
        const NoiseModel chain_nm = with_seed(nm, derive_seed(nm.seed, kChainSalt, ci));
        DcRunReport chain = routed
                                ? run_dc_routed(plan, *routed, chain_input, shot_split[ci], chain_nm)
                                : run_dc(plan, chain_input, shot_split[ci], chain_nm);
        for (JobRecord& job : chain.jobs) {
            job.chain = static_cast<int>(ci);
            report.jobs.push_back(std::move(job));
        }
        report.final_counts.merge(chain.final_counts);
        report.chains.push_back({chain_input, shot_split[ci], std::move(chain.final_counts)});
    }
    report.job_count = report.jobs.size();
    return report;
}

DcRunReport run_dc_routed(const SlicePlan& plan, const RoutedPlan& routed,
                          const BitString& input, std::uint64_t shots, const NoiseModel& nm) {
    if (plan.blocks.empty()) throw std::invalid_argument("run_dc_routed: plan has no blocks");
    if (routed.blocks.size() != plan.blocks.size())
        throw std::invalid_argument("run_dc_routed: routed block count != plan block count");
    const std::uint32_t width = plan.circuit.width;
    if (input.width() != width)
        throw std::invalid_argument("run_dc_routed: input width mismatch");

    DcRunReport report;
    report.mode = plan.mode_label() + "+routed";
    BitString carried = input;  // logical
    for (std::size_t i = 0; i < plan.blocks.size(); ++i) {
        const RoutedCircuit& rb = routed.blocks[i];
        const std::uint32_t phys_width = rb.circuit.width;

        Circuit job_circuit(phys_width);
        BitString start = BitString::zeros(phys_width);
        if (i == 0) {
            for (std::uint32_t q = 0; q < width; ++q)
                start.set(rb.layout_initial.phys(q), carried.get(q));
        } else {
            for (std::uint32_t q = 0; q < width; ++q)
                if (carried.get(q)) job_circuit.add(Gate::x(rb.layout_initial.phys(q)));
        }
        job_circuit.gates.insert(job_circuit.gates.end(), rb.circuit.gates.begin(),
                                 rb.circuit.gates.end());

        // Read back only the mapped logical qubits, through the final layout.
        std::vector<QubitId> measured(width);
        for (std::uint32_t q = 0; q < width; ++q) measured[q] = rb.layout_final.phys(q);

        const NoiseModel job_nm = with_seed(nm, derive_seed(nm.seed, kBlockSalt, i));
        JobRecord job;
        job.block_index = static_cast<int>(i);
        job.input = carried;
        job.shots = shots;
        job.counts = simulate_noisy_measured(job_circuit, start, shots, job_nm, measured);
        job.argmax = argmax_outcome(job.counts);
        carried = job.argmax;
        report.jobs.push_back(std::move(job));
    }
    report.final_counts = report.jobs.back().counts;
    report.job_count = report.jobs.size();
    return report;
}

}  // namespace qdc
