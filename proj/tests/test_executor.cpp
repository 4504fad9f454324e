#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "qdc/executor.hpp"
#include "qdc/metrics.hpp"
#include "support/gen.hpp"

using namespace qdc;

namespace {

const NoiseModel kNoisy{0.002, 0.01, 0.005, 600.0, 21};

Circuit cx_chain(std::uint32_t width, unsigned n, std::uint64_t seed) {
    return synth_cx_circuit(width, n, seed);
}

}  // namespace

TEST_CASE("noiseless dc reproduces the ideal output on any plan") {
    Rng rng(2);
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const Circuit c = testgen::random_circuit(seed, 9, 90);
        const BitString input = testgen::random_bits(rng, 9);
        for (const SlicePlan& plan :
             {plan_baseline(c), slice_static(c, 1), slice_static(c, 7),
              slice_dynamic(c, 0.9, kNoisy)}) {
            const BitString padded = input.padded(plan.circuit.width);
            const DcRunReport report =
                run_dc(plan, padded, 24, NoiseModel::noiseless(seed));
            CHECK(argmax_outcome(report.final_counts) == simulate_ideal(plan.circuit, padded));
            CHECK(report.job_count == plan.blocks.size());
        }
    }
}

TEST_CASE("a one-block plan is exactly the plain noisy run") {
    const Circuit c = cx_chain(6, 40, 3);
    const BitString input = BitString::ones(6);
    const DcRunReport dc = run_dc(plan_baseline(c), input, 300, kNoisy);
    const DcRunReport baseline = run_baseline(c, input, 300, kNoisy);
    const Counts direct = simulate_noisy(c, input, 300, kNoisy);
    CHECK(dc.final_counts == direct);
    CHECK(baseline.final_counts == direct);
    CHECK(baseline.job_count == 1);
    CHECK(baseline.jobs[0].argmax == argmax_outcome(direct));
}

TEST_CASE("later blocks are re-initialized from the previous argmax") {
    const Circuit c = cx_chain(5, 20, 9);
    const SlicePlan plan = slice_static(c, 5);
    const DcRunReport report = run_dc(plan, BitString::zeros(5), 400, kNoisy);
    REQUIRE(report.jobs.size() == 4);
    for (std::size_t i = 1; i < report.jobs.size(); ++i)
        CHECK(report.jobs[i].input == report.jobs[i - 1].argmax);
    CHECK(report.final_counts == report.jobs.back().counts);
}

TEST_CASE("dc beats the baseline in the long-circuit regime") {
    const Circuit c = cx_chain(8, 120, 5);
    const BitString input = BitString::zeros(8);
    const BitString expected = simulate_ideal(c, input);
    const DcRunReport dc = run_dc(slice_static(c, 5), input, 2000, kNoisy);
    const DcRunReport base = run_baseline(c, input, 2000, kNoisy);
    CHECK(pst(dc.final_counts, expected) >= pst(base.final_counts, expected));
}

TEST_CASE("reverse dc recovers the input and is an involution") {
    Rng rng(31);
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const Circuit c = testgen::random_circuit(seed, 10, 60);
        const SlicePlan plan = slice_static(c, 4);
        const SlicePlan rev = reverse_dc(plan);

        // Structure: reversal twice is the identity.
        CHECK(reverse_dc(rev) == plan);
        CHECK(rev.blocks.size() == plan.blocks.size());

        // Forward then reverse, noiseless, recovers the input exactly.
        const BitString input =
            testgen::random_bits(rng, plan.circuit.width);
        const NoiseModel ideal = NoiseModel::noiseless(seed);
        const DcRunReport fwd = run_dc(plan, input, 16, ideal);
        const BitString mid = argmax_outcome(fwd.final_counts);
        const DcRunReport back = run_dc(rev, mid, 16, ideal);
        CHECK(argmax_outcome(back.final_counts) == input);
    }
}

TEST_CASE("single-block reverse is just the reversed gate list") {
    const Circuit c = cx_chain(4, 9, 2);
    const SlicePlan rev = reverse_dc(plan_baseline(c));
    REQUIRE(rev.blocks.size() == 1);
    Circuit expect(c.width, c.name);
    expect.gates.assign(c.gates.rbegin(), c.gates.rend());
    CHECK(rev.circuit == expect);
}

TEST_CASE("reverse dc rejects in-block measurements") {
    Circuit c(2);
    c.creg_width = 1;
    c.add(Gate::cnot(0, 1)).add(Gate::measure(0, 0));
    CHECK_THROWS_AS(reverse_dc(plan_baseline(c)), CircuitError);
}

TEST_CASE("shot distribution conserves the budget exactly") {
    Rng rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.below(6);
        std::vector<std::uint64_t> observed(n);
        for (auto& v : observed) v = 1 + rng.below(4000);
        const std::uint64_t total = 1 + rng.below(10000);
        const auto shots = distribute_shots(observed, total);
        CHECK(std::accumulate(shots.begin(), shots.end(), std::uint64_t{0}) == total);
        // Proportional to within one shot.
        const double sum = static_cast<double>(
            std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
        for (std::size_t i = 0; i < n; ++i) {
            const double ideal = static_cast<double>(observed[i]) / sum *
                                 static_cast<double>(total);
            CHECK(std::abs(static_cast<double>(shots[i]) - ideal) < 1.0);
        }
    }
    CHECK_THROWS_AS(distribute_shots({0, 0}, 10), std::invalid_argument);
}

TEST_CASE("noiseless ghz superposition splits into the two ideal outputs") {
    const Circuit c = cx_chain(6, 30, 13);
    const SlicePlan plan = slice_static(c, 5);
    const SuperpositionSpec spec = SuperpositionSpec::ghz(6, 2, 5000);
    const DcRunReport report = run_superposition(spec, plan, NoiseModel::noiseless(11));

    const std::string out0 = simulate_ideal(c, BitString::zeros(6)).str();
    const std::string out1 = simulate_ideal(c, BitString::ones(6)).str();
    REQUIRE(report.final_counts.histogram.size() == 2);
    CHECK(report.final_counts.total_shots == 5000);
    const std::uint64_t n0 = report.final_counts.count_of(out0);
    const std::uint64_t n1 = report.final_counts.count_of(out1);
    CHECK(n0 + n1 == 5000);
    // Fair-coin split within 4 sigma.
    CHECK(std::abs(static_cast<double>(n0) - 2500.0) <= 4 * std::sqrt(5000 * 0.25));

    // Job accounting: the init run plus every block of both chains.
    CHECK(report.job_count == 1 + 2 * plan.blocks.size());
    CHECK(report.jobs.front().block_index == -1);
    CHECK(report.chains.size() == 2);
}

TEST_CASE("k=1 with a deterministic init degenerates to run_dc") {
    const Circuit c = cx_chain(5, 25, 17);
    const SlicePlan plan = slice_static(c, 5);
    Circuit init(5, "prep");
    init.add(Gate::x(0)).add(Gate::x(3));
    const SuperpositionSpec spec = SuperpositionSpec::with_init(init, 1, 700);

    const DcRunReport sup = run_superposition(spec, plan, kNoisy);
    BitString prep_input(5);
    prep_input.set(0, true);
    prep_input.set(3, true);
    const DcRunReport direct = run_dc(plan, prep_input, 700, kNoisy);
    CHECK(sup.final_counts == direct.final_counts);
    CHECK(sup.job_count == 1 + direct.job_count);
}

TEST_CASE("k above the observed outcomes clamps with a warning") {
    Circuit c(3, "id");
    c.add(Gate::cnot(0, 1));
    const SlicePlan plan = plan_baseline(c);
    Circuit init(3, "prep");  // deterministic: only one outcome to observe
    init.add(Gate::x(2));
    const SuperpositionSpec spec = SuperpositionSpec::with_init(init, 4, 100);
    const DcRunReport report = run_superposition(spec, plan, NoiseModel::noiseless());
    CHECK(report.chains.size() == 1);
    REQUIRE(!report.warnings.empty());
    CHECK(report.warnings[0].find("k=4") != std::string::npos);
}

TEST_CASE("executor input validation") {
    const Circuit c = cx_chain(4, 8, 1);
    const SlicePlan plan = slice_static(c, 3);
    CHECK_THROWS_AS(run_dc(plan, BitString::zeros(3), 10, kNoisy), std::invalid_argument);
    CHECK_THROWS_AS(run_dc(SlicePlan{}, BitString::zeros(0), 10, kNoisy),
                    std::invalid_argument);
}
