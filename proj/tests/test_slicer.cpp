#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qdc/slicer.hpp"
#include "support/gen.hpp"

using namespace qdc;

namespace {

Circuit cnot_chain(std::uint32_t width, unsigned n) {
    Circuit c(width, "chain");
    for (unsigned i = 0; i < n; ++i)
        c.add(Gate::cnot(i % width, (i + 1) % width));
    return c;
}

void check_reassembly(const SlicePlan& plan) {
    std::size_t expect = 0;
    for (const Block& b : plan.blocks) {
        CHECK(b.begin == expect);
        CHECK(b.end > b.begin);
        expect = b.end;
    }
    CHECK(expect == plan.circuit.gates.size());
}

const NoiseModel kNoisy{0.002, 0.01, 0.005, 600.0, 7};

}  // namespace

TEST_CASE("even division and the smaller final block") {
    const SlicePlan even = slice_static(cnot_chain(4, 10), 5);
    REQUIRE(even.blocks.size() == 2);
    CHECK(even.blocks[0].weight == 5);
    CHECK(even.blocks[1].weight == 5);

    Circuit toffolis(4, "t7");
    for (int i = 0; i < 7; ++i) toffolis.add(Gate::toffoli(0, 1, 2));
    const SlicePlan uneven = slice_static(toffolis, 5);
    REQUIRE(uneven.blocks.size() == 2);
    CHECK(uneven.blocks[0].weight == 5);
    CHECK(uneven.blocks[1].weight == 2);
}

TEST_CASE("job count is the weight ceiling for unit-weight circuits") {
    Rng rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        const unsigned weight = 1 + static_cast<unsigned>(rng.below(120));
        const unsigned d = 1 + static_cast<unsigned>(rng.below(9));
        const Circuit c = testgen::random_circuit(trial, 7, weight, /*with_mct=*/false);
        const unsigned m = circuit_weight(c);
        const SlicePlan plan = slice_static(c, d);
        CHECK(plan_job_count(plan) == (m + d - 1) / d);
        check_reassembly(plan);
        for (std::size_t i = 0; i + 1 < plan.blocks.size(); ++i)
            CHECK(plan.blocks[i].weight == d);
        CHECK(plan.blocks.back().weight <= d);
    }
}

TEST_CASE("zero-weight gates ride with the open block") {
    Circuit c(3, "xs");
    c.add(Gate::x(0)).add(Gate::cnot(0, 1)).add(Gate::x(1)).add(Gate::cnot(1, 2))
        .add(Gate::x(2));
    const SlicePlan plan = slice_static(c, 1);
    REQUIRE(plan.blocks.size() == 2);
    // [x, cx, x] then [cx, x]: X gates never open a block on their own.
    CHECK(plan.blocks[0].end == 3);
    CHECK(plan.blocks[1].end == 5);
}

TEST_CASE("an over-budget mct is compiled down and sliced through") {
    Circuit c(6, "wide");
    c.add(Gate::mct({0, 1, 2, 3, 4}, 5));  // weight 7
    const SlicePlan plan = slice_static(c, 3);
    CHECK(plan.circuit.width == 6 + 3);  // k-2 ancillas appended
    CHECK(circuit_weight(plan.circuit) == 7);
    CHECK(plan_job_count(plan) == 3);  // ceil(7/3)
    for (const Gate& g : plan.circuit.gates) CHECK(g.kind == GateKind::Toffoli);

    // Within budget it stays atomic.
    const SlicePlan atomic = slice_static(c, 7);
    CHECK(atomic.circuit.width == 6);
    CHECK(plan_job_count(atomic) == 1);
    CHECK(atomic.circuit.gates[0].kind == GateKind::Mct);
}

TEST_CASE("expansion preserves semantics") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SynthSpec spec;
        spec.width = 7;
        spec.target_weight = 40;
        spec.seed = seed;
        spec.mix_mct = 3;
        const Circuit c = synth_circuit(spec);
        const Circuit expanded = expand_over_budget(c, 3);
        Rng rng(seed);
        for (int i = 0; i < 8; ++i) {
            const BitString x = testgen::random_bits(rng, c.width);
            const BitString padded = x.padded(expanded.width);
            const BitString out = simulate_ideal(expanded, padded);
            const BitString want = simulate_ideal(c, x);
            for (std::uint32_t q = 0; q < c.width; ++q) CHECK(out.get(q) == want.get(q));
            for (std::uint32_t q = c.width; q < expanded.width; ++q) CHECK(!out.get(q));
        }
    }
}

TEST_CASE("a swap with no budget becomes its three cnots") {
    Circuit c(2, "swap");
    c.add(Gate::swap(0, 1));
    const SlicePlan plan = slice_static(c, 1);
    CHECK(plan_job_count(plan) == 3);
    for (const Gate& g : plan.circuit.gates) CHECK(g.kind == GateKind::Cnot);
    for (const Block& b : plan.blocks) CHECK(b.weight <= 1);

    BitString in(2);
    in.set(0, true);
    const BitString out = simulate_ideal(plan.circuit, in);
    CHECK(!out.get(0));
    CHECK(out.get(1));
}

TEST_CASE("ddc reproduces the hand-computed 16-cnot slicing") {
    Circuit chain(2, "chain16");
    for (int i = 0; i < 16; ++i) chain.add(Gate::cnot(i % 2, (i + 1) % 2));
    NoiseModel nm{0.0, 0.01, 0.0, 1e12, 0};
    // (0.99^2)^16 = 0.725 < 0.9; halve to 8: 0.851 < 0.9; halve to 4: 0.923 >= 0.9.
    const SlicePlan plan = slice_dynamic(chain, 0.9, nm);
    REQUIRE(plan.blocks.size() == 4);
    for (const Block& b : plan.blocks) CHECK(b.weight == 4);
    CHECK(!plan.floor_warning);
    CHECK(plan_job_count(plan) == 4);
    check_reassembly(plan);
}

TEST_CASE("ddc limit behaviors") {
    const Circuit c = cnot_chain(3, 20);
    // A vanishing threshold accepts the whole circuit.
    CHECK(plan_job_count(slice_dynamic(c, 1e-9, kNoisy)) == 1);

    // A threshold no block can meet floors at single weighted gates.
    const SlicePlan floor = slice_dynamic(c, 0.999999, kNoisy);
    CHECK(plan_job_count(floor) == circuit_weight(c));
    CHECK(floor.floor_warning);

    CHECK_THROWS_AS(slice_dynamic(c, 0.0, kNoisy), std::invalid_argument);
    CHECK_THROWS_AS(slice_dynamic(c, 1.0, kNoisy), std::invalid_argument);
}

TEST_CASE("ddc block count is monotone in the threshold") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const Circuit c = testgen::random_circuit(seed, 8, 80);
        std::size_t prev = 0;
        for (double t : {0.3, 0.5, 0.7, 0.85, 0.95}) {
            const std::size_t blocks = plan_job_count(slice_dynamic(c, t, kNoisy));
            CHECK(blocks >= prev);
            prev = blocks;
        }
        check_reassembly(slice_dynamic(c, 0.8, kNoisy));
    }
}

TEST_CASE("every non-floor ddc block meets the threshold") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Circuit c = testgen::random_circuit(seed, 8, 60);
        const double threshold = 0.85;
        const SlicePlan plan = slice_dynamic(c, threshold, kNoisy);
        for (std::size_t i = 0; i < plan.blocks.size(); ++i) {
            Circuit seg(plan.circuit.width);
            const auto gates = plan.block_gates(i);
            seg.gates.assign(gates.begin(), gates.end());
            if (plan.blocks[i].weight > 1)
                CHECK(estimate_fidelity(seg, kNoisy) >= threshold);
        }
    }
}

TEST_CASE("ddc splits only when the whole segment fails") {
    // A passing circuit is never sliced; a sliced circuit must have failed.
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const Circuit c = testgen::random_circuit(seed, 8, 60);
        for (double t : {0.5, 0.8, 0.9}) {
            const SlicePlan plan = slice_dynamic(c, t, kNoisy);
            const double whole = estimate_fidelity(c, kNoisy);
            if (whole >= t)
                CHECK(plan_job_count(plan) == 1);
            else
                CHECK(plan_job_count(plan) >= 2);
        }
    }
}

TEST_CASE("baseline plan and the 200/5 job count") {
    const Circuit c = cnot_chain(10, 200);
    CHECK(plan_job_count(plan_baseline(c)) == 1);
    CHECK(plan_job_count(slice_static(c, 5)) == 40);

    Circuit one(2, "one");
    one.add(Gate::cnot(0, 1));
    CHECK(plan_job_count(slice_static(one, 5)) == 1);
}

TEST_CASE("manifest round trip") {
    SynthSpec spec;
    spec.width = 6;
    spec.target_weight = 30;
    spec.seed = 5;
    spec.mix_mct = 2;
    const Circuit c = synth_circuit(spec);
    for (const SlicePlan& plan :
         {slice_static(c, 4), slice_dynamic(c, 0.8, kNoisy), plan_baseline(c)}) {
        const SlicePlan back = plan_from_manifest(plan_to_manifest(plan));
        CHECK(back.mode == plan.mode);
        CHECK(back.budget == plan.budget);
        CHECK(back.threshold == doctest::Approx(plan.threshold));
        CHECK(back.blocks == plan.blocks);
        CHECK(back.circuit == plan.circuit);
        CHECK(back.floor_warning == plan.floor_warning);
    }
    CHECK_THROWS(plan_from_manifest("{\"mode\":\"sdc\"}"));
}

TEST_CASE("slicing rejects bad arguments") {
    const Circuit c = cnot_chain(3, 4);
    CHECK_THROWS_AS(slice_static(c, 0), std::invalid_argument);
    CHECK_THROWS_AS(slice_static(Circuit(3), 2), std::invalid_argument);
}
