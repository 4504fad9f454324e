#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qdc/qasm.hpp"
#include "support/gen.hpp"

using namespace qdc;

TEST_CASE("parses the supported subset") {
    const Circuit c = parse_qasm("qreg q[2]; x q[0]; cx q[0],q[1];");
    CHECK(c.width == 2);
    REQUIRE(c.gates.size() == 2);
    CHECK(c.gates[0] == Gate::x(0));
    CHECK(c.gates[1] == Gate::cnot(0, 1));

    const Circuit t = parse_qasm("qreg q[3]; ccx q[0],q[1],q[2];");
    CHECK(t.width == 3);
    REQUIRE(t.gates.size() == 1);
    CHECK(t.gates[0] == Gate::toffoli(0, 1, 2));
}

TEST_CASE("parses headers, comments, measure and mcx") {
    const std::string text =
        "OPENQASM 2.0;\n"
        "include \"qelib1.inc\";\n"
        "// classically reversible only\n"
        "qreg q[5];\n"
        "creg c[2];\n"
        "mcx q[0],q[1],q[2],q[3];\n"
        "swap q[3],q[4];\n"
        "measure q[0] -> c[1];\n";
    const Circuit c = parse_qasm(text);
    CHECK(c.width == 5);
    CHECK(c.creg_width == 2);
    REQUIRE(c.gates.size() == 3);
    CHECK(c.gates[0] == Gate::mct({0, 1, 2}, 3));
    CHECK(c.gates[1] == Gate::swap(3, 4));
    CHECK(c.gates[2] == Gate::measure(0, 1));
}

TEST_CASE("multiple registers flatten in declaration order") {
    const Circuit c = parse_qasm("qreg a[2]; qreg b[2]; cx a[1],b[0];");
    CHECK(c.width == 4);
    CHECK(c.gates[0] == Gate::cnot(1, 2));
}

TEST_CASE("errors carry line numbers and name the problem") {
    CHECK_THROWS_WITH_AS(parse_qasm("qreg q[2];\ncx q[0];"),
                         doctest::Contains("missing operand"), QasmError);
    try {
        parse_qasm("qreg q[2];\ncx q[0];");
    } catch (const QasmError& e) {
        CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(parse_qasm("qreg q[2]; h q[0];"), QasmError);          // unknown gate
    CHECK_THROWS_AS(parse_qasm("qreg q[2]; x q[7];"), QasmError);          // out of range
    CHECK_THROWS_AS(parse_qasm("qreg q[2]; x r[0];"), QasmError);          // unknown register
    CHECK_THROWS_AS(parse_qasm("qreg q[2]; cx q[0], q[0];"), QasmError);   // duplicate operand
    CHECK_THROWS_AS(parse_qasm("qreg q[2]; x q[0]"), QasmError);           // missing ';'
    CHECK_THROWS_AS(parse_qasm("qreg q[2]; creg c[1]; measure q[0];"), QasmError);
}

TEST_CASE("round-trip is the identity on the subset") {
    const char* samples[] = {
        "qreg q[2]; x q[0]; cx q[0],q[1];",
        "qreg q[3]; ccx q[0],q[1],q[2];",
        "qreg q[6]; creg c[6]; mcx q[0],q[1],q[2],q[3],q[5]; swap q[0],q[4]; "
        "measure q[5] -> c[0];",
        "qreg q[1];",
    };
    for (const char* text : samples) {
        const Circuit c = parse_qasm(text);
        CHECK(parse_qasm(serialize_qasm(c)) == c);
    }
}

TEST_CASE("round-trip holds on random circuits") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Circuit c = testgen::random_circuit(seed, 8, 60);
        c.creg_width = c.width;
        for (QubitId q = 0; q < c.width; ++q) c.add(Gate::measure(q, q));
        CHECK(parse_qasm(serialize_qasm(c)) == c);
    }
}

TEST_CASE("empty circuit serializes to declarations only") {
    const Circuit c(4);
    const std::string text = serialize_qasm(c);
    CHECK(text.find("qreg q[4];") != std::string::npos);
    CHECK(parse_qasm(text) == c);
}
