/** \file
 * Reader/writer for the QASM 2.0 subset the pipeline consumes: qreg/creg,
 * x, cx, ccx, mcx, swap, measure and line comments.
 */
#pragma once

#include <stdexcept>
#include <string>

#include "qdc/circuit.hpp"

namespace qdc {

struct QasmError : std::runtime_error {
    int line;
    QasmError(int line, const std::string& what)
        : std::runtime_error("qasm:" + std::to_string(line) + ": " + what), line(line) {}
};

/// Parses the supported subset. Multiple qregs/cregs flatten into one index
/// space in declaration order. Rejects anything else with a line number.
Circuit parse_qasm(const std::string& text, const std::string& name = {});

/// parse_qasm over a file's contents; the circuit name is the file stem.
Circuit parse_qasm_file(const std::string& path);

/// Canonical text form; parse_qasm(serialize_qasm(c)) == c structurally.
std::string serialize_qasm(const Circuit& c);

void write_qasm_file(const Circuit& c, const std::string& path);

}  // namespace qdc
