#include "qdc/qasm.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "fmt_compat.hpp"

namespace qdc {

namespace {

struct Statement {
    std::string text;
    int line;
};

// Strips // comments and splits on ';'. A statement's line is where it starts.
std::vector<Statement> split_statements(const std::string& text) {
    std::vector<Statement> out;
    std::string current;
    int line = 1;
    int start_line = 1;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n') ++i;
            --i;
            continue;
        }
        if (text[i] == '\n') ++line;
        if (text[i] == ';') {
            out.push_back({current, start_line});
            current.clear();
            start_line = line;
            continue;
        }
        if (current.empty() && std::isspace(static_cast<unsigned char>(text[i]))) {
            start_line = line;
            continue;
        }
        current += text[i];
    }
    std::string rest = current;
    if (rest.find_first_not_of(" \t\r\n") != std::string::npos)
        throw QasmError(start_line, "unterminated statement (missing ';'): " + rest);
    return out;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

struct RegisterFile {
    std::map<std::string, std::pair<std::uint32_t, std::uint32_t>> regs;  // name -> (base, size)
    std::uint32_t total = 0;

    void declare(const std::string& name, std::uint32_t size, int line) {
        if (regs.count(name))
            throw QasmError(line, "register '" + name + "' already declared");
        regs[name] = {total, size};
        total += size;
    }

    std::uint32_t resolve(const std::string& ref, int line, const char* what) const {
        const auto lb = ref.find('[');
        const auto rb = ref.find(']');
        if (lb == std::string::npos || rb == std::string::npos || rb < lb || rb + 1 != ref.size())
            throw QasmError(line, qfmt("malformed %s operand '%s' (expected name[index])",
                                       what, ref.c_str()));
        const std::string name = trim(ref.substr(0, lb));
        const std::string idx_text = trim(ref.substr(lb + 1, rb - lb - 1));
        const auto it = regs.find(name);
        if (it == regs.end())
            throw QasmError(line, qfmt("unknown %s register '%s'", what, name.c_str()));
        std::size_t pos = 0;
        unsigned long idx = 0;
        try {
            idx = std::stoul(idx_text, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos == 0 || pos != idx_text.size())
            throw QasmError(line, qfmt("bad index '%s' in %s operand", idx_text.c_str(), what));
        if (idx >= it->second.second)
            throw QasmError(line, qfmt("index %lu out of range for %s '%s[%u]'", idx, what,
                                       name.c_str(), it->second.second));
        return it->second.first + static_cast<std::uint32_t>(idx);
    }
};

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    const std::string last = trim(cur);
    if (!last.empty() || !out.empty()) out.push_back(last);
    return out;
}

// "qreg q[5]" -> (q, 5)
std::pair<std::string, std::uint32_t> parse_decl(const std::string& body, int line) {
    const auto lb = body.find('[');
    const auto rb = body.find(']');
    if (lb == std::string::npos || rb == std::string::npos || rb < lb)
        throw QasmError(line, "malformed register declaration: " + body);
    const std::string name = trim(body.substr(0, lb));
    const std::string size_text = trim(body.substr(lb + 1, rb - lb - 1));
    if (name.empty()) throw QasmError(line, "register declaration missing a name");
    unsigned long size = 0;
    try {
        size = std::stoul(size_text);
    } catch (const std::exception&) {
        throw QasmError(line, "bad register size '" + size_text + "'");
    }
    if (size == 0) throw QasmError(line, "register size must be positive");
    return {name, static_cast<std::uint32_t>(size)};
}

void require_operands(const std::vector<std::string>& refs, std::size_t n, const char* gate,
                      int line) {
    std::size_t count = refs.size();
    const bool trailing_empty = !refs.empty() && refs.back().empty();
    if (trailing_empty) --count;  // "cx q[0]," style
    if (count < n || trailing_empty)
        throw QasmError(line, qfmt("%s expects %zu operands, got %zu (missing operand)",
                                   gate, n, count));
    if (count > n)
        throw QasmError(line, qfmt("%s expects %zu operands, got %zu", gate, n, count));
}

}  // namespace

Circuit parse_qasm(const std::string& text, const std::string& name) {
    Circuit circuit;
    circuit.name = name;
    RegisterFile qregs, cregs;
    bool saw_gate = false;

    for (const Statement& st : split_statements(text)) {
        std::istringstream words(st.text);
        std::string keyword;
        words >> keyword;
        if (keyword.empty()) continue;
        std::string body = trim(st.text.substr(keyword.size()));

        if (keyword == "OPENQASM" || keyword == "include") continue;

        if (keyword == "qreg" || keyword == "creg") {
            if (saw_gate) throw QasmError(st.line, "register declared after gates");
            auto [reg_name, size] = parse_decl(body, st.line);
            (keyword == "qreg" ? qregs : cregs).declare(reg_name, size, st.line);
            circuit.width = qregs.total;
            circuit.creg_width = cregs.total;
            continue;
        }

        saw_gate = true;
        if (keyword == "measure") {
            const auto arrow = body.find("->");
            if (arrow == std::string::npos)
                throw QasmError(st.line, "measure is missing its '->' classical target");
            const QubitId q = qregs.resolve(trim(body.substr(0, arrow)), st.line, "qubit");
            const std::uint32_t c =
                cregs.resolve(trim(body.substr(arrow + 2)), st.line, "classical");
            circuit.add(Gate::measure(q, c));
            continue;
        }

        const auto refs = split_commas(body);
        std::vector<QubitId> qs;
        for (const auto& r : refs)
            if (!r.empty()) qs.push_back(qregs.resolve(r, st.line, "qubit"));

        if (keyword == "x") {
            require_operands(refs, 1, "x", st.line);
            circuit.add(Gate::x(qs[0]));
        } else if (keyword == "cx") {
            require_operands(refs, 2, "cx", st.line);
            circuit.add(Gate::cnot(qs[0], qs[1]));
        } else if (keyword == "ccx") {
            require_operands(refs, 3, "ccx", st.line);
            circuit.add(Gate::toffoli(qs[0], qs[1], qs[2]));
        } else if (keyword == "swap") {
            require_operands(refs, 2, "swap", st.line);
            circuit.add(Gate::swap(qs[0], qs[1]));
        } else if (keyword == "mcx") {
            if (qs.size() < 4)
                throw QasmError(st.line,
                                qfmt("mcx expects at least 4 operands, got %zu", qs.size()));
            const QubitId target = qs.back();
            qs.pop_back();
            circuit.add(Gate::mct(std::move(qs), target));
        } else {
            throw QasmError(st.line, "unknown gate '" + keyword + "'");
        }
    }

    try {
        validate(circuit);
    } catch (const CircuitError& e) {
        throw QasmError(0, e.what());
    }
    return circuit;
}

Circuit parse_qasm_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open circuit file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    Circuit c = parse_qasm(buf.str(), std::filesystem::path(path).stem().string());
    return c;
}

std::string serialize_qasm(const Circuit& c) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    if (c.width > 0) out << "qreg q[" << c.width << "];\n";
    if (c.creg_width > 0) out << "creg c[" << c.creg_width << "];\n";
    for (const Gate& g : c.gates) {
        if (g.kind == GateKind::Measure) {
            out << "measure q[" << g.target << "] -> c[" << g.cbit.value_or(0) << "];\n";
            continue;
        }
        out << gate_name(g.kind) << ' ';
        bool first = true;
        for (QubitId q : g.operands()) {
            if (!first) out << ',';
            out << "q[" << q << ']';
            first = false;
        }
        out << ";\n";
    }
    return out.str();
}

void write_qasm_file(const Circuit& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write circuit file: " + path);
    out << serialize_qasm(c);
}

}  // namespace qdc
