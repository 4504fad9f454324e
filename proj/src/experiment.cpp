#include "qdc/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fmt_compat.hpp"
#include "qdc/qasm.hpp"

namespace qdc {

ModeSpec ModeSpec::parse(const std::string& text) {
    ModeSpec spec;
    if (text == "baseline") return spec;
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    if (colon == std::string::npos || colon + 1 == text.size())
        throw ConfigError("mode '" + text + "' is missing its parameter (sdc:<d> | ddc:<t>)");
    const std::string arg = text.substr(colon + 1);
    try {
        if (head == "sdc") {
            spec.mode = SliceMode::Sdc;
            std::size_t pos = 0;
            spec.budget = static_cast<unsigned>(std::stoul(arg, &pos));
            if (pos != arg.size() || spec.budget < 1) throw std::invalid_argument(arg);
            return spec;
        }
        if (head == "ddc") {
            spec.mode = SliceMode::Ddc;
            std::size_t pos = 0;
            spec.threshold = std::stod(arg, &pos);
            if (pos != arg.size()) throw std::invalid_argument(arg);
            return spec;
        }
    } catch (const std::exception&) {
        throw ConfigError("mode '" + text + "' has a malformed parameter");
    }
    throw ConfigError("unknown mode '" + head + "' (baseline | sdc:<d> | ddc:<t>)");
}

std::string ModeSpec::label() const {
    switch (mode) {
        case SliceMode::Baseline: return "baseline";
        case SliceMode::Sdc: return qfmt("sdc:%u", budget);
        case SliceMode::Ddc: return "ddc:" + qfmt("%g", threshold);
    }
    return "?";
}

namespace {

std::string resolve(const std::filesystem::path& base, const std::string& path) {
    if (path.empty() || std::filesystem::path(path).is_absolute()) return path;
    return (base / path).string();
}

}  // namespace

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path);
    const std::filesystem::path base = std::filesystem::path(path).parent_path();

    ExperimentConfig cfg;
    std::string line;
    int line_no = 0;
    bool have_mode = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw ConfigError(qfmt("%s:%d: expected key = value", path.c_str(), line_no));
            continue;
        }
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string{};
            const auto b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) throw ConfigError(qfmt("%s:%d: empty value for '%s'", path.c_str(),
                                                  line_no, key.c_str()));
        try {
            if (key == "circuit") cfg.circuit_path = resolve(base, value);
            else if (key == "input") cfg.input_spec = value;
            else if (key == "k") cfg.k = static_cast<unsigned>(std::stoul(value));
            else if (key == "mode") { cfg.mode = ModeSpec::parse(value); have_mode = true; }
            else if (key == "shots") cfg.shots = std::stoull(value);
            else if (key == "noise") cfg.noise_path = resolve(base, value);
            else if (key == "seed") cfg.seed_override = std::stoull(value);
            else if (key == "coupling") cfg.coupling = value;
            else if (key == "layout") cfg.layout = value;
            else if (key == "router") cfg.router = value;
            else if (key == "expected") cfg.expected = value;
            else if (key == "name") cfg.name = value;
            else throw ConfigError(qfmt("%s:%d: unknown key '%s'", path.c_str(), line_no,
                                        key.c_str()));
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError(qfmt("%s:%d: bad value for '%s'", path.c_str(), line_no,
                                   key.c_str()));
        }
    }
    if (cfg.circuit_path.empty()) throw ConfigError(path + ": missing 'circuit'");
    if (cfg.noise_path.empty()) throw ConfigError(path + ": missing 'noise'");
    if (!have_mode) throw ConfigError(path + ": missing 'mode'");
    if (cfg.shots < 1) throw ConfigError(path + ": shots must be >= 1");
    if (cfg.coupling != "none" && !std::filesystem::path(cfg.coupling).is_absolute() &&
        cfg.coupling.rfind("linear-", 0) != 0 && cfg.coupling.rfind("grid-", 0) != 0 &&
        cfg.coupling != "heavy-hex-27")
        cfg.coupling = resolve(base, cfg.coupling);
    if (cfg.input_spec.rfind("init:", 0) == 0)
        cfg.input_spec = "init:" + resolve(base, cfg.input_spec.substr(5));
    return cfg;
}

namespace {

nlohmann::json counts_to_json(const Counts& counts) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [key, n] : counts.histogram) j[key] = n;
    return j;
}

nlohmann::json job_to_json(const JobRecord& job) {
    nlohmann::json j;
    j["block"] = job.block_index;
    j["chain"] = job.chain;
    j["input"] = job.input.str();
    j["shots"] = job.shots;
    j["argmax"] = job.argmax.str();
    j["counts"] = counts_to_json(job.counts);
    return j;
}

}  // namespace

std::string report_to_json(const DcRunReport& report, const MetricsRow& row) {
    nlohmann::json j;
    j["mode"] = report.mode;
    j["job_count"] = report.job_count;
    j["warnings"] = report.warnings;
    nlohmann::json jobs = nlohmann::json::array();
    for (const JobRecord& job : report.jobs) jobs.push_back(job_to_json(job));
    j["jobs"] = std::move(jobs);
    j["final_counts"] = counts_to_json(report.final_counts);
    if (!report.chains.empty()) {
        nlohmann::json chains = nlohmann::json::array();
        for (const ChainResult& c : report.chains)
            chains.push_back({{"input", c.input.str()},
                              {"shots", c.shots},
                              {"final_counts", counts_to_json(c.final_counts)}});
        j["chains"] = std::move(chains);
    }
    j["metrics"] = {{"name", row.name},
                    {"mode", row.mode},
                    {"pst", row.pst},
                    {"e_max_f", row.e_max_f},
                    {"job_count", row.job_count}};
    return j.dump(2) + "\n";
}

MetricsRow metrics_from_report_json(const std::string& json_text) {
    const nlohmann::json j = nlohmann::json::parse(json_text);
    const nlohmann::json& m = j.at("metrics");
    MetricsRow row;
    row.name = m.at("name").get<std::string>();
    row.mode = m.at("mode").get<std::string>();
    row.pst = m.at("pst").get<double>();
    row.e_max_f = m.at("e_max_f").get<double>();
    row.job_count = m.at("job_count").get<std::size_t>();
    return row;
}

RunArtifacts run_experiment(const ExperimentConfig& cfg) {
    const Circuit circuit = parse_qasm_file(cfg.circuit_path);
    if (circuit.gates.empty()) throw CircuitError(cfg.circuit_path + ": circuit has no gates");

    NoiseModel nm = NoiseModel::load(cfg.noise_path);
    if (cfg.seed_override) nm.seed = *cfg.seed_override;

    SlicePlan plan;
    switch (cfg.mode.mode) {
        case SliceMode::Baseline: plan = plan_baseline(circuit); break;
        case SliceMode::Sdc: plan = slice_static(circuit, cfg.mode.budget); break;
        case SliceMode::Ddc: plan = slice_dynamic(circuit, cfg.mode.threshold, nm); break;
    }

    RoutedPlan routed;
    const bool with_routing = cfg.coupling != "none";
    if (with_routing)
        routed = route_plan(plan, CouplingMap::named_or_file(cfg.coupling),
                            layout_policy_from(cfg.layout), router_policy_from(cfg.router));

    DcRunReport report;
    MetricsRow row;
    row.name = !cfg.name.empty() ? cfg.name : circuit.name;
    row.job_count = 0;

    if (cfg.input_spec == "ghz" || cfg.input_spec.rfind("init:", 0) == 0) {
        SuperpositionSpec spec =
            cfg.input_spec == "ghz"
                ? SuperpositionSpec::ghz(circuit.width, cfg.k, cfg.shots)
                : SuperpositionSpec::with_init(parse_qasm_file(cfg.input_spec.substr(5)), cfg.k,
                                               cfg.shots);
        report = run_superposition(spec, plan, nm, with_routing ? &routed : nullptr);
        std::vector<WeightedOutcome> outcomes;
        for (const ChainResult& chain : report.chains)
            outcomes.push_back({chain.final_counts, simulate_ideal(plan.circuit, chain.input),
                                static_cast<double>(chain.shots)});
        row.pst = pst(outcomes);
        row.e_max_f = e_max_f(outcomes);
    } else {
        BitString input = BitString::parse(cfg.input_spec);
        if (input.width() != circuit.width)
            throw ConfigError(qfmt("input is %u bits but the circuit has %u qubits",
                                   input.width(), circuit.width));
        input = input.padded(plan.circuit.width);
        report = with_routing ? run_dc_routed(plan, routed, input, cfg.shots, nm)
                              : run_dc(plan, input, cfg.shots, nm);
        const BitString expected = cfg.expected == "auto"
                                       ? simulate_ideal(plan.circuit, input)
                                       : BitString::parse(cfg.expected).padded(plan.circuit.width);
        row.pst = pst(report.final_counts, expected);
        row.e_max_f = e_max_f(report.final_counts, expected);
    }
    row.mode = report.mode;
    row.job_count = report.job_count;

    RunArtifacts artifacts;
    artifacts.report_json = report_to_json(report, row);
    artifacts.report = std::move(report);
    artifacts.row = std::move(row);
    return artifacts;
}

}  // namespace qdc
