/** \file
 * Experiment configuration and the run pipeline: parse, slice, optionally
 * route, execute, score. Everything downstream of a config file is
 * reproducible bit-for-bit from its seed.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qdc/executor.hpp"
#include "qdc/metrics.hpp"

namespace qdc {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// "baseline" | "sdc:<d>" | "ddc:<t>"
struct ModeSpec {
    SliceMode mode{SliceMode::Baseline};
    unsigned budget{0};
    double threshold{0.0};

    static ModeSpec parse(const std::string& text);
    std::string label() const;
};

struct ExperimentConfig {
    std::string circuit_path;
    std::string input_spec{"0"};  // bitstring | "ghz" | "init:<file>"
    unsigned k{2};                // superposition outcome count
    ModeSpec mode;
    std::uint64_t shots{5000};
    std::string noise_path;
    std::optional<std::uint64_t> seed_override;
    std::string coupling{"none"};  // none | named map | file
    std::string layout{"trivial"};
    std::string router{"basic"};
    std::string expected{"auto"};  // auto | bitstring
    std::string name;              // defaults to the circuit stem

    /// Flat key = value format, '#' comments. Relative paths resolve
    /// against the config file's directory.
    static ExperimentConfig load(const std::string& path);
};

struct RunArtifacts {
    DcRunReport report;
    MetricsRow row;
    std::string report_json;  // deterministic serialization of both
};

RunArtifacts run_experiment(const ExperimentConfig& cfg);

/// The deterministic report document (also embedded in RunArtifacts).
std::string report_to_json(const DcRunReport& report, const MetricsRow& row);

/// Reads the MetricsRow back out of a report document.
MetricsRow metrics_from_report_json(const std::string& json_text);

}  // namespace qdc
