/** \file
 * qdc — depth-controlled execution of reversible-logic circuits.
 *
 * Subcommands: slice, run, route, report, bench-routing. Every artifact is
 * reproducible byte-for-byte from its inputs and seeds; wall-clock timing
 * only ever goes to stderr.
 */
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdc/executor.hpp"
#include "qdc/experiment.hpp"
#include "qdc/mapper.hpp"
#include "qdc/metrics.hpp"
#include "qdc/qasm.hpp"
#include "qdc/slicer.hpp"
#include "qdc/synth.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitCircuit = 3;
constexpr int kExitRouting = 4;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw qdc::ConfigError("cannot write output file: " + out_path);
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qdc::ConfigError("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string qfmt_pad(const std::string& text, std::size_t width) {
    std::string out = text;
    while (out.size() < width) out += ' ';
    return out;
}

int cmd_slice(const std::string& circuit_path, const std::string& mode_text,
              const std::string& noise_path, const std::string& out_path) {
    const qdc::Circuit circuit = qdc::parse_qasm_file(circuit_path);
    const qdc::ModeSpec mode = qdc::ModeSpec::parse(mode_text);
    qdc::SlicePlan plan;
    switch (mode.mode) {
        case qdc::SliceMode::Baseline:
            plan = qdc::plan_baseline(circuit);
            break;
        case qdc::SliceMode::Sdc:
            plan = qdc::slice_static(circuit, mode.budget);
            break;
        case qdc::SliceMode::Ddc: {
            if (noise_path.empty())
                throw qdc::ConfigError("ddc slicing needs --noise for the fidelity estimate");
            plan = qdc::slice_dynamic(circuit, mode.threshold, qdc::NoiseModel::load(noise_path));
            break;
        }
    }
    emit(qdc::plan_to_manifest(plan), out_path);
    std::cerr << "sliced " << circuit.name << " into " << qdc::plan_job_count(plan)
              << " block(s)\n";
    return 0;
}

int cmd_run(const std::string& config_path, const std::string& out_path) {
    qdc::ExperimentConfig cfg = qdc::ExperimentConfig::load(config_path);
    if (const char* env_seed = std::getenv("DC_SEED"))
        cfg.seed_override = std::stoull(env_seed);
    const qdc::RunArtifacts artifacts = qdc::run_experiment(cfg);
    std::cout << qdc::metrics_header_line() << '\n'
              << qdc::metrics_row_line(artifacts.row) << '\n';
    if (out_path.empty())
        std::cout << artifacts.report_json;
    else
        emit(artifacts.report_json, out_path);
    return 0;
}

std::string routed_stats_json(const qdc::RoutedPlan& rp, const std::string& layout,
                              const std::string& router, std::uint32_t physical_qubits) {
    nlohmann::json j;
    j["physical_qubits"] = physical_qubits;
    j["layout"] = layout;
    j["router"] = router;
    j["total_swaps"] = rp.total_swaps;
    nlohmann::json blocks = nlohmann::json::array();
    for (const qdc::RoutedCircuit& b : rp.blocks) {
        nlohmann::json jb;
        jb["swaps"] = b.swap_count;
        jb["layout_initial"] = b.layout_initial.to_phys;
        jb["layout_final"] = b.layout_final.to_phys;
        jb["routed_gates"] = b.circuit.gates.size();
        blocks.push_back(std::move(jb));
    }
    j["blocks"] = std::move(blocks);
    return j.dump(2) + "\n";
}

int cmd_route(const std::string& input_path, const std::string& map_spec,
              const std::string& layout, const std::string& router,
              const std::string& out_path) {
    const qdc::CouplingMap cm = qdc::CouplingMap::named_or_file(map_spec);
    const qdc::LayoutPolicy lp = qdc::layout_policy_from(layout);
    const qdc::RouterPolicy rp = qdc::router_policy_from(router);

    const std::string content = read_file(input_path);
    qdc::SlicePlan plan;
    const auto first = content.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && content[first] == '{') {
        plan = qdc::plan_from_manifest(content);
    } else {
        plan = qdc::plan_baseline(qdc::parse_qasm(
            content, std::filesystem::path(input_path).stem().string()));
    }
    const qdc::RoutedPlan routed = qdc::route_plan(plan, cm, lp, rp);
    emit(routed_stats_json(routed, layout, router, cm.physical_qubits), out_path);
    std::cerr << "route time: " << routed.total_route_seconds << " s over "
              << routed.blocks.size() << " block(s)\n";
    return 0;
}

// Table-shaped comparison: circuits as rows, one PST/E-Max/Job# column
// group per mode (baseline leftmost), plus PST ratios against the baseline.
int cmd_report(const std::vector<std::string>& report_paths) {
    std::map<std::string, std::map<std::string, qdc::MetricsRow>> table;  // name -> mode -> row
    std::vector<std::string> modes;
    for (const std::string& path : report_paths) {
        qdc::MetricsRow row = qdc::metrics_from_report_json(read_file(path));
        if (std::find(modes.begin(), modes.end(), row.mode) == modes.end())
            modes.push_back(row.mode);
        table[row.name][row.mode] = std::move(row);
    }
    std::stable_sort(modes.begin(), modes.end(), [](const std::string& a, const std::string& b) {
        if ((a == "baseline") != (b == "baseline")) return a == "baseline";
        return a < b;
    });

    char buf[64];
    std::cout << qfmt_pad("name", 20);
    for (const std::string& mode : modes) {
        std::snprintf(buf, sizeof buf, " | %-28s", mode.c_str());
        std::cout << buf;
    }
    std::cout << '\n' << qfmt_pad("", 20);
    for (std::size_t i = 0; i < modes.size(); ++i) {
        std::snprintf(buf, sizeof buf, " | %8s %10s %7s", "PST[%]", "E-Max(F)", "Job#");
        std::cout << buf;
    }
    std::cout << '\n';
    for (const auto& [name, by_mode] : table) {
        std::cout << qfmt_pad(name, 20);
        for (const std::string& mode : modes) {
            const auto it = by_mode.find(mode);
            if (it == by_mode.end()) {
                std::snprintf(buf, sizeof buf, " | %8s %10s %7s", "-", "-", "-");
            } else {
                std::snprintf(buf, sizeof buf, " | %8.1f %10.1f %7zu", it->second.pst,
                              it->second.e_max_f, it->second.job_count);
            }
            std::cout << buf;
        }
        std::cout << '\n';
    }

    bool printed_header = false;
    for (const auto& [name, by_mode] : table) {
        const auto base = by_mode.find("baseline");
        if (base == by_mode.end()) continue;
        for (const std::string& mode : modes) {
            if (mode == "baseline") continue;
            const auto it = by_mode.find(mode);
            if (it == by_mode.end()) continue;
            if (!printed_header) {
                std::cout << "\nPST ratio vs baseline:\n";
                printed_header = true;
            }
            if (base->second.pst > 0.0)
                std::snprintf(buf, sizeof buf, "%-20s %-20s %8.1fx", name.c_str(),
                              mode.c_str(), it->second.pst / base->second.pst);
            else
                std::snprintf(buf, sizeof buf, "%-20s %-20s %8s", name.c_str(), mode.c_str(),
                              "inf");
            std::cout << buf << '\n';
        }
    }
    return 0;
}

int cmd_bench_routing(const std::string& family, const std::vector<unsigned>& sizes, unsigned d,
                      const std::string& map_spec, unsigned width, const std::string& out_path,
                      const std::string& timing_out) {
    const qdc::CouplingMap cm = qdc::CouplingMap::named_or_file(map_spec);
    if (width > cm.physical_qubits)
        throw qdc::RoutingError("bench width exceeds the device size");
    if (family != "chain" && family != "mixed")
        throw qdc::ConfigError("unknown family '" + family + "' (chain | mixed)");

    auto make_circuit = [&](unsigned blocks) {
        if (family == "chain") return qdc::synth_cx_circuit(width, blocks * d, 71);
        qdc::SynthSpec spec;
        spec.width = width;
        spec.target_weight = blocks * d;
        spec.seed = 71;
        spec.mix_x = 1;
        spec.mix_cnot = 5;
        spec.mix_toffoli = 2;
        return qdc::synth_circuit(spec);
    };

    // Warm-up run, discarded.
    qdc::route_plan(qdc::slice_static(make_circuit(sizes.front()), d), cm,
                    qdc::LayoutPolicy::Trivial, qdc::RouterPolicy::Basic);

    std::ostringstream csv, timing;
    csv << "family,size,blocks,total_swaps\n";
    timing << "blocks,route_seconds\n";
    for (unsigned s : sizes) {
        const qdc::SlicePlan plan = qdc::slice_static(make_circuit(s), d);
        const qdc::RoutedPlan routed =
            qdc::route_plan(plan, cm, qdc::LayoutPolicy::Trivial, qdc::RouterPolicy::Basic);
        csv << family << ',' << s << ',' << routed.blocks.size() << ',' << routed.total_swaps
            << '\n';
        timing << routed.blocks.size() << ',' << routed.total_route_seconds << '\n';
    }
    emit(csv.str(), out_path);
    if (timing_out.empty())
        std::cerr << timing.str();
    else {
        std::ofstream t(timing_out);
        if (!t) throw qdc::ConfigError("cannot write timing file: " + timing_out);
        t << timing.str();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Depth Control for quantum classical circuits"};
    app.require_subcommand(1);

    std::string circuit_path, mode_text, noise_path, out_path;
    auto* slice = app.add_subcommand("slice", "slice a circuit into a block plan");
    slice->add_option("circuit", circuit_path, "circuit file (qasm subset)")->required();
    slice->add_option("--mode", mode_text, "baseline | sdc:<d> | ddc:<t>")->required();
    slice->add_option("--noise", noise_path, "noise model (required for ddc)");
    slice->add_option("--out", out_path, "manifest output path (default stdout)");

    std::string config_path, run_out;
    auto* run = app.add_subcommand("run", "execute an experiment config");
    run->add_option("config", config_path, "experiment config file")->required();
    run->add_option("--out", run_out, "report output path (default stdout)");

    std::string route_input, map_spec, layout = "trivial", router = "basic", route_out;
    auto* route = app.add_subcommand("route", "map and route a circuit or plan");
    route->add_option("input", route_input, "circuit (.qasm) or plan manifest (.json)")
        ->required();
    route->add_option("--map", map_spec, "coupling map name or file")->required();
    route->add_option("--layout", layout, "trivial | greedy");
    route->add_option("--router", router, "basic | lookahead");
    route->add_option("--out", route_out, "stats output path (default stdout)");

    std::vector<std::string> report_paths;
    auto* report = app.add_subcommand("report", "aggregate run reports into a comparison table");
    report->add_option("reports", report_paths, "report json files")->required();

    std::string family = "chain", bench_map = "heavy-hex-27", bench_out, timing_out;
    std::vector<unsigned> sizes;
    unsigned bench_d = 5, bench_width = 12;
    auto* bench = app.add_subcommand("bench-routing", "routing cost curves over block counts");
    bench->add_option("--family", family, "chain | mixed");
    bench->add_option("--sizes", sizes, "block counts to sweep")->required()->delimiter(',');
    bench->add_option("--d", bench_d, "block budget");
    bench->add_option("--map", bench_map, "coupling map name or file");
    bench->add_option("--width", bench_width, "logical width of the family");
    bench->add_option("--out", bench_out, "csv output path (default stdout)");
    bench->add_option("--timing-out", timing_out, "timing csv path (default stderr)");

    try {
        app.parse(argc, argv);
        if (slice->parsed()) return cmd_slice(circuit_path, mode_text, noise_path, out_path);
        if (run->parsed()) return cmd_run(config_path, run_out);
        if (route->parsed()) return cmd_route(route_input, map_spec, layout, router, route_out);
        if (report->parsed()) return cmd_report(report_paths);
        if (bench->parsed())
            return cmd_bench_routing(family, sizes, bench_d, bench_map, bench_width, bench_out,
                                     timing_out);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    } catch (const qdc::QasmError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCircuit;
    } catch (const qdc::CircuitError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCircuit;
    } catch (const qdc::RoutingError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRouting;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return 0;
}
