/** \file
 * Logical-to-physical layout and SWAP routing on a coupling map. Trivial and
 * interaction-greedy layouts; basic shortest-path and windowed-lookahead
 * routers. Multi-controlled gates route at gate granularity: their operands
 * must induce a connected subgraph of the coupling map.
 */
#pragma once

#include <chrono>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "qdc/circuit.hpp"
#include "qdc/slicer.hpp"

namespace qdc {

struct RoutingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CouplingMap {
    std::uint32_t physical_qubits{0};
    std::set<std::pair<QubitId, QubitId>> edges;  // stored with u < v

    void add_edge(QubitId u, QubitId v);
    bool adjacent(QubitId u, QubitId v) const;
    std::vector<std::vector<QubitId>> neighbor_lists() const;

    /// All-pairs BFS hop distances; unreachable pairs get kUnreachable.
    std::vector<std::vector<std::uint32_t>> distances() const;
    static constexpr std::uint32_t kUnreachable = 0xffffffff;

    /// "linear-N", "grid-RxC" or "heavy-hex-27" (27-qubit IBM Falcon-class
    /// heavy-hex graph).
    static CouplingMap named(const std::string& name);

    /// File format: first line physical qubit count, then "u v" edge lines.
    static CouplingMap load(const std::string& path);

    /// Resolves a named map or a file path.
    static CouplingMap named_or_file(const std::string& spec);
};

/// Injective logical -> physical assignment.
struct Layout {
    std::vector<QubitId> to_phys;  // index = logical qubit

    QubitId phys(QubitId logical) const { return to_phys.at(logical); }
    static Layout identity(std::uint32_t width);

    bool operator==(const Layout&) const = default;
};

enum class LayoutPolicy { Trivial, Greedy };
enum class RouterPolicy { Basic, Lookahead };

LayoutPolicy layout_policy_from(const std::string& name);
RouterPolicy router_policy_from(const std::string& name);

struct RoutedCircuit {
    Circuit circuit;  // operands are physical indices; SWAPs inserted
    std::size_t swap_count{0};
    Layout layout_initial;
    Layout layout_final;  // where each logical qubit sits after the swaps
    std::chrono::duration<double> route_time{0.0};
};

/// Routes one circuit. Deterministic for identical inputs and policies;
/// route_time is the only non-reproducible field.
RoutedCircuit route(const Circuit& c, const CouplingMap& cm, LayoutPolicy layout,
                    RouterPolicy router);

struct RoutedPlan {
    std::vector<RoutedCircuit> blocks;  // one per plan block, re-laid-out fresh
    std::size_t total_swaps{0};
    double total_route_seconds{0.0};
};

/// Routes every block of the plan independently.
RoutedPlan route_plan(const SlicePlan& p, const CouplingMap& cm, LayoutPolicy layout,
                      RouterPolicy router);

struct OverheadRow {
    std::string plan_id;
    std::size_t blocks{0};
    std::size_t swaps{0};
    std::size_t max_block_swaps{0};
    double route_seconds{0.0};
};

/// One row per plan, plus a leading single-block baseline row for `c`.
std::vector<OverheadRow> swap_overhead_report(const Circuit& c,
                                              const std::vector<SlicePlan>& plans,
                                              const CouplingMap& cm, LayoutPolicy layout,
                                              RouterPolicy router);

}  // namespace qdc
