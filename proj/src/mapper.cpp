#include "qdc/mapper.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>

#include "fmt_compat.hpp"

namespace qdc {

void CouplingMap::add_edge(QubitId u, QubitId v) {
    if (u == v) throw RoutingError("coupling map: self-loop edge");
    if (u >= physical_qubits || v >= physical_qubits)
        throw RoutingError(qfmt("coupling map: edge (%u,%u) out of range (%u qubits)", u, v,
                                physical_qubits));
    edges.insert({std::min(u, v), std::max(u, v)});
}

bool CouplingMap::adjacent(QubitId u, QubitId v) const {
    return edges.count({std::min(u, v), std::max(u, v)}) > 0;
}

std::vector<std::vector<QubitId>> CouplingMap::neighbor_lists() const {
    std::vector<std::vector<QubitId>> adj(physical_qubits);
    for (const auto& [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    return adj;
}

std::vector<std::vector<std::uint32_t>> CouplingMap::distances() const {
    const auto adj = neighbor_lists();
    std::vector<std::vector<std::uint32_t>> dist(
        physical_qubits, std::vector<std::uint32_t>(physical_qubits, kUnreachable));
    for (QubitId s = 0; s < physical_qubits; ++s) {
        dist[s][s] = 0;
        std::deque<QubitId> queue{s};
        while (!queue.empty()) {
            const QubitId u = queue.front();
            queue.pop_front();
            for (QubitId v : adj[u]) {
                if (dist[s][v] != kUnreachable) continue;
                dist[s][v] = dist[s][u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

CouplingMap CouplingMap::named(const std::string& name) {
    CouplingMap cm;
    if (name.rfind("linear-", 0) == 0) {
        const unsigned n = static_cast<unsigned>(std::stoul(name.substr(7)));
        if (n == 0) throw RoutingError("linear map needs at least one qubit");
        cm.physical_qubits = n;
        for (QubitId i = 0; i + 1 < n; ++i) cm.add_edge(i, i + 1);
        return cm;
    }
    if (name.rfind("grid-", 0) == 0) {
        const std::string dims = name.substr(5);
        const auto x = dims.find('x');
        if (x == std::string::npos) throw RoutingError("grid map spec must be grid-RxC");
        const unsigned rows = static_cast<unsigned>(std::stoul(dims.substr(0, x)));
        const unsigned cols = static_cast<unsigned>(std::stoul(dims.substr(x + 1)));
        if (rows == 0 || cols == 0) throw RoutingError("grid map needs positive dimensions");
        cm.physical_qubits = rows * cols;
        for (unsigned r = 0; r < rows; ++r)
            for (unsigned c = 0; c < cols; ++c) {
                const QubitId q = r * cols + c;
                if (c + 1 < cols) cm.add_edge(q, q + 1);
                if (r + 1 < rows) cm.add_edge(q, q + cols);
            }
        return cm;
    }
    if (name == "heavy-hex-27") {
        // 27-qubit Falcon-class heavy-hex graph (ibm_cairo topology class).
        cm.physical_qubits = 27;
        const std::pair<QubitId, QubitId> edges[] = {
            {0, 1},   {1, 2},   {1, 4},   {2, 3},   {3, 5},   {4, 7},   {5, 8},
            {6, 7},   {7, 10},  {8, 9},   {8, 11},  {10, 12}, {11, 14}, {12, 13},
            {12, 15}, {13, 14}, {14, 16}, {15, 18}, {16, 19}, {17, 18}, {18, 21},
            {19, 20}, {19, 22}, {21, 23}, {22, 25}, {23, 24}, {24, 25}, {25, 26}};
        for (const auto& [u, v] : edges) cm.add_edge(u, v);
        return cm;
    }
    throw RoutingError("unknown coupling map '" + name + "'");
}

CouplingMap CouplingMap::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw RoutingError("cannot open coupling map: " + path);
    CouplingMap cm;
    std::string line;
    bool have_count = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream words(line);
        if (!have_count) {
            if (words >> cm.physical_qubits) have_count = true;
            continue;
        }
        QubitId u, v;
        if (!(words >> u)) continue;
        if (!(words >> v))
            throw RoutingError(qfmt("%s:%d: edge line needs two indices", path.c_str(), line_no));
        cm.add_edge(u, v);
    }
    if (!have_count) throw RoutingError(path + ": missing qubit count line");
    return cm;
}

CouplingMap CouplingMap::named_or_file(const std::string& spec) {
    if (spec.rfind("linear-", 0) == 0 || spec.rfind("grid-", 0) == 0 || spec == "heavy-hex-27")
        return named(spec);
    return load(spec);
}

Layout Layout::identity(std::uint32_t width) {
    Layout l;
    l.to_phys.resize(width);
    for (std::uint32_t q = 0; q < width; ++q) l.to_phys[q] = q;
    return l;
}

LayoutPolicy layout_policy_from(const std::string& name) {
    if (name == "trivial") return LayoutPolicy::Trivial;
    if (name == "greedy") return LayoutPolicy::Greedy;
    throw RoutingError("unknown layout policy '" + name + "' (trivial|greedy)");
}

RouterPolicy router_policy_from(const std::string& name) {
    if (name == "basic") return RouterPolicy::Basic;
    if (name == "lookahead") return RouterPolicy::Lookahead;
    throw RoutingError("unknown router policy '" + name + "' (basic|lookahead)");
}

namespace {

constexpr std::size_t kLookaheadWindow = 20;
constexpr double kLookaheadDecay = 0.8;

// Interaction-greedy placement: most-interacting logical pairs grab adjacent
// physical slots first, the rest fill in BFS-nearest to what is placed.
Layout greedy_layout(const Circuit& c, const CouplingMap& cm,
                     const std::vector<std::vector<std::uint32_t>>& dist) {
    const auto adj = cm.neighbor_lists();
    std::map<std::pair<QubitId, QubitId>, std::uint64_t> interactions;
    for (const Gate& g : c.gates) {
        const auto ops = g.operands();
        if (g.kind == GateKind::Measure || ops.size() < 2) continue;
        for (std::size_t a = 0; a < ops.size(); ++a)
            for (std::size_t b = a + 1; b < ops.size(); ++b)
                ++interactions[{std::min(ops[a], ops[b]), std::max(ops[a], ops[b])}];
    }
    std::vector<std::pair<std::pair<QubitId, QubitId>, std::uint64_t>> ranked(
        interactions.begin(), interactions.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });

    const QubitId unplaced = CouplingMap::kUnreachable;
    std::vector<QubitId> to_phys(c.width, unplaced);
    std::vector<bool> occupied(cm.physical_qubits, false);

    auto free_degree = [&](QubitId p) {
        std::size_t n = 0;
        for (QubitId v : adj[p])
            if (!occupied[v]) ++n;
        return n;
    };
    auto place = [&](QubitId logical, QubitId phys) {
        to_phys[logical] = phys;
        occupied[phys] = true;
    };
    auto nearest_free = [&](QubitId from) {
        QubitId best = unplaced;
        std::uint32_t best_d = CouplingMap::kUnreachable;
        for (QubitId p = 0; p < cm.physical_qubits; ++p) {
            if (occupied[p] || dist[from][p] == CouplingMap::kUnreachable) continue;
            if (dist[from][p] < best_d) {
                best_d = dist[from][p];
                best = p;
            }
        }
        return best;
    };

    for (const auto& [pair, count] : ranked) {
        const auto [a, b] = pair;
        if (to_phys[a] != unplaced && to_phys[b] != unplaced) continue;
        if (to_phys[a] == unplaced && to_phys[b] == unplaced) {
            // Anchor on the free slot with the most free neighbors.
            QubitId anchor = unplaced;
            std::size_t anchor_deg = 0;
            for (QubitId p = 0; p < cm.physical_qubits; ++p) {
                if (occupied[p]) continue;
                const std::size_t deg = free_degree(p);
                if (anchor == unplaced || deg > anchor_deg) {
                    anchor = p;
                    anchor_deg = deg;
                }
            }
            if (anchor == unplaced) throw RoutingError("greedy layout: out of physical qubits");
            place(a, anchor);
            const QubitId mate = nearest_free(anchor);
            if (mate == unplaced) throw RoutingError("greedy layout: out of physical qubits");
            place(b, mate);
        } else {
            const QubitId placed = to_phys[a] != unplaced ? a : b;
            const QubitId missing = to_phys[a] != unplaced ? b : a;
            const QubitId slot = nearest_free(to_phys[placed]);
            if (slot == unplaced) throw RoutingError("greedy layout: out of physical qubits");
            place(missing, slot);
        }
    }
    // Idle or non-interacting qubits take the lowest free slots.
    for (QubitId q = 0; q < c.width; ++q) {
        if (to_phys[q] != unplaced) continue;
        QubitId p = 0;
        while (p < cm.physical_qubits && occupied[p]) ++p;
        if (p == cm.physical_qubits) throw RoutingError("greedy layout: out of physical qubits");
        place(q, p);
    }
    Layout layout;
    layout.to_phys = std::move(to_phys);
    return layout;
}

struct RouterState {
    const CouplingMap& cm;
    const std::vector<std::vector<std::uint32_t>>& dist;
    std::vector<std::vector<QubitId>> adj;
    std::vector<QubitId> phys_of;  // logical -> physical
    std::vector<QubitId> log_at;   // physical -> logical (or npos)
    Circuit out;
    std::size_t swaps = 0;

    static constexpr QubitId npos = CouplingMap::kUnreachable;

    RouterState(const CouplingMap& cm_, const std::vector<std::vector<std::uint32_t>>& dist_,
                const Layout& layout, std::uint32_t logical_width, std::uint32_t creg_width)
        : cm(cm_), dist(dist_), adj(cm_.neighbor_lists()), out(cm_.physical_qubits) {
        out.creg_width = creg_width;
        phys_of = layout.to_phys;
        log_at.assign(cm.physical_qubits, npos);
        for (QubitId q = 0; q < logical_width; ++q) {
            if (phys_of[q] >= cm.physical_qubits)
                throw RoutingError("layout maps a qubit outside the device");
            if (log_at[phys_of[q]] != npos)
                throw RoutingError("layout is not injective");
            log_at[phys_of[q]] = q;
        }
    }

    void apply_swap(QubitId pu, QubitId pv) {
        out.add(Gate::swap(pu, pv));
        ++swaps;
        const QubitId lu = log_at[pu];
        const QubitId lv = log_at[pv];
        std::swap(log_at[pu], log_at[pv]);
        if (lu != npos) phys_of[lu] = pv;
        if (lv != npos) phys_of[lv] = pu;
    }

    std::uint32_t d(QubitId pu, QubitId pv) const {
        const std::uint32_t v = dist[pu][pv];
        if (v == CouplingMap::kUnreachable)
            throw RoutingError("gate operands lie in disconnected coupling components");
        return v;
    }

    // A gate is executable when its operands induce a connected subgraph.
    bool executable(const Gate& g) const {
        const auto ops = g.operands();
        if (ops.size() < 2) return true;
        std::vector<QubitId> phys;
        for (QubitId q : ops) phys.push_back(phys_of[q]);
        if (phys.size() == 2) return cm.adjacent(phys[0], phys[1]);
        std::vector<bool> reached(phys.size(), false);
        std::deque<std::size_t> queue{0};
        reached[0] = true;
        std::size_t found = 1;
        while (!queue.empty()) {
            const std::size_t i = queue.front();
            queue.pop_front();
            for (std::size_t j = 0; j < phys.size(); ++j)
                if (!reached[j] && cm.adjacent(phys[i], phys[j])) {
                    reached[j] = true;
                    ++found;
                    queue.push_back(j);
                }
        }
        return found == phys.size();
    }

    // Sum of pairwise distances between a gate's operands under the layout.
    std::uint64_t gate_spread(const Gate& g) const {
        const auto ops = g.operands();
        std::uint64_t total = 0;
        for (std::size_t a = 0; a < ops.size(); ++a)
            for (std::size_t b = a + 1; b < ops.size(); ++b)
                total += d(phys_of[ops[a]], phys_of[ops[b]]);
        return total;
    }

    std::pair<QubitId, QubitId> last_swap{npos, npos};

    // Connected components of the operand set under the current layout.
    std::vector<std::vector<QubitId>> operand_components(const std::vector<QubitId>& ops) const {
        std::vector<bool> used(ops.size(), false);
        std::vector<std::vector<QubitId>> comps;
        for (std::size_t i = 0; i < ops.size(); ++i) {
            if (used[i]) continue;
            std::vector<QubitId> comp{ops[i]};
            used[i] = true;
            std::deque<std::size_t> queue{i};
            while (!queue.empty()) {
                const std::size_t a = queue.front();
                queue.pop_front();
                for (std::size_t b = 0; b < ops.size(); ++b)
                    if (!used[b] && cm.adjacent(phys_of[ops[a]], phys_of[ops[b]])) {
                        used[b] = true;
                        comp.push_back(ops[b]);
                        queue.push_back(b);
                    }
            }
            comps.push_back(std::move(comp));
        }
        return comps;
    }

    // One deterministic basic-router step for the front gate: the largest
    // operand component stays put, a qubit from a smaller one takes a hop
    // toward it. Hops prefer slots not held by other gate operands and never
    // immediately undo the previous swap.
    void basic_step(const Gate& g) {
        const auto ops = g.operands();
        auto comps = operand_components(ops);
        // Largest component anchors; ties keep the one with the smallest id.
        std::stable_sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
            if (a.size() != b.size()) return a.size() > b.size();
            return *std::min_element(a.begin(), a.end()) < *std::min_element(b.begin(), b.end());
        });
        const auto& anchor = comps.front();
        QubitId mover = npos, goal = npos;
        std::uint32_t best_d = CouplingMap::kUnreachable;
        for (std::size_t ci = 1; ci < comps.size(); ++ci)
            for (QubitId u : comps[ci])
                for (QubitId v : anchor) {
                    const std::uint32_t dd = d(phys_of[u], phys_of[v]);
                    if (dd < best_d || (dd == best_d && (u < mover || (u == mover && v < goal)))) {
                        best_d = dd;
                        mover = u;
                        goal = v;
                    }
                }
        if (mover == npos)
            throw RoutingError("router invariant violated: gate reported unexecutable");

        std::vector<bool> is_operand_slot(cm.physical_qubits, false);
        for (QubitId q : ops) is_operand_slot[phys_of[q]] = true;

        // Shortest-path hop toward the anchor. Prefer slots free of other
        // gate operands, and only undo the previous swap as a last resort.
        const QubitId pu = phys_of[mover];
        const QubitId pv = phys_of[goal];
        QubitId hop = npos;
        int hop_rank = -1;
        for (QubitId next : adj[pu]) {
            if (d(next, pv) >= d(pu, pv)) continue;
            const bool undo =
                std::min(pu, next) == last_swap.first && std::max(pu, next) == last_swap.second;
            const int rank = undo ? 0 : (is_operand_slot[next] ? 1 : 2);
            if (rank > hop_rank) {
                hop = next;
                hop_rank = rank;
            }
        }
        if (hop == npos)
            throw RoutingError("router failed to make progress (malformed distance matrix)");
        last_swap = {std::min(pu, hop), std::max(pu, hop)};
        apply_swap(pu, hop);
    }

    // Windowed lookahead: try every swap touching the front gate's operands,
    // score by decayed spread reduction over the upcoming window.
    // Returns false when no swap improves (caller falls back to basic).
    bool lookahead_step(std::span<const Gate> window) {
        const Gate& front = window.front();
        std::vector<std::pair<QubitId, QubitId>> candidates;
        for (QubitId q : front.operands()) {
            const QubitId p = phys_of[q];
            for (QubitId next : adj[p])
                candidates.push_back({std::min(p, next), std::max(p, next)});
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

        std::vector<double> before;
        std::vector<const Gate*> scored;
        for (const Gate& g : window) {
            if (g.operands().size() < 2) continue;
            scored.push_back(&g);
            before.push_back(static_cast<double>(gate_spread(g)));
            if (scored.size() == kLookaheadWindow) break;
        }

        double best_score = 0.0;
        std::pair<QubitId, QubitId> best{npos, npos};
        for (const auto& [pu, pv] : candidates) {
            apply_swap_virtual(pu, pv);
            double score = 0.0;
            double decay = 1.0;
            for (std::size_t i = 0; i < scored.size(); ++i) {
                score += decay * (before[i] - static_cast<double>(gate_spread(*scored[i])));
                decay *= kLookaheadDecay;
            }
            apply_swap_virtual(pu, pv);
            if (score > best_score + 1e-12) {
                best_score = score;
                best = {pu, pv};
            }
        }
        if (best.first == npos) return false;
        apply_swap(best.first, best.second);
        return true;
    }

    // Swap the layout without emitting a gate (used for scoring).
    void apply_swap_virtual(QubitId pu, QubitId pv) {
        const QubitId lu = log_at[pu];
        const QubitId lv = log_at[pv];
        std::swap(log_at[pu], log_at[pv]);
        if (lu != npos) phys_of[lu] = pv;
        if (lv != npos) phys_of[lv] = pu;
    }
};

}  // namespace

RoutedCircuit route(const Circuit& c, const CouplingMap& cm, LayoutPolicy layout_policy,
                    RouterPolicy router_policy) {
    if (c.width > cm.physical_qubits)
        throw RoutingError(qfmt("circuit needs %u qubits but the device has %u", c.width,
                                cm.physical_qubits));
    const auto start = std::chrono::steady_clock::now();
    const auto dist = cm.distances();
    const Layout initial = layout_policy == LayoutPolicy::Trivial
                               ? Layout::identity(c.width)
                               : greedy_layout(c, cm, dist);

    RouterState st(cm, dist, initial, c.width, c.creg_width);
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        // Once the lookahead stops finding improving swaps for this gate it
        // stays in basic mode, so the two heuristics cannot alternate.
        bool basic_only = router_policy == RouterPolicy::Basic;
        std::size_t steps = 0;
        const std::size_t step_cap = 100 + 20 * static_cast<std::size_t>(cm.physical_qubits);
        while (!st.executable(g)) {
            if (++steps > step_cap)
                throw RoutingError(qfmt("router exceeded %zu swaps on one gate", step_cap));
            if (basic_only) {
                st.basic_step(g);
            } else {
                const std::size_t window_end = std::min(c.gates.size(), i + kLookaheadWindow);
                if (!st.lookahead_step({c.gates.data() + i, window_end - i})) basic_only = true;
            }
        }
        st.last_swap = {RouterState::npos, RouterState::npos};
        Gate mapped = g;
        for (QubitId& q : mapped.controls) q = st.phys_of[q];
        mapped.target = st.phys_of[mapped.target];
        st.out.add(std::move(mapped));
    }

    RoutedCircuit result;
    result.circuit = std::move(st.out);
    result.circuit.name = c.name;
    result.swap_count = st.swaps;
    result.layout_initial = initial;
    result.layout_final.to_phys.assign(st.phys_of.begin(), st.phys_of.end());
    result.route_time = std::chrono::steady_clock::now() - start;
    return result;
}

RoutedPlan route_plan(const SlicePlan& p, const CouplingMap& cm, LayoutPolicy layout,
                      RouterPolicy router) {
    RoutedPlan out;
    for (std::size_t i = 0; i < p.blocks.size(); ++i) {
        Circuit block(p.circuit.width, p.circuit.name + "#" + std::to_string(i));
        block.creg_width = p.circuit.creg_width;
        const auto gates = p.block_gates(i);
        block.gates.assign(gates.begin(), gates.end());
        RoutedCircuit rc = route(block, cm, layout, router);
        out.total_swaps += rc.swap_count;
        out.total_route_seconds += rc.route_time.count();
        out.blocks.push_back(std::move(rc));
    }
    return out;
}

std::vector<OverheadRow> swap_overhead_report(const Circuit& c,
                                              const std::vector<SlicePlan>& plans,
                                              const CouplingMap& cm, LayoutPolicy layout,
                                              RouterPolicy router) {
    std::vector<OverheadRow> rows;
    {
        const RoutedCircuit whole = route(c, cm, layout, router);
        rows.push_back({"baseline", 1, whole.swap_count, whole.swap_count,
                        whole.route_time.count()});
    }
    for (const SlicePlan& p : plans) {
        const RoutedPlan rp = route_plan(p, cm, layout, router);
        std::size_t worst = 0;
        for (const RoutedCircuit& b : rp.blocks) worst = std::max(worst, b.swap_count);
        rows.push_back(
            {p.mode_label(), rp.blocks.size(), rp.total_swaps, worst, rp.total_route_seconds});
    }
    return rows;
}

}  // namespace qdc
