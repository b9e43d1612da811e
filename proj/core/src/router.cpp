#include "cutlab/router.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <set>

#include "cutlab/errors.hpp"

namespace cutlab {

namespace {

constexpr double kPi = std::numbers::pi;

void expand(const GateOp& op, std::vector<GateOp>& out) {
    switch (op.kind) {
        case GateKind::cx:
        case GateKind::id:
        case GateKind::rz:
        case GateKind::sx:
        case GateKind::x:
            out.push_back(op);
            return;
        case GateKind::measure_prep:
            out.push_back(GateOp::id(op.qubits[0]));
            return;
        case GateKind::h: {
            int q = op.qubits[0];
            out.push_back(GateOp::rz(q, kPi / 2));
            out.push_back(GateOp::sx(q));
            out.push_back(GateOp::rz(q, kPi / 2));
            return;
        }
        case GateKind::ry: {
            // ZXZXZ form of U(theta, 0, 0), exact up to global phase.
            int q = op.qubits[0];
            double theta = op.params[0];
            out.push_back(GateOp::rz(q, 0.0));
            out.push_back(GateOp::sx(q));
            out.push_back(GateOp::rz(q, theta + kPi));
            out.push_back(GateOp::sx(q));
            out.push_back(GateOp::rz(q, kPi));
            return;
        }
        case GateKind::rx: {
            // ZXZXZ form of U(theta, -pi/2, pi/2).
            int q = op.qubits[0];
            double theta = op.params[0];
            out.push_back(GateOp::rz(q, kPi / 2));
            out.push_back(GateOp::sx(q));
            out.push_back(GateOp::rz(q, theta + kPi));
            out.push_back(GateOp::sx(q));
            out.push_back(GateOp::rz(q, kPi / 2));
            return;
        }
        case GateKind::cp: {
            int c = op.qubits[0], t = op.qubits[1];
            double th = op.params[0];
            out.push_back(GateOp::rz(c, th / 2));
            out.push_back(GateOp::cx(c, t));
            out.push_back(GateOp::rz(t, -th / 2));
            out.push_back(GateOp::cx(c, t));
            out.push_back(GateOp::rz(t, th / 2));
            return;
        }
        case GateKind::rzz: {
            int a = op.qubits[0], b = op.qubits[1];
            out.push_back(GateOp::cx(a, b));
            out.push_back(GateOp::rz(b, op.params[0]));
            out.push_back(GateOp::cx(a, b));
            return;
        }
        case GateKind::crz: {
            int c = op.qubits[0], t = op.qubits[1];
            double th = op.params[0];
            out.push_back(GateOp::rz(t, th / 2));
            out.push_back(GateOp::cx(c, t));
            out.push_back(GateOp::rz(t, -th / 2));
            out.push_back(GateOp::cx(c, t));
            return;
        }
        case GateKind::swap: {
            int a = op.qubits[0], b = op.qubits[1];
            out.push_back(GateOp::cx(a, b));
            out.push_back(GateOp::cx(b, a));
            out.push_back(GateOp::cx(a, b));
            return;
        }
        case GateKind::ccx: {
            std::vector<GateOp> tmp;
            append_ccx_template(tmp, op.qubits[0], op.qubits[1], op.qubits[2]);
            for (const auto& g : tmp) expand(g, out);
            return;
        }
    }
    throw unsupported_gate_error(std::string("cannot decompose gate: ") + gate_name(op.kind));
}

struct SeatState {
    const CouplingGraph* graph = nullptr;
    std::vector<int> log2phys;
    std::vector<char> used;
    std::vector<int> pool;  // physical seats in preference order

    bool free_at(int p) const { return !used[static_cast<size_t>(p)]; }
    void seat(int logical, int phys) {
        log2phys[static_cast<size_t>(logical)] = phys;
        used[static_cast<size_t>(phys)] = 1;
    }
};

struct WeightedEdges {
    std::map<std::pair<int, int>, int> w;
    std::vector<std::vector<int>> adj;

    int weight(int a, int b) const {
        if (a > b) std::swap(a, b);
        auto it = w.find({a, b});
        return it == w.end() ? 0 : it->second;
    }
};

WeightedEdges collect_weights(const LogicalCircuit& c) {
    WeightedEdges we;
    we.adj.assign(static_cast<size_t>(c.n_qubits), {});
    for (const auto& g : c.gates) {
        if (g.qubits.size() != 2) continue;
        int a = g.qubits[0], b = g.qubits[1];
        if (a > b) std::swap(a, b);
        ++we.w[{a, b}];
    }
    for (const auto& [e, n] : we.w) {
        we.adj[static_cast<size_t>(e.first)].push_back(e.second);
        we.adj[static_cast<size_t>(e.second)].push_back(e.first);
    }
    for (auto& lst : we.adj) std::sort(lst.begin(), lst.end());
    return we;
}

std::vector<std::vector<int>> split_components(int n, const WeightedEdges& we) {
    std::vector<std::vector<int>> comps;
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (int s = 0; s < n; ++s) {
        if (seen[static_cast<size_t>(s)]) continue;
        std::vector<int> comp{s};
        seen[static_cast<size_t>(s)] = 1;
        for (size_t i = 0; i < comp.size(); ++i)
            for (int v : we.adj[static_cast<size_t>(comp[i])])
                if (!seen[static_cast<size_t>(v)]) {
                    seen[static_cast<size_t>(v)] = 1;
                    comp.push_back(v);
                }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a[0] < b[0];
    });
    return comps;
}

// Path components keep zero overhead when seated along a contiguous stretch
// of the canonical path, so detect them and try that first.
bool path_order(const std::vector<int>& comp, const WeightedEdges& we, std::vector<int>& order) {
    if (comp.size() < 2) return false;
    size_t edge_count = 0;
    int start = -1;
    for (int v : comp) {
        size_t deg = we.adj[static_cast<size_t>(v)].size();
        if (deg > 2) return false;
        edge_count += deg;
        if (deg <= 1 && start < 0) start = v;
    }
    if (edge_count != 2 * (comp.size() - 1) || start < 0) return false;
    order.clear();
    int prev = -1, cur = start;
    while (true) {
        order.push_back(cur);
        int next = -1;
        for (int v : we.adj[static_cast<size_t>(cur)])
            if (v != prev) next = v;
        if (next < 0) break;
        prev = cur;
        cur = next;
    }
    return order.size() == comp.size();
}

bool seat_on_path_run(SeatState& st, const std::vector<int>& order) {
    const auto& path = st.graph->canonical_path;
    size_t best_start = path.size();
    size_t best_len = std::numeric_limits<size_t>::max();
    size_t i = 0;
    while (i < path.size()) {
        if (!st.free_at(path[i])) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j < path.size() && st.free_at(path[j])) ++j;
        size_t len = j - i;
        if (len >= order.size() && len < best_len) {
            best_len = len;
            best_start = i;
        }
        i = j;
    }
    if (best_start >= path.size()) return false;
    for (size_t k = 0; k < order.size(); ++k) st.seat(order[k], path[best_start + k]);
    return true;
}

// Densest-subgraph greedy for anything that is not a plain chain: the most
// entangled logical qubits take the best-connected free physical nodes, then
// one sweep of pairwise seat swaps repairs the worst placements. One sweep is
// deliberate; the router absorbs whatever placement leaves behind.
void seat_degree_greedy(SeatState& st, const std::vector<int>& comp, const WeightedEdges& we) {
    auto weighted_degree = [&](int v) {
        long total = 0;
        for (int u : we.adj[static_cast<size_t>(v)]) {
            auto key = std::minmax(v, u);
            total += we.w.at({key.first, key.second});
        }
        return total;
    };

    std::vector<int> logical(comp);
    std::stable_sort(logical.begin(), logical.end(), [&](int a, int b) {
        return weighted_degree(a) > weighted_degree(b);
    });

    std::vector<int> phys;
    for (int p : st.pool)
        if (st.free_at(p)) phys.push_back(p);
    std::stable_sort(phys.begin(), phys.end(), [&](int a, int b) {
        return st.graph->adj[static_cast<size_t>(a)].size() >
               st.graph->adj[static_cast<size_t>(b)].size();
    });

    for (size_t i = 0; i < logical.size(); ++i) st.seat(logical[i], phys[i]);

    const auto& dist = st.graph->dist;
    auto placement_cost = [&](int v) {
        long total = 0;
        for (int u : we.adj[static_cast<size_t>(v)]) {
            auto key = std::minmax(v, u);
            int pv = st.log2phys[static_cast<size_t>(v)];
            int pu = st.log2phys[static_cast<size_t>(u)];
            total += we.w.at({key.first, key.second}) *
                     dist[static_cast<size_t>(pv)][static_cast<size_t>(pu)];
        }
        return total;
    };
    for (size_t i = 0; i < comp.size(); ++i)
        for (size_t j = i + 1; j < comp.size(); ++j) {
            int a = comp[i], b = comp[j];
            long before = placement_cost(a) + placement_cost(b);
            std::swap(st.log2phys[static_cast<size_t>(a)], st.log2phys[static_cast<size_t>(b)]);
            long after = placement_cost(a) + placement_cost(b);
            if (after >= before)
                std::swap(st.log2phys[static_cast<size_t>(a)],
                          st.log2phys[static_cast<size_t>(b)]);
        }
}

std::vector<int> compute_initial_layout(const LogicalCircuit& c, const CouplingGraph& graph) {
    WeightedEdges we = collect_weights(c);
    SeatState st;
    st.graph = &graph;
    st.log2phys.assign(static_cast<size_t>(c.n_qubits), -1);
    st.used.assign(static_cast<size_t>(graph.n_phys), 0);
    st.pool.resize(static_cast<size_t>(graph.n_phys));
    std::iota(st.pool.begin(), st.pool.end(), 0);

    for (const auto& comp : split_components(c.n_qubits, we)) {
        if (comp.size() == 1) {
            int v = comp[0];
            if (!we.adj[static_cast<size_t>(v)].empty()) continue;  // unreachable
            for (int p : st.pool)
                if (st.free_at(p)) {
                    st.seat(v, p);
                    break;
                }
            continue;
        }
        std::vector<int> order;
        if (path_order(comp, we, order) && seat_on_path_run(st, order)) continue;
        seat_degree_greedy(st, comp, we);
    }
    return st.log2phys;
}

}  // namespace

std::vector<GateOp> decompose_to_basis(const std::vector<GateOp>& gates, int /*n_qubits*/) {
    std::vector<GateOp> out;
    out.reserve(gates.size() * 2);
    for (const auto& g : gates) expand(g, out);
    return out;
}

LogicalCircuit decompose_to_basis(const LogicalCircuit& c) {
    LogicalCircuit out = c;
    out.gates = decompose_to_basis(c.gates, c.n_qubits);
    return out;
}

CompiledCircuit route(const LogicalCircuit& c, const CouplingGraph& graph, std::uint64_t /*seed*/,
                      const RouteOptions& options) {
    if (!graph.connected()) throw invalid_topology_error("coupling graph is disconnected");
    if (c.n_qubits > graph.n_phys)
        throw std::invalid_argument("circuit is wider than the device");
    for (const auto& g : c.gates)
        if (!is_basis_gate(g.kind))
            throw unsupported_gate_error(std::string("route needs basis gates, got ") +
                                         gate_name(g.kind));

    std::vector<int> log2phys;
    if (options.initial_layout) {
        log2phys = *options.initial_layout;
        if (static_cast<int>(log2phys.size()) != c.n_qubits)
            throw std::invalid_argument("initial layout size mismatch");
        std::vector<char> taken(static_cast<size_t>(graph.n_phys), 0);
        for (int p : log2phys) {
            if (p < 0 || p >= graph.n_phys || taken[static_cast<size_t>(p)])
                throw std::invalid_argument("initial layout is not an injection");
            taken[static_cast<size_t>(p)] = 1;
        }
    } else {
        log2phys = compute_initial_layout(c, graph);
    }

    CompiledCircuit out;
    out.backend = graph.kind;
    out.n_phys = graph.n_phys;
    out.initial_layout = log2phys;

    std::vector<int> phys2log(static_cast<size_t>(graph.n_phys), -1);
    for (int v = 0; v < c.n_qubits; ++v) phys2log[static_cast<size_t>(log2phys[static_cast<size_t>(v)])] = v;

    // Logical endpoint pairs of every 2Q op, in program order, for lookahead.
    std::vector<std::pair<int, int>> twoq;
    for (const auto& g : c.gates)
        if (g.qubits.size() == 2) twoq.emplace_back(g.qubits[0], g.qubits[1]);

    auto apply_swap = [&](int u, int v) {
        int lu = phys2log[static_cast<size_t>(u)], lv = phys2log[static_cast<size_t>(v)];
        if (lu >= 0) log2phys[static_cast<size_t>(lu)] = v;
        if (lv >= 0) log2phys[static_cast<size_t>(lv)] = u;
        std::swap(phys2log[static_cast<size_t>(u)], phys2log[static_cast<size_t>(v)]);
    };

    size_t cursor = 0;  // index into twoq of the gate being placed
    int lookahead = std::max(1, options.lookahead);
    for (const auto& g : c.gates) {
        if (g.qubits.size() == 1) {
            GateOp m = g;
            m.qubits[0] = log2phys[static_cast<size_t>(g.qubits[0])];
            out.gates.push_back(std::move(m));
            continue;
        }
        int a = g.qubits[0], b = g.qubits[1];
        while (true) {
            int pa = log2phys[static_cast<size_t>(a)], pb = log2phys[static_cast<size_t>(b)];
            int d = graph.distance(pa, pb);
            if (d <= 1) break;
            // Candidates: edges that move one endpoint a hop closer.
            std::vector<std::pair<int, int>> cands;
            for (int x : graph.adj[static_cast<size_t>(pa)])
                if (graph.distance(x, pb) == d - 1)
                    cands.emplace_back(std::min(pa, x), std::max(pa, x));
            for (int y : graph.adj[static_cast<size_t>(pb)])
                if (graph.distance(y, pa) == d - 1)
                    cands.emplace_back(std::min(pb, y), std::max(pb, y));
            std::sort(cands.begin(), cands.end());
            cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

            std::pair<int, int> chosen = cands.front();
            long long best_cost = std::numeric_limits<long long>::max();
            for (auto [u, v] : cands) {
                apply_swap(u, v);
                long long cost = 0;
                size_t hi = std::min(twoq.size(), cursor + static_cast<size_t>(lookahead));
                for (size_t k = cursor; k < hi; ++k)
                    cost += graph.distance(log2phys[static_cast<size_t>(twoq[k].first)],
                                           log2phys[static_cast<size_t>(twoq[k].second)]);
                apply_swap(u, v);
                if (cost < best_cost) {
                    best_cost = cost;
                    chosen = {u, v};
                }
            }
            apply_swap(chosen.first, chosen.second);
            out.gates.push_back(GateOp::cx(chosen.first, chosen.second));
            out.gates.push_back(GateOp::cx(chosen.second, chosen.first));
            out.gates.push_back(GateOp::cx(chosen.first, chosen.second));
            ++out.swap_count;
        }
        out.gates.push_back(
            GateOp::cx(log2phys[static_cast<size_t>(a)], log2phys[static_cast<size_t>(b)]));
        ++cursor;
    }

    out.final_layout = log2phys;
    out.compiled_depth = asap_depth(out.gates);
    std::set<int> touched;
    for (const auto& g : out.gates) {
        if (g.qubits.size() == 2) ++out.compiled_2q;
        for (int q : g.qubits) touched.insert(q);
    }
    out.active_width = static_cast<int>(touched.size());
    return out;
}

RoutingOverhead routing_overhead(const LogicalCircuit& logical, const CompiledCircuit& compiled) {
    LogicalCircuit base = decompose_to_basis(logical);
    RoutingOverhead oh;
    oh.extra_2q = compiled.compiled_2q - logical_metrics(base).twoq_count;
    // The depth baseline is the circuit as authored, so the ratio carries the
    // translation cost as well as the routing cost; all_to_all lands above
    // 1.0 whenever basis templates stretch the critical path.
    int denom = logical_metrics(logical).depth;
    if (denom == 0)
        throw undefined_ratio_error("logical depth is zero");
    oh.depth_ratio = static_cast<double>(compiled.compiled_depth) / denom;
    return oh;
}

}  // namespace cutlab
