#include "cutlab/circuit.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cutlab/errors.hpp"

namespace cutlab {

namespace {

struct GateInfo {
    GateKind kind;
    const char* name;
    int arity;
    int params;
};

constexpr std::array<GateInfo, 14> kGateTable{{
    {GateKind::cx, "cx", 2, 0},
    {GateKind::swap, "swap", 2, 0},
    {GateKind::h, "h", 1, 0},
    {GateKind::x, "x", 1, 0},
    {GateKind::sx, "sx", 1, 0},
    {GateKind::id, "id", 1, 0},
    {GateKind::rz, "rz", 1, 1},
    {GateKind::ry, "ry", 1, 1},
    {GateKind::rx, "rx", 1, 1},
    {GateKind::cp, "cp", 2, 1},
    {GateKind::rzz, "rzz", 2, 1},
    {GateKind::crz, "crz", 2, 1},
    {GateKind::ccx, "ccx", 3, 0},
    {GateKind::measure_prep, "measure_prep", 1, 0},
}};

const GateInfo& info(GateKind k) {
    for (const auto& gi : kGateTable)
        if (gi.kind == k) return gi;
    throw unsupported_gate_error("unknown gate kind");
}

struct FamilyNames {
    Family family;
    const char* name;
};

constexpr std::array<FamilyNames, 8> kFamilyTable{{
    {Family::hea, "hea"},
    {Family::qaoa, "qaoa"},
    {Family::qft, "qft"},
    {Family::random, "random"},
    {Family::qml, "qml"},
    {Family::sim, "sim"},
    {Family::chem, "chem"},
    {Family::oracle, "oracle"},
}};

constexpr std::array<const char*, 24> kSubvariantNames{{
    "linear",      "circular",   "reverse_linear",
    "p1",          "p2",         "p3",
    "standard",    "no_swaps",   "approx",
    "shallow",     "medium",     "deep",
    "z_map",       "zz_map",     "pauli_map",
    "ising",       "heisenberg", "xy",
    "so4",         "real",       "complex",
    "bv",          "dj",         "grover",
}};

}  // namespace

int gate_arity(GateKind kind) { return info(kind).arity; }
int gate_param_count(GateKind kind) { return info(kind).params; }
const char* gate_name(GateKind kind) { return info(kind).name; }

GateKind gate_from_name(const std::string& name) {
    for (const auto& gi : kGateTable)
        if (name == gi.name) return gi.kind;
    throw unsupported_gate_error("unknown gate name: " + name);
}

bool is_basis_gate(GateKind kind) {
    switch (kind) {
        case GateKind::cx:
        case GateKind::id:
        case GateKind::rz:
        case GateKind::sx:
        case GateKind::x:
            return true;
        default:
            return false;
    }
}

Family family_of(Subvariant sv) {
    return static_cast<Family>(static_cast<int>(sv) / kSubvariantsPerFamily);
}

int subvariant_slot(Subvariant sv) {
    return static_cast<int>(sv) % kSubvariantsPerFamily;
}

Subvariant subvariant_at(Family f, int slot) {
    if (slot < 0 || slot >= kSubvariantsPerFamily)
        throw std::invalid_argument("subvariant slot out of range");
    return static_cast<Subvariant>(static_cast<int>(f) * kSubvariantsPerFamily + slot);
}

const char* family_name(Family f) {
    for (const auto& fn : kFamilyTable)
        if (fn.family == f) return fn.name;
    throw std::invalid_argument("unknown family");
}

const char* subvariant_name(Subvariant sv) {
    return kSubvariantNames[static_cast<int>(sv)];
}

Family family_from_name(const std::string& name) {
    for (const auto& fn : kFamilyTable)
        if (name == fn.name) return fn.family;
    throw std::invalid_argument("unknown family name: " + name);
}

Subvariant subvariant_from_name(const std::string& name) {
    for (int i = 0; i < 24; ++i)
        if (name == kSubvariantNames[i]) return static_cast<Subvariant>(i);
    throw std::invalid_argument("unknown subvariant name: " + name);
}

void validate(const LogicalCircuit& c) {
    if (c.n_qubits <= 0) throw std::invalid_argument("circuit must have at least one qubit");
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const GateOp& g = c.gates[i];
        const GateInfo& gi = info(g.kind);
        if (static_cast<int>(g.qubits.size()) != gi.arity)
            throw std::invalid_argument("gate " + std::to_string(i) + " (" + gi.name +
                                        "): wrong qubit count");
        if (static_cast<int>(g.params.size()) != gi.params)
            throw std::invalid_argument("gate " + std::to_string(i) + " (" + gi.name +
                                        "): wrong parameter count");
        std::set<int> seen;
        for (int q : g.qubits) {
            if (q < 0 || q >= c.n_qubits)
                throw std::invalid_argument("gate " + std::to_string(i) + " (" + gi.name +
                                            "): qubit out of range");
            if (!seen.insert(q).second)
                throw std::invalid_argument("gate " + std::to_string(i) + " (" + gi.name +
                                            "): repeated qubit");
        }
    }
}

int asap_depth(const std::vector<GateOp>& gates) {
    std::map<int, int> wire_layer;
    int depth = 0;
    for (const GateOp& g : gates) {
        if (g.is_depth_neutral()) continue;
        int layer = 0;
        for (int q : g.qubits) {
            auto it = wire_layer.find(q);
            if (it != wire_layer.end()) layer = std::max(layer, it->second);
        }
        ++layer;
        for (int q : g.qubits) wire_layer[q] = layer;
        depth = std::max(depth, layer);
    }
    return depth;
}

LogicalMetrics logical_metrics(const LogicalCircuit& c) {
    LogicalMetrics m;
    m.depth = asap_depth(c.gates);
    for (const GateOp& g : c.gates)
        if (g.qubits.size() >= 2) ++m.twoq_count;
    return m;
}

std::vector<int> active_qubits(const LogicalCircuit& c) {
    std::set<int> touched;
    for (const GateOp& g : c.gates) touched.insert(g.qubits.begin(), g.qubits.end());
    return {touched.begin(), touched.end()};
}

int active_width(const LogicalCircuit& c) {
    return static_cast<int>(active_qubits(c).size());
}

int InteractionGraph::weight_sum() const {
    int s = 0;
    for (const auto& [e, w] : edges) s += w;
    return s;
}

double InteractionGraph::mean_unique_degree() const {
    if (n_nodes == 0) return 0.0;
    std::vector<std::set<int>> nbrs(n_nodes);
    for (const auto& [e, w] : edges) {
        nbrs[e.first].insert(e.second);
        nbrs[e.second].insert(e.first);
    }
    double total = 0.0;
    for (const auto& s : nbrs) total += static_cast<double>(s.size());
    return total / static_cast<double>(n_nodes);
}

std::vector<std::vector<int>> InteractionGraph::adjacency() const {
    std::vector<std::set<int>> nbrs(n_nodes);
    for (const auto& [e, w] : edges) {
        nbrs[e.first].insert(e.second);
        nbrs[e.second].insert(e.first);
    }
    std::vector<std::vector<int>> adj(n_nodes);
    for (int i = 0; i < n_nodes; ++i) adj[i] = {nbrs[i].begin(), nbrs[i].end()};
    return adj;
}

InteractionGraph interaction_graph(const LogicalCircuit& c) {
    InteractionGraph g;
    g.n_nodes = c.n_qubits;
    int max_arity = 1;
    for (const GateOp& op : c.gates) {
        if (op.is_marker()) continue;
        max_arity = std::max(max_arity, static_cast<int>(op.qubits.size()));
        if (op.qubits.size() < 2) continue;
        for (std::size_t a = 0; a < op.qubits.size(); ++a) {
            for (std::size_t b = a + 1; b < op.qubits.size(); ++b) {
                int lo = std::min(op.qubits[a], op.qubits[b]);
                int hi = std::max(op.qubits[a], op.qubits[b]);
                ++g.edges[{lo, hi}];
            }
        }
    }
    g.max_term_weight = max_arity;
    auto it = c.gen_params.find("locality_k");
    if (it != c.gen_params.end()) g.max_term_weight = std::stoi(it->second);
    return g;
}

std::string to_text(const std::vector<GateOp>& gates) {
    std::ostringstream os;
    for (const GateOp& g : gates) {
        os << gate_name(g.kind);
        for (int q : g.qubits) os << ' ' << q;
        if (!g.params.empty()) {
            os << " |";
            char buf[32];
            for (double p : g.params) {
                std::snprintf(buf, sizeof buf, " %.9f", p);
                os << buf;
            }
        }
        os << '\n';
    }
    return os.str();
}

std::string to_text(const LogicalCircuit& c) {
    std::ostringstream os;
    os << "circuit " << family_name(c.family) << '/' << subvariant_name(c.subvariant) << " n="
       << c.n_qubits << '\n';
    os << to_text(c.gates);
    return os.str();
}

void append_ccx_template(std::vector<GateOp>& out, int a, int b, int t) {
    const double T = 0.78539816339744830961;  // pi/4
    out.push_back(GateOp::h(t));
    out.push_back(GateOp::cx(b, t));
    out.push_back(GateOp::rz(t, -T));
    out.push_back(GateOp::cx(a, t));
    out.push_back(GateOp::rz(t, T));
    out.push_back(GateOp::cx(b, t));
    out.push_back(GateOp::rz(t, -T));
    out.push_back(GateOp::cx(a, t));
    out.push_back(GateOp::rz(b, T));
    out.push_back(GateOp::rz(t, T));
    out.push_back(GateOp::h(t));
    out.push_back(GateOp::cx(a, b));
    out.push_back(GateOp::rz(b, -T));
    out.push_back(GateOp::cx(a, b));
    out.push_back(GateOp::rz(a, T));
}

}  // namespace cutlab
