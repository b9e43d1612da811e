#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cutlab {

// Gate vocabulary. measure_prep is the 1Q boundary marker inserted by wire
// cuts; it is metadata and never contributes to depth.
enum class GateKind {
    cx,
    swap,
    h,
    x,
    sx,
    id,
    rz,
    ry,
    rx,
    cp,
    rzz,
    crz,
    ccx,
    measure_prep,
};

int gate_arity(GateKind kind);
int gate_param_count(GateKind kind);
const char* gate_name(GateKind kind);
GateKind gate_from_name(const std::string& name);

// True for the hardware basis {cx, id, rz, sx, x}.
bool is_basis_gate(GateKind kind);

struct GateOp {
    GateKind kind;
    std::vector<int> qubits;
    std::vector<double> params;

    static GateOp g1(GateKind k, int q) { return {k, {q}, {}}; }
    static GateOp g1p(GateKind k, int q, double p) { return {k, {q}, {p}}; }
    static GateOp g2(GateKind k, int a, int b) { return {k, {a, b}, {}}; }
    static GateOp g2p(GateKind k, int a, int b, double p) { return {k, {a, b}, {p}}; }

    static GateOp cx(int c, int t) { return g2(GateKind::cx, c, t); }
    static GateOp swap(int a, int b) { return g2(GateKind::swap, a, b); }
    static GateOp h(int q) { return g1(GateKind::h, q); }
    static GateOp x(int q) { return g1(GateKind::x, q); }
    static GateOp sx(int q) { return g1(GateKind::sx, q); }
    static GateOp id(int q) { return g1(GateKind::id, q); }
    static GateOp rz(int q, double a) { return g1p(GateKind::rz, q, a); }
    static GateOp ry(int q, double a) { return g1p(GateKind::ry, q, a); }
    static GateOp rx(int q, double a) { return g1p(GateKind::rx, q, a); }
    static GateOp cp(int c, int t, double a) { return g2p(GateKind::cp, c, t, a); }
    static GateOp rzz(int a, int b, double th) { return g2p(GateKind::rzz, a, b, th); }
    static GateOp crz(int c, int t, double a) { return g2p(GateKind::crz, c, t, a); }
    static GateOp ccx(int a, int b, int t) { return {GateKind::ccx, {a, b, t}, {}}; }
    static GateOp marker(int q) { return g1(GateKind::measure_prep, q); }

    bool is_marker() const { return kind == GateKind::measure_prep; }
    bool is_depth_neutral() const { return kind == GateKind::id || kind == GateKind::measure_prep; }
};

enum class Family { hea, qaoa, qft, random, qml, sim, chem, oracle };

constexpr int kFamilyCount = 8;
constexpr int kSubvariantsPerFamily = 3;

enum class Subvariant {
    hea_linear,
    hea_circular,
    hea_reverse_linear,
    qaoa_p1,
    qaoa_p2,
    qaoa_p3,
    qft_standard,
    qft_no_swaps,
    qft_approx,
    random_shallow,
    random_medium,
    random_deep,
    qml_z,
    qml_zz,
    qml_pauli,
    sim_ising,
    sim_heisenberg,
    sim_xy,
    chem_so4,
    chem_real,
    chem_complex,
    oracle_bv,
    oracle_dj,
    oracle_grover,
};

Family family_of(Subvariant sv);
int subvariant_slot(Subvariant sv);  // 0..2 within its family
Subvariant subvariant_at(Family f, int slot);
const char* family_name(Family f);
const char* subvariant_name(Subvariant sv);
Family family_from_name(const std::string& name);
Subvariant subvariant_from_name(const std::string& name);

struct LogicalCircuit {
    int n_qubits = 0;
    std::vector<GateOp> gates;
    Family family = Family::hea;
    Subvariant subvariant = Subvariant::hea_linear;
    std::int64_t instance_id = -1;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> gen_params;
};

// Throws std::invalid_argument on out-of-range qubits, repeated qubits
// within a gate, or wrong parameter counts.
void validate(const LogicalCircuit& c);

struct LogicalMetrics {
    int depth = 0;       // greedy as-soon-as-possible layering; id/marker ops float
    int twoq_count = 0;  // ops touching >= 2 qubits
};

LogicalMetrics logical_metrics(const LogicalCircuit& c);

// Depth of a raw gate sequence under the same ASAP layering rule.
int asap_depth(const std::vector<GateOp>& gates);

std::vector<int> active_qubits(const LogicalCircuit& c);  // touched by >= 1 op, ascending
int active_width(const LogicalCircuit& c);

struct InteractionGraph {
    int n_nodes = 0;
    std::map<std::pair<int, int>, int> edges;  // (lo, hi) -> multiplicity
    int max_term_weight = 1;

    int weight_sum() const;
    // mean over all nodes of the count of distinct neighbours
    double mean_unique_degree() const;
    std::vector<std::vector<int>> adjacency() const;  // unique neighbours per node
};

InteractionGraph interaction_graph(const LogicalCircuit& c);

// One op per line: "kind q0 [q1 ...] [| p0 ...]". Stable debug/golden form.
std::string to_text(const LogicalCircuit& c);
std::string to_text(const std::vector<GateOp>& gates);

// Standard six-CX Toffoli expansion using vocabulary gates (h, rz, cx).
void append_ccx_template(std::vector<GateOp>& out, int a, int b, int t);

}  // namespace cutlab
