#include "cutlab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cutlab/rng.hpp"

namespace cutlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

void rotation_layer(LogicalCircuit& c, Rng& rng) {
    for (int q = 0; q < c.n_qubits; ++q) c.gates.push_back(GateOp::ry(q, rng.next_angle()));
    for (int q = 0; q < c.n_qubits; ++q) c.gates.push_back(GateOp::rz(q, rng.next_angle()));
}


void chain_rzz(LogicalCircuit& c, Rng& rng) {
    for (int i = 0; i + 1 < c.n_qubits; ++i)
        c.gates.push_back(GateOp::rzz(i, i + 1, rng.next_angle()));
}

// Hardware-efficient ansatz: 1-3 rotation layers and a single entangling
// pass whose order distinguishes the sub-variants.
LogicalCircuit gen_hea(Subvariant sv, int n, Rng& rng, LogicalCircuit c) {
    const int layers = rng.next_int(1, 3);
    for (int l = 0; l < layers; ++l) rotation_layer(c, rng);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
    if (sv == Subvariant::hea_reverse_linear) std::reverse(pairs.begin(), pairs.end());
    if (sv == Subvariant::hea_circular) pairs.emplace_back(n - 1, 0);
    for (auto [a, b] : pairs) c.gates.push_back(GateOp::cx(a, b));
    c.gen_params["layers"] = std::to_string(layers);
    c.gen_params["geometry"] = "chain";
    c.gen_params["locality_k"] = "2";
    return c;
}

// p alternating cost/mixer layers over a 1D ZZ chain. Cost terms are emitted
// pre-decomposed as cx-rz-cx; the mixer is a plain per-qubit rotation.
LogicalCircuit gen_qaoa(Subvariant sv, int n, Rng& rng, LogicalCircuit c) {
    const int p = subvariant_slot(sv) + 1;
    for (int q = 0; q < n; ++q) c.gates.push_back(GateOp::h(q));
    for (int layer = 0; layer < p; ++layer) {
        const double gamma = rng.next_angle();
        for (int i = 0; i + 1 < n; ++i) {
            c.gates.push_back(GateOp::cx(i, i + 1));
            c.gates.push_back(GateOp::rz(i + 1, gamma));
            c.gates.push_back(GateOp::cx(i, i + 1));
        }
        const double beta = rng.next_angle();
        for (int q = 0; q < n; ++q) c.gates.push_back(GateOp::rx(q, beta));
    }
    c.gen_params["p"] = std::to_string(p);
    c.gen_params["geometry"] = "chain";
    c.gen_params["locality_k"] = "2";
    return c;
}

// Textbook transform. standard and approx end with the reversal swaps;
// approx drops controlled-phase angles below pi/2^3.
LogicalCircuit gen_qft(Subvariant sv, int n, Rng&, LogicalCircuit c) {
    const int approx_cutoff = 3;
    for (int i = 0; i < n; ++i) {
        c.gates.push_back(GateOp::h(i));
        for (int j = i + 1; j < n; ++j) {
            const int k = j - i;
            if (sv == Subvariant::qft_approx && k > approx_cutoff) continue;
            c.gates.push_back(GateOp::cp(j, i, kPi / std::pow(2.0, k)));
        }
    }
    if (sv != Subvariant::qft_no_swaps)
        for (int i = 0; i < n / 2; ++i) c.gates.push_back(GateOp::swap(i, n - 1 - i));
    c.gen_params["geometry"] = "irregular";
    c.gen_params["locality_k"] = std::to_string(n);
    if (sv == Subvariant::qft_approx) c.gen_params["approx_cutoff"] = std::to_string(approx_cutoff);
    return c;
}

// Layered random SU2 rotations plus random CX pairs. A small slice of
// instances restrict the pairs to ladder-grid edges.
LogicalCircuit gen_random(Subvariant sv, int n, Rng& rng, LogicalCircuit c) {
    double density = 0.2;
    int layers = 2;
    if (sv == Subvariant::random_medium) {
        density = 0.5;
        layers = 5;
    } else if (sv == Subvariant::random_deep) {
        density = 0.9;
        layers = 10;
    }
    const bool grid_mode = rng.next_unit() < 0.10;
    const auto grid_edges = ladder_grid_edges(n);
    const int per_layer = std::max(1, static_cast<int>(std::lround(density * n)));
    for (int l = 0; l < layers; ++l) {
        rotation_layer(c, rng);
        for (int m = 0; m < per_layer; ++m) {
            int a, b;
            if (grid_mode) {
                auto e = grid_edges[rng.next_below(grid_edges.size())];
                a = e.first;
                b = e.second;
            } else {
                a = static_cast<int>(rng.next_below(n));
                b = static_cast<int>(rng.next_below(n - 1));
                if (b >= a) ++b;
            }
            c.gates.push_back(GateOp::cx(a, b));
        }
    }
    c.gen_params["density"] = std::to_string(density);
    c.gen_params["layers"] = std::to_string(layers);
    c.gen_params["geometry"] = grid_mode ? "grid" : "irregular";
    c.gen_params["locality_k"] = "2";
    return c;
}

// Feature-map encoders, two repetitions: z has no entangler, zz adds a chain
// of ZZ terms, pauli adds next-nearest ZZ terms on top of the chain.
LogicalCircuit gen_qml(Subvariant sv, int n, Rng& rng, LogicalCircuit c) {
    const int reps = 2;
    for (int r = 0; r < reps; ++r) {
        for (int q = 0; q < n; ++q) c.gates.push_back(GateOp::h(q));
        for (int q = 0; q < n; ++q) c.gates.push_back(GateOp::rz(q, rng.next_angle()));
        if (sv == Subvariant::qml_zz || sv == Subvariant::qml_pauli) chain_rzz(c, rng);
        if (sv == Subvariant::qml_pauli)
            for (int i = 0; i + 2 < n; ++i)
                c.gates.push_back(GateOp::rzz(i, i + 2, rng.next_angle()));
    }
    c.gen_params["geometry"] = "chain";
    c.gen_params["locality_k"] = sv == Subvariant::qml_z ? "1" : "2";
    return c;
}

// One Trotter step of a spin model on a chain (or, for a quarter of the
// instances, a ladder grid).
LogicalCircuit gen_sim(Subvariant sv, int n, Rng& rng, LogicalCircuit c) {
    const bool grid_mode = rng.next_unit() < 0.25;
    std::vector<std::pair<int, int>> edges;
    if (grid_mode) {
        edges = ladder_grid_edges(n);
    } else {
        for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    }
    if (sv == Subvariant::sim_ising) {
        for (auto [a, b] : edges) c.gates.push_back(GateOp::rzz(a, b, rng.next_angle()));
        for (int q = 0; q < n; ++q) c.gates.push_back(GateOp::x(q));
    } else if (sv == Subvariant::sim_heisenberg) {
        for (auto [a, b] : edges) {
            c.gates.push_back(GateOp::cx(a, b));
            c.gates.push_back(GateOp::rz(b, rng.next_angle()));
            c.gates.push_back(GateOp::ry(a, rng.next_angle()));
            c.gates.push_back(GateOp::cx(b, a));
            c.gates.push_back(GateOp::ry(b, rng.next_angle()));
            c.gates.push_back(GateOp::cx(a, b));
        }
    } else {  // xy
        for (auto [a, b] : edges) {
            c.gates.push_back(GateOp::sx(a));
            c.gates.push_back(GateOp::sx(b));
            c.gates.push_back(GateOp::cx(a, b));
            c.gates.push_back(GateOp::rz(b, rng.next_angle()));
            c.gates.push_back(GateOp::cx(a, b));
        }
    }
    c.gen_params["model"] = subvariant_name(sv);
    c.gen_params["geometry"] = grid_mode ? "grid" : "chain";
    c.gen_params["locality_k"] = "2";
    return c;
}

// Excitation-block ladders. real uses one CX per rung, so4 two, and complex
// runs three-CX ladders across qubit quads (a 4-local excitation unit).
LogicalCircuit gen_chem(Subvariant sv, int n, Rng& rng, LogicalCircuit c) {
    if (sv == Subvariant::chem_real) {
        for (int i = 0; i + 1 < n; ++i) {
            c.gates.push_back(GateOp::ry(i, rng.next_angle()));
            c.gates.push_back(GateOp::cx(i, i + 1));
            c.gates.push_back(GateOp::ry(i + 1, rng.next_angle()));
        }
        c.gen_params["locality_k"] = "2";
    } else if (sv == Subvariant::chem_so4) {
        for (int i = 0; i + 1 < n; ++i) {
            c.gates.push_back(GateOp::ry(i, rng.next_angle()));
            c.gates.push_back(GateOp::ry(i + 1, rng.next_angle()));
            c.gates.push_back(GateOp::cx(i, i + 1));
            c.gates.push_back(GateOp::ry(i, rng.next_angle()));
            c.gates.push_back(GateOp::ry(i + 1, rng.next_angle()));
            c.gates.push_back(GateOp::cx(i, i + 1));
        }
        c.gen_params["locality_k"] = "2";
    } else {  // complex
        // Pair-to-pair excitations: each quad couples its occupied pair to
        // its virtual pair crosswise, so two of the three CX reach past a
        // neighbour instead of walking the ladder.
        for (int i = 0; i + 3 < n; ++i) {
            c.gates.push_back(GateOp::cx(i, i + 2));
            c.gates.push_back(GateOp::cx(i + 1, i + 3));
            c.gates.push_back(GateOp::cx(i + 2, i + 3));
            c.gates.push_back(GateOp::rz(i + 3, rng.next_angle()));
        }
        c.gen_params["locality_k"] = "4";
    }
    c.gen_params["geometry"] = "chain";
    return c;
}

void multi_controlled_z(LogicalCircuit& c, int m) {
    if (m == 2) {
        c.gates.push_back(GateOp::cp(0, 1, kPi));
    } else {
        c.gates.push_back(GateOp::h(m - 1));
        append_ccx_template(c.gates, 0, 1, m - 1);
        c.gates.push_back(GateOp::h(m - 1));
    }
}

// Query-style circuits. bv and dj spread a CX fan-in over all data wires;
// grover keeps a 2-3 qubit core and leaves the rest of the register idle so
// cutting isolates the core.
LogicalCircuit gen_oracle(Subvariant sv, int n, Rng& rng, LogicalCircuit c) {
    c.gen_params["geometry"] = "irregular";
    if (sv == Subvariant::oracle_grover) {
        c.gen_params["oracle_core"] = "true";
        const int m = rng.next_int(2, 3);
        std::vector<int> marked(m);
        for (int q = 0; q < m; ++q) marked[q] = rng.next_bool() ? 1 : 0;
        for (int q = 0; q < m; ++q) c.gates.push_back(GateOp::h(q));
        for (int q = 0; q < m; ++q)
            if (!marked[q]) c.gates.push_back(GateOp::x(q));
        multi_controlled_z(c, m);
        for (int q = 0; q < m; ++q)
            if (!marked[q]) c.gates.push_back(GateOp::x(q));
        for (int q = 0; q < m; ++q) c.gates.push_back(GateOp::h(q));
        for (int q = 0; q < m; ++q) c.gates.push_back(GateOp::x(q));
        multi_controlled_z(c, m);
        for (int q = 0; q < m; ++q) c.gates.push_back(GateOp::x(q));
        for (int q = 0; q < m; ++q) c.gates.push_back(GateOp::h(q));
        c.gen_params["core"] = std::to_string(m);
        c.gen_params["locality_k"] = std::to_string(m);
        return c;
    }
    const int t = n - 1;
    std::vector<int> fan_in;
    if (sv == Subvariant::oracle_bv) {
        for (int i = 0; i < t; ++i)
            if (rng.next_bool()) fan_in.push_back(i);
        if (fan_in.empty()) fan_in.push_back(static_cast<int>(rng.next_below(t)));
    } else {  // dj: balanced function over a contiguous half of the register
        const int k = std::max(1, (t + 1) / 2);
        for (int i = 0; i < k; ++i) fan_in.push_back(i);
    }
    for (int i = 0; i < t; ++i) c.gates.push_back(GateOp::h(i));
    c.gates.push_back(GateOp::x(t));
    c.gates.push_back(GateOp::h(t));
    for (int i : fan_in) c.gates.push_back(GateOp::cx(i, t));
    for (int i = 0; i < t; ++i) c.gates.push_back(GateOp::h(i));
    c.gen_params["fan_in"] = std::to_string(fan_in.size());
    c.gen_params["locality_k"] = "2";
    return c;
}

}  // namespace

std::vector<std::pair<int, int>> ladder_grid_edges(int n_qubits) {
    const int cols = (n_qubits + 1) / 2;
    auto idx = [cols](int row, int col) { return row * cols + col; };
    std::vector<std::pair<int, int>> edges;
    for (int row = 0; row < 2; ++row)
        for (int col = 0; col + 1 < cols; ++col) {
            int a = idx(row, col), b = idx(row, col + 1);
            if (a < n_qubits && b < n_qubits) edges.emplace_back(a, b);
        }
    for (int col = 0; col < cols; ++col) {
        int a = idx(0, col), b = idx(1, col);
        if (a < n_qubits && b < n_qubits) edges.emplace_back(a, b);
    }
    return edges;
}

LogicalCircuit generate(Family family, Subvariant subvariant, int n_qubits, std::uint64_t seed) {
    if (family_of(subvariant) != family)
        throw std::invalid_argument("subvariant does not belong to family");
    return generate(subvariant, n_qubits, seed);
}

LogicalCircuit generate(Subvariant subvariant, int n_qubits, std::uint64_t seed) {
    if (n_qubits < 4 || n_qubits > 16)
        throw std::invalid_argument("n_qubits outside corpus bounds [4, 16]");
    LogicalCircuit c;
    c.n_qubits = n_qubits;
    c.family = family_of(subvariant);
    c.subvariant = subvariant;
    c.seed = seed;
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(subvariant) * 131 + n_qubits));
    switch (c.family) {
        case Family::hea: c = gen_hea(subvariant, n_qubits, rng, std::move(c)); break;
        case Family::qaoa: c = gen_qaoa(subvariant, n_qubits, rng, std::move(c)); break;
        case Family::qft: c = gen_qft(subvariant, n_qubits, rng, std::move(c)); break;
        case Family::random: c = gen_random(subvariant, n_qubits, rng, std::move(c)); break;
        case Family::qml: c = gen_qml(subvariant, n_qubits, rng, std::move(c)); break;
        case Family::sim: c = gen_sim(subvariant, n_qubits, rng, std::move(c)); break;
        case Family::chem: c = gen_chem(subvariant, n_qubits, rng, std::move(c)); break;
        case Family::oracle: c = gen_oracle(subvariant, n_qubits, rng, std::move(c)); break;
    }
    validate(c);
    return c;
}

}  // namespace cutlab
