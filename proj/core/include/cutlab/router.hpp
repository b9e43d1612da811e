#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cutlab/circuit.hpp"
#include "cutlab/topology.hpp"

namespace cutlab {

// Rewrites every op into the hardware basis {cx, id, rz, sx, x} using fixed
// templates. Boundary markers become id so wire activity is preserved.
// Exact up to global phase; no 1Q resynthesis or cancellation afterwards.
LogicalCircuit decompose_to_basis(const LogicalCircuit& c);
std::vector<GateOp> decompose_to_basis(const std::vector<GateOp>& gates, int n_qubits);

struct RouteOptions {
    int lookahead = 20;  // pending 2Q gates scored when picking a SWAP
    // Forced logical->physical seating (size n_qubits). When absent the
    // router seats interaction-graph components itself.
    std::optional<std::vector<int>> initial_layout;
};

struct CompiledCircuit {
    Backend backend = Backend::all_to_all;
    int n_phys = 0;
    std::vector<GateOp> gates;        // basis ops on physical qubit indices
    std::vector<int> initial_layout;  // logical -> physical
    std::vector<int> final_layout;    // logical -> physical after all SWAPs
    int compiled_depth = 0;           // ASAP layering, id floats
    int compiled_2q = 0;
    int active_width = 0;  // distinct physical qubits touched
    int swap_count = 0;
};

// Routes a basis circuit onto the coupling graph. Each inserted SWAP is
// emitted as three CX ops. Throws unsupported_gate_error on non-basis input,
// invalid_topology_error on a disconnected graph, std::invalid_argument when
// the circuit is wider than the device.
CompiledCircuit route(const LogicalCircuit& c, const CouplingGraph& graph,
                      std::uint64_t seed, const RouteOptions& options = {});

struct RoutingOverhead {
    int extra_2q = 0;          // compiled 2Q count minus the decomposed logical count
    double depth_ratio = 0.0;  // compiled depth over decomposed logical depth
};

// Throws undefined_ratio_error when the decomposed logical depth is zero.
RoutingOverhead routing_overhead(const LogicalCircuit& logical, const CompiledCircuit& compiled);

}  // namespace cutlab
