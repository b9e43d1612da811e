#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cutlab/circuit.hpp"
#include "cutlab/labels.hpp"

namespace cutlab {

// Every parent circuit is sliced into exactly this many fragments before
// compilation, so fragment count carries no information about the parent.
constexpr int kFragmentsPerParent = 6;

// One cut location. Wire cuts use (wire, gates_before): how many of that
// wire's gates stay upstream. Gate cuts use gate_index: which multi-qubit
// gate of the parent to sever.
struct CutPoint {
    int wire = -1;
    int gates_before = 0;
    std::size_t gate_index = 0;
};

struct CutSpec {
    CutMechanism mechanism = CutMechanism::wire;
    std::vector<CutPoint> cut_points;
    int target_fragments = kFragmentsPerParent;
};

// One slice of a parent circuit, compacted onto its own active wires.
// parent_qubits[i] is the parent wire behind fragment wire i.
struct Fragment {
    LogicalCircuit circuit;
    int parent_instance = -1;
    int frag_index = 0;
    CutMechanism mechanism = CutMechanism::wire;
    std::vector<int> parent_qubits;
    std::size_t first_parent_gate = 0;
};

struct CutResult {
    CutMechanism mechanism = CutMechanism::wire;
    std::vector<Fragment> fragments;
    // Cut events applied: wire bipartitions plus severed multi-qubit gates.
    int cut_count = 0;
};

// A group of fragments from one parent, submitted together.
struct CuttingJob {
    int job_id = 0;
    LogicalCircuit parent;
    std::vector<Fragment> fragments;
    LabelSet labels;
    // submission_order[rank] = frag_index submitted at that rank.
    std::vector<int> submission_order;
};

struct CorpusParams {
    int instances_per_family = 25;
    int fragments_per_job = kFragmentsPerParent;
    int min_qubits = 4;
    int max_qubits = 16;
};

struct AssembleResult {
    std::vector<CuttingJob> jobs;
    // One line per parent that had to be regenerated at a larger width.
    std::vector<std::string> regeneration_log;
};

// Splits the circuit in time across one wire: gates_before of that wire's
// gates stay upstream and every op from the wire's next gate onward moves
// downstream. Both halves receive a measure/prep marker on the cut wire.
// Throws degenerate_cut_error when the cut would leave one side without any
// gate on the wire (gates_before outside [1, gates_on_wire - 1]).
std::pair<Fragment, Fragment> bipartition_wire(const LogicalCircuit& parent, int wire,
                                               int gates_before);

// Applies the spec's wire cut points in order, then keeps cutting (positions
// drawn from the middle 60% of the busiest wires) until target_fragments
// parts exist. Throws degenerate_cut_error for an invalid explicit point and
// fragment_count_error when the target is unreachable.
std::vector<Fragment> cut_wire(const LogicalCircuit& parent, const CutSpec& spec,
                               std::uint64_t seed);

// Severs the multi-qubit gates named by the spec (each endpoint keeps a
// phase placeholder), partitions qubits by the remaining interaction-graph
// components, then merges or further splits parts to reach the target:
// balance-optimal bridge removal first, contiguous index blocks when the
// subgraph is 2-edge-connected, temporal bisection of the longest fragment
// when the qubit count runs out.
std::vector<Fragment> cut_gate(const LogicalCircuit& parent, const CutSpec& spec,
                               std::uint64_t seed);

// Automatic cutting: chooses cut points itself (seeded) and returns exactly
// target_parts fragments. Wire cutting retries a few placements preferring
// outcomes where every fragment is shallower than the parent.
CutResult cut_circuit(const LogicalCircuit& parent, CutMechanism mechanism, std::uint64_t seed,
                      int target_parts = kFragmentsPerParent);

// Builds the whole fragment corpus: 8 families x instances_per_family
// parents, widths drawn uniformly from [min_qubits, max_qubits], sub-variant
// rotating over instances, mechanism split half/half within each family.
// Parents that cannot yield the target fragment count are regenerated wider
// (and logged). Pure function of (params, master_seed).
AssembleResult assemble_jobs(const CorpusParams& params, std::uint64_t master_seed);

}  // namespace cutlab
