#pragma once

#include <cstdint>

#include "cutlab/circuit.hpp"

namespace cutlab {

// Builds one workload circuit. Identical arguments give a bit-identical gate
// list. Continuous angles are drawn from the seed; structural choices (layer
// counts, entangling pairs, oracle secrets) are drawn from the same stream.
//
// gen_params tags written by every generator:
//   geometry   - chain | grid | irregular
//   locality_k - largest declared interaction arity
// plus family-specific entries (layers, p, density, oracle_core, ...).
LogicalCircuit generate(Family family, Subvariant subvariant, int n_qubits, std::uint64_t seed);

LogicalCircuit generate(Subvariant subvariant, int n_qubits, std::uint64_t seed);

// Edge list of the 2 x ceil(n/2) ladder used by the grid sub-modes, in the
// same qubit numbering the generators use.
std::vector<std::pair<int, int>> ladder_grid_edges(int n_qubits);

}  // namespace cutlab
