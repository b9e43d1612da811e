#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "cutlab/circuit.hpp"

namespace cutlab {

// Connectivity class of the parent interaction graph, bucketed by mean
// unique-neighbour degree. Chains sit below 2, ladder grids between 2 and 3,
// denser couplings at 3 and above.
enum class ConnectivityClass : std::uint8_t { local_sparse, medium, dense };

// Coarse shape of the parent coupling pattern as declared by the generator.
enum class GeometryClass : std::uint8_t { chain, grid, irregular };

// Largest declared interaction order in the parent circuit, bucketed.
enum class LocalityClass : std::uint8_t { k2, k3_4, k5plus };

enum class CutMechanism : std::uint8_t { wire, gate };

inline const char* connectivity_name(ConnectivityClass c) {
    switch (c) {
        case ConnectivityClass::local_sparse: return "local_sparse";
        case ConnectivityClass::medium: return "medium";
        default: return "dense";
    }
}

inline const char* geometry_name(GeometryClass g) {
    switch (g) {
        case GeometryClass::chain: return "chain";
        case GeometryClass::grid: return "grid";
        default: return "irregular";
    }
}

inline const char* locality_name(LocalityClass l) {
    switch (l) {
        case LocalityClass::k2: return "k2";
        case LocalityClass::k3_4: return "k3_4";
        default: return "k5plus";
    }
}

inline const char* mechanism_name(CutMechanism m) {
    return m == CutMechanism::wire ? "wire" : "gate";
}

inline ConnectivityClass connectivity_from_name(const std::string& s) {
    if (s == "local_sparse") return ConnectivityClass::local_sparse;
    if (s == "medium") return ConnectivityClass::medium;
    if (s == "dense") return ConnectivityClass::dense;
    throw std::invalid_argument("unknown connectivity class: " + s);
}

inline GeometryClass geometry_from_name(const std::string& s) {
    if (s == "chain") return GeometryClass::chain;
    if (s == "grid") return GeometryClass::grid;
    if (s == "irregular") return GeometryClass::irregular;
    throw std::invalid_argument("unknown geometry class: " + s);
}

inline LocalityClass locality_from_name(const std::string& s) {
    if (s == "k2") return LocalityClass::k2;
    if (s == "k3_4") return LocalityClass::k3_4;
    if (s == "k5plus") return LocalityClass::k5plus;
    throw std::invalid_argument("unknown locality class: " + s);
}

inline CutMechanism mechanism_from_name(const std::string& s) {
    if (s == "wire") return CutMechanism::wire;
    if (s == "gate") return CutMechanism::gate;
    throw std::invalid_argument("unknown cut mechanism: " + s);
}

inline ConnectivityClass classify_connectivity(double mean_unique_degree) {
    if (mean_unique_degree < 2.0) return ConnectivityClass::local_sparse;
    if (mean_unique_degree < 3.0) return ConnectivityClass::medium;
    return ConnectivityClass::dense;
}

inline LocalityClass classify_locality(int max_interaction_order) {
    if (max_interaction_order <= 2) return LocalityClass::k2;
    if (max_interaction_order <= 4) return LocalityClass::k3_4;
    return LocalityClass::k5plus;
}

// Ground-truth labels attached to every record emitted from one parent
// circuit. Derived once from the parent, never from fragments.
struct LabelSet {
    Family family = Family::hea;
    Subvariant subvariant = Subvariant::hea_linear;
    CutMechanism mechanism = CutMechanism::wire;
    ConnectivityClass connectivity = ConnectivityClass::local_sparse;
    GeometryClass geometry = GeometryClass::chain;
    LocalityClass locality = LocalityClass::k2;
};

// Labels depend only on the parent circuit plus the chosen cut mechanism;
// backend is recorded separately on each record.
LabelSet derive_labels(const LogicalCircuit& parent, CutMechanism mechanism);

}  // namespace cutlab
