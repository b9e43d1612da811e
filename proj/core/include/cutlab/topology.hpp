#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cutlab {

enum class Backend : std::uint8_t { all_to_all, linear, heavy_hex };
constexpr int kBackendCount = 3;

inline const char* backend_name(Backend b) {
    switch (b) {
        case Backend::all_to_all: return "all_to_all";
        case Backend::linear: return "linear";
        default: return "heavy_hex";
    }
}

inline Backend backend_from_name(const std::string& s) {
    if (s == "all_to_all") return Backend::all_to_all;
    if (s == "linear") return Backend::linear;
    if (s == "heavy_hex") return Backend::heavy_hex;
    throw std::invalid_argument("unknown backend: " + s);
}

struct CouplingGraph {
    Backend kind = Backend::all_to_all;
    int n_phys = 0;
    std::vector<std::pair<int, int>> edges;  // undirected, first < second, sorted
    std::vector<std::vector<int>> adj;       // sorted neighbour lists
    std::vector<std::vector<int>> dist;      // all-pairs hop distances
    // A long simple path used to seat path-shaped interaction graphs; spans
    // every qubit on linear and all_to_all, snakes through rows on heavy_hex.
    std::vector<int> canonical_path;

    bool has_edge(int a, int b) const;
    int distance(int a, int b) const { return dist[a][b]; }
    bool connected() const;
    int max_degree() const;
};

// Smallest heavy-hex tiling size that holds at least n qubits (n <= 12 gives
// the single 12-qubit cell).
int heavy_hex_size_at_least(int n);

// Builds the canonical graph. heavy_hex rounds n_phys up to the smallest
// valid tiling; requests below one cell (12) raise invalid_topology_error.
CouplingGraph build_topology(Backend kind, int n_phys);

}  // namespace cutlab
