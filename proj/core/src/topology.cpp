#include "cutlab/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <queue>

#include "cutlab/errors.hpp"

namespace cutlab {

namespace {

constexpr int kHexCols = 5;

int hex_bridge_count(int rows) {
    int bridges = 0;
    for (int r = 0; r + 1 < rows; ++r) bridges += (r % 2 == 0) ? 2 : 1;
    return bridges;
}

int hex_total(int rows) { return rows * kHexCols + hex_bridge_count(rows); }

std::vector<int> hex_bridge_cols(int gap) {
    if (gap % 2 == 0) return {0, kHexCols - 1};
    return {kHexCols / 2};
}

// Length of the canonical snake for a given row count. Centre bridges cut the
// row sweeps short, so this grows slower than the node count.
int hex_snake_len(int rows) {
    int len = 0;
    int entry = 0;
    for (int r = 0; r < rows; ++r) {
        int target;
        if (r + 1 < rows) {
            target = -1;
            int best_gain = -1;
            for (int col : hex_bridge_cols(r)) {
                int gain = std::abs(col - entry);
                if (gain > best_gain || (gain == best_gain && col < target)) {
                    best_gain = gain;
                    target = col;
                }
            }
            len += 1;  // the bridge qubit itself
        } else {
            target = (entry <= kHexCols / 2) ? kHexCols - 1 : 0;
        }
        len += std::abs(target - entry) + 1;
        entry = target;
    }
    return len;
}

// A device is big enough when its snake can hold the request as one line:
// a chain of w qubits must seat swap-free, the same way hardware qubit
// selection looks for a w-long line before accepting a placement.
int hex_rows_for(int n_request) {
    int rows = 2;
    while (rows < 64 && (hex_total(rows) < n_request || hex_snake_len(rows) < n_request)) ++rows;
    return rows;
}

void finalize(CouplingGraph& g) {
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    g.adj.assign(static_cast<size_t>(g.n_phys), {});
    for (auto [a, b] : g.edges) {
        g.adj[static_cast<size_t>(a)].push_back(b);
        g.adj[static_cast<size_t>(b)].push_back(a);
    }
    for (auto& lst : g.adj) std::sort(lst.begin(), lst.end());

    const int n = g.n_phys;
    g.dist.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), -1));
    for (int s = 0; s < n; ++s) {
        auto& row = g.dist[static_cast<size_t>(s)];
        row[static_cast<size_t>(s)] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : g.adj[static_cast<size_t>(u)]) {
                if (row[static_cast<size_t>(v)] < 0) {
                    row[static_cast<size_t>(v)] = row[static_cast<size_t>(u)] + 1;
                    q.push(v);
                }
            }
        }
    }
}

CouplingGraph build_heavy_hex(int n_request) {
    if (n_request > hex_snake_len(64))
        throw invalid_topology_error("heavy_hex request exceeds supported tiling range");
    const int rows = hex_rows_for(n_request);

    CouplingGraph g;
    g.kind = Backend::heavy_hex;
    g.n_phys = hex_total(rows);

    auto row_qubit = [](int r, int c) { return r * kHexCols + c; };

    for (int r = 0; r < rows; ++r)
        for (int c = 0; c + 1 < kHexCols; ++c)
            g.edges.emplace_back(row_qubit(r, c), row_qubit(r, c + 1));

    // Bridge qubits sit between consecutive rows; the columns they attach to
    // alternate between the outer pair and the centre so cells stay hexagonal.
    std::vector<std::vector<std::pair<int, int>>> gap_bridges(static_cast<size_t>(rows));
    int next_id = rows * kHexCols;
    for (int gap = 0; gap + 1 < rows; ++gap) {
        for (int col : hex_bridge_cols(gap)) {
            int b = next_id++;
            g.edges.emplace_back(std::min(row_qubit(gap, col), b),
                                 std::max(row_qubit(gap, col), b));
            g.edges.emplace_back(std::min(row_qubit(gap + 1, col), b),
                                 std::max(row_qubit(gap + 1, col), b));
            gap_bridges[static_cast<size_t>(gap)].emplace_back(col, b);
        }
    }
    finalize(g);

    // Snake: cross each row toward the bridge column farthest from the entry
    // column, drop through that bridge, repeat; sweep the last row fully.
    int entry = 0;
    for (int r = 0; r < rows; ++r) {
        int target;
        int bridge_id = -1;
        if (r + 1 < rows) {
            target = -1;
            int best_gain = -1;
            for (auto [col, b] : gap_bridges[static_cast<size_t>(r)]) {
                int gain = std::abs(col - entry);
                if (gain > best_gain || (gain == best_gain && col < target)) {
                    best_gain = gain;
                    target = col;
                    bridge_id = b;
                }
            }
        } else {
            target = (entry <= kHexCols / 2) ? kHexCols - 1 : 0;
        }
        int step = (target >= entry) ? 1 : -1;
        for (int c = entry; c != target + step; c += step)
            g.canonical_path.push_back(row_qubit(r, c));
        if (bridge_id >= 0) g.canonical_path.push_back(bridge_id);
        entry = target;
    }
    return g;
}

}  // namespace

bool CouplingGraph::has_edge(int a, int b) const {
    if (a > b) std::swap(a, b);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
}

bool CouplingGraph::connected() const {
    if (n_phys <= 0) return false;
    const auto& row = dist[0];
    return std::all_of(row.begin(), row.end(), [](int d) { return d >= 0; });
}

int CouplingGraph::max_degree() const {
    size_t best = 0;
    for (const auto& lst : adj) best = std::max(best, lst.size());
    return static_cast<int>(best);
}

int heavy_hex_size_at_least(int n) { return hex_total(hex_rows_for(n)); }

CouplingGraph build_topology(Backend kind, int n_phys) {
    if (kind == Backend::heavy_hex) {
        if (n_phys < hex_total(2))
            throw invalid_topology_error("heavy_hex needs at least one 12-qubit cell");
        return build_heavy_hex(n_phys);
    }
    if (n_phys < 2) throw invalid_topology_error("backend needs at least 2 qubits");

    CouplingGraph g;
    g.kind = kind;
    g.n_phys = n_phys;
    if (kind == Backend::all_to_all) {
        for (int a = 0; a < n_phys; ++a)
            for (int b = a + 1; b < n_phys; ++b) g.edges.emplace_back(a, b);
    } else {
        for (int a = 0; a + 1 < n_phys; ++a) g.edges.emplace_back(a, a + 1);
    }
    finalize(g);
    g.canonical_path.resize(static_cast<size_t>(n_phys));
    for (int i = 0; i < n_phys; ++i) g.canonical_path[static_cast<size_t>(i)] = i;
    return g;
}

}  // namespace cutlab
