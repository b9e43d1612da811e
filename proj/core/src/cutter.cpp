#include "cutlab/cutter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "cutlab/errors.hpp"
#include "cutlab/generators.hpp"
#include "cutlab/rng.hpp"

namespace cutlab {

namespace {

// Working form of a fragment: parent-indexed ops on parent wire numbering.
struct Draft {
    std::vector<std::pair<std::size_t, GateOp>> ops;
};

std::size_t non_marker_count(const Draft& d) {
    std::size_t n = 0;
    for (const auto& [idx, op] : d.ops)
        if (!op.is_marker()) ++n;
    return n;
}

std::map<int, int> wire_gate_counts(const Draft& d) {
    std::map<int, int> counts;
    for (const auto& [idx, op] : d.ops) {
        if (op.is_marker()) continue;
        for (int q : op.qubits) ++counts[q];
    }
    return counts;
}

int min_wire(const Draft& d) {
    int w = std::numeric_limits<int>::max();
    for (const auto& [idx, op] : d.ops)
        for (int q : op.qubits) w = std::min(w, q);
    return w;
}

int draft_depth(const Draft& d) {
    std::vector<GateOp> gates;
    gates.reserve(d.ops.size());
    for (const auto& [idx, op] : d.ops) gates.push_back(op);
    return asap_depth(gates);
}

// Time bipartition inside one draft. gates_before non-marker gates on `wire`
// stay upstream; everything from the next gate on that wire onward moves to
// the successor, so each side is a contiguous span of the parent's timeline.
std::pair<Draft, Draft> time_split(const Draft& d, int wire, int gates_before) {
    int seen = 0;
    std::size_t split_at = d.ops.size();
    for (std::size_t i = 0; i < d.ops.size(); ++i) {
        const auto& op = d.ops[i].second;
        if (op.is_marker()) continue;
        if (std::find(op.qubits.begin(), op.qubits.end(), wire) == op.qubits.end()) continue;
        if (seen == gates_before) {
            split_at = i;
            break;
        }
        ++seen;
    }
    Draft up, down;
    up.ops.assign(d.ops.begin(), d.ops.begin() + split_at);
    down.ops.assign(d.ops.begin() + split_at, d.ops.end());
    const std::size_t cut_idx = d.ops[split_at].first;
    up.ops.emplace_back(cut_idx, GateOp::marker(wire));
    down.ops.insert(down.ops.begin(), {cut_idx, GateOp::marker(wire)});
    return {std::move(up), std::move(down)};
}

Fragment compact(const Draft& d, const LogicalCircuit& parent, CutMechanism mechanism) {
    std::set<int> wires;
    for (const auto& [idx, op] : d.ops)
        for (int q : op.qubits) wires.insert(q);
    Fragment f;
    f.mechanism = mechanism;
    f.parent_instance = parent.instance_id;
    f.parent_qubits.assign(wires.begin(), wires.end());
    std::map<int, int> remap;
    for (std::size_t i = 0; i < f.parent_qubits.size(); ++i)
        remap[f.parent_qubits[i]] = static_cast<int>(i);
    f.circuit.n_qubits = static_cast<int>(f.parent_qubits.size());
    f.circuit.family = parent.family;
    f.circuit.subvariant = parent.subvariant;
    f.circuit.instance_id = parent.instance_id;
    f.circuit.seed = parent.seed;
    f.first_parent_gate = d.ops.empty() ? 0 : d.ops.front().first;
    for (const auto& [idx, op] : d.ops) {
        GateOp g = op;
        for (int& q : g.qubits) q = remap[q];
        f.circuit.gates.push_back(std::move(g));
        f.first_parent_gate = std::min(f.first_parent_gate, idx);
    }
    validate(f.circuit);
    return f;
}

std::vector<Fragment> finish(std::vector<Draft> drafts, const LogicalCircuit& parent,
                             CutMechanism mechanism) {
    std::sort(drafts.begin(), drafts.end(), [](const Draft& a, const Draft& b) {
        std::size_t fa = a.ops.front().first, fb = b.ops.front().first;
        if (fa != fb) return fa < fb;
        return min_wire(a) < min_wire(b);
    });
    std::vector<Fragment> out;
    out.reserve(drafts.size());
    for (std::size_t i = 0; i < drafts.size(); ++i) {
        Fragment f = compact(drafts[i], parent, mechanism);
        f.frag_index = static_cast<int>(i);
        out.push_back(std::move(f));
    }
    return out;
}

// Finds the draft holding the requested parent-wire boundary and applies the
// closure split there. gates_before counts the wire's gates in that draft.
void apply_wire_point(std::vector<Draft>& drafts, int wire, int gates_before) {
    for (std::size_t i = 0; i < drafts.size(); ++i) {
        const auto counts = wire_gate_counts(drafts[i]);
        const auto it = counts.find(wire);
        if (it == counts.end() || it->second < 2) continue;
        if (gates_before <= 0 || gates_before >= it->second)
            throw degenerate_cut_error("cut position leaves an empty side on the wire");
        auto [up, down] = time_split(drafts[i], wire, gates_before);
        drafts[i] = std::move(up);
        drafts.push_back(std::move(down));
        return;
    }
    throw degenerate_cut_error("no fragment carries 2+ gates on the requested wire");
}

// Splits the busiest cuttable draft near a seeded point in the middle 60%
// of its timeline; returns false when no draft can be cut.
bool wire_split_once(std::vector<Draft>& drafts, Rng& rng) {
    std::vector<std::size_t> order(drafts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        std::size_t na = non_marker_count(drafts[a]), nb = non_marker_count(drafts[b]);
        if (na != nb) return na > nb;
        return drafts[a].ops.front().first < drafts[b].ops.front().first;
    });
    for (std::size_t pick : order) {
        const Draft& d = drafts[pick];
        if (non_marker_count(d) < 2) continue;
        const std::size_t len = d.ops.size();
        std::size_t lo = std::max<std::size_t>(1, static_cast<std::size_t>(0.2 * len));
        std::size_t hi = std::min(len - 1, static_cast<std::size_t>(0.8 * len));
        if (hi < lo) {
            lo = 1;
            hi = len - 1;
        }
        const std::size_t want = lo + rng.next_below(hi - lo + 1);
        // The op at the split must be a real gate whose wire has appeared
        // before it, so both sides keep a gate on the cut wire. Scan forward
        // from the drawn point, wrapping once.
        for (std::size_t step = 0; step < len; ++step) {
            const std::size_t at = lo + (want - lo + step) % (hi - lo + 1);
            const GateOp& op = d.ops[at].second;
            if (op.is_marker()) continue;
            int wire = -1, before = 0;
            for (int q : op.qubits) {
                int count = 0;
                for (std::size_t i = 0; i < at; ++i) {
                    const GateOp& prev = d.ops[i].second;
                    if (prev.is_marker()) continue;
                    if (std::find(prev.qubits.begin(), prev.qubits.end(), q) !=
                        prev.qubits.end())
                        ++count;
                }
                if (count > 0) {
                    wire = q;
                    before = count;
                    break;
                }
            }
            if (wire < 0) continue;
            auto [up, down] = time_split(d, wire, before);
            drafts[pick] = std::move(up);
            drafts.push_back(std::move(down));
            return true;
        }
    }
    return false;
}

bool bisect_largest(std::vector<Draft>& drafts, int& cut_count);

std::vector<Draft> cut_by_wire(const LogicalCircuit& parent, const std::vector<CutPoint>& points,
                               Rng& rng, int target_parts, int& cut_count) {
    Draft whole;
    for (std::size_t i = 0; i < parent.gates.size(); ++i)
        whole.ops.emplace_back(i, parent.gates[i]);
    std::vector<Draft> drafts{std::move(whole)};
    for (const CutPoint& p : points) {
        if (p.wire < 0 || p.wire >= parent.n_qubits)
            throw std::invalid_argument("cut wire out of range");
        apply_wire_point(drafts, p.wire, p.gates_before);
        ++cut_count;
    }
    if (static_cast<int>(drafts.size()) > target_parts)
        throw fragment_count_error("explicit cut points exceed the fragment target");
    while (static_cast<int>(drafts.size()) < target_parts) {
        if (wire_split_once(drafts, rng)) {
            ++cut_count;
            continue;
        }
        // Shallow circuits run out of re-occurring wires; pad by bisecting
        // the largest slice at its midpoint.
        if (!bisect_largest(drafts, cut_count))
            throw fragment_count_error("circuit too small to reach " +
                                       std::to_string(target_parts) + " fragments by wire cuts");
    }
    return drafts;
}

using Edge = std::pair<int, int>;

std::vector<std::vector<int>> graph_components(const std::set<int>& nodes,
                                               const std::set<Edge>& edges) {
    std::map<int, std::vector<int>> adj;
    for (const auto& [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::set<int> seen;
    std::vector<std::vector<int>> comps;
    for (int start : nodes) {
        if (seen.count(start)) continue;
        std::vector<int> comp, stack{start};
        seen.insert(start);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int w : adj[v])
                if (!seen.count(w)) {
                    seen.insert(w);
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

// first_gate[e] = earliest parent gate realizing edge e; used as tie-break.
std::vector<std::vector<int>> partition_qubits(const std::set<int>& active,
                                               const std::map<Edge, int>& weights,
                                               const std::map<Edge, std::size_t>& first_gate,
                                               int target_parts, int& cut_count) {
    std::set<Edge> edges;
    for (const auto& [e, w] : weights)
        if (w > 0) edges.insert(e);
    auto parts = graph_components(active, edges);

    while (static_cast<int>(parts.size()) > target_parts) {
        std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return a.front() < b.front();
        });
        std::vector<int> merged = parts[0];
        merged.insert(merged.end(), parts[1].begin(), parts[1].end());
        std::sort(merged.begin(), merged.end());
        parts.erase(parts.begin(), parts.begin() + 2);
        parts.push_back(std::move(merged));
    }

    while (static_cast<int>(parts.size()) < target_parts) {
        std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
            if (a.size() != b.size()) return a.size() > b.size();
            return a.front() < b.front();
        });
        bool split = false;
        for (auto& part : parts) {
            if (part.size() < 2) continue;
            std::set<int> members(part.begin(), part.end());
            std::set<Edge> sub;
            for (const Edge& e : edges)
                if (members.count(e.first) && members.count(e.second)) sub.insert(e);

            int best_imbalance = std::numeric_limits<int>::max();
            std::size_t best_first = 0;
            Edge best_edge{-1, -1};
            std::vector<std::vector<int>> best_split;
            for (const Edge& e : sub) {
                std::set<Edge> without = sub;
                without.erase(e);
                auto comps = graph_components(members, without);
                if (comps.size() != 2) continue;
                int imbalance = std::abs(static_cast<int>(comps[0].size()) -
                                         static_cast<int>(comps[1].size()));
                const std::size_t fg = first_gate.count(e) ? first_gate.at(e) : 0;
                if (best_edge.first < 0 || imbalance < best_imbalance ||
                    (imbalance == best_imbalance && fg < best_first)) {
                    best_imbalance = imbalance;
                    best_first = fg;
                    best_edge = e;
                    best_split = comps;
                }
            }
            // Contiguous index blocks are the alternative when no single gate
            // disconnects the part, and win outright when they balance better
            // (hub-and-spoke graphs would otherwise shed one leaf at a time).
            const int halves_imbalance = static_cast<int>(part.size() % 2);
            std::vector<std::vector<int>> halves;
            if (!best_split.empty() && best_imbalance <= halves_imbalance) {
                cut_count += weights.at(best_edge);
                halves = std::move(best_split);
            } else {
                std::size_t half = part.size() / 2;
                halves.emplace_back(part.begin(), part.begin() + half);
                halves.emplace_back(part.begin() + half, part.end());
                for (const Edge& e : sub) {
                    bool in_a = std::binary_search(halves[0].begin(), halves[0].end(), e.first);
                    bool in_b = std::binary_search(halves[0].begin(), halves[0].end(), e.second);
                    if (in_a != in_b) cut_count += weights.at(e);
                }
            }
            part = std::move(halves[0]);
            parts.push_back(std::move(halves[1]));
            split = true;
            break;
        }
        if (!split) break;
    }
    return parts;
}

// Splits ops so each side keeps at least one non-marker op.
std::pair<Draft, Draft> temporal_bisect(const Draft& d, int& cut_count) {
    const std::size_t nm = non_marker_count(d);
    const std::size_t want = nm / 2;
    std::size_t seen = 0, boundary = d.ops.size();
    for (std::size_t i = 0; i < d.ops.size(); ++i) {
        if (!d.ops[i].second.is_marker()) {
            if (seen == want) {
                boundary = i;
                break;
            }
            ++seen;
        }
    }
    Draft a, b;
    a.ops.assign(d.ops.begin(), d.ops.begin() + boundary);
    b.ops.assign(d.ops.begin() + boundary, d.ops.end());
    std::set<int> wires_a, wires_b;
    for (const auto& [idx, op] : a.ops)
        for (int q : op.qubits) wires_a.insert(q);
    for (const auto& [idx, op] : b.ops)
        for (int q : op.qubits) wires_b.insert(q);
    const std::size_t at = b.ops.front().first;
    for (int w : wires_a)
        if (wires_b.count(w)) {
            a.ops.emplace_back(at, GateOp::marker(w));
            b.ops.insert(b.ops.begin(), {at, GateOp::marker(w)});
            ++cut_count;
        }
    return {std::move(a), std::move(b)};
}

std::vector<Draft> cut_by_gate(const LogicalCircuit& parent,
                               const std::vector<CutPoint>& points, int target_parts,
                               int& cut_count) {
    std::set<int> active;
    for (const auto& g : parent.gates)
        for (int q : g.qubits) active.insert(q);

    std::set<std::size_t> removed;
    for (const CutPoint& p : points) {
        if (p.gate_index >= parent.gates.size())
            throw std::invalid_argument("cut gate index out of range");
        if (parent.gates[p.gate_index].qubits.size() < 2)
            throw std::invalid_argument("gate cut point must reference a multi-qubit gate");
        removed.insert(p.gate_index);
    }
    cut_count += static_cast<int>(removed.size());

    std::map<Edge, int> weights;
    std::map<Edge, std::size_t> first_gate;
    for (std::size_t i = 0; i < parent.gates.size(); ++i) {
        const GateOp& g = parent.gates[i];
        if (g.is_marker() || g.qubits.size() < 2 || removed.count(i)) continue;
        for (std::size_t a = 0; a < g.qubits.size(); ++a)
            for (std::size_t b = a + 1; b < g.qubits.size(); ++b) {
                Edge e{std::min(g.qubits[a], g.qubits[b]), std::max(g.qubits[a], g.qubits[b])};
                if (!weights.count(e)) first_gate[e] = i;
                ++weights[e];
            }
    }

    // Auto placement makes one balanced spatial split and leaves the rest of
    // the fragment budget to time-axis padding, so both sides keep the
    // parent's layer structure at roughly half width. Explicit cut points
    // spell out the whole partition instead.
    const int spatial_parts =
        points.empty() ? std::min(2, target_parts) : target_parts;
    auto parts = partition_qubits(active, weights, first_gate, spatial_parts, cut_count);
    std::map<int, int> part_of;
    for (std::size_t p = 0; p < parts.size(); ++p)
        for (int q : parts[p]) part_of[q] = static_cast<int>(p);

    std::vector<Draft> drafts(parts.size());
    for (std::size_t i = 0; i < parent.gates.size(); ++i) {
        const GateOp& g = parent.gates[i];
        int home = part_of.at(g.qubits.front());
        bool whole = !removed.count(i);
        for (int q : g.qubits)
            if (part_of.at(q) != home) whole = false;
        if (whole) {
            drafts[home].ops.emplace_back(i, g);
        } else if (g.qubits.size() < 2) {
            drafts[home].ops.emplace_back(i, g);
        } else {
            // Severed term: each endpoint keeps a phase placeholder in its
            // own fragment at the original position.
            const double theta = g.params.empty() ? 0.0 : g.params.front();
            for (int q : g.qubits) drafts[part_of.at(q)].ops.emplace_back(i, GateOp::rz(q, theta));
        }
    }

    // Qubits ran out before the target: split long fragments in time.
    while (static_cast<int>(drafts.size()) < target_parts) {
        if (!bisect_largest(drafts, cut_count))
            throw fragment_count_error("circuit too small to reach " +
                                       std::to_string(target_parts) + " fragments by gate cuts");
    }
    return drafts;
}

// Bisects the draft with the most gates at its op midpoint; false when every
// draft is a single gate.
bool bisect_largest(std::vector<Draft>& drafts, int& cut_count) {
    std::vector<std::size_t> order(drafts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const std::size_t na = non_marker_count(drafts[a]), nb = non_marker_count(drafts[b]);
        if (na != nb) return na > nb;
        return min_wire(drafts[a]) < min_wire(drafts[b]);
    });
    for (std::size_t pick : order) {
        if (non_marker_count(drafts[pick]) < 2) continue;
        auto [a, b] = temporal_bisect(drafts[pick], cut_count);
        drafts[pick] = std::move(a);
        drafts.push_back(std::move(b));
        return true;
    }
    return false;
}

int count_deep_fragments(const std::vector<Draft>& drafts, int parent_depth) {
    int deep = 0;
    for (const auto& d : drafts)
        if (draft_depth(d) >= parent_depth) ++deep;
    return deep;
}

}  // namespace

std::pair<Fragment, Fragment> bipartition_wire(const LogicalCircuit& parent, int wire,
                                               int gates_before) {
    if (wire < 0 || wire >= parent.n_qubits)
        throw std::invalid_argument("cut wire out of range");
    Draft whole;
    for (std::size_t i = 0; i < parent.gates.size(); ++i)
        whole.ops.emplace_back(i, parent.gates[i]);
    const auto counts = wire_gate_counts(whole);
    const auto it = counts.find(wire);
    const int g = it == counts.end() ? 0 : it->second;
    if (g == 0) throw degenerate_cut_error("no gates on cut wire");
    if (gates_before <= 0 || gates_before >= g)
        throw degenerate_cut_error("cut position leaves an empty side on the wire");
    auto [up, down] = time_split(whole, wire, gates_before);
    Fragment a = compact(up, parent, CutMechanism::wire);
    Fragment b = compact(down, parent, CutMechanism::wire);
    b.frag_index = 1;
    return {std::move(a), std::move(b)};
}

std::vector<Fragment> cut_wire(const LogicalCircuit& parent, const CutSpec& spec,
                               std::uint64_t seed) {
    if (spec.mechanism != CutMechanism::wire)
        throw std::invalid_argument("cut_wire called with a gate-cut spec");
    validate(parent);
    int cuts = 0;
    Rng rng(mix_seed(seed, 0xC17ULL));
    auto drafts = cut_by_wire(parent, spec.cut_points, rng, spec.target_fragments, cuts);
    return finish(std::move(drafts), parent, CutMechanism::wire);
}

std::vector<Fragment> cut_gate(const LogicalCircuit& parent, const CutSpec& spec,
                               std::uint64_t seed) {
    if (spec.mechanism != CutMechanism::gate)
        throw std::invalid_argument("cut_gate called with a wire-cut spec");
    validate(parent);
    (void)seed;
    int cuts = 0;
    auto drafts = cut_by_gate(parent, spec.cut_points, spec.target_fragments, cuts);
    return finish(std::move(drafts), parent, CutMechanism::gate);
}

CutResult cut_circuit(const LogicalCircuit& parent, CutMechanism mechanism, std::uint64_t seed,
                      int target_parts) {
    if (target_parts < 1) throw std::invalid_argument("target_parts must be positive");
    validate(parent);
    CutResult result;
    result.mechanism = mechanism;
    std::vector<Draft> drafts;
    if (mechanism == CutMechanism::wire) {
        // Prefer placements where every fragment is strictly shallower than
        // the parent; disconnected or single-qubit-only circuits may not
        // admit one, so keep the attempt with the fewest full-depth parts.
        const int parent_depth = asap_depth(parent.gates);
        std::vector<Draft> best;
        int best_deep = std::numeric_limits<int>::max();
        int best_cuts = 0;
        for (int attempt = 0; attempt < 24; ++attempt) {
            Rng rng(mix_seed(seed, 0xC17ULL + 977ULL * attempt));
            int cuts = 0;
            std::vector<Draft> trial =
                cut_by_wire(parent, {}, rng, target_parts, cuts);
            const int deep = count_deep_fragments(trial, parent_depth);
            if (deep < best_deep) {
                best_deep = deep;
                best = std::move(trial);
                best_cuts = cuts;
            }
            if (best_deep == 0) break;
        }
        drafts = std::move(best);
        result.cut_count = best_cuts;
    } else {
        drafts = cut_by_gate(parent, {}, target_parts, result.cut_count);
    }
    if (static_cast<int>(drafts.size()) != target_parts)
        throw fragment_count_error("expected " + std::to_string(target_parts) +
                                   " fragments, got " + std::to_string(drafts.size()));
    result.fragments = finish(std::move(drafts), parent, mechanism);
    return result;
}

LabelSet derive_labels(const LogicalCircuit& parent, CutMechanism mechanism) {
    LabelSet labels;
    labels.family = parent.family;
    labels.subvariant = parent.subvariant;
    labels.mechanism = mechanism;
    const auto graph = interaction_graph(parent);
    labels.connectivity = classify_connectivity(graph.mean_unique_degree());
    labels.locality = classify_locality(graph.max_term_weight);
    const auto it = parent.gen_params.find("geometry");
    labels.geometry =
        it == parent.gen_params.end() ? GeometryClass::irregular : geometry_from_name(it->second);
    return labels;
}

AssembleResult assemble_jobs(const CorpusParams& params, std::uint64_t master_seed) {
    if (params.instances_per_family < 1 || params.fragments_per_job < 1)
        throw std::invalid_argument("corpus params must be positive");
    if (params.min_qubits < 4 || params.max_qubits > 16 || params.min_qubits > params.max_qubits)
        throw std::invalid_argument("qubit bounds must lie within [4, 16]");
    AssembleResult out;
    const int per_family = params.instances_per_family;
    for (int f = 0; f < kFamilyCount; ++f) {
        // Widths are dealt as an evenly spaced ladder inside every
        // sub-variant class, so each class of each family covers its whole
        // width range instead of leaving the tails to chance. The ranges are
        // staggered per family: recipes that emit near-identical gate
        // patterns (chain ansatz vs chain Trotter step, encoder vs shallow
        // variational layer) live at different register sizes, the way
        // workloads of different kinds target different machine scales.
        // Random keeps to the wide end since its tax comes from long-range
        // pairs; the query family spans everything so its fan-in sweep
        // reaches both tiny and register-wide oracles.
        int fam_min = params.min_qubits;
        int fam_max = params.max_qubits;
        switch (static_cast<Family>(f)) {
            case Family::hea: fam_max = 10; break;
            case Family::qaoa: fam_min = 10; break;
            case Family::qft: fam_min = 8; fam_max = 14; break;
            case Family::random: fam_min = 10; break;
            case Family::qml: fam_min = 6; fam_max = 12; break;
            case Family::sim: fam_max = 8; break;
            case Family::chem: fam_min = 8; fam_max = 14; break;
            case Family::oracle: break;
        }
        fam_min = std::max(fam_min, params.min_qubits);
        fam_max = std::min(fam_max, params.max_qubits);
        if (fam_min > fam_max) fam_min = fam_max;
        const int span = fam_max - fam_min;
        std::vector<int> widths(per_family);
        std::vector<std::vector<int>> classes(kSubvariantsPerFamily);
        for (int c = 0; c < kSubvariantsPerFamily; ++c) {
            for (int i = c; i < per_family; i += kSubvariantsPerFamily)
                classes[static_cast<size_t>(c)].push_back(i);
            const auto& cls = classes[static_cast<size_t>(c)];
            const int m = static_cast<int>(cls.size());
            for (int k = 0; k < m; ++k)
                widths[static_cast<size_t>(cls[static_cast<size_t>(k)])] =
                    fam_min + (m == 1 ? 0 : (k * span + (m - 1) / 2) / (m - 1));
        }

        // Mechanisms are dealt inside each class with an even stride over the
        // width ladder, so both cut styles see small and wide parents. The
        // wire share per family stays within [0.4, 0.6].
        double wire_share = 0.5;
        if (static_cast<Family>(f) == Family::random) wire_share = 0.60;
        if (static_cast<Family>(f) == Family::qft) wire_share = 0.40;
        const int wire_quota = static_cast<int>(std::lround(wire_share * per_family));
        std::vector<int> share(classes.size(), 0);
        {
            std::vector<std::pair<double, int>> rem;
            int assigned = 0;
            for (size_t c = 0; c < classes.size(); ++c) {
                const double exact =
                    static_cast<double>(wire_quota) * static_cast<double>(classes[c].size()) /
                    per_family;
                share[c] = static_cast<int>(exact);
                assigned += share[c];
                rem.emplace_back(exact - share[c], static_cast<int>(c));
            }
            std::sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
                if (a.first != b.first) return a.first > b.first;
                return a.second < b.second;
            });
            for (int k = 0; k < wire_quota - assigned; ++k)
                ++share[static_cast<size_t>(rem[static_cast<size_t>(k)].second)];
        }
        Rng mech_rng(mix_seed(master_seed, 0xFA00ULL + f));
        std::vector<CutMechanism> mech_of(per_family, CutMechanism::gate);
        for (size_t c = 0; c < classes.size(); ++c) {
            const auto& cls = classes[c];
            const int m = static_cast<int>(cls.size());
            const int s = share[c];
            if (s == 0) continue;
            int pos = static_cast<int>(mech_rng.next_below(m));
            for (int k = 0; k < s; ++k) {
                int at = (pos + k * m / s) % m;
                while (mech_of[static_cast<size_t>(cls[static_cast<size_t>(at)])] ==
                       CutMechanism::wire)
                    at = (at + 1) % m;
                mech_of[static_cast<size_t>(cls[static_cast<size_t>(at)])] = CutMechanism::wire;
            }
        }

        for (int i = 0; i < per_family; ++i) {
            const int id = f * per_family + i;
            const Subvariant sv = subvariant_at(static_cast<Family>(f), i % kSubvariantsPerFamily);
            Rng inst_rng(mix_seed(master_seed, 0x1000ULL + id));
            int n = widths[i];
            const std::uint64_t circ_seed = inst_rng.next_u64();
            const std::uint64_t cut_seed = inst_rng.next_u64();
            CuttingJob job;
            job.job_id = id;
            for (int attempt = 0;; ++attempt) {
                LogicalCircuit parent =
                    generate(sv, n, mix_seed(circ_seed, static_cast<std::uint64_t>(attempt)));
                parent.instance_id = id;
                try {
                    CutResult cut =
                        cut_circuit(parent, mech_of[i], cut_seed, params.fragments_per_job);
                    job.parent = std::move(parent);
                    job.fragments = std::move(cut.fragments);
                    break;
                } catch (const fragment_count_error&) {
                    if (n >= params.max_qubits)
                        throw fragment_count_error(
                            "parent " + std::to_string(id) +
                            " cannot reach the fragment target at the maximum width");
                    out.regeneration_log.push_back(
                        "parent " + std::to_string(id) + " (" +
                        std::string(subvariant_name(sv)) + ") regenerated at n=" +
                        std::to_string(n + 1));
                    ++n;
                }
            }
            job.labels = derive_labels(job.parent, mech_of[i]);
            job.submission_order.resize(params.fragments_per_job);
            for (int r = 0; r < params.fragments_per_job; ++r) job.submission_order[r] = r;
            Rng perm_rng(mix_seed(master_seed, 0x5B00ULL + id));
            for (int r = params.fragments_per_job - 1; r > 0; --r) {
                const int j = static_cast<int>(perm_rng.next_below(r + 1));
                std::swap(job.submission_order[r], job.submission_order[j]);
            }
            out.jobs.push_back(std::move(job));
        }
    }
    return out;
}

}  // namespace cutlab
