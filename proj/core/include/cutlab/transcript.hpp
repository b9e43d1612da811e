#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cutlab/circuit.hpp"
#include "cutlab/labels.hpp"
#include "cutlab/topology.hpp"

namespace cutlab {

// Schema tag written into every corpus header; readers reject anything else.
inline constexpr const char* kTranscriptSchema = "cut-transcript/1";

// One fragment execution as the scheduler would log it: coarse shape
// counters, shot budget, completion timestamp and submission rank, plus the
// ground-truth labels used to score attacks.
struct TranscriptRecord {
    int record_id = 0;
    int job_id = 0;
    int frag_index = 0;  // fragment position within its parent job
    Backend backend = Backend::all_to_all;

    Family family = Family::hea;
    Subvariant subvariant = Subvariant::hea_linear;
    CutMechanism mechanism = CutMechanism::wire;
    ConnectivityClass connectivity = ConnectivityClass::medium;
    GeometryClass geometry = GeometryClass::irregular;
    LocalityClass locality = LocalityClass::k2;

    int width = 0;          // physical qubits touched
    int depth = 0;          // compiled depth
    int twoq = 0;           // compiled 2Q count
    int shots = 0;          // sampling budget
    double timestamp = 0.0; // completion time on the backend clock
    int rank = 0;           // 0-based submission rank within the job
};

struct TranscriptCorpus {
    std::uint64_t master_seed = 0;
    std::string config_tag;  // run configuration hash, echoed in the header
    std::vector<TranscriptRecord> records;
};

void assign_labels(TranscriptRecord& rec, const LabelSet& labels);

// Shot budget for a record: uniform over {1024, 2048, 4096, 8192}.
int synthesize_shots(std::uint64_t master_seed, int record_id);

// Completion gaps for one job's fragments on one backend, in submission
// order. Gap i is 1.0 + 0.002 * depth_i * (1 + eps), eps ~ N(0, 0.25),
// clamped positive. The caller accumulates gaps onto the backend clock.
std::vector<double> synthesize_timing(std::uint64_t master_seed, int job_id, Backend backend,
                                      const std::vector<int>& depths);

// Ten per-record features, in this column order:
//   0 width, 1 depth, 2 twoq, 3 depth/width, 4 twoq/max(depth,1),
//   5 gap to previous fragment in the same (job, backend) group (first = 0),
//   6 submission rank, 7 job duration on that backend, 8 shots,
//   9 shots / job total shots.
constexpr int kFeatureCount = 10;
const std::array<std::string, kFeatureCount>& feature_names();

enum class FeatureMask {
    full,
    structure_only,  // columns 0-4
    timing_only,     // columns 5-7
    shots_only,      // columns 8-9
    no_timing,       // all but 5-7
    no_shots,        // all but 8-9
};

const char* mask_name(FeatureMask m);
FeatureMask mask_from_name(const std::string& s);  // invalid_mask_error on unknown names
std::vector<int> mask_columns(FeatureMask m);

// Rows aligned with corpus.records. Group-derived columns (5, 7, 9) are
// computed from the records themselves.
std::vector<std::array<double, kFeatureCount>> full_feature_rows(const TranscriptCorpus& corpus);
std::vector<std::vector<double>> feature_matrix(const TranscriptCorpus& corpus, FeatureMask mask);

// JSONL: one header line, then one record per line. Loading checks the
// schema tag (version_error) and reports bad lines with their line number
// (parse_error).
std::string to_jsonl(const TranscriptCorpus& corpus);
void save_jsonl(const TranscriptCorpus& corpus, const std::string& path);
TranscriptCorpus parse_jsonl(std::istream& in);
TranscriptCorpus load_jsonl(const std::string& path);

}  // namespace cutlab
