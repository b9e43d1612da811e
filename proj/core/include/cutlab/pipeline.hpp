#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cutlab/cutter.hpp"
#include "cutlab/eval.hpp"
#include "cutlab/router.hpp"
#include "cutlab/transcript.hpp"

namespace cutlab {

// One run's full configuration. Serialized canonically into every output
// header (as a hash), so equal configs give byte-identical outputs.
struct RunConfig {
    std::uint64_t master_seed = 1;
    int instances_per_family = 25;
    int fragments_per_job = 6;
    int min_qubits = 4;
    int max_qubits = 16;
    std::vector<Backend> backends = {Backend::all_to_all, Backend::linear, Backend::heavy_hex};
    ModelKind model = ModelKind::random_forest;
    std::vector<Task> tasks = {Task::a1, Task::w1, Task::w2, Task::h1, Task::h2, Task::h3};
    std::vector<FeatureMask> masks = {FeatureMask::full,      FeatureMask::structure_only,
                                      FeatureMask::timing_only, FeatureMask::shots_only,
                                      FeatureMask::no_timing,   FeatureMask::no_shots};
    double test_fraction = 0.25;
    int bootstrap_B = 1000;
    double caliper = 0.20;
    int n_trees = 300;
    int boost_rounds = 100;
    std::vector<int> sweep_sizes = {450, 900, 1800, 3600};
    int sweep_reps = 3;
    std::string backend_slice = "pooled";  // or one backend name
    std::string out_dir = "out";
};

RunConfig default_config();
RunConfig parse_config_json(const std::string& text);  // config_error names the bad field
RunConfig load_config(const std::string& path);
std::string config_json(const RunConfig& cfg);  // canonical form used for hashing
std::string config_hash(const RunConfig& cfg);  // 16 hex chars (FNV-1a 64)

// First line of every output file: schema name, config hash, master seed.
std::string output_header(const RunConfig& cfg, const char* schema);

struct CompiledFragment {
    int job_id = 0;
    int frag_index = 0;
    Backend backend = Backend::all_to_all;
    CompiledCircuit compiled;
    int extra_2q = 0;
    std::optional<double> depth_ratio;  // absent when the logical depth is zero
};

struct CorpusBuild {
    TranscriptCorpus transcript;
    std::vector<CuttingJob> jobs;
    std::vector<std::string> regeneration_log;
    std::vector<CompiledFragment> compilations;  // job-major, then backend, then fragment
    int device_qubits = 0;  // request before heavy-hex rounding
};

CorpusBuild build_corpus(const RunConfig& cfg);

// Backend x family table of mean compiled 2Q, mean extra 2Q, mean depth
// ratio ("---" when undefined for the whole cell).
std::string render_routing_tax_csv(const CorpusBuild& build, const RunConfig& cfg);

struct AttackOutputs {
    // file name -> content, in emission order
    std::vector<std::pair<std::string, std::string>> files;
};

// The full report bundle: headline (ID), size holdout, matched control,
// mask ablation, model comparison, confusion grids, feature importance,
// PCA, sample-efficiency sweep, sub-variant recovery, plain-text summary.
AttackOutputs run_attack(const RunConfig& cfg, const TranscriptCorpus& transcript);

// Sweep alone (same CSV the attack bundle contains).
std::string run_sweep_csv(const RunConfig& cfg, const TranscriptCorpus& transcript);

struct TelemetryRow {
    Family family = Family::hea;
    int n = 0;
    int compiled_depth = 0;
    int compiled_2q = 0;
    int active_width = 0;
    double qpu_seconds = 0.0;
};

std::vector<TelemetryRow> parse_telemetry_csv(std::istream& in);
std::vector<TelemetryRow> load_telemetry_csv(const std::string& path);

struct TelemetryReport {
    double min_seconds = 0.0, max_seconds = 0.0, range_seconds = 0.0;
    int min_depth = 0, max_depth = 0;
    double depth_ratio = 0.0;
    double pearson_r = 0.0;
    // Wall-clock spread under 1 s while depth varies by over 10x: the clock
    // carries no usable depth signal.
    bool timing_blind = false;
};

TelemetryReport telemetry_check(const std::vector<TelemetryRow>& rows);
std::string render_telemetry_report(const TelemetryReport& rep, const RunConfig& cfg);

struct ReferenceRow {
    Family family = Family::hea;
    int width = 0;
    int depth = 0;
};

std::vector<ReferenceRow> parse_reference_csv(std::istream& in);
std::vector<ReferenceRow> load_reference_csv(const std::string& path);

struct AlignmentRow {
    std::string name;  // width_all, depth_all, width_qaoa, width_qft
    bool skipped = false;
    double w1 = 0.0, ks = 0.0;
    double corpus_mean = 0.0, reference_mean = 0.0;
};

std::vector<AlignmentRow> alignment_rows(const TranscriptCorpus& corpus,
                                         const std::vector<ReferenceRow>& reference);
std::string render_alignment_csv(const std::vector<AlignmentRow>& rows, const RunConfig& cfg);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace cutlab
