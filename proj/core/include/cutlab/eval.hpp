#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cutlab/ensemble.hpp"
#include "cutlab/transcript.hpp"

namespace cutlab {

// Inference targets recoverable from transcripts. a2 is the within-family
// sub-variant slot and is reported separately from the six headline tasks.
enum class Task { a1, a2, w1, w2, h1, h2, h3 };
constexpr int kTaskCount = 7;

const char* task_name(Task t);  // "A1".."H3"
Task task_from_name(const std::string& s);
int task_class_count(Task t);
int task_label(const TranscriptRecord& r, Task t);
std::string task_class_label(Task t, int k);

struct Split {
    std::vector<size_t> train, test;  // record indices, ascending
};

// Whole jobs shuffled by seed, first test_fraction share held out. Every
// record of a job lands on one side. Fewer than 2 jobs -> split_error.
Split split_instance_disjoint(const TranscriptCorpus& corpus, double test_fraction,
                              std::uint64_t seed);

// Records whose width reaches the 75th percentile (ties included) are the
// test side. Deterministic; a constant-width corpus -> split_error.
Split split_size_holdout(const TranscriptCorpus& corpus);

struct MatchedSubset {
    std::vector<size_t> kept;  // subset of the pool, ascending record order
    bool infeasible = false;
    double retained_fraction = 0.0;
};

// Footprint-matched control: min-max normalize (width, depth, per-job
// fragment count) over the pool, then keep records that have, for every
// other class of the task, a cross-class record within Chebyshev distance
// <= caliper. Empty result sets the infeasible flag instead of throwing.
MatchedSubset match_footprint(const TranscriptCorpus& corpus, const std::vector<size_t>& pool,
                              Task task, double caliper);

double accuracy(const std::vector<int>& y_true, const std::vector<int>& y_pred);
double macro_f1(const std::vector<int>& y_true, const std::vector<int>& y_pred, int n_classes);

// Unweighted mean of one-vs-rest midrank AUCs. Undefined (nullopt) when any
// of the task's classes is absent from y_true.
std::optional<double> macro_auc(const std::vector<int>& y_true,
                                const std::vector<std::vector<double>>& proba, int n_classes);

struct BootstrapCi {
    double low = 0.0;
    double high = 0.0;
    bool defined = false;
    int undefined_resamples = 0;
};

// Percentile bootstrap over index resamples; metric may return nullopt for a
// resample (skipped and counted).
BootstrapCi bootstrap_ci(
    const std::function<std::optional<double>(const std::vector<size_t>&)>& metric, size_t n,
    int B, std::uint64_t seed);

struct EvalReport {
    Task task = Task::a1;
    ModelKind model = ModelKind::random_forest;
    FeatureMask mask = FeatureMask::full;
    std::string protocol;  // "ID", "SH", "ID_matched", ...
    int n_test = 0;
    double acc = 0.0;
    double f1 = 0.0;
    std::optional<double> auc;
    bool auc_undefined_flag = false;
    BootstrapCi acc_ci, f1_ci, auc_ci;
    std::vector<std::vector<int>> confusion;  // true class x predicted class
};

struct EvalSettings {
    ModelKind model = ModelKind::random_forest;
    FeatureMask mask = FeatureMask::full;
    TrainOptions train;
    int bootstrap_B = 1000;
    std::uint64_t bootstrap_seed = 0;
    std::string protocol = "ID";
};

struct FittedTask {
    Classifier model;
    EvalReport report;
    std::vector<size_t> test_indices;
};

// Trains on the split's train rows and scores the test rows.
FittedTask fit_task(const TranscriptCorpus& corpus, Task task, const Split& split,
                    const EvalSettings& settings);

// Scores an already-trained model on an arbitrary index subset (matched
// controls, sweep points). Feature rows are derived from the full corpus so
// group statistics stay intact.
EvalReport evaluate_indices(const Classifier& model, const TranscriptCorpus& corpus, Task task,
                            const std::vector<size_t>& test_idx, const EvalSettings& settings);

struct SweepPoint {
    int size_records = 0;
    int jobs_used = 0;
    int reps_run = 0;
    int undefined_reps = 0;
    double mean_auc = 0.0;
    double sd_auc = 0.0;
    bool skipped = false;  // size below one whole job
};

// Job-coherent subsampling at each size, instance-disjoint eval per rep.
// The full-corpus size reuses every seed of the headline path, so its point
// reproduces the headline AUC exactly.
std::vector<SweepPoint> sample_efficiency_sweep(const TranscriptCorpus& corpus, Task task,
                                                const std::vector<int>& sizes, int reps,
                                                const EvalSettings& settings,
                                                double test_fraction, std::uint64_t split_seed,
                                                std::uint64_t subsample_seed);

struct SubvariantReport {
    bool pooled = false;
    Family family = Family::hea;
    int n_test = 0;
    double acc = 0.0;
};

// Three-way sub-variant recovery inside each family plus the pooled task.
std::vector<SubvariantReport> per_family_subtask_eval(const TranscriptCorpus& corpus,
                                                      const EvalSettings& settings,
                                                      double test_fraction,
                                                      std::uint64_t split_seed);

}  // namespace cutlab
