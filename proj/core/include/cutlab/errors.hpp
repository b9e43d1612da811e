#pragma once

#include <stdexcept>
#include <string>

namespace cutlab {

// Cut placement touches the first or last position on a wire, so one side
// of the cut would be empty.
struct degenerate_cut_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A circuit is too small to produce the requested number of non-empty parts.
struct fragment_count_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Gate kind outside the supported vocabulary or the compilation basis.
struct unsupported_gate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Coupling graph request that cannot be tiled (size or kind).
struct invalid_topology_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Depth ratio requested against a zero-depth logical circuit.
struct undefined_ratio_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed corpus, model, or fixture file. Carries a 1-based line number
// when the failure is tied to a specific line (0 otherwise).
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& msg, int line_no = 0)
        : std::runtime_error(line_no > 0 ? msg + " (line " + std::to_string(line_no) + ")" : msg),
          line(line_no) {}
    int line;
};

// Corpus file whose schema version does not match this build.
struct version_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Feature mask name outside the six supported masks.
struct invalid_mask_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Training set that cannot support the requested estimator (single class,
// empty matrix, shape mismatch).
struct degenerate_training_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation undefined for the model kind (e.g. impurity importances on a
// boosted model).
struct unsupported_model_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Covariance with no variance anywhere; no principal axes exist.
struct degenerate_pca_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Split that cannot be formed (too few jobs, constant widths).
struct split_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluation request that cannot be satisfied (empty split, unknown task).
struct eval_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad run configuration.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cutlab
