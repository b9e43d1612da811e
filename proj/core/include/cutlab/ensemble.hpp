#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cutlab {

enum class ModelKind { random_forest, extra_trees, hist_gradient_boost };

const char* model_kind_name(ModelKind k);
ModelKind model_kind_from_name(const std::string& s);

struct TrainOptions {
    int n_trees = 300;          // forest size
    int boost_rounds = 100;     // boosting rounds (trees per class per round: 1)
    double learning_rate = 0.1;
    int max_depth = 8;          // boosting trees; forest trees grow until pure
    int n_bins = 255;           // equal-frequency histogram bins for boosting
    std::uint64_t seed = 0;
};

// Binary split node. Leaves keep feature == -1; value holds the class
// distribution for forests or a single additive step for boosting.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;  // go left when x[feature] <= threshold
    int left = -1;
    int right = -1;
    int count = 0;
    double impurity = 0.0;
    std::vector<double> value;
};

struct Tree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root

    const TreeNode& walk(const std::vector<double>& x) const;
};

struct FeatureImportance {
    std::vector<double> mean;  // normalized to sum 1 over the input features
    std::vector<double> sd;    // spread of per-tree normalized importances
};

// Multiclass classifier over dense double features. Training canonicalizes
// row order and drops constant columns, so shuffled copies of the same data
// produce the identical model. Forest trees are seeded per index from the
// model seed.
class Classifier {
  public:
    static Classifier train(ModelKind kind, const std::vector<std::vector<double>>& X,
                            const std::vector<int>& y, int n_classes,
                            const TrainOptions& options = {});

    std::vector<double> predict_proba(const std::vector<double>& x) const;
    std::vector<std::vector<double>> predict_proba(const std::vector<std::vector<double>>& X) const;
    int predict(const std::vector<double>& x) const;

    // Mean impurity-decrease importance across forest trees. Boosted models
    // raise unsupported_model_error.
    FeatureImportance gini_importance() const;

    std::string serialize() const;  // stable text form, hexfloat numerics
    static Classifier deserialize(const std::string& text);

    ModelKind kind() const { return kind_; }
    int n_classes() const { return n_classes_; }
    int n_features() const { return n_features_; }
    const std::vector<Tree>& trees() const { return trees_; }

  private:
    ModelKind kind_ = ModelKind::random_forest;
    int n_classes_ = 0;
    int n_features_ = 0;          // input feature count before constant-drop
    std::vector<int> kept_;       // surviving column ids
    std::vector<double> base_score_;  // boosting only, per class
    double learning_rate_ = 0.1;
    std::vector<Tree> trees_;  // boosting: round-major, one tree per class

    std::vector<double> reduce(const std::vector<double>& x) const;
};

}  // namespace cutlab
