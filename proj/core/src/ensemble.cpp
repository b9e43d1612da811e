#include "cutlab/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "cutlab/errors.hpp"
#include "cutlab/parallel.hpp"
#include "cutlab/rng.hpp"

namespace cutlab {

namespace {

using Matrix = std::vector<std::vector<double>>;

std::string hex_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%a", v);
    return buf;
}

double parse_hex_double(const std::string& s) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) throw parse_error("bad float in model text: " + s, 0);
    return v;
}

double gini(const std::vector<int>& counts, int total) {
    if (total == 0) return 0.0;
    double g = 1.0;
    for (int c : counts) {
        double p = static_cast<double>(c) / total;
        g -= p * p;
    }
    return g;
}

// Rows sorted by (features, label) make training order-independent.
std::vector<size_t> canonical_order(const Matrix& X, const std::vector<int>& y) {
    std::vector<size_t> idx(X.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        if (X[a] != X[b]) return X[a] < X[b];
        return y[a] < y[b];
    });
    return idx;
}

struct TreeBuilder {
    const Matrix* X = nullptr;           // canonical rows, kept columns only
    const std::vector<int>* y = nullptr;
    int n_classes = 0;
    bool random_thresholds = false;  // extra-trees style
    Rng* rng = nullptr;
    Tree out;

    int build(std::vector<size_t>& rows, size_t lo, size_t hi) {
        const int node_id = static_cast<int>(out.nodes.size());
        out.nodes.emplace_back();

        std::vector<int> counts(static_cast<size_t>(n_classes), 0);
        for (size_t i = lo; i < hi; ++i) ++counts[static_cast<size_t>((*y)[rows[i]])];
        const int total = static_cast<int>(hi - lo);
        const double node_gini = gini(counts, total);
        out.nodes[static_cast<size_t>(node_id)].count = total;
        out.nodes[static_cast<size_t>(node_id)].impurity = node_gini;

        auto make_leaf = [&] {
            auto& nd = out.nodes[static_cast<size_t>(node_id)];
            nd.value.resize(static_cast<size_t>(n_classes));
            for (int k = 0; k < n_classes; ++k)
                nd.value[static_cast<size_t>(k)] = static_cast<double>(counts[static_cast<size_t>(k)]) / total;
            return node_id;
        };
        if (total < 2 || node_gini == 0.0) return make_leaf();

        const int n_feat = static_cast<int>((*X)[0].size());
        int m = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n_feat))));

        // Partial Fisher-Yates draw of m distinct feature ids.
        std::vector<int> feats(static_cast<size_t>(n_feat));
        std::iota(feats.begin(), feats.end(), 0);
        for (int i = 0; i < m; ++i) {
            int j = i + static_cast<int>(rng->next_below(static_cast<std::uint64_t>(n_feat - i)));
            std::swap(feats[static_cast<size_t>(i)], feats[static_cast<size_t>(j)]);
        }

        int best_feature = -1;
        double best_threshold = 0.0;
        double best_score = std::numeric_limits<double>::max();  // weighted child gini

        std::vector<std::pair<double, int>> vals;
        for (int fi = 0; fi < m; ++fi) {
            const int f = feats[static_cast<size_t>(fi)];
            if (random_thresholds) {
                double mn = std::numeric_limits<double>::max();
                double mx = std::numeric_limits<double>::lowest();
                for (size_t i = lo; i < hi; ++i) {
                    double v = (*X)[rows[i]][static_cast<size_t>(f)];
                    mn = std::min(mn, v);
                    mx = std::max(mx, v);
                }
                if (!(mn < mx)) continue;
                double thr = mn + rng->next_unit() * (mx - mn);
                if (thr >= mx) thr = std::nextafter(mx, mn);  // keep both sides nonempty
                std::vector<int> left_counts(static_cast<size_t>(n_classes), 0);
                int left_total = 0;
                for (size_t i = lo; i < hi; ++i) {
                    if ((*X)[rows[i]][static_cast<size_t>(f)] <= thr) {
                        ++left_counts[static_cast<size_t>((*y)[rows[i]])];
                        ++left_total;
                    }
                }
                if (left_total == 0 || left_total == total) continue;
                std::vector<int> right_counts(static_cast<size_t>(n_classes), 0);
                for (int k = 0; k < n_classes; ++k)
                    right_counts[static_cast<size_t>(k)] =
                        counts[static_cast<size_t>(k)] - left_counts[static_cast<size_t>(k)];
                double score = left_total * gini(left_counts, left_total) +
                               (total - left_total) * gini(right_counts, total - left_total);
                if (score < best_score) {
                    best_score = score;
                    best_feature = f;
                    best_threshold = thr;
                }
            } else {
                vals.clear();
                vals.reserve(hi - lo);
                for (size_t i = lo; i < hi; ++i)
                    vals.emplace_back((*X)[rows[i]][static_cast<size_t>(f)], (*y)[rows[i]]);
                std::sort(vals.begin(), vals.end());
                if (vals.front().first == vals.back().first) continue;
                std::vector<int> left_counts(static_cast<size_t>(n_classes), 0);
                int left_total = 0;
                for (size_t i = 0; i + 1 < vals.size(); ++i) {
                    ++left_counts[static_cast<size_t>(vals[i].second)];
                    ++left_total;
                    if (vals[i].first == vals[i + 1].first) continue;
                    std::vector<int> right_counts(static_cast<size_t>(n_classes), 0);
                    for (int k = 0; k < n_classes; ++k)
                        right_counts[static_cast<size_t>(k)] =
                            counts[static_cast<size_t>(k)] - left_counts[static_cast<size_t>(k)];
                    double score = left_total * gini(left_counts, left_total) +
                                   (total - left_total) * gini(right_counts, total - left_total);
                    if (score < best_score) {
                        best_score = score;
                        best_feature = f;
                        best_threshold = vals[i].first + 0.5 * (vals[i + 1].first - vals[i].first);
                    }
                }
            }
        }

        if (best_feature < 0 || best_score >= total * node_gini) return make_leaf();

        auto mid = std::stable_partition(rows.begin() + static_cast<std::ptrdiff_t>(lo),
                                         rows.begin() + static_cast<std::ptrdiff_t>(hi),
                                         [&](size_t r) {
                                             return (*X)[r][static_cast<size_t>(best_feature)] <=
                                                    best_threshold;
                                         });
        size_t split = static_cast<size_t>(mid - rows.begin());
        if (split == lo || split == hi) return make_leaf();  // numeric edge case

        out.nodes[static_cast<size_t>(node_id)].feature = best_feature;
        out.nodes[static_cast<size_t>(node_id)].threshold = best_threshold;
        int l = build(rows, lo, split);
        out.nodes[static_cast<size_t>(node_id)].left = l;
        int r = build(rows, split, hi);
        out.nodes[static_cast<size_t>(node_id)].right = r;
        return node_id;
    }
};

// ---- histogram boosting ----

struct BinnedData {
    std::vector<std::vector<double>> edges;  // per feature, ascending split values
    std::vector<std::vector<int>> bins;      // [feature][row] -> bin id
};

BinnedData bin_features(const Matrix& X, int n_bins) {
    const size_t n = X.size();
    const size_t f_count = X[0].size();
    BinnedData bd;
    bd.edges.resize(f_count);
    bd.bins.assign(f_count, std::vector<int>(n, 0));
    std::vector<double> sorted(n);
    for (size_t f = 0; f < f_count; ++f) {
        for (size_t i = 0; i < n; ++i) sorted[i] = X[i][f];
        std::sort(sorted.begin(), sorted.end());
        auto& edges = bd.edges[f];
        for (int b = 1; b < n_bins; ++b) {
            size_t pos = (static_cast<size_t>(b) * n) / static_cast<size_t>(n_bins);
            if (pos >= n) break;
            double e = sorted[pos];
            if ((edges.empty() || e > edges.back()) && e < sorted.back()) edges.push_back(e);
        }
        for (size_t i = 0; i < n; ++i) {
            bd.bins[f][i] = static_cast<int>(
                std::lower_bound(edges.begin(), edges.end(), X[i][f]) - edges.begin());
        }
    }
    return bd;
}

struct BoostBuilder {
    const BinnedData* bd = nullptr;
    const std::vector<double>* grad = nullptr;
    const std::vector<double>* hess = nullptr;
    double lr = 0.1;
    int max_depth = 8;
    double lambda = 1.0;
    Tree out;

    int build(std::vector<size_t>& rows, size_t lo, size_t hi, int depth) {
        const int node_id = static_cast<int>(out.nodes.size());
        out.nodes.emplace_back();
        double G = 0.0, H = 0.0;
        for (size_t i = lo; i < hi; ++i) {
            G += (*grad)[rows[i]];
            H += (*hess)[rows[i]];
        }
        const int total = static_cast<int>(hi - lo);
        out.nodes[static_cast<size_t>(node_id)].count = total;

        auto make_leaf = [&] {
            out.nodes[static_cast<size_t>(node_id)].value = {lr * (-G / (H + lambda))};
            return node_id;
        };
        if (depth >= max_depth || total < 2) return make_leaf();

        const double parent_score = G * G / (H + lambda);
        const size_t f_count = bd->edges.size();
        int best_feature = -1, best_bin = -1;
        double best_gain = 1e-12;
        std::vector<double> hg, hh;
        std::vector<int> hc;
        for (size_t f = 0; f < f_count; ++f) {
            const auto& edges = bd->edges[f];
            if (edges.empty()) continue;
            const int nb = static_cast<int>(edges.size()) + 1;
            hg.assign(static_cast<size_t>(nb), 0.0);
            hh.assign(static_cast<size_t>(nb), 0.0);
            hc.assign(static_cast<size_t>(nb), 0);
            const auto& col = bd->bins[f];
            for (size_t i = lo; i < hi; ++i) {
                int b = col[rows[i]];
                hg[static_cast<size_t>(b)] += (*grad)[rows[i]];
                hh[static_cast<size_t>(b)] += (*hess)[rows[i]];
                ++hc[static_cast<size_t>(b)];
            }
            double GL = 0.0, HL = 0.0;
            int CL = 0;
            for (int b = 0; b + 1 < nb; ++b) {
                GL += hg[static_cast<size_t>(b)];
                HL += hh[static_cast<size_t>(b)];
                CL += hc[static_cast<size_t>(b)];
                if (CL == 0 || CL == total) continue;
                double GR = G - GL, HR = H - HL;
                double gain = GL * GL / (HL + lambda) + GR * GR / (HR + lambda) - parent_score;
                if (gain > best_gain) {
                    best_gain = gain;
                    best_feature = static_cast<int>(f);
                    best_bin = b;
                }
            }
        }
        if (best_feature < 0) return make_leaf();

        const auto& col = bd->bins[static_cast<size_t>(best_feature)];
        auto mid = std::stable_partition(rows.begin() + static_cast<std::ptrdiff_t>(lo),
                                         rows.begin() + static_cast<std::ptrdiff_t>(hi),
                                         [&](size_t r) { return col[r] <= best_bin; });
        size_t split = static_cast<size_t>(mid - rows.begin());
        if (split == lo || split == hi) return make_leaf();

        auto& nd = out.nodes[static_cast<size_t>(node_id)];
        nd.feature = best_feature;
        nd.threshold = bd->edges[static_cast<size_t>(best_feature)][static_cast<size_t>(best_bin)];
        int l = build(rows, lo, split, depth + 1);
        out.nodes[static_cast<size_t>(node_id)].left = l;
        int r = build(rows, split, hi, depth + 1);
        out.nodes[static_cast<size_t>(node_id)].right = r;
        return node_id;
    }
};

void softmax_row(const std::vector<double>& scores, std::vector<double>& probs) {
    double mx = *std::max_element(scores.begin(), scores.end());
    double sum = 0.0;
    probs.resize(scores.size());
    for (size_t k = 0; k < scores.size(); ++k) {
        probs[k] = std::exp(scores[k] - mx);
        sum += probs[k];
    }
    for (auto& p : probs) p /= sum;
}

}  // namespace

const char* model_kind_name(ModelKind k) {
    switch (k) {
        case ModelKind::random_forest: return "random_forest";
        case ModelKind::extra_trees: return "extra_trees";
        default: return "hist_gradient_boost";
    }
}

ModelKind model_kind_from_name(const std::string& s) {
    if (s == "random_forest") return ModelKind::random_forest;
    if (s == "extra_trees") return ModelKind::extra_trees;
    if (s == "hist_gradient_boost") return ModelKind::hist_gradient_boost;
    throw std::invalid_argument("unknown model kind: " + s);
}

const TreeNode& Tree::walk(const std::vector<double>& x) const {
    int cur = 0;
    while (nodes[static_cast<size_t>(cur)].feature >= 0) {
        const auto& nd = nodes[static_cast<size_t>(cur)];
        cur = x[static_cast<size_t>(nd.feature)] <= nd.threshold ? nd.left : nd.right;
    }
    return nodes[static_cast<size_t>(cur)];
}

std::vector<double> Classifier::reduce(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != n_features_)
        throw std::invalid_argument("feature count mismatch");
    std::vector<double> r;
    r.reserve(kept_.size());
    for (int c : kept_) r.push_back(x[static_cast<size_t>(c)]);
    return r;
}

Classifier Classifier::train(ModelKind kind, const Matrix& X, const std::vector<int>& y,
                             int n_classes, const TrainOptions& options) {
    if (X.empty() || y.size() != X.size())
        throw degenerate_training_error("empty or misaligned training set");
    if (n_classes < 2) throw degenerate_training_error("need at least two classes");
    std::set<int> distinct;
    for (int v : y) {
        if (v < 0 || v >= n_classes) throw std::invalid_argument("label out of range");
        distinct.insert(v);
    }
    if (distinct.size() < 2)
        throw degenerate_training_error("training labels collapse to a single class");

    const size_t n = X.size();
    const int f_in = static_cast<int>(X[0].size());
    for (const auto& row : X)
        if (static_cast<int>(row.size()) != f_in)
            throw std::invalid_argument("ragged feature matrix");

    Classifier model;
    model.kind_ = kind;
    model.n_classes_ = n_classes;
    model.n_features_ = f_in;
    model.learning_rate_ = options.learning_rate;

    for (int f = 0; f < f_in; ++f) {
        double mn = X[0][static_cast<size_t>(f)], mx = mn;
        for (size_t i = 1; i < n; ++i) {
            mn = std::min(mn, X[i][static_cast<size_t>(f)]);
            mx = std::max(mx, X[i][static_cast<size_t>(f)]);
        }
        if (mn < mx) model.kept_.push_back(f);
    }
    if (model.kept_.empty())
        throw degenerate_training_error("all features are constant");

    auto order = canonical_order(X, y);
    Matrix Xs(n);
    std::vector<int> ys(n);
    for (size_t i = 0; i < n; ++i) {
        ys[i] = y[order[i]];
        Xs[i].reserve(model.kept_.size());
        for (int c : model.kept_) Xs[i].push_back(X[order[i]][static_cast<size_t>(c)]);
    }

    if (kind == ModelKind::random_forest || kind == ModelKind::extra_trees) {
        const int t_count = options.n_trees;
        model.trees_.resize(static_cast<size_t>(t_count));
        parallel_for(static_cast<size_t>(t_count), [&](size_t t) {
            Rng rng(mix_seed(options.seed, 0xE27A0000ull + t));
            std::vector<size_t> rows;
            if (kind == ModelKind::random_forest) {
                rows.resize(n);
                for (size_t i = 0; i < n; ++i) rows[i] = rng.next_below(n);
                std::sort(rows.begin(), rows.end());
            } else {
                rows.resize(n);
                std::iota(rows.begin(), rows.end(), size_t{0});
            }
            TreeBuilder tb;
            tb.X = &Xs;
            tb.y = &ys;
            tb.n_classes = n_classes;
            tb.random_thresholds = (kind == ModelKind::extra_trees);
            tb.rng = &rng;
            tb.build(rows, 0, rows.size());
            model.trees_[t] = std::move(tb.out);
        });
        return model;
    }

    // Boosting: class priors as base scores, then additive Newton steps on
    // softmax gradients, one tree per class per round.
    std::vector<double> prior(static_cast<size_t>(n_classes), 0.0);
    for (int v : ys) prior[static_cast<size_t>(v)] += 1.0;
    model.base_score_.resize(static_cast<size_t>(n_classes));
    for (int k = 0; k < n_classes; ++k)
        model.base_score_[static_cast<size_t>(k)] =
            std::log(std::max(prior[static_cast<size_t>(k)] / static_cast<double>(n), 1e-12));

    BinnedData bd = bin_features(Xs, options.n_bins);

    std::vector<std::vector<double>> scores(n,
                                            std::vector<double>(static_cast<size_t>(n_classes)));
    for (size_t i = 0; i < n; ++i) scores[i] = model.base_score_;

    std::vector<double> probs;
    std::vector<double> grad(n), hess(n);
    for (int round = 0; round < options.boost_rounds; ++round) {
        std::vector<std::vector<double>> p(n);
        for (size_t i = 0; i < n; ++i) softmax_row(scores[i], p[i]);
        for (int k = 0; k < n_classes; ++k) {
            for (size_t i = 0; i < n; ++i) {
                double pik = p[i][static_cast<size_t>(k)];
                grad[i] = pik - (ys[i] == k ? 1.0 : 0.0);
                hess[i] = std::max(pik * (1.0 - pik), 1e-12);
            }
            BoostBuilder bb;
            bb.bd = &bd;
            bb.grad = &grad;
            bb.hess = &hess;
            bb.lr = options.learning_rate;
            bb.max_depth = options.max_depth;
            std::vector<size_t> rows(n);
            std::iota(rows.begin(), rows.end(), size_t{0});
            bb.build(rows, 0, n, 0);
            // Update scores through the binned columns directly.
            for (size_t i = 0; i < n; ++i) {
                int cur = 0;
                while (bb.out.nodes[static_cast<size_t>(cur)].feature >= 0) {
                    const auto& nd = bb.out.nodes[static_cast<size_t>(cur)];
                    double v = Xs[i][static_cast<size_t>(nd.feature)];
                    cur = v <= nd.threshold ? nd.left : nd.right;
                }
                scores[i][static_cast<size_t>(k)] +=
                    bb.out.nodes[static_cast<size_t>(cur)].value[0];
            }
            model.trees_.push_back(std::move(bb.out));
        }
    }
    return model;
}

std::vector<double> Classifier::predict_proba(const std::vector<double>& x) const {
    std::vector<double> r = reduce(x);
    std::vector<double> acc(static_cast<size_t>(n_classes_), 0.0);
    if (kind_ == ModelKind::hist_gradient_boost) {
        std::vector<double> scores = base_score_;
        for (size_t t = 0; t < trees_.size(); ++t)
            scores[t % static_cast<size_t>(n_classes_)] += trees_[t].walk(r).value[0];
        softmax_row(scores, acc);
        return acc;
    }
    for (const auto& tree : trees_) {
        const auto& leaf = tree.walk(r);
        for (int k = 0; k < n_classes_; ++k) acc[static_cast<size_t>(k)] += leaf.value[static_cast<size_t>(k)];
    }
    for (auto& v : acc) v /= static_cast<double>(trees_.size());
    return acc;
}

std::vector<std::vector<double>> Classifier::predict_proba(const Matrix& X) const {
    std::vector<std::vector<double>> out(X.size());
    parallel_for(X.size(), [&](size_t i) { out[i] = predict_proba(X[i]); });
    return out;
}

int Classifier::predict(const std::vector<double>& x) const {
    auto p = predict_proba(x);
    return static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
}

FeatureImportance Classifier::gini_importance() const {
    if (kind_ == ModelKind::hist_gradient_boost)
        throw unsupported_model_error("impurity importance needs a forest model");
    const size_t f_in = static_cast<size_t>(n_features_);
    std::vector<std::vector<double>> per_tree;
    per_tree.reserve(trees_.size());
    for (const auto& tree : trees_) {
        std::vector<double> imp(f_in, 0.0);
        const double root_n = tree.nodes.empty() ? 0.0 : tree.nodes[0].count;
        for (const auto& nd : tree.nodes) {
            if (nd.feature < 0) continue;
            const auto& l = tree.nodes[static_cast<size_t>(nd.left)];
            const auto& r = tree.nodes[static_cast<size_t>(nd.right)];
            double drop = nd.count * nd.impurity - l.count * l.impurity - r.count * r.impurity;
            imp[static_cast<size_t>(kept_[static_cast<size_t>(nd.feature)])] += drop / root_n;
        }
        double s = std::accumulate(imp.begin(), imp.end(), 0.0);
        if (s > 0)
            for (auto& v : imp) v /= s;
        per_tree.push_back(std::move(imp));
    }
    FeatureImportance fi;
    fi.mean.assign(f_in, 0.0);
    fi.sd.assign(f_in, 0.0);
    for (const auto& imp : per_tree)
        for (size_t f = 0; f < f_in; ++f) fi.mean[f] += imp[f];
    for (auto& v : fi.mean) v /= static_cast<double>(per_tree.size());
    for (const auto& imp : per_tree)
        for (size_t f = 0; f < f_in; ++f) {
            double d = imp[f] - fi.mean[f];
            fi.sd[f] += d * d;
        }
    for (auto& v : fi.sd) v = std::sqrt(v / static_cast<double>(per_tree.size()));
    double total = std::accumulate(fi.mean.begin(), fi.mean.end(), 0.0);
    if (total > 0)
        for (auto& v : fi.mean) v /= total;
    return fi;
}

std::string Classifier::serialize() const {
    std::ostringstream os;
    os << "cutlab-model/1\n";
    os << "kind " << model_kind_name(kind_) << '\n';
    os << "classes " << n_classes_ << '\n';
    os << "features " << n_features_ << '\n';
    os << "kept";
    for (int c : kept_) os << ' ' << c;
    os << '\n';
    os << "lr " << hex_double(learning_rate_) << '\n';
    os << "base";
    for (double b : base_score_) os << ' ' << hex_double(b);
    os << '\n';
    os << "trees " << trees_.size() << '\n';
    for (const auto& tree : trees_) {
        os << "tree " << tree.nodes.size() << '\n';
        for (const auto& nd : tree.nodes) {
            os << nd.feature << ' ' << hex_double(nd.threshold) << ' ' << nd.left << ' '
               << nd.right << ' ' << nd.count << ' ' << hex_double(nd.impurity) << ' '
               << nd.value.size();
            for (double v : nd.value) os << ' ' << hex_double(v);
            os << '\n';
        }
    }
    os << "end\n";
    return os.str();
}

Classifier Classifier::deserialize(const std::string& text) {
    std::istringstream is(text);
    std::string tok;
    auto expect = [&](const char* want) {
        if (!(is >> tok) || tok != want)
            throw parse_error(std::string("model text: expected ") + want, 0);
    };
    expect("cutlab-model/1");
    expect("kind");
    is >> tok;
    Classifier model;
    model.kind_ = model_kind_from_name(tok);
    expect("classes");
    is >> model.n_classes_;
    expect("features");
    is >> model.n_features_;
    expect("kept");
    // kept ids run until the "lr" keyword
    while (is >> tok && tok != "lr") model.kept_.push_back(std::stoi(tok));
    if (tok != "lr") throw parse_error("model text: truncated kept list", 0);
    is >> tok;
    model.learning_rate_ = parse_hex_double(tok);
    expect("base");
    while (is >> tok && tok != "trees") model.base_score_.push_back(parse_hex_double(tok));
    if (tok != "trees") throw parse_error("model text: truncated base list", 0);
    size_t t_count = 0;
    is >> t_count;
    model.trees_.resize(t_count);
    for (size_t t = 0; t < t_count; ++t) {
        expect("tree");
        size_t n_nodes = 0;
        is >> n_nodes;
        model.trees_[t].nodes.resize(n_nodes);
        for (size_t i = 0; i < n_nodes; ++i) {
            auto& nd = model.trees_[t].nodes[i];
            size_t v_count = 0;
            is >> nd.feature >> tok;
            nd.threshold = parse_hex_double(tok);
            is >> nd.left >> nd.right >> nd.count >> tok;
            nd.impurity = parse_hex_double(tok);
            is >> v_count;
            nd.value.resize(v_count);
            for (size_t k = 0; k < v_count; ++k) {
                is >> tok;
                nd.value[k] = parse_hex_double(tok);
            }
            if (!is) throw parse_error("model text: truncated node", 0);
        }
    }
    expect("end");
    return model;
}

}  // namespace cutlab
