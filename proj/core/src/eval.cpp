#include "cutlab/eval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>

#include "cutlab/errors.hpp"
#include "cutlab/rng.hpp"
#include "cutlab/stats.hpp"

namespace cutlab {

namespace {

std::vector<int> unique_job_ids(const TranscriptCorpus& corpus) {
    std::set<int> jobs;
    for (const auto& r : corpus.records) jobs.insert(r.job_id);
    return {jobs.begin(), jobs.end()};
}

// One-vs-rest AUC with midrank tie handling.
std::optional<double> binary_auc(const std::vector<double>& scores,
                                 const std::vector<char>& positive) {
    const size_t n = scores.size();
    size_t p_count = 0;
    for (char c : positive) p_count += static_cast<size_t>(c);
    const size_t n_count = n - p_count;
    if (p_count == 0 || n_count == 0) return std::nullopt;

    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return scores[a] < scores[b]; });

    double rank_sum_pos = 0.0;
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        double midrank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
        for (size_t k = i; k < j; ++k)
            if (positive[order[k]]) rank_sum_pos += midrank;
        i = j;
    }
    double p = static_cast<double>(p_count);
    double auc = (rank_sum_pos - p * (p + 1.0) / 2.0) / (p * static_cast<double>(n_count));
    return auc;
}

}  // namespace

const char* task_name(Task t) {
    switch (t) {
        case Task::a1: return "A1";
        case Task::a2: return "A2";
        case Task::w1: return "W1";
        case Task::w2: return "W2";
        case Task::h1: return "H1";
        case Task::h2: return "H2";
        default: return "H3";
    }
}

Task task_from_name(const std::string& s) {
    if (s == "A1" || s == "a1") return Task::a1;
    if (s == "A2" || s == "a2") return Task::a2;
    if (s == "W1" || s == "w1") return Task::w1;
    if (s == "W2" || s == "w2") return Task::w2;
    if (s == "H1" || s == "h1") return Task::h1;
    if (s == "H2" || s == "h2") return Task::h2;
    if (s == "H3" || s == "h3") return Task::h3;
    throw std::invalid_argument("unknown task: " + s);
}

int task_class_count(Task t) {
    switch (t) {
        case Task::a1: return kFamilyCount;
        case Task::a2: return kSubvariantsPerFamily;
        case Task::w1: return 2;
        case Task::w2: return kBackendCount;
        default: return 3;
    }
}

int task_label(const TranscriptRecord& r, Task t) {
    switch (t) {
        case Task::a1: return static_cast<int>(r.family);
        case Task::a2: return subvariant_slot(r.subvariant);
        case Task::w1: return static_cast<int>(r.mechanism);
        case Task::w2: return static_cast<int>(r.backend);
        case Task::h1: return static_cast<int>(r.connectivity);
        case Task::h2: return static_cast<int>(r.geometry);
        default: return static_cast<int>(r.locality);
    }
}

std::string task_class_label(Task t, int k) {
    switch (t) {
        case Task::a1: return family_name(static_cast<Family>(k));
        case Task::a2: return "variant_" + std::to_string(k);
        case Task::w1: return mechanism_name(static_cast<CutMechanism>(k));
        case Task::w2: return backend_name(static_cast<Backend>(k));
        case Task::h1: return connectivity_name(static_cast<ConnectivityClass>(k));
        case Task::h2: return geometry_name(static_cast<GeometryClass>(k));
        default: return locality_name(static_cast<LocalityClass>(k));
    }
}

Split split_instance_disjoint(const TranscriptCorpus& corpus, double test_fraction,
                              std::uint64_t seed) {
    auto jobs = unique_job_ids(corpus);
    if (jobs.size() < 2) throw split_error("need at least 2 jobs for a job-disjoint split");
    Rng rng(seed);
    for (size_t i = jobs.size(); i > 1; --i) {
        size_t j = rng.next_below(i);
        std::swap(jobs[i - 1], jobs[j]);
    }
    size_t n_test = static_cast<size_t>(std::lround(test_fraction * static_cast<double>(jobs.size())));
    n_test = std::clamp<size_t>(n_test, 1, jobs.size() - 1);
    std::set<int> test_jobs(jobs.begin(), jobs.begin() + static_cast<std::ptrdiff_t>(n_test));

    Split split;
    for (size_t i = 0; i < corpus.records.size(); ++i) {
        if (test_jobs.count(corpus.records[i].job_id))
            split.test.push_back(i);
        else
            split.train.push_back(i);
    }
    if (split.train.empty() || split.test.empty())
        throw split_error("job-disjoint split left one side empty");
    return split;
}

Split split_size_holdout(const TranscriptCorpus& corpus) {
    if (corpus.records.empty()) throw split_error("empty corpus");
    std::vector<double> widths;
    widths.reserve(corpus.records.size());
    for (const auto& r : corpus.records) widths.push_back(r.width);
    std::sort(widths.begin(), widths.end());
    double p75 = quantile_sorted(widths, 0.75);

    Split split;
    for (size_t i = 0; i < corpus.records.size(); ++i) {
        if (static_cast<double>(corpus.records[i].width) >= p75)
            split.test.push_back(i);
        else
            split.train.push_back(i);
    }
    if (split.train.empty() || split.test.empty())
        throw split_error("width holdout is degenerate (constant widths?)");
    return split;
}

MatchedSubset match_footprint(const TranscriptCorpus& corpus, const std::vector<size_t>& pool,
                              Task task, double caliper) {
    if (caliper <= 0.0) throw std::invalid_argument("caliper must be positive");
    MatchedSubset out;
    if (pool.empty()) {
        out.infeasible = true;
        return out;
    }

    // Fragment count of the record's (job, backend) group.
    std::map<std::pair<int, int>, int> group_count;
    for (const auto& r : corpus.records) ++group_count[{r.job_id, static_cast<int>(r.backend)}];

    const size_t n = pool.size();
    std::vector<std::array<double, 3>> coord(n);
    for (size_t i = 0; i < n; ++i) {
        const auto& r = corpus.records[pool[i]];
        coord[i] = {static_cast<double>(r.width), static_cast<double>(r.depth),
                    static_cast<double>(group_count[{r.job_id, static_cast<int>(r.backend)}])};
    }
    for (int c = 0; c < 3; ++c) {
        double mn = coord[0][static_cast<size_t>(c)], mx = mn;
        for (const auto& p : coord) {
            mn = std::min(mn, p[static_cast<size_t>(c)]);
            mx = std::max(mx, p[static_cast<size_t>(c)]);
        }
        double range = mx - mn;
        for (auto& p : coord)
            p[static_cast<size_t>(c)] = range > 0 ? (p[static_cast<size_t>(c)] - mn) / range : 0.0;
    }

    const int n_classes = task_class_count(task);
    std::vector<std::vector<size_t>> by_class(static_cast<size_t>(n_classes));
    std::vector<int> labels(n);
    for (size_t i = 0; i < n; ++i) {
        labels[i] = task_label(corpus.records[pool[i]], task);
        by_class[static_cast<size_t>(labels[i])].push_back(i);
    }

    const double tol = caliper + 1e-12;
    for (size_t i = 0; i < n; ++i) {
        bool keep = true;
        for (int c = 0; c < n_classes && keep; ++c) {
            if (c == labels[i]) continue;
            bool found = false;
            for (size_t j : by_class[static_cast<size_t>(c)]) {
                double d = std::max({std::abs(coord[i][0] - coord[j][0]),
                                     std::abs(coord[i][1] - coord[j][1]),
                                     std::abs(coord[i][2] - coord[j][2])});
                if (d <= tol) {
                    found = true;
                    break;
                }
            }
            keep = found;
        }
        if (keep) out.kept.push_back(pool[i]);
    }
    out.retained_fraction = static_cast<double>(out.kept.size()) / static_cast<double>(n);
    out.infeasible = out.kept.empty();
    return out;
}

double accuracy(const std::vector<int>& y_true, const std::vector<int>& y_pred) {
    if (y_true.empty() || y_true.size() != y_pred.size())
        throw std::invalid_argument("accuracy needs aligned non-empty labels");
    size_t hits = 0;
    for (size_t i = 0; i < y_true.size(); ++i) hits += (y_true[i] == y_pred[i]);
    return static_cast<double>(hits) / static_cast<double>(y_true.size());
}

double macro_f1(const std::vector<int>& y_true, const std::vector<int>& y_pred, int n_classes) {
    if (y_true.empty() || y_true.size() != y_pred.size())
        throw std::invalid_argument("macro_f1 needs aligned non-empty labels");
    double sum = 0.0;
    for (int k = 0; k < n_classes; ++k) {
        long long tp = 0, fp = 0, fn = 0;
        for (size_t i = 0; i < y_true.size(); ++i) {
            bool t = y_true[i] == k, p = y_pred[i] == k;
            tp += (t && p);
            fp += (!t && p);
            fn += (t && !p);
        }
        double prec = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
        double rec = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
        sum += (prec + rec > 0) ? 2.0 * prec * rec / (prec + rec) : 0.0;
    }
    return sum / static_cast<double>(n_classes);
}

std::optional<double> macro_auc(const std::vector<int>& y_true,
                                const std::vector<std::vector<double>>& proba, int n_classes) {
    if (y_true.empty() || y_true.size() != proba.size())
        throw std::invalid_argument("macro_auc needs aligned non-empty inputs");
    std::vector<int> present(static_cast<size_t>(n_classes), 0);
    for (int v : y_true) present[static_cast<size_t>(v)] = 1;
    for (int k = 0; k < n_classes; ++k)
        if (!present[static_cast<size_t>(k)]) return std::nullopt;

    double sum = 0.0;
    std::vector<double> scores(y_true.size());
    std::vector<char> positive(y_true.size());
    for (int k = 0; k < n_classes; ++k) {
        for (size_t i = 0; i < y_true.size(); ++i) {
            scores[i] = proba[i][static_cast<size_t>(k)];
            positive[i] = y_true[i] == k ? 1 : 0;
        }
        auto auc = binary_auc(scores, positive);
        if (!auc) return std::nullopt;
        sum += *auc;
    }
    return sum / n_classes;
}

BootstrapCi bootstrap_ci(
    const std::function<std::optional<double>(const std::vector<size_t>&)>& metric, size_t n,
    int B, std::uint64_t seed) {
    if (B < 1) throw std::invalid_argument("bootstrap needs B >= 1");
    if (n == 0) throw std::invalid_argument("bootstrap of empty sample");
    Rng rng(seed);
    std::vector<double> values;
    values.reserve(static_cast<size_t>(B));
    BootstrapCi ci;
    std::vector<size_t> resample(n);
    for (int b = 0; b < B; ++b) {
        for (size_t i = 0; i < n; ++i) resample[i] = rng.next_below(n);
        auto v = metric(resample);
        if (v)
            values.push_back(*v);
        else
            ++ci.undefined_resamples;
    }
    if (values.empty()) return ci;  // defined stays false
    std::sort(values.begin(), values.end());
    ci.low = quantile_sorted(values, 0.025);
    ci.high = quantile_sorted(values, 0.975);
    ci.defined = true;
    return ci;
}

EvalReport evaluate_indices(const Classifier& model, const TranscriptCorpus& corpus, Task task,
                            const std::vector<size_t>& test_idx, const EvalSettings& settings) {
    if (test_idx.empty()) throw eval_error("empty test set");
    auto features = feature_matrix(corpus, settings.mask);

    const int n_classes = task_class_count(task);
    std::vector<std::vector<double>> X;
    std::vector<int> y;
    X.reserve(test_idx.size());
    y.reserve(test_idx.size());
    for (size_t i : test_idx) {
        X.push_back(features[i]);
        y.push_back(task_label(corpus.records[i], task));
    }
    auto proba = model.predict_proba(X);
    std::vector<int> pred(y.size());
    for (size_t i = 0; i < proba.size(); ++i)
        pred[i] = static_cast<int>(
            std::max_element(proba[i].begin(), proba[i].end()) - proba[i].begin());

    EvalReport rep;
    rep.task = task;
    rep.model = settings.model;
    rep.mask = settings.mask;
    rep.protocol = settings.protocol;
    rep.n_test = static_cast<int>(test_idx.size());
    rep.acc = accuracy(y, pred);
    rep.f1 = macro_f1(y, pred, n_classes);
    rep.auc = macro_auc(y, proba, n_classes);
    rep.auc_undefined_flag = !rep.auc.has_value();
    rep.confusion.assign(static_cast<size_t>(n_classes),
                         std::vector<int>(static_cast<size_t>(n_classes), 0));
    for (size_t i = 0; i < y.size(); ++i)
        ++rep.confusion[static_cast<size_t>(y[i])][static_cast<size_t>(pred[i])];

    if (settings.bootstrap_B >= 1) {
        auto gather_y = [&](const std::vector<size_t>& idx) {
            std::vector<int> yy(idx.size());
            for (size_t i = 0; i < idx.size(); ++i) yy[i] = y[idx[i]];
            return yy;
        };
        rep.acc_ci = bootstrap_ci(
            [&](const std::vector<size_t>& idx) -> std::optional<double> {
                auto yy = gather_y(idx);
                std::vector<int> pp(idx.size());
                for (size_t i = 0; i < idx.size(); ++i) pp[i] = pred[idx[i]];
                return accuracy(yy, pp);
            },
            y.size(), settings.bootstrap_B, settings.bootstrap_seed);
        rep.f1_ci = bootstrap_ci(
            [&](const std::vector<size_t>& idx) -> std::optional<double> {
                auto yy = gather_y(idx);
                std::vector<int> pp(idx.size());
                for (size_t i = 0; i < idx.size(); ++i) pp[i] = pred[idx[i]];
                return macro_f1(yy, pp, n_classes);
            },
            y.size(), settings.bootstrap_B, settings.bootstrap_seed);
        rep.auc_ci = bootstrap_ci(
            [&](const std::vector<size_t>& idx) -> std::optional<double> {
                auto yy = gather_y(idx);
                std::vector<std::vector<double>> prs(idx.size());
                for (size_t i = 0; i < idx.size(); ++i) prs[i] = proba[idx[i]];
                return macro_auc(yy, prs, n_classes);
            },
            y.size(), settings.bootstrap_B, settings.bootstrap_seed);
    }
    return rep;
}

FittedTask fit_task(const TranscriptCorpus& corpus, Task task, const Split& split,
                    const EvalSettings& settings) {
    auto features = feature_matrix(corpus, settings.mask);
    std::vector<std::vector<double>> X;
    std::vector<int> y;
    X.reserve(split.train.size());
    y.reserve(split.train.size());
    for (size_t i : split.train) {
        X.push_back(features[i]);
        y.push_back(task_label(corpus.records[i], task));
    }
    FittedTask fitted;
    fitted.model =
        Classifier::train(settings.model, X, y, task_class_count(task), settings.train);
    fitted.test_indices = split.test;
    fitted.report = evaluate_indices(fitted.model, corpus, task, split.test, settings);
    return fitted;
}

std::vector<SweepPoint> sample_efficiency_sweep(const TranscriptCorpus& corpus, Task task,
                                                const std::vector<int>& sizes, int reps,
                                                const EvalSettings& settings,
                                                double test_fraction, std::uint64_t split_seed,
                                                std::uint64_t subsample_seed) {
    auto jobs = unique_job_ids(corpus);
    const size_t n_jobs = jobs.size();
    const int per_job = static_cast<int>(corpus.records.size() / n_jobs);

    EvalSettings point_settings = settings;
    point_settings.bootstrap_B = 0;  // point estimates only

    std::vector<SweepPoint> curve;
    for (size_t s = 0; s < sizes.size(); ++s) {
        SweepPoint pt;
        pt.size_records = sizes[s];
        int k_jobs = per_job > 0 ? sizes[s] / per_job : 0;
        if (k_jobs < 1) {
            pt.skipped = true;
            curve.push_back(pt);
            continue;
        }
        k_jobs = std::min<int>(k_jobs, static_cast<int>(n_jobs));
        pt.jobs_used = k_jobs;

        std::vector<double> aucs;
        for (int rep = 0; rep < reps; ++rep) {
            std::vector<int> pool = jobs;
            Rng rng(mix_seed(subsample_seed, s * 1009 + static_cast<std::uint64_t>(rep)));
            for (size_t i = pool.size(); i > 1; --i) {
                size_t j = rng.next_below(i);
                std::swap(pool[i - 1], pool[j]);
            }
            std::set<int> chosen(pool.begin(), pool.begin() + k_jobs);
            TranscriptCorpus sub;
            sub.master_seed = corpus.master_seed;
            for (const auto& r : corpus.records)
                if (chosen.count(r.job_id)) sub.records.push_back(r);

            Split split = split_instance_disjoint(sub, test_fraction, split_seed);
            auto fitted = fit_task(sub, task, split, point_settings);
            if (fitted.report.auc)
                aucs.push_back(*fitted.report.auc);
            else
                ++pt.undefined_reps;
            ++pt.reps_run;
            if (k_jobs == static_cast<int>(n_jobs)) break;  // identical reps at full size
        }
        if (!aucs.empty()) {
            pt.mean_auc = mean_of(aucs);
            pt.sd_auc = population_sd(aucs);
        }
        curve.push_back(pt);
    }
    return curve;
}

std::vector<SubvariantReport> per_family_subtask_eval(const TranscriptCorpus& corpus,
                                                      const EvalSettings& settings,
                                                      double test_fraction,
                                                      std::uint64_t split_seed) {
    std::vector<SubvariantReport> out;
    EvalSettings s = settings;
    s.bootstrap_B = 0;

    for (int f = 0; f < kFamilyCount; ++f) {
        TranscriptCorpus sub;
        sub.master_seed = corpus.master_seed;
        for (const auto& r : corpus.records)
            if (static_cast<int>(r.family) == f) sub.records.push_back(r);
        SubvariantReport rep;
        rep.family = static_cast<Family>(f);
        if (!sub.records.empty()) {
            Split split = split_instance_disjoint(sub, test_fraction,
                                                  mix_seed(split_seed, 1 + static_cast<std::uint64_t>(f)));
            auto fitted = fit_task(sub, Task::a2, split, s);
            rep.n_test = fitted.report.n_test;
            rep.acc = fitted.report.acc;
        }
        out.push_back(rep);
    }

    Split split = split_instance_disjoint(corpus, test_fraction, split_seed);
    auto fitted = fit_task(corpus, Task::a2, split, s);
    SubvariantReport pooled;
    pooled.pooled = true;
    pooled.n_test = fitted.report.n_test;
    pooled.acc = fitted.report.acc;
    out.push_back(pooled);
    return out;
}

}  // namespace cutlab
