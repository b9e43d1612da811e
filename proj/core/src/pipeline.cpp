#include "cutlab/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cutlab/errors.hpp"
#include "cutlab/parallel.hpp"
#include "cutlab/rng.hpp"
#include "cutlab/stats.hpp"

namespace cutlab {

namespace {

using nlohmann::json;

std::string fmt(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v, int digits = 6) {
    return v ? fmt(*v, digits) : std::string("---");
}

int task_index(Task t) { return static_cast<int>(t); }
int mask_index(FeatureMask m) { return static_cast<int>(m); }
int kind_index(ModelKind k) { return static_cast<int>(k); }

constexpr std::uint64_t kIdSplitTag = 0x1D57;
constexpr std::uint64_t kTrainTag = 0x4000;
constexpr std::uint64_t kBootstrapTag = 0xB000;
constexpr std::uint64_t kSubvariantTag = 0xA250;
constexpr std::uint64_t kSweepTag = 0x53EE;
constexpr std::uint64_t kRouteTag = 0x2077'0000;

std::uint64_t train_seed(const RunConfig& cfg, Task t, FeatureMask m, ModelKind k) {
    return mix_seed(cfg.master_seed,
                    kTrainTag + static_cast<std::uint64_t>(task_index(t)) * 256 +
                        static_cast<std::uint64_t>(mask_index(m)) * 16 +
                        static_cast<std::uint64_t>(kind_index(k)));
}

TrainOptions train_options(const RunConfig& cfg, std::uint64_t seed) {
    TrainOptions opts;
    opts.n_trees = cfg.n_trees;
    opts.boost_rounds = cfg.boost_rounds;
    opts.seed = seed;
    return opts;
}

void require(bool ok, const std::string& field, const std::string& reason) {
    if (!ok) throw config_error("field '" + field + "': " + reason);
}

template <typename T, typename F>
std::vector<T> parse_name_list(const json& arr, const std::string& field, F from_name) {
    std::vector<T> out;
    require(arr.is_array() && !arr.empty(), field, "must be a non-empty array");
    for (const auto& el : arr) {
        require(el.is_string(), field, "entries must be strings");
        try {
            out.push_back(from_name(el.get<std::string>()));
        } catch (const std::invalid_argument& e) {
            throw config_error("field '" + field + "': " + e.what());
        }
    }
    std::set<int> seen;
    for (const auto& v : out)
        require(seen.insert(static_cast<int>(v)).second, field, "duplicate entry");
    return out;
}

void validate_config(const RunConfig& cfg) {
    require(cfg.instances_per_family >= 1, "instances_per_family", "must be >= 1");
    require(cfg.fragments_per_job >= 2 && cfg.fragments_per_job <= 12, "fragments_per_job",
            "must be in [2, 12]");
    require(cfg.min_qubits >= 4, "min_qubits", "must be >= 4");
    require(cfg.max_qubits <= 16, "max_qubits", "must be <= 16");
    require(cfg.min_qubits <= cfg.max_qubits, "min_qubits", "must be <= max_qubits");
    require(!cfg.backends.empty(), "backends", "must be non-empty");
    require(cfg.test_fraction > 0.0 && cfg.test_fraction < 1.0, "test_fraction",
            "must be in (0, 1)");
    require(cfg.bootstrap_B >= 1, "bootstrap_B", "must be >= 1");
    require(cfg.caliper > 0.0, "caliper", "must be > 0");
    require(cfg.n_trees >= 1, "n_trees", "must be >= 1");
    require(cfg.boost_rounds >= 1, "boost_rounds", "must be >= 1");
    require(!cfg.sweep_sizes.empty(), "sweep_sizes", "must be non-empty");
    for (size_t i = 0; i < cfg.sweep_sizes.size(); ++i) {
        require(cfg.sweep_sizes[i] > 0, "sweep_sizes", "sizes must be positive");
        if (i > 0)
            require(cfg.sweep_sizes[i - 1] < cfg.sweep_sizes[i], "sweep_sizes",
                    "sizes must be strictly ascending");
    }
    require(cfg.sweep_reps >= 1, "sweep_reps", "must be >= 1");
    require(!cfg.tasks.empty(), "tasks", "must be non-empty");
    require(!cfg.masks.empty(), "masks", "must be non-empty");
    require(!cfg.out_dir.empty(), "out_dir", "must be non-empty");
    if (cfg.backend_slice != "pooled") {
        Backend b;
        try {
            b = backend_from_name(cfg.backend_slice);
        } catch (const std::invalid_argument&) {
            throw config_error("field 'backend_slice': must be 'pooled' or a backend name");
        }
        bool listed = std::find(cfg.backends.begin(), cfg.backends.end(), b) != cfg.backends.end();
        require(listed, "backend_slice", "sliced backend must be in backends");
    }
}

TranscriptCorpus slice_corpus(const TranscriptCorpus& input, const std::string& slice) {
    if (slice == "pooled") return input;
    Backend b = backend_from_name(slice);
    TranscriptCorpus out;
    out.master_seed = input.master_seed;
    out.config_tag = input.config_tag;
    for (const auto& r : input.records)
        if (r.backend == b) out.records.push_back(r);
    return out;
}

std::string csv_headline_row(const EvalReport& r) {
    std::ostringstream os;
    os << task_name(r.task) << ',' << model_kind_name(r.model) << ',' << mask_name(r.mask) << ','
       << r.protocol << ',' << r.n_test << ',' << fmt(r.acc) << ',' << fmt(r.acc_ci.low) << ','
       << fmt(r.acc_ci.high) << ',' << fmt(r.f1) << ',' << fmt(r.f1_ci.low) << ','
       << fmt(r.f1_ci.high) << ',' << fmt_opt(r.auc) << ','
       << (r.auc_ci.defined ? fmt(r.auc_ci.low) : std::string("---")) << ','
       << (r.auc_ci.defined ? fmt(r.auc_ci.high) : std::string("---")) << ','
       << (r.auc_undefined_flag ? 1 : 0) << '\n';
    return os.str();
}

constexpr const char* kHeadlineCols =
    "task,model,mask,protocol,n_test,acc,acc_lo,acc_hi,f1,f1_lo,f1_hi,auc,auc_lo,auc_hi,"
    "auc_undefined\n";

}  // namespace

RunConfig default_config() { return RunConfig{}; }

std::string config_json(const RunConfig& cfg) {
    json j;
    j["master_seed"] = cfg.master_seed;
    j["instances_per_family"] = cfg.instances_per_family;
    j["fragments_per_job"] = cfg.fragments_per_job;
    j["min_qubits"] = cfg.min_qubits;
    j["max_qubits"] = cfg.max_qubits;
    json backends = json::array();
    for (Backend b : cfg.backends) backends.push_back(backend_name(b));
    j["backends"] = backends;
    j["model"] = model_kind_name(cfg.model);
    json tasks = json::array();
    for (Task t : cfg.tasks) tasks.push_back(task_name(t));
    j["tasks"] = tasks;
    json masks = json::array();
    for (FeatureMask m : cfg.masks) masks.push_back(mask_name(m));
    j["masks"] = masks;
    j["test_fraction"] = cfg.test_fraction;
    j["bootstrap_B"] = cfg.bootstrap_B;
    j["caliper"] = cfg.caliper;
    j["n_trees"] = cfg.n_trees;
    j["boost_rounds"] = cfg.boost_rounds;
    j["sweep_sizes"] = cfg.sweep_sizes;
    j["sweep_reps"] = cfg.sweep_reps;
    j["backend_slice"] = cfg.backend_slice;
    j["out_dir"] = cfg.out_dir;
    return j.dump();
}

RunConfig parse_config_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw config_error(std::string("config is not valid json: ") + e.what());
    }
    if (!j.is_object()) throw config_error("config root must be an object");

    static const std::set<std::string> known = {
        "master_seed",  "instances_per_family", "fragments_per_job", "min_qubits",
        "max_qubits",   "backends",             "model",             "tasks",
        "masks",        "test_fraction",        "bootstrap_B",       "caliper",
        "n_trees",      "boost_rounds",         "sweep_sizes",       "sweep_reps",
        "backend_slice", "out_dir"};
    for (const auto& [key, _] : j.items())
        if (!known.count(key)) throw config_error("unknown config field '" + key + "'");

    RunConfig cfg;
    try {
        if (j.contains("master_seed")) cfg.master_seed = j["master_seed"].get<std::uint64_t>();
        if (j.contains("instances_per_family"))
            cfg.instances_per_family = j["instances_per_family"].get<int>();
        if (j.contains("fragments_per_job"))
            cfg.fragments_per_job = j["fragments_per_job"].get<int>();
        if (j.contains("min_qubits")) cfg.min_qubits = j["min_qubits"].get<int>();
        if (j.contains("max_qubits")) cfg.max_qubits = j["max_qubits"].get<int>();
        if (j.contains("backends"))
            cfg.backends = parse_name_list<Backend>(j["backends"], "backends", backend_from_name);
        if (j.contains("model")) {
            try {
                cfg.model = model_kind_from_name(j["model"].get<std::string>());
            } catch (const std::invalid_argument& e) {
                throw config_error(std::string("field 'model': ") + e.what());
            }
        }
        if (j.contains("tasks"))
            cfg.tasks = parse_name_list<Task>(j["tasks"], "tasks", task_from_name);
        if (j.contains("masks"))
            cfg.masks = parse_name_list<FeatureMask>(j["masks"], "masks", mask_from_name);
        if (j.contains("test_fraction")) cfg.test_fraction = j["test_fraction"].get<double>();
        if (j.contains("bootstrap_B")) cfg.bootstrap_B = j["bootstrap_B"].get<int>();
        if (j.contains("caliper")) cfg.caliper = j["caliper"].get<double>();
        if (j.contains("n_trees")) cfg.n_trees = j["n_trees"].get<int>();
        if (j.contains("boost_rounds")) cfg.boost_rounds = j["boost_rounds"].get<int>();
        if (j.contains("sweep_sizes"))
            cfg.sweep_sizes = j["sweep_sizes"].get<std::vector<int>>();
        if (j.contains("sweep_reps")) cfg.sweep_reps = j["sweep_reps"].get<int>();
        if (j.contains("backend_slice"))
            cfg.backend_slice = j["backend_slice"].get<std::string>();
        if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
    } catch (const json::exception& e) {
        throw config_error(std::string("config field has the wrong type: ") + e.what());
    }
    validate_config(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_json(ss.str());
}

std::string config_hash(const RunConfig& cfg) {
    std::string s = config_json(cfg);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string output_header(const RunConfig& cfg, const char* schema) {
    std::ostringstream os;
    os << "# schema=" << schema << " config=" << config_hash(cfg)
       << " seed=" << cfg.master_seed << '\n';
    return os.str();
}

CorpusBuild build_corpus(const RunConfig& cfg) {
    validate_config(cfg);
    CorpusParams params;
    params.instances_per_family = cfg.instances_per_family;
    params.fragments_per_job = cfg.fragments_per_job;
    params.min_qubits = cfg.min_qubits;
    params.max_qubits = cfg.max_qubits;
    auto assembled = assemble_jobs(params, cfg.master_seed);

    CorpusBuild out;
    out.jobs = std::move(assembled.jobs);
    out.regeneration_log = std::move(assembled.regeneration_log);

    int max_w = 2;
    for (const auto& job : out.jobs)
        for (const auto& frag : job.fragments) max_w = std::max(max_w, frag.circuit.n_qubits);
    // One device per backend serves the whole corpus, sized with headroom
    // over the widest fragment the way a submitter picks one machine per
    // provider and keeps it. Slack qubits are where the routing tax shows:
    // heavy-hex spreads dense fragments over spare nodes while chains keep
    // to a contiguous run.
    out.device_qubits = max_w + 4;

    const size_t n_backends = cfg.backends.size();
    const size_t n_jobs = out.jobs.size();
    const size_t per_job = out.jobs.empty() ? 0 : out.jobs[0].fragments.size();
    out.compilations.resize(n_jobs * n_backends * per_job);

    std::vector<CouplingGraph> graphs;
    graphs.reserve(n_backends);
    for (Backend b : cfg.backends)
        graphs.push_back(build_topology(
            b, b == Backend::heavy_hex ? std::max(12, out.device_qubits) : out.device_qubits));

    parallel_for(n_jobs * n_backends, [&](size_t idx) {
        const size_t j = idx / n_backends;
        const size_t bi = idx % n_backends;
        const auto& job = out.jobs[j];
        for (size_t f = 0; f < job.fragments.size(); ++f) {
            const Fragment& frag = job.fragments[f];
            LogicalCircuit basis = decompose_to_basis(frag.circuit);
            CompiledCircuit comp = route(
                basis, graphs[bi],
                mix_seed(cfg.master_seed, kRouteTag + idx * 16 + f));
            CompiledFragment cf;
            cf.job_id = job.job_id;
            cf.frag_index = static_cast<int>(f);
            cf.backend = cfg.backends[bi];
            cf.extra_2q = comp.compiled_2q - logical_metrics(basis).twoq_count;
            const int raw_depth = logical_metrics(frag.circuit).depth;
            if (raw_depth > 0)
                cf.depth_ratio = static_cast<double>(comp.compiled_depth) / raw_depth;
            cf.compiled = std::move(comp);
            out.compilations[(j * n_backends + bi) * per_job + f] = std::move(cf);
        }
    });

    TranscriptCorpus t;
    t.master_seed = cfg.master_seed;
    t.config_tag = config_hash(cfg);
    std::vector<double> clock(n_backends, 0.0);
    int record_id = 0;
    for (size_t j = 0; j < n_jobs; ++j) {
        const auto& job = out.jobs[j];
        for (size_t bi = 0; bi < n_backends; ++bi) {
            const size_t base = (j * n_backends + bi) * per_job;
            std::vector<int> depths(job.submission_order.size());
            for (size_t rank = 0; rank < job.submission_order.size(); ++rank) {
                int frag_idx = job.submission_order[rank];
                depths[rank] =
                    out.compilations[base + static_cast<size_t>(frag_idx)].compiled.compiled_depth;
            }
            auto gaps = synthesize_timing(cfg.master_seed, job.job_id, cfg.backends[bi], depths);
            for (size_t rank = 0; rank < job.submission_order.size(); ++rank) {
                clock[bi] += gaps[rank];
                int frag_idx = job.submission_order[rank];
                const auto& cf = out.compilations[base + static_cast<size_t>(frag_idx)];
                TranscriptRecord r;
                r.record_id = record_id++;
                r.job_id = job.job_id;
                r.frag_index = frag_idx;
                r.backend = cfg.backends[bi];
                assign_labels(r, job.labels);
                r.width = cf.compiled.active_width;
                r.depth = cf.compiled.compiled_depth;
                r.twoq = cf.compiled.compiled_2q;
                r.shots = synthesize_shots(cfg.master_seed, r.record_id);
                r.timestamp = clock[bi];
                r.rank = static_cast<int>(rank);
                t.records.push_back(r);
            }
        }
    }
    out.transcript = std::move(t);
    return out;
}

std::string render_routing_tax_csv(const CorpusBuild& build, const RunConfig& cfg) {
    std::map<int, Family> family_of_job;
    for (const auto& job : build.jobs) family_of_job[job.job_id] = job.labels.family;

    struct Cell {
        double sum_2q = 0.0, sum_extra = 0.0, sum_ratio = 0.0;
        int n = 0, n_ratio = 0;
    };
    std::map<std::pair<int, int>, Cell> cells;  // (backend order, family)
    std::map<Backend, int> backend_order;
    for (size_t i = 0; i < cfg.backends.size(); ++i)
        backend_order[cfg.backends[i]] = static_cast<int>(i);

    for (const auto& cf : build.compilations) {
        auto& cell = cells[{backend_order.at(cf.backend),
                            static_cast<int>(family_of_job.at(cf.job_id))}];
        cell.sum_2q += cf.compiled.compiled_2q;
        cell.sum_extra += cf.extra_2q;
        if (cf.depth_ratio) {
            cell.sum_ratio += *cf.depth_ratio;
            ++cell.n_ratio;
        }
        ++cell.n;
    }

    std::ostringstream os;
    os << output_header(cfg, "routing-tax/1");
    os << "backend,family,mean_compiled_2q,mean_extra_2q,mean_depth_ratio,fragments\n";
    for (size_t bi = 0; bi < cfg.backends.size(); ++bi) {
        for (int f = 0; f < kFamilyCount; ++f) {
            auto it = cells.find({static_cast<int>(bi), f});
            if (it == cells.end()) continue;
            const Cell& c = it->second;
            os << backend_name(cfg.backends[bi]) << ',' << family_name(static_cast<Family>(f))
               << ',' << fmt(c.sum_2q / c.n, 2) << ',' << fmt(c.sum_extra / c.n, 2) << ',';
            if (c.n_ratio > 0)
                os << fmt(c.sum_ratio / c.n_ratio, 2);
            else
                os << "---";
            os << ',' << c.n << '\n';
        }
    }
    return os.str();
}

AttackOutputs run_attack(const RunConfig& cfg, const TranscriptCorpus& transcript) {
    validate_config(cfg);
    TranscriptCorpus corpus = slice_corpus(transcript, cfg.backend_slice);
    if (corpus.records.empty()) throw eval_error("corpus slice is empty");

    const std::uint64_t id_seed = mix_seed(cfg.master_seed, kIdSplitTag);
    Split id_split = split_instance_disjoint(corpus, cfg.test_fraction, id_seed);
    Split sh_split = split_size_holdout(corpus);

    std::ostringstream headline, holdout, matched, ablation, comp, importance, sweep_csv,
        subvariants, summary;
    headline << output_header(cfg, "headline/1") << kHeadlineCols;
    holdout << output_header(cfg, "size-holdout/1") << kHeadlineCols;
    matched << output_header(cfg, "matched-control/1")
            << "task,model,caliper,n_test,auc_natural,n_matched,retained_fraction,auc_matched,"
               "infeasible\n";
    ablation << output_header(cfg, "mask-ablation/1") << "task,mask,n_test,auc,auc_undefined\n";
    comp << output_header(cfg, "model-comparison/1") << "task,model,auc,auc_undefined\n";
    importance << output_header(cfg, "feature-importance/1") << "task,model,feature,mean,sd\n";
    sweep_csv << output_header(cfg, "sample-sweep/1")
              << "task,size_records,jobs,reps,undefined_reps,mean_auc,sd_auc,skipped\n";
    subvariants << output_header(cfg, "subvariant-recovery/1") << "scope,family,n_test,accuracy\n";

    std::vector<std::pair<std::string, std::string>> confusions;
    std::vector<EvalReport> id_reports;

    for (Task t : cfg.tasks) {
        try {
            EvalSettings s;
            s.model = cfg.model;
            s.mask = FeatureMask::full;
            s.train = train_options(cfg, train_seed(cfg, t, FeatureMask::full, cfg.model));
            s.bootstrap_B = cfg.bootstrap_B;
            s.bootstrap_seed = mix_seed(
                cfg.master_seed, kBootstrapTag + static_cast<std::uint64_t>(task_index(t)) * 8);
            s.protocol = "ID";
            FittedTask fitted = fit_task(corpus, t, id_split, s);
            headline << csv_headline_row(fitted.report);
            id_reports.push_back(fitted.report);

            // Matched-footprint control on the same test pool and model.
            MatchedSubset ms = match_footprint(corpus, id_split.test, t, cfg.caliper);
            EvalSettings sm = s;
            sm.bootstrap_B = 0;
            sm.protocol = "ID_matched";
            std::optional<double> matched_auc;
            if (!ms.infeasible) {
                EvalReport mrep = evaluate_indices(fitted.model, corpus, t, ms.kept, sm);
                matched_auc = mrep.auc;
            }
            matched << task_name(t) << ',' << model_kind_name(cfg.model) << ','
                    << fmt(cfg.caliper, 2) << ',' << id_split.test.size() << ','
                    << fmt_opt(fitted.report.auc) << ',' << ms.kept.size() << ','
                    << fmt(ms.retained_fraction) << ',' << fmt_opt(matched_auc) << ','
                    << (ms.infeasible ? 1 : 0) << '\n';

            // Size holdout retrains on the narrow-width side.
            EvalSettings sh = s;
            sh.protocol = "SH";
            sh.bootstrap_seed = mix_seed(
                cfg.master_seed,
                kBootstrapTag + static_cast<std::uint64_t>(task_index(t)) * 8 + 1);
            FittedTask fitted_sh = fit_task(corpus, t, sh_split, sh);
            holdout << csv_headline_row(fitted_sh.report);

            // Impurity importance comes from a forest; train one if the
            // configured model cannot provide it.
            {
                const Classifier* forest = &fitted.model;
                Classifier fallback;
                ModelKind used = cfg.model;
                if (cfg.model == ModelKind::hist_gradient_boost) {
                    used = ModelKind::random_forest;
                    EvalSettings fs = s;
                    fs.model = used;
                    fs.train = train_options(cfg, train_seed(cfg, t, FeatureMask::full, used));
                    fs.bootstrap_B = 0;
                    fallback = fit_task(corpus, t, id_split, fs).model;
                    forest = &fallback;
                }
                FeatureImportance fi = forest->gini_importance();
                auto cols = mask_columns(FeatureMask::full);
                for (size_t f = 0; f < fi.mean.size(); ++f)
                    importance << task_name(t) << ',' << model_kind_name(used) << ','
                               << feature_names()[static_cast<size_t>(cols[f])] << ','
                               << fmt(fi.mean[f]) << ',' << fmt(fi.sd[f]) << '\n';
            }

            // Confusion grid for the ID protocol.
            {
                std::ostringstream cm;
                cm << output_header(cfg, "confusion/1");
                const int K = task_class_count(t);
                cm << "true\\pred";
                for (int k = 0; k < K; ++k) cm << ',' << task_class_label(t, k);
                cm << '\n';
                for (int a = 0; a < K; ++a) {
                    cm << task_class_label(t, a);
                    for (int b = 0; b < K; ++b)
                        cm << ','
                           << fitted.report.confusion[static_cast<size_t>(a)][static_cast<size_t>(b)];
                    cm << '\n';
                }
                confusions.emplace_back(std::string("confusion_") + task_name(t) + ".csv",
                                        cm.str());
            }

            // Mask ablation shares the ID split across all masks.
            for (FeatureMask m : cfg.masks) {
                EvalSettings sa;
                sa.model = cfg.model;
                sa.mask = m;
                sa.train = train_options(cfg, train_seed(cfg, t, m, cfg.model));
                sa.bootstrap_B = 0;
                sa.protocol = "ID";
                FittedTask fa = fit_task(corpus, t, id_split, sa);
                ablation << task_name(t) << ',' << mask_name(m) << ',' << fa.report.n_test << ','
                         << fmt_opt(fa.report.auc) << ',' << (fa.report.auc_undefined_flag ? 1 : 0)
                         << '\n';
            }

            // Attacker model comparison, full mask.
            for (ModelKind k : {ModelKind::random_forest, ModelKind::extra_trees,
                                ModelKind::hist_gradient_boost}) {
                EvalSettings sc;
                sc.model = k;
                sc.mask = FeatureMask::full;
                sc.train = train_options(cfg, train_seed(cfg, t, FeatureMask::full, k));
                sc.bootstrap_B = 0;
                sc.protocol = "ID";
                FittedTask fc = fit_task(corpus, t, id_split, sc);
                comp << task_name(t) << ',' << model_kind_name(k) << ','
                     << fmt_opt(fc.report.auc) << ',' << (fc.report.auc_undefined_flag ? 1 : 0)
                     << '\n';
            }

            // Sample-efficiency sweep; the full-size point re-runs the exact
            // headline configuration.
            {
                EvalSettings ss = s;
                ss.bootstrap_B = 0;
                auto curve = sample_efficiency_sweep(corpus, t, cfg.sweep_sizes, cfg.sweep_reps,
                                                     ss, cfg.test_fraction, id_seed,
                                                     mix_seed(cfg.master_seed, kSweepTag));
                for (const auto& pt : curve) {
                    sweep_csv << task_name(t) << ',' << pt.size_records << ',' << pt.jobs_used
                              << ',' << pt.reps_run << ',' << pt.undefined_reps << ','
                              << fmt(pt.mean_auc) << ',' << fmt(pt.sd_auc) << ','
                              << (pt.skipped ? 1 : 0) << '\n';
                }
            }
        } catch (const config_error&) {
            throw;
        } catch (const std::exception& e) {
            throw eval_error(std::string(task_name(t)) + ": " + e.what());
        }
    }

    // Sub-variant recovery (within-family and pooled).
    try {
        EvalSettings sa2;
        sa2.model = cfg.model;
        sa2.mask = FeatureMask::full;
        sa2.train =
            train_options(cfg, train_seed(cfg, Task::a2, FeatureMask::full, cfg.model));
        sa2.bootstrap_B = 0;
        auto reports = per_family_subtask_eval(corpus, sa2, cfg.test_fraction,
                                               mix_seed(cfg.master_seed, kSubvariantTag));
        for (const auto& rep : reports) {
            if (rep.pooled)
                subvariants << "pooled,all," << rep.n_test << ',' << fmt(rep.acc) << '\n';
            else
                subvariants << "family," << family_name(rep.family) << ',' << rep.n_test << ','
                            << fmt(rep.acc) << '\n';
        }
    } catch (const std::exception& e) {
        throw eval_error(std::string("A2: ") + e.what());
    }

    // PCA of the raw (width, depth, twoq) footprint.
    std::ostringstream pca_csv;
    pca_csv << output_header(cfg, "pca/1") << "kind,name,v1,v2,v3\n";
    {
        std::vector<std::vector<double>> X;
        X.reserve(corpus.records.size());
        for (const auto& r : corpus.records)
            X.push_back({static_cast<double>(r.width), static_cast<double>(r.depth),
                         static_cast<double>(r.twoq)});
        PcaResult p = pca(X);
        pca_csv << "mean,features," << fmt(p.mean[0]) << ',' << fmt(p.mean[1]) << ','
                << fmt(p.mean[2]) << '\n';
        pca_csv << "ratio,explained," << fmt(p.explained_ratio[0]) << ','
                << fmt(p.explained_ratio[1]) << ',' << fmt(p.explained_ratio[2]) << '\n';
        for (size_t k = 0; k < p.components.size(); ++k)
            pca_csv << "loading,pc" << (k + 1) << ',' << fmt(p.components[k][0]) << ','
                    << fmt(p.components[k][1]) << ',' << fmt(p.components[k][2]) << '\n';
        for (size_t i = 0; i < corpus.records.size(); ++i) {
            double pc1 = 0.0, pc2 = 0.0;
            for (size_t c = 0; c < 3; ++c) {
                double centered = X[i][c] - p.mean[c];
                pc1 += centered * p.components[0][c];
                pc2 += centered * p.components[1][c];
            }
            pca_csv << "point," << corpus.records[i].record_id << ',' << fmt(pc1) << ','
                    << fmt(pc2) << ',' << static_cast<int>(corpus.records[i].family) << '\n';
        }
    }

    // Short human-readable recap.
    summary << output_header(cfg, "summary/1");
    summary << "headline (instance-disjoint, full mask, " << model_kind_name(cfg.model) << ")\n";
    for (const auto& r : id_reports) {
        summary << "  " << task_name(r.task) << "  auc=" << fmt_opt(r.auc, 3);
        if (r.auc_ci.defined)
            summary << " [" << fmt(r.auc_ci.low, 3) << ", " << fmt(r.auc_ci.high, 3) << "]";
        summary << "  acc=" << fmt(r.acc, 3) << "  f1=" << fmt(r.f1, 3)
                << "  n=" << r.n_test << '\n';
    }
    summary << "records=" << corpus.records.size() << " test=" << id_split.test.size()
            << " caliper=" << fmt(cfg.caliper, 2) << '\n';

    AttackOutputs out;
    out.files.emplace_back("headline.csv", headline.str());
    out.files.emplace_back("size_holdout.csv", holdout.str());
    out.files.emplace_back("matched.csv", matched.str());
    out.files.emplace_back("ablation.csv", ablation.str());
    out.files.emplace_back("attacker_comp.csv", comp.str());
    for (auto& [name, content] : confusions) out.files.emplace_back(name, content);
    out.files.emplace_back("importance.csv", importance.str());
    out.files.emplace_back("pca.csv", pca_csv.str());
    out.files.emplace_back("sweep.csv", sweep_csv.str());
    out.files.emplace_back("subvariants.csv", subvariants.str());
    out.files.emplace_back("summary.txt", summary.str());
    return out;
}

std::string run_sweep_csv(const RunConfig& cfg, const TranscriptCorpus& transcript) {
    validate_config(cfg);
    TranscriptCorpus corpus = slice_corpus(transcript, cfg.backend_slice);
    if (corpus.records.empty()) throw eval_error("corpus slice is empty");
    const std::uint64_t id_seed = mix_seed(cfg.master_seed, kIdSplitTag);

    std::ostringstream os;
    os << output_header(cfg, "sample-sweep/1")
       << "task,size_records,jobs,reps,undefined_reps,mean_auc,sd_auc,skipped\n";
    for (Task t : cfg.tasks) {
        EvalSettings s;
        s.model = cfg.model;
        s.mask = FeatureMask::full;
        s.train = train_options(cfg, train_seed(cfg, t, FeatureMask::full, cfg.model));
        s.bootstrap_B = 0;
        s.protocol = "ID";
        auto curve =
            sample_efficiency_sweep(corpus, t, cfg.sweep_sizes, cfg.sweep_reps, s,
                                    cfg.test_fraction, id_seed,
                                    mix_seed(cfg.master_seed, kSweepTag));
        for (const auto& pt : curve) {
            os << task_name(t) << ',' << pt.size_records << ',' << pt.jobs_used << ','
               << pt.reps_run << ',' << pt.undefined_reps << ',' << fmt(pt.mean_auc) << ','
               << fmt(pt.sd_auc) << ',' << (pt.skipped ? 1 : 0) << '\n';
        }
    }
    return os.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::vector<TelemetryRow> parse_telemetry_csv(std::istream& in) {
    std::vector<TelemetryRow> rows;
    std::string line;
    int line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto cells = split_csv_line(line);
        if (!saw_header) {
            if (cells.size() != 6 || cells[0] != "family")
                throw parse_error("telemetry header must be "
                                  "family,n,compiled_depth,compiled_2q,active_width,qpu_seconds",
                                  line_no);
            saw_header = true;
            continue;
        }
        if (cells.size() != 6) throw parse_error("telemetry row needs 6 fields", line_no);
        TelemetryRow r;
        try {
            r.family = family_from_name(cells[0]);
            r.n = std::stoi(cells[1]);
            r.compiled_depth = std::stoi(cells[2]);
            r.compiled_2q = std::stoi(cells[3]);
            r.active_width = std::stoi(cells[4]);
            r.qpu_seconds = std::stod(cells[5]);
        } catch (const std::exception& e) {
            throw parse_error(std::string("bad telemetry row: ") + e.what(), line_no);
        }
        if (r.qpu_seconds <= 0.0) throw parse_error("qpu_seconds must be positive", line_no);
        if (r.compiled_depth < 1) throw parse_error("compiled_depth must be >= 1", line_no);
        rows.push_back(r);
    }
    if (rows.size() < 2) throw parse_error("telemetry needs at least 2 rows", line_no);
    return rows;
}

std::vector<TelemetryRow> load_telemetry_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open: " + path, 0);
    return parse_telemetry_csv(in);
}

TelemetryReport telemetry_check(const std::vector<TelemetryRow>& rows) {
    if (rows.size() < 2) throw parse_error("telemetry needs at least 2 rows", 0);
    TelemetryReport rep;
    rep.min_seconds = rows[0].qpu_seconds;
    rep.max_seconds = rows[0].qpu_seconds;
    rep.min_depth = rows[0].compiled_depth;
    rep.max_depth = rows[0].compiled_depth;
    std::vector<double> depths, seconds;
    for (const auto& r : rows) {
        rep.min_seconds = std::min(rep.min_seconds, r.qpu_seconds);
        rep.max_seconds = std::max(rep.max_seconds, r.qpu_seconds);
        rep.min_depth = std::min(rep.min_depth, r.compiled_depth);
        rep.max_depth = std::max(rep.max_depth, r.compiled_depth);
        depths.push_back(r.compiled_depth);
        seconds.push_back(r.qpu_seconds);
    }
    rep.range_seconds = rep.max_seconds - rep.min_seconds;
    rep.depth_ratio = static_cast<double>(rep.max_depth) / static_cast<double>(rep.min_depth);
    rep.pearson_r = pearson(depths, seconds);
    rep.timing_blind = rep.range_seconds < 1.0 && rep.depth_ratio > 10.0;
    return rep;
}

std::string render_telemetry_report(const TelemetryReport& rep, const RunConfig& cfg) {
    std::ostringstream os;
    os << output_header(cfg, "telemetry-check/1");
    os << "key,value\n";
    os << "min_seconds," << fmt(rep.min_seconds, 3) << '\n';
    os << "max_seconds," << fmt(rep.max_seconds, 3) << '\n';
    os << "range_seconds," << fmt(rep.range_seconds, 3) << '\n';
    os << "min_depth," << rep.min_depth << '\n';
    os << "max_depth," << rep.max_depth << '\n';
    os << "depth_ratio," << fmt(rep.depth_ratio, 3) << '\n';
    os << "pearson_r," << fmt(rep.pearson_r, 6) << '\n';
    os << "timing_blind," << (rep.timing_blind ? 1 : 0) << '\n';
    return os.str();
}

std::vector<ReferenceRow> parse_reference_csv(std::istream& in) {
    std::vector<ReferenceRow> rows;
    std::string line;
    int line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto cells = split_csv_line(line);
        if (!saw_header) {
            if (cells.size() != 3 || cells[0] != "family")
                throw parse_error("reference header must be family,width,depth", line_no);
            saw_header = true;
            continue;
        }
        if (cells.size() != 3) throw parse_error("reference row needs 3 fields", line_no);
        ReferenceRow r;
        try {
            r.family = family_from_name(cells[0]);
            r.width = std::stoi(cells[1]);
            r.depth = std::stoi(cells[2]);
        } catch (const std::exception& e) {
            throw parse_error(std::string("bad reference row: ") + e.what(), line_no);
        }
        rows.push_back(r);
    }
    if (rows.empty()) throw parse_error("reference file has no rows", line_no);
    return rows;
}

std::vector<ReferenceRow> load_reference_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open: " + path, 0);
    return parse_reference_csv(in);
}

std::vector<AlignmentRow> alignment_rows(const TranscriptCorpus& corpus,
                                         const std::vector<ReferenceRow>& reference) {
    auto corpus_widths = [&](std::optional<Family> fam) {
        std::vector<double> v;
        for (const auto& r : corpus.records)
            if (!fam || r.family == *fam) v.push_back(r.width);
        return v;
    };
    auto corpus_depths = [&]() {
        std::vector<double> v;
        for (const auto& r : corpus.records) v.push_back(r.depth);
        return v;
    };
    auto ref_widths = [&](std::optional<Family> fam) {
        std::vector<double> v;
        for (const auto& r : reference)
            if (!fam || r.family == *fam) v.push_back(r.width);
        return v;
    };
    auto ref_depths = [&]() {
        std::vector<double> v;
        for (const auto& r : reference) v.push_back(r.depth);
        return v;
    };

    std::vector<AlignmentRow> rows;
    auto add = [&](const std::string& name, std::vector<double> a, std::vector<double> b) {
        AlignmentRow row;
        row.name = name;
        if (a.empty() || b.empty()) {
            row.skipped = true;
        } else {
            row.w1 = wasserstein_1d(a, b);
            row.ks = ks_statistic(a, b);
            row.corpus_mean = mean_of(a);
            row.reference_mean = mean_of(b);
        }
        rows.push_back(row);
    };
    add("width_all", corpus_widths(std::nullopt), ref_widths(std::nullopt));
    add("depth_all", corpus_depths(), ref_depths());
    add("width_qaoa", corpus_widths(Family::qaoa), ref_widths(Family::qaoa));
    add("width_qft", corpus_widths(Family::qft), ref_widths(Family::qft));
    return rows;
}

std::string render_alignment_csv(const std::vector<AlignmentRow>& rows, const RunConfig& cfg) {
    std::ostringstream os;
    os << output_header(cfg, "alignment/1");
    os << "metric,w1,ks,corpus_mean,reference_mean,skipped\n";
    for (const auto& r : rows) {
        os << r.name << ',';
        if (r.skipped)
            os << "---,---,---,---,1\n";
        else
            os << fmt(r.w1) << ',' << fmt(r.ks) << ',' << fmt(r.corpus_mean) << ','
               << fmt(r.reference_mean) << ",0\n";
    }
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace cutlab
