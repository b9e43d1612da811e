// Command-line front end. Subcommands:
//   corpus     generate the fragment corpus and routing tax table
//   attack     train classifiers on a transcript and emit report files
//   telemetry  sanity-check an external telemetry csv
//   align      compare a transcript against reference width/depth rows
//   sweep      sample-efficiency curves only
//
// Exit codes: 0 ok, 2 bad config or usage, 3 input parse/version failure,
// 4 evaluation or degenerate-data failure.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "cutlab/errors.hpp"
#include "cutlab/pipeline.hpp"

namespace {

using namespace cutlab;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitParse = 3;
constexpr int kExitEval = 4;

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool out_set = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("-c,--config", args.config_path, "json config file");
    cmd->add_option("-o,--out", args.out_dir, "output directory")
        ->each([&](const std::string&) { args.out_set = true; });
    cmd->add_option("-s,--seed", args.seed, "master seed override")
        ->each([&](const std::string&) { args.seed_set = true; });
}

RunConfig resolve_config(const CommonArgs& args) {
    RunConfig cfg = args.config_path.empty() ? default_config() : load_config(args.config_path);
    if (args.seed_set) cfg.master_seed = args.seed;
    if (args.out_set) cfg.out_dir = args.out_dir;
    return cfg;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.out_dir);
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

void emit(const RunConfig& cfg, const std::string& name, const std::string& content) {
    std::string path = out_path(cfg, name);
    write_text_file(path, content);
    std::printf("wrote %s\n", path.c_str());
}

int run_corpus(const CommonArgs& args) {
    RunConfig cfg = resolve_config(args);
    CorpusBuild build = build_corpus(cfg);
    std::string transcript_path = out_path(cfg, "transcript.jsonl");
    save_jsonl(build.transcript, transcript_path);
    std::printf("wrote %s\n", transcript_path.c_str());
    emit(cfg, "routing_tax.csv", render_routing_tax_csv(build, cfg));
    if (!build.regeneration_log.empty()) {
        std::string log = output_header(cfg, "regeneration-log/1");
        for (const auto& line : build.regeneration_log) log += line + "\n";
        emit(cfg, "regenerations.txt", log);
    }
    std::printf("jobs=%zu records=%zu device_qubits=%d\n", build.jobs.size(),
                build.transcript.records.size(), build.device_qubits);
    return kExitOk;
}

int run_attack_cmd(const CommonArgs& args, const std::string& in_path,
                   const std::string& model_name, const std::string& slice, int bootstrap_b,
                   double caliper) {
    RunConfig cfg = resolve_config(args);
    if (!model_name.empty()) cfg.model = model_kind_from_name(model_name);
    if (!slice.empty()) cfg.backend_slice = slice;
    if (bootstrap_b > 0) cfg.bootstrap_B = bootstrap_b;
    if (caliper > 0.0) cfg.caliper = caliper;
    TranscriptCorpus corpus = load_jsonl(in_path);
    AttackOutputs outputs = run_attack(cfg, corpus);
    for (const auto& [name, content] : outputs.files) emit(cfg, name, content);
    return kExitOk;
}

int run_telemetry(const CommonArgs& args, const std::string& in_path) {
    RunConfig cfg = resolve_config(args);
    auto rows = load_telemetry_csv(in_path);
    TelemetryReport rep = telemetry_check(rows);
    std::string rendered = render_telemetry_report(rep, cfg);
    emit(cfg, "telemetry_check.csv", rendered);
    std::fputs(rendered.c_str(), stdout);
    return kExitOk;
}

int run_align(const CommonArgs& args, const std::string& in_path,
              const std::string& reference_path) {
    RunConfig cfg = resolve_config(args);
    TranscriptCorpus corpus = load_jsonl(in_path);
    auto reference = load_reference_csv(reference_path);
    auto rows = alignment_rows(corpus, reference);
    emit(cfg, "alignment.csv", render_alignment_csv(rows, cfg));
    return kExitOk;
}

int run_sweep_cmd(const CommonArgs& args, const std::string& in_path) {
    RunConfig cfg = resolve_config(args);
    TranscriptCorpus corpus = load_jsonl(in_path);
    emit(cfg, "sweep.csv", run_sweep_csv(cfg, corpus));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fragment transcript generator and side-channel evaluator"};
    app.require_subcommand(1);
    app.footer("exit codes: 0 ok, 2 config/usage, 3 parse/version, 4 eval/degenerate data");

    CommonArgs corpus_args;
    auto* corpus_cmd = app.add_subcommand("corpus", "generate corpus and routing tax table");
    add_common(corpus_cmd, corpus_args);

    CommonArgs attack_args;
    std::string attack_in, attack_model, attack_slice;
    int attack_b = 0;
    double attack_caliper = 0.0;
    auto* attack_cmd = app.add_subcommand("attack", "train and evaluate on a transcript");
    add_common(attack_cmd, attack_args);
    attack_cmd->add_option("-i,--in", attack_in, "transcript jsonl")->required();
    attack_cmd->add_option("--model", attack_model, "random_forest|extra_trees|hist_gradient_boost");
    attack_cmd->add_option("--backend-slice", attack_slice, "pooled or one backend name");
    attack_cmd->add_option("--bootstrap", attack_b, "bootstrap resamples for headline CIs");
    attack_cmd->add_option("--caliper", attack_caliper, "matched-footprint caliper");

    CommonArgs telemetry_args;
    std::string telemetry_in;
    auto* telemetry_cmd = app.add_subcommand("telemetry", "check a telemetry csv");
    add_common(telemetry_cmd, telemetry_args);
    telemetry_cmd->add_option("-i,--in", telemetry_in, "telemetry csv")->required();

    CommonArgs align_args;
    std::string align_in, align_ref;
    auto* align_cmd = app.add_subcommand("align", "compare transcript to reference rows");
    add_common(align_cmd, align_args);
    align_cmd->add_option("-i,--in", align_in, "transcript jsonl")->required();
    align_cmd->add_option("-r,--reference", align_ref, "reference csv")->required();

    CommonArgs sweep_args;
    std::string sweep_in;
    auto* sweep_cmd = app.add_subcommand("sweep", "sample-efficiency curves");
    add_common(sweep_cmd, sweep_args);
    sweep_cmd->add_option("-i,--in", sweep_in, "transcript jsonl")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (corpus_cmd->parsed()) return run_corpus(corpus_args);
        if (attack_cmd->parsed())
            return run_attack_cmd(attack_args, attack_in, attack_model, attack_slice, attack_b,
                                  attack_caliper);
        if (telemetry_cmd->parsed()) return run_telemetry(telemetry_args, telemetry_in);
        if (align_cmd->parsed()) return run_align(align_args, align_in, align_ref);
        if (sweep_cmd->parsed()) return run_sweep_cmd(sweep_args, sweep_in);
    } catch (const config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const version_error& e) {
        std::fprintf(stderr, "version error: %s\n", e.what());
        return kExitParse;
    } catch (const parse_error& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitEval;
    }
    return kExitOk;
}
