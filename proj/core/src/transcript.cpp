#include "cutlab/transcript.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "cutlab/errors.hpp"
#include "cutlab/rng.hpp"

namespace cutlab {

namespace {

using nlohmann::json;

constexpr std::uint64_t kShotsTag = 0x58070000ull;
constexpr std::uint64_t kClockTag = 0x7100ull;

const int kShotChoices[4] = {1024, 2048, 4096, 8192};

struct GroupDerived {
    double gap_to_prev = 0.0;
    double job_duration = 0.0;
    long long job_total_shots = 0;
};

// Derived columns for every record: needs each (job, backend) group ordered
// by submission rank.
std::vector<GroupDerived> derive_groups(const TranscriptCorpus& corpus) {
    std::map<std::pair<int, int>, std::vector<size_t>> groups;
    for (size_t i = 0; i < corpus.records.size(); ++i) {
        const auto& r = corpus.records[i];
        groups[{r.job_id, static_cast<int>(r.backend)}].push_back(i);
    }
    std::vector<GroupDerived> out(corpus.records.size());
    for (auto& [key, idx] : groups) {
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
            return corpus.records[a].rank < corpus.records[b].rank;
        });
        double t_first = corpus.records[idx.front()].timestamp;
        double t_last = corpus.records[idx.back()].timestamp;
        long long total = 0;
        for (size_t i : idx) total += corpus.records[i].shots;
        for (size_t k = 0; k < idx.size(); ++k) {
            auto& d = out[idx[k]];
            d.gap_to_prev =
                k == 0 ? 0.0
                       : corpus.records[idx[k]].timestamp - corpus.records[idx[k - 1]].timestamp;
            d.job_duration = t_last - t_first;
            d.job_total_shots = total;
        }
    }
    return out;
}

json record_to_json(const TranscriptRecord& r) {
    json j;
    j["id"] = r.record_id;
    j["job"] = r.job_id;
    j["frag"] = r.frag_index;
    j["backend"] = backend_name(r.backend);
    j["family"] = family_name(r.family);
    j["subvariant"] = subvariant_name(r.subvariant);
    j["mechanism"] = mechanism_name(r.mechanism);
    j["connectivity"] = connectivity_name(r.connectivity);
    j["geometry"] = geometry_name(r.geometry);
    j["locality"] = locality_name(r.locality);
    j["w"] = r.width;
    j["d"] = r.depth;
    j["q"] = r.twoq;
    j["s"] = r.shots;
    j["t"] = r.timestamp;
    j["pi"] = r.rank;
    return j;
}

TranscriptRecord record_from_json(const json& j) {
    TranscriptRecord r;
    r.record_id = j.at("id").get<int>();
    r.job_id = j.at("job").get<int>();
    r.frag_index = j.at("frag").get<int>();
    r.backend = backend_from_name(j.at("backend").get<std::string>());
    r.family = family_from_name(j.at("family").get<std::string>());
    r.subvariant = subvariant_from_name(j.at("subvariant").get<std::string>());
    r.mechanism = mechanism_from_name(j.at("mechanism").get<std::string>());
    r.connectivity = connectivity_from_name(j.at("connectivity").get<std::string>());
    r.geometry = geometry_from_name(j.at("geometry").get<std::string>());
    r.locality = locality_from_name(j.at("locality").get<std::string>());
    r.width = j.at("w").get<int>();
    r.depth = j.at("d").get<int>();
    r.twoq = j.at("q").get<int>();
    r.shots = j.at("s").get<int>();
    r.timestamp = j.at("t").get<double>();
    r.rank = j.at("pi").get<int>();
    return r;
}

}  // namespace

void assign_labels(TranscriptRecord& rec, const LabelSet& labels) {
    rec.family = labels.family;
    rec.subvariant = labels.subvariant;
    rec.mechanism = labels.mechanism;
    rec.connectivity = labels.connectivity;
    rec.geometry = labels.geometry;
    rec.locality = labels.locality;
}

int synthesize_shots(std::uint64_t master_seed, int record_id) {
    Rng rng(mix_seed(master_seed, kShotsTag + static_cast<std::uint64_t>(record_id)));
    return kShotChoices[rng.next_below(4)];
}

std::vector<double> synthesize_timing(std::uint64_t master_seed, int job_id, Backend backend,
                                      const std::vector<int>& depths) {
    Rng rng(mix_seed(master_seed, kClockTag + static_cast<std::uint64_t>(job_id) * kBackendCount +
                                      static_cast<std::uint64_t>(backend)));
    std::vector<double> gaps;
    gaps.reserve(depths.size());
    for (int d : depths) {
        double eps = rng.next_normal() * 0.25;
        double gap = 1.0 + 0.002 * static_cast<double>(d) * (1.0 + eps);
        gaps.push_back(std::max(gap, 1e-3));
    }
    return gaps;
}

const std::array<std::string, kFeatureCount>& feature_names() {
    static const std::array<std::string, kFeatureCount> names = {
        "width",       "depth",         "twoq",  "depth_per_width", "twoq_per_depth",
        "gap_to_prev", "rank",          "job_duration", "shots", "shots_share",
    };
    return names;
}

const char* mask_name(FeatureMask m) {
    switch (m) {
        case FeatureMask::full: return "full";
        case FeatureMask::structure_only: return "structure_only";
        case FeatureMask::timing_only: return "timing_only";
        case FeatureMask::shots_only: return "shots_only";
        case FeatureMask::no_timing: return "no_timing";
        default: return "no_shots";
    }
}

FeatureMask mask_from_name(const std::string& s) {
    if (s == "full") return FeatureMask::full;
    if (s == "structure_only") return FeatureMask::structure_only;
    if (s == "timing_only") return FeatureMask::timing_only;
    if (s == "shots_only") return FeatureMask::shots_only;
    if (s == "no_timing") return FeatureMask::no_timing;
    if (s == "no_shots") return FeatureMask::no_shots;
    throw invalid_mask_error("unknown feature mask: " + s);
}

std::vector<int> mask_columns(FeatureMask m) {
    switch (m) {
        case FeatureMask::full: return {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
        case FeatureMask::structure_only: return {0, 1, 2, 3, 4};
        case FeatureMask::timing_only: return {5, 6, 7};
        case FeatureMask::shots_only: return {8, 9};
        case FeatureMask::no_timing: return {0, 1, 2, 3, 4, 8, 9};
        default: return {0, 1, 2, 3, 4, 5, 6, 7};
    }
}

std::vector<std::array<double, kFeatureCount>> full_feature_rows(const TranscriptCorpus& corpus) {
    auto derived = derive_groups(corpus);
    std::vector<std::array<double, kFeatureCount>> rows(corpus.records.size());
    for (size_t i = 0; i < corpus.records.size(); ++i) {
        const auto& r = corpus.records[i];
        const auto& g = derived[i];
        auto& row = rows[i];
        row[0] = r.width;
        row[1] = r.depth;
        row[2] = r.twoq;
        row[3] = r.width > 0 ? static_cast<double>(r.depth) / r.width : 0.0;
        row[4] = static_cast<double>(r.twoq) / std::max(r.depth, 1);
        row[5] = g.gap_to_prev;
        row[6] = r.rank;
        row[7] = g.job_duration;
        row[8] = r.shots;
        row[9] = g.job_total_shots > 0
                     ? static_cast<double>(r.shots) / static_cast<double>(g.job_total_shots)
                     : 0.0;
    }
    return rows;
}

std::vector<std::vector<double>> feature_matrix(const TranscriptCorpus& corpus, FeatureMask mask) {
    auto rows = full_feature_rows(corpus);
    auto cols = mask_columns(mask);
    std::vector<std::vector<double>> out(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        out[i].reserve(cols.size());
        for (int c : cols) out[i].push_back(rows[i][static_cast<size_t>(c)]);
    }
    return out;
}

std::string to_jsonl(const TranscriptCorpus& corpus) {
    std::ostringstream os;
    json header;
    header["schema"] = kTranscriptSchema;
    header["master_seed"] = corpus.master_seed;
    if (!corpus.config_tag.empty()) header["config"] = corpus.config_tag;
    header["records"] = corpus.records.size();
    os << header.dump() << '\n';
    for (const auto& r : corpus.records) os << record_to_json(r).dump() << '\n';
    return os.str();
}

void save_jsonl(const TranscriptCorpus& corpus, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error("cannot open for writing: " + path, 0);
    out << to_jsonl(corpus);
}

TranscriptCorpus parse_jsonl(std::istream& in) {
    TranscriptCorpus corpus;
    std::string line;
    int line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw parse_error(std::string("bad json: ") + e.what(), line_no);
        }
        if (!have_header) {
            if (!j.contains("schema") || !j["schema"].is_string())
                throw parse_error("first line must be a schema header", line_no);
            if (j["schema"].get<std::string>() != kTranscriptSchema)
                throw version_error("unsupported transcript schema: " +
                                    j["schema"].get<std::string>());
            corpus.master_seed = j.value("master_seed", 0ull);
            corpus.config_tag = j.value("config", std::string{});
            have_header = true;
            continue;
        }
        try {
            corpus.records.push_back(record_from_json(j));
        } catch (const json::exception& e) {
            throw parse_error(std::string("bad record: ") + e.what(), line_no);
        } catch (const std::invalid_argument& e) {
            throw parse_error(std::string("bad record: ") + e.what(), line_no);
        }
    }
    if (!have_header) throw parse_error("empty transcript stream", line_no);
    return corpus;
}

TranscriptCorpus load_jsonl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open: " + path, 0);
    return parse_jsonl(in);
}

}  // namespace cutlab
