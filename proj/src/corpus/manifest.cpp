#include "viasnet/corpus/manifest.hpp"

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "viasnet/core/rng.hpp"
#include "viasnet/io/container.hpp"

namespace viasnet::corpus {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string Manifest::resolve(const std::string& rel) const {
    if (rel.empty()) return rel;
    fs::path p(rel);
    if (p.is_absolute()) return rel;
    return (fs::path(root_dir) / p).string();
}

const ManifestVideo& Manifest::video(const std::string& id) const {
    for (const auto& v : videos)
        if (v.meta.video_id == id) return v;
    throw ContractError("manifest: no video " + id);
}

namespace {

json paths_to_json(const VideoPaths& p) {
    return json{{"frames", p.frames},       {"audio", p.audio},
                {"gaze", p.gaze},           {"truth", p.truth},
                {"truth_maps", p.truth_maps}, {"captions", p.captions},
                {"fixations", p.fixations}, {"gt_maps", p.gt_maps}};
}

VideoPaths paths_from_json(const json& j) {
    VideoPaths p;
    p.frames = j.value("frames", "");
    p.audio = j.value("audio", "");
    p.gaze = j.value("gaze", "");
    p.truth = j.value("truth", "");
    p.truth_maps = j.value("truth_maps", "");
    p.captions = j.value("captions", "");
    p.fixations = j.value("fixations", "");
    p.gt_maps = j.value("gt_maps", "");
    return p;
}

} // namespace

void save_manifest(const std::string& path, const Manifest& m) {
    json j;
    j["seed"] = m.seed;
    j["profile"] = m.profile;
    j["map_height"] = m.map_height;
    j["map_width"] = m.map_width;
    j["videos"] = json::array();
    for (const auto& v : m.videos) {
        json scenes = json::array();
        for (const auto& s : v.scenes)
            scenes.push_back(json{{"scene_id", s.scene_id},
                                  {"start_frame", s.start_frame},
                                  {"end_frame", s.end_frame}});
        j["videos"].push_back(json{{"video_id", v.meta.video_id},
                                   {"fps", v.meta.fps},
                                   {"width", v.meta.width},
                                   {"height", v.meta.height},
                                   {"n_frames", v.meta.n_frames},
                                   {"duration", v.meta.duration},
                                   {"audio_rate", v.meta.audio_rate},
                                   {"paths", paths_to_json(v.paths)},
                                   {"scenes", scenes},
                                   {"split", v.split}});
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IngestError("manifest: cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
}

Manifest load_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestError("manifest: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IngestError("manifest: parse failure in " + path + ": " + e.what());
    }
    Manifest m;
    m.seed = j.value("seed", 0ULL);
    m.profile = j.value("profile", "");
    m.map_height = j.value("map_height", 0);
    m.map_width = j.value("map_width", 0);
    m.root_dir = fs::path(path).parent_path().string();
    for (const auto& jv : j.value("videos", json::array())) {
        ManifestVideo v;
        v.meta.video_id = jv.at("video_id").get<std::string>();
        v.meta.fps = jv.at("fps").get<double>();
        v.meta.width = jv.at("width").get<int64_t>();
        v.meta.height = jv.at("height").get<int64_t>();
        v.meta.n_frames = jv.at("n_frames").get<int64_t>();
        v.meta.duration = jv.at("duration").get<double>();
        v.meta.audio_rate = jv.at("audio_rate").get<int64_t>();
        v.paths = paths_from_json(jv.at("paths"));
        for (const auto& js : jv.value("scenes", json::array()))
            v.scenes.push_back({js.at("scene_id").get<int64_t>(),
                                js.at("start_frame").get<int64_t>(),
                                js.at("end_frame").get<int64_t>()});
        v.split = jv.value("split", "");
        v.meta.validate();
        m.videos.push_back(std::move(v));
    }
    return m;
}

void validate_manifest(const Manifest& m) {
    for (const auto& v : m.videos) {
        auto need = [&](const std::string& rel, bool container) {
            if (rel.empty()) return;
            const std::string p = m.resolve(rel);
            if (!fs::exists(p))
                throw IngestError("manifest: missing file for " + v.meta.video_id + ": " + p);
            if (container) io::read_container(p); // header + payload check
        };
        need(v.paths.frames, true);
        need(v.paths.audio, false);
        need(v.paths.gaze, false);
        need(v.paths.truth, false);
        need(v.paths.truth_maps, true);
        need(v.paths.captions, false);
        need(v.paths.fixations, false);
        need(v.paths.gt_maps, true);
    }
}

void split_corpus(Manifest& m, double test_fraction, uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw ConfigError("split: test_fraction must lie in (0,1)");
    const int64_t n = static_cast<int64_t>(m.videos.size());
    if (n < 2) throw ConfigError("split: need at least 2 videos");
    int64_t n_test = static_cast<int64_t>(static_cast<double>(n) * test_fraction);
    n_test = std::max<int64_t>(1, std::min(n_test, n - 1));
    std::vector<int64_t> idx(static_cast<size_t>(n));
    for (int64_t i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = i;
    Rng rng = named_rng(seed, "corpus.split");
    rng.shuffle(idx);
    for (auto& v : m.videos) v.split = "train";
    for (int64_t i = 0; i < n_test; ++i) m.videos[static_cast<size_t>(idx[static_cast<size_t>(i)])].split = "test";
}

} // namespace viasnet::corpus
