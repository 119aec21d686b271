#include "viasnet/corpus/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "viasnet/captions/templater.hpp"
#include "viasnet/io/csvio.hpp"
#include "viasnet/io/wav.hpp"

namespace viasnet::corpus {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct NamedColor {
    const char* name;
    std::array<double, 3> rgb;
};

constexpr NamedColor kBlobPalette[] = {
    {"red", {0.85, 0.15, 0.15}},   {"orange", {0.90, 0.55, 0.10}},
    {"yellow", {0.95, 0.90, 0.20}}, {"green", {0.15, 0.70, 0.25}},
    {"cyan", {0.10, 0.80, 0.80}},  {"blue", {0.15, 0.30, 0.85}},
    {"purple", {0.55, 0.20, 0.75}}, {"white", {0.95, 0.95, 0.95}},
};

constexpr NamedColor kBackgroundPalette[] = {
    {"black", {0.05, 0.05, 0.05}}, {"navy", {0.07, 0.10, 0.30}},
    {"teal", {0.05, 0.30, 0.30}},  {"maroon", {0.30, 0.07, 0.10}},
    {"olive", {0.25, 0.30, 0.08}}, {"gray", {0.35, 0.35, 0.35}},
    {"indigo", {0.15, 0.10, 0.35}}, {"brown", {0.30, 0.20, 0.10}},
};

// Triangle-wave reflection of p0 + v*t into [lo,hi]; parity reports how many
// bounces happened (odd parity = direction flipped).
double reflect(double p0, double v, double t, double lo, double hi, int64_t& parity) {
    const double L = hi - lo;
    double u = std::fmod(p0 - lo + v * t, 2.0 * L);
    if (u < 0) u += 2.0 * L;
    parity = u < L ? 0 : 1;
    return lo + (u < L ? u : 2.0 * L - u);
}

int64_t poisson(Rng& rng, double mean) {
    const double limit = std::exp(-mean);
    double prod = rng.uniform();
    int64_t n = 0;
    while (prod > limit) {
        prod *= rng.uniform();
        ++n;
    }
    return n;
}

} // namespace

const SceneTruth& VideoTruth::scene_at_frame(int64_t frame) const {
    for (const auto& s : scenes)
        if (frame >= s.start_frame && frame <= s.end_frame) return s;
    throw ContractError(video_id + ": frame " + std::to_string(frame) + " outside all scenes");
}

void blob_position(const BlobTruth& b, const SceneTruth& s, double fps, int64_t frame,
                   int64_t src_w, int64_t src_h, double& x, double& y) {
    const double t = static_cast<double>(frame - s.start_frame) / fps;
    const double margin = b.radius;
    int64_t px, py;
    x = reflect(b.x0, b.vx, t, margin, static_cast<double>(src_w) - margin, px);
    y = reflect(b.y0, b.vy, t, margin, static_cast<double>(src_h) - margin, py);
}

std::vector<int64_t> plan_scene_lengths(const SynthConfig& cfg, Rng& rng) {
    int64_t n_scenes = cfg.scenes_per_video;
    if (n_scenes <= 0) n_scenes = std::max<int64_t>(1, poisson(rng, SynthConfig::kScenesPerVideoMean));
    std::vector<int64_t> lengths(static_cast<size_t>(n_scenes));
    for (auto& len : lengths) {
        if (cfg.frames_per_scene > 0) {
            len = cfg.frames_per_scene;
        } else {
            len = std::max<int64_t>(
                6, static_cast<int64_t>(std::llround(rng.normal(SynthConfig::kFramesPerSceneMean, 14.0))));
        }
    }
    return lengths;
}

namespace {

VideoTruth plan_video_truth(const SynthConfig& cfg, uint64_t seed, const std::string& video_id) {
    VideoTruth vt;
    vt.video_id = video_id;
    vt.blob_sigma_px = cfg.blob_sigma_px;
    vt.center_sigma_px = cfg.center_sigma_frac * static_cast<double>(std::min(cfg.map_height, cfg.map_width));

    Rng rng = named_rng(seed, video_id + ":plan");
    const auto lengths = plan_scene_lengths(cfg, rng);
    const bool has_cluttered = rng.uniform() < cfg.cluttered_video_prob;
    const int64_t cluttered_at = has_cluttered ? rng.below(static_cast<int64_t>(lengths.size())) : -1;

    int64_t bg_idx = rng.below(8);
    int64_t frame = 0;
    for (size_t si = 0; si < lengths.size(); ++si) {
        SceneTruth s;
        s.scene_id = static_cast<int64_t>(si);
        s.start_frame = frame;
        s.end_frame = frame + lengths[si] - 1;
        frame = s.end_frame + 1;
        s.cluttered = static_cast<int64_t>(si) == cluttered_at;
        s.center_weight = s.cluttered ? cfg.cluttered_center_weight : cfg.center_weight;
        if (si > 0) bg_idx = (bg_idx + 1 + rng.below(3)) % 8; // consecutive scenes differ
        s.background = kBackgroundPalette[bg_idx].rgb;
        s.bg_name = kBackgroundPalette[bg_idx].name;

        const int64_t n_blobs = s.cluttered
                                    ? cfg.cluttered_blobs
                                    : cfg.blobs_min + rng.below(cfg.blobs_max - cfg.blobs_min + 1);
        const double margin = cfg.blob_radius_px + 2.0;
        for (int64_t bi = 0; bi < n_blobs; ++bi) {
            BlobTruth b;
            b.radius = s.cluttered ? cfg.blob_radius_px * 0.6 : cfg.blob_radius_px;
            const auto& c = kBlobPalette[rng.below(8)];
            b.color = c.rgb;
            b.color_name = c.name;
            b.x0 = rng.uniform(margin, static_cast<double>(cfg.source_width) - margin);
            b.y0 = rng.uniform(margin, static_cast<double>(cfg.source_height) - margin);
            const double angle = rng.uniform(0.0, 2.0 * M_PI);
            const double speed = cfg.blob_speed_px_s * rng.uniform(0.7, 1.3);
            b.vx = speed * std::cos(angle);
            b.vy = speed * std::sin(angle);
            // pre-compute bounce frames for tone bursts
            int64_t prev_px = 0, prev_py = 0;
            for (int64_t f = s.start_frame; f <= s.end_frame; ++f) {
                const double t = static_cast<double>(f - s.start_frame) / cfg.fps;
                int64_t px, py;
                reflect(b.x0, b.vx, t, b.radius, static_cast<double>(cfg.source_width) - b.radius, px);
                reflect(b.y0, b.vy, t, b.radius, static_cast<double>(cfg.source_height) - b.radius, py);
                if (f > s.start_frame && (px != prev_px || py != prev_py)) b.events.push_back(f);
                prev_px = px;
                prev_py = py;
            }
            s.blobs.push_back(std::move(b));
        }
        s.caption = captions::caption_from_truth(s);
        vt.scenes.push_back(std::move(s));
    }
    return vt;
}

io::Container render_video_frames(const SynthConfig& cfg, const VideoTruth& vt) {
    const int64_t n_frames = vt.scenes.back().end_frame + 1;
    io::Container c;
    c.n_frames = n_frames;
    c.height = cfg.source_height;
    c.width = cfg.source_width;
    c.channels = 3;
    c.dtype = io::Dtype::F16;
    c.state = io::MapState::Raw;
    c.data.assign(static_cast<size_t>(n_frames * 3 * cfg.source_height * cfg.source_width), 0.0);
    const int64_t plane = cfg.source_height * cfg.source_width;
    for (const auto& s : vt.scenes) {
        for (int64_t f = s.start_frame; f <= s.end_frame; ++f) {
            double* fr = c.frame(f);
            for (int64_t ch = 0; ch < 3; ++ch)
                std::fill(fr + ch * plane, fr + (ch + 1) * plane, s.background[static_cast<size_t>(ch)]);
            for (const auto& b : s.blobs) {
                double bx, by;
                blob_position(b, s, cfg.fps, f, cfg.source_width, cfg.source_height, bx, by);
                const double inv2r2 = 1.0 / (2.0 * b.radius * b.radius);
                const int64_t r = static_cast<int64_t>(std::ceil(3.0 * b.radius));
                const int64_t x0 = std::max<int64_t>(0, static_cast<int64_t>(bx) - r);
                const int64_t x1 = std::min<int64_t>(cfg.source_width - 1, static_cast<int64_t>(bx) + r);
                const int64_t y0 = std::max<int64_t>(0, static_cast<int64_t>(by) - r);
                const int64_t y1 = std::min<int64_t>(cfg.source_height - 1, static_cast<int64_t>(by) + r);
                for (int64_t y = y0; y <= y1; ++y) {
                    const double dy = static_cast<double>(y) - by;
                    for (int64_t x = x0; x <= x1; ++x) {
                        const double dx = static_cast<double>(x) - bx;
                        const double w = std::exp(-(dx * dx + dy * dy) * inv2r2);
                        for (int64_t ch = 0; ch < 3; ++ch) {
                            double& px = fr[ch * plane + y * cfg.source_width + x];
                            px = px * (1.0 - w) + b.color[static_cast<size_t>(ch)] * w;
                        }
                    }
                }
            }
        }
    }
    return c;
}

io::WavData render_audio(const SynthConfig& cfg, const VideoTruth& vt) {
    const int64_t n_frames = vt.scenes.back().end_frame + 1;
    const double duration = static_cast<double>(n_frames) / cfg.fps;
    io::WavData w;
    w.sample_rate = cfg.audio_rate;
    w.samples.assign(static_cast<size_t>(std::llround(duration * static_cast<double>(cfg.audio_rate))), 0.0);
    auto burst = [&](double t0, double freq, double dur, double amp) {
        const int64_t a = static_cast<int64_t>(t0 * static_cast<double>(cfg.audio_rate));
        const int64_t n = static_cast<int64_t>(dur * static_cast<double>(cfg.audio_rate));
        for (int64_t k = 0; k < n; ++k) {
            const int64_t i = a + k;
            if (i < 0 || i >= static_cast<int64_t>(w.samples.size())) continue;
            const double env = 0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(k) /
                                                     static_cast<double>(n - 1)));
            w.samples[static_cast<size_t>(i)] +=
                amp * env * std::sin(2.0 * M_PI * freq * static_cast<double>(k) /
                                     static_cast<double>(cfg.audio_rate));
        }
    };
    for (const auto& s : vt.scenes) {
        // tone burst time-locked to the cut, pitch varies per scene
        burst(static_cast<double>(s.start_frame) / cfg.fps, 420.0 + 140.0 * static_cast<double>(s.scene_id % 5),
              0.08, 0.7);
        for (const auto& b : s.blobs)
            for (int64_t ev : b.events)
                burst(static_cast<double>(ev) / cfg.fps, 880.0, 0.05, 0.45);
    }
    for (auto& v : w.samples) v = std::max(-1.0, std::min(1.0, v));
    return w;
}

} // namespace

Tensor truth_field(const VideoTruth& vt, const SceneTruth& s, const SynthConfig& cfg, int64_t frame) {
    Tensor field(Shape{cfg.map_height, cfg.map_width});
    const double cx = static_cast<double>(cfg.map_width - 1) / 2.0;
    const double cy = static_cast<double>(cfg.map_height - 1) / 2.0;
    const double sx = static_cast<double>(cfg.map_width) / static_cast<double>(cfg.source_width);
    const double sy = static_cast<double>(cfg.map_height) / static_cast<double>(cfg.source_height);
    const double wc = s.center_weight;
    const double wb = s.blobs.empty() ? 0.0 : (1.0 - wc) / static_cast<double>(s.blobs.size());
    const double inv_c = 1.0 / (2.0 * vt.center_sigma_px * vt.center_sigma_px);
    const double inv_b = 1.0 / (2.0 * vt.blob_sigma_px * vt.blob_sigma_px);

    std::vector<std::pair<double, double>> blob_px;
    for (const auto& b : s.blobs) {
        double bx, by;
        blob_position(b, s, cfg.fps, frame, cfg.source_width, cfg.source_height, bx, by);
        blob_px.emplace_back(bx * sx, by * sy);
    }
    double total = 0.0;
    for (int64_t y = 0; y < cfg.map_height; ++y) {
        for (int64_t x = 0; x < cfg.map_width; ++x) {
            const double dxc = static_cast<double>(x) - cx;
            const double dyc = static_cast<double>(y) - cy;
            double v = wc * std::exp(-(dxc * dxc + dyc * dyc) * inv_c);
            for (const auto& [bx, by] : blob_px) {
                const double dx = static_cast<double>(x) - bx;
                const double dy = static_cast<double>(y) - by;
                v += wb * std::exp(-(dx * dx + dy * dy) * inv_b);
            }
            field.at(y, x) = v;
            total += v;
        }
    }
    for (int64_t i = 0; i < field.size(); ++i) field[i] /= total;
    return field;
}

MapPoint sample_truth_fixation(const VideoTruth& vt, const SceneTruth& s, const SynthConfig& cfg,
                               int64_t frame, Rng& rng) {
    MapPoint p;
    const double sx = static_cast<double>(cfg.map_width) / static_cast<double>(cfg.source_width);
    const double sy = static_cast<double>(cfg.map_height) / static_cast<double>(cfg.source_height);
    if (s.blobs.empty() || rng.uniform() < s.center_weight) {
        p.x = static_cast<double>(cfg.map_width - 1) / 2.0 + rng.normal(0.0, vt.center_sigma_px);
        p.y = static_cast<double>(cfg.map_height - 1) / 2.0 + rng.normal(0.0, vt.center_sigma_px);
    } else {
        const auto& b = s.blobs[static_cast<size_t>(rng.below(static_cast<int64_t>(s.blobs.size())))];
        double bx, by;
        blob_position(b, s, cfg.fps, frame, cfg.source_width, cfg.source_height, bx, by);
        p.x = bx * sx + rng.normal(0.0, vt.blob_sigma_px);
        p.y = by * sy + rng.normal(0.0, vt.blob_sigma_px);
    }
    p.x = std::min(std::max(p.x, 0.0), static_cast<double>(cfg.map_width) - 1e-6);
    p.y = std::min(std::max(p.y, 0.0), static_cast<double>(cfg.map_height) - 1e-6);
    return p;
}

void save_truth(const std::string& path, const VideoTruth& t) {
    json j;
    j["video_id"] = t.video_id;
    j["blob_sigma_px"] = t.blob_sigma_px;
    j["center_sigma_px"] = t.center_sigma_px;
    j["scenes"] = json::array();
    for (const auto& s : t.scenes) {
        json js{{"scene_id", s.scene_id},   {"start_frame", s.start_frame},
                {"end_frame", s.end_frame}, {"cluttered", s.cluttered},
                {"bg_name", s.bg_name},     {"background", s.background},
                {"center_weight", s.center_weight}, {"caption", s.caption}};
        js["blobs"] = json::array();
        for (const auto& b : s.blobs)
            js["blobs"].push_back(json{{"x0", b.x0},
                                       {"y0", b.y0},
                                       {"vx", b.vx},
                                       {"vy", b.vy},
                                       {"radius", b.radius},
                                       {"color", b.color},
                                       {"color_name", b.color_name},
                                       {"events", b.events}});
        j["scenes"].push_back(std::move(js));
    }
    j["planted_fixations"] = t.planted_fixations;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IngestError("truth: cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
}

VideoTruth load_truth(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestError("truth: cannot open " + path);
    json j;
    in >> j;
    VideoTruth t;
    t.video_id = j.at("video_id").get<std::string>();
    t.blob_sigma_px = j.at("blob_sigma_px").get<double>();
    t.center_sigma_px = j.at("center_sigma_px").get<double>();
    for (const auto& js : j.at("scenes")) {
        SceneTruth s;
        s.scene_id = js.at("scene_id").get<int64_t>();
        s.start_frame = js.at("start_frame").get<int64_t>();
        s.end_frame = js.at("end_frame").get<int64_t>();
        s.cluttered = js.at("cluttered").get<bool>();
        s.bg_name = js.at("bg_name").get<std::string>();
        s.background = js.at("background").get<std::array<double, 3>>();
        s.center_weight = js.at("center_weight").get<double>();
        s.caption = js.at("caption").get<std::string>();
        for (const auto& jb : js.at("blobs")) {
            BlobTruth b;
            b.x0 = jb.at("x0").get<double>();
            b.y0 = jb.at("y0").get<double>();
            b.vx = jb.at("vx").get<double>();
            b.vy = jb.at("vy").get<double>();
            b.radius = jb.at("radius").get<double>();
            b.color = jb.at("color").get<std::array<double, 3>>();
            b.color_name = jb.at("color_name").get<std::string>();
            b.events = jb.at("events").get<std::vector<int64_t>>();
            s.blobs.push_back(std::move(b));
        }
        t.scenes.push_back(std::move(s));
    }
    t.planted_fixations = j.at("planted_fixations").get<std::map<std::string, int64_t>>();
    return t;
}

namespace {

// Fixation/saccade schedule for one viewer; both eye streams share it.
struct PlannedFixation {
    int64_t first_sample = 0, last_sample = 0; // inclusive sample indices
    double x = 0, y = 0;                       // source px target
};

std::vector<PlannedFixation> plan_gaze_schedule(const SynthConfig& cfg, const VideoTruth& vt,
                                                uint64_t seed, const std::string& viewer_id) {
    Rng rng = named_rng(seed, vt.video_id + ":sched:" + viewer_id);
    const double rate = cfg.gaze_rate_hz;
    const double inv_sx = static_cast<double>(cfg.source_width) / static_cast<double>(cfg.map_width);
    const double inv_sy = static_cast<double>(cfg.source_height) / static_cast<double>(cfg.map_height);
    std::vector<PlannedFixation> plan;
    double px = -1e9, py = -1e9;
    for (const auto& s : vt.scenes) {
        const int64_t k0 = static_cast<int64_t>(std::ceil(static_cast<double>(s.start_frame) / cfg.fps * rate));
        const int64_t k1 = static_cast<int64_t>(
            std::ceil(static_cast<double>(s.end_frame + 1) / cfg.fps * rate)); // exclusive
        int64_t cur = k0;
        while (cur < k1) {
            const int64_t remaining = k1 - cur;
            int64_t len = static_cast<int64_t>(
                std::llround(rng.uniform(cfg.fixation_min_s, cfg.fixation_max_s) * rate));
            if (remaining - len < static_cast<int64_t>(cfg.fixation_min_s * rate) / 2) len = remaining;
            len = std::min(len, remaining);
            if (len < 2) {
                if (!plan.empty()) plan.back().last_sample = cur + len - 1;
                break;
            }
            const int64_t frame = std::min<int64_t>(
                s.end_frame, static_cast<int64_t>(static_cast<double>(cur) / rate * cfg.fps));
            MapPoint target;
            double tx = 0, ty = 0;
            for (int attempt = 0; attempt < 16; ++attempt) {
                target = sample_truth_fixation(vt, s, cfg, frame, rng);
                tx = target.x * inv_sx;
                ty = target.y * inv_sy;
                if (std::hypot(tx - px, ty - py) >= cfg.min_saccade_px) break;
            }
            if (std::hypot(tx - px, ty - py) < cfg.min_saccade_px) {
                // deterministic nudge away from the previous target
                const double ang = rng.uniform(0.0, 2.0 * M_PI);
                tx += 1.5 * cfg.min_saccade_px * std::cos(ang);
                ty += 1.5 * cfg.min_saccade_px * std::sin(ang);
            }
            tx = std::min(std::max(tx, 1.0), static_cast<double>(cfg.source_width) - 2.0);
            ty = std::min(std::max(ty, 1.0), static_cast<double>(cfg.source_height) - 2.0);
            plan.push_back({cur, cur + len - 1, tx, ty});
            px = tx;
            py = ty;
            cur += len;
        }
    }
    return plan;
}

std::vector<GazeSample> emit_gaze_samples(const SynthConfig& cfg, const VideoTruth& vt,
                                          uint64_t seed, const std::string& viewer_id,
                                          const std::vector<PlannedFixation>& plan) {
    std::vector<GazeSample> out;
    for (Eye eye : {Eye::Left, Eye::Right}) {
        Rng rng = named_rng(seed, vt.video_id + ":tremor:" + viewer_id + ":" + eye_name(eye));
        const double off = eye == Eye::Left ? -cfg.eye_offset_px : cfg.eye_offset_px;
        for (const auto& f : plan) {
            for (int64_t k = f.first_sample; k <= f.last_sample; ++k) {
                GazeSample g;
                g.t = static_cast<double>(k) / cfg.gaze_rate_hz;
                g.x = f.x + off + rng.normal(0.0, cfg.tremor_px);
                g.y = f.y + rng.normal(0.0, cfg.tremor_px);
                g.x = std::min(std::max(g.x, 0.0), static_cast<double>(cfg.source_width) - 1e-6);
                g.y = std::min(std::max(g.y, 0.0), static_cast<double>(cfg.source_height) - 1e-6);
                g.viewer_id = viewer_id;
                g.eye = eye;
                out.push_back(std::move(g));
            }
        }
    }
    return out;
}

} // namespace

Manifest synth_corpus(const SynthConfig& cfg, uint64_t seed, const std::string& out_root) {
    fs::create_directories(out_root);
    Manifest m;
    m.seed = seed;
    m.profile = "synthetic";
    m.map_height = cfg.map_height;
    m.map_width = cfg.map_width;
    m.root_dir = out_root;

    for (int64_t vi = 0; vi < cfg.n_videos; ++vi) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "vid_%03d", static_cast<int>(vi));
        const std::string video_id = buf;
        const std::string vdir = "corpus/" + video_id;
        fs::create_directories(fs::path(out_root) / vdir);

        VideoTruth vt = plan_video_truth(cfg, seed, video_id);
        const int64_t n_frames = vt.scenes.back().end_frame + 1;

        ManifestVideo mv;
        mv.meta.video_id = video_id;
        mv.meta.fps = cfg.fps;
        mv.meta.width = cfg.source_width;
        mv.meta.height = cfg.source_height;
        mv.meta.n_frames = n_frames;
        mv.meta.duration = static_cast<double>(n_frames) / cfg.fps;
        mv.meta.audio_rate = cfg.audio_rate;
        mv.paths.frames = vdir + "/frames.vsal";
        mv.paths.audio = vdir + "/audio.wav";
        mv.paths.gaze = vdir + "/gaze.csv";
        mv.paths.truth = vdir + "/truth.json";
        mv.paths.truth_maps = vdir + "/truth_maps.vsal";
        mv.paths.captions = vdir + "/captions.json";

        io::write_container(m.resolve(mv.paths.frames), render_video_frames(cfg, vt));
        io::write_wav(m.resolve(mv.paths.audio), render_audio(cfg, vt));

        // true generative field, persisted for oracle tests
        io::Container truth_maps;
        truth_maps.n_frames = n_frames;
        truth_maps.height = cfg.map_height;
        truth_maps.width = cfg.map_width;
        truth_maps.channels = 1;
        truth_maps.dtype = io::Dtype::F32;
        truth_maps.state = io::MapState::Probability;
        truth_maps.data.resize(static_cast<size_t>(n_frames * cfg.map_height * cfg.map_width));
        for (const auto& s : vt.scenes)
            for (int64_t f = s.start_frame; f <= s.end_frame; ++f) {
                Tensor field = truth_field(vt, s, cfg, f);
                std::copy(field.data(), field.data() + field.size(), truth_maps.frame(f));
            }
        io::write_container(m.resolve(mv.paths.truth_maps), truth_maps);

        io::CsvTable gaze;
        gaze.header = {"video_id", "t", "viewer_id", "eye", "x", "y"};
        for (int64_t pv = 0; pv < cfg.viewers_per_video; ++pv) {
            std::snprintf(buf, sizeof buf, "v%02d", static_cast<int>(pv));
            const std::string viewer_id = buf;
            const auto plan = plan_gaze_schedule(cfg, vt, seed, viewer_id);
            vt.planted_fixations[viewer_id] = static_cast<int64_t>(plan.size());
            for (const auto& g : emit_gaze_samples(cfg, vt, seed, viewer_id, plan))
                gaze.rows.push_back({video_id, io::csv_num(g.t), g.viewer_id, eye_name(g.eye),
                                     io::csv_num(g.x), io::csv_num(g.y)});
        }
        io::write_csv(m.resolve(mv.paths.gaze), gaze);
        save_truth(m.resolve(mv.paths.truth), vt);

        json caps = json::array();
        for (const auto& s : vt.scenes)
            caps.push_back(json{{"video_id", video_id},
                                {"scene_id", s.scene_id},
                                {"text", s.caption},
                                {"provider", "stub"},
                                {"prev_caption_used", s.scene_id == 0 ? "(none)"
                                                                      : vt.scenes[static_cast<size_t>(s.scene_id - 1)].caption}});
        std::ofstream cap_out(m.resolve(mv.paths.captions), std::ios::binary | std::ios::trunc);
        cap_out << caps.dump(2) << '\n';

        m.videos.push_back(std::move(mv));
    }
    split_corpus(m, cfg.test_fraction, seed);
    return m;
}

} // namespace viasnet::corpus
