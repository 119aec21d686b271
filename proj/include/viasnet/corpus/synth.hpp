#pragma once

#include <array>
#include <map>

#include "viasnet/core/rng.hpp"
#include "viasnet/corpus/manifest.hpp"

namespace viasnet::corpus {

struct SynthConfig {
    int64_t n_videos = 12;
    int64_t scenes_per_video = 4;  // 0 = sample around the production-ad statistics
    int64_t frames_per_scene = 16; // 0 = sample around the production-ad statistics
    int64_t viewers_per_video = 20;
    double fps = 12.0;
    int64_t source_width = 192, source_height = 112;
    int64_t audio_rate = 16000;
    int64_t map_height = 56, map_width = 96;

    // blob content
    double blob_speed_px_s = 26.0;
    double blob_radius_px = 11.0;
    int64_t blobs_min = 1, blobs_max = 2;
    int64_t cluttered_blobs = 8;
    double cluttered_video_prob = 0.25; // at most one cluttered scene per video

    // gaze mixture (map-resolution pixels)
    double center_weight = 0.35;
    double cluttered_center_weight = 0.10;
    double center_sigma_frac = 0.16; // of min(map_h, map_w)
    double blob_sigma_px = 4.0;

    // gaze simulation
    double fixation_min_s = 0.2, fixation_max_s = 0.4;
    double tremor_px = 0.01;      // source px, per-sample jitter
    double min_saccade_px = 15.0; // source px, min distance between targets
    double gaze_rate_hz = 100.0;
    double eye_offset_px = 0.8;

    ScreenGeometry geometry{57.0, 53.1, 29.9};
    double test_fraction = 0.2;

    // averages matching the production corpus this generator stands in for
    static constexpr double kScenesPerVideoMean = 15.6;
    static constexpr double kFramesPerSceneMean = 51.5;
};

struct BlobTruth {
    double x0 = 0, y0 = 0;   // source px at scene start
    double vx = 0, vy = 0;   // source px / s
    double radius = 10.0;    // render radius, source px
    std::array<double, 3> color{1, 1, 1};
    std::string color_name;
    std::vector<int64_t> events; // frames where the blob bounced
};

struct SceneTruth {
    int64_t scene_id = 0;
    int64_t start_frame = 0, end_frame = 0;
    bool cluttered = false;
    std::array<double, 3> background{0, 0, 0};
    std::string bg_name;
    std::vector<BlobTruth> blobs;
    std::string caption;
    double center_weight = 0.35;
};

struct VideoTruth {
    std::string video_id;
    std::vector<SceneTruth> scenes;
    std::map<std::string, int64_t> planted_fixations; // per viewer, per eye stream
    double blob_sigma_px = 4.0;
    double center_sigma_px = 9.0; // map px

    const SceneTruth& scene_at_frame(int64_t frame) const;
};

void save_truth(const std::string& path, const VideoTruth& t);
VideoTruth load_truth(const std::string& path);

// Blob center at a frame (source px), with border bounces applied.
void blob_position(const BlobTruth& b, const SceneTruth& s, double fps, int64_t frame,
                   int64_t src_w, int64_t src_h, double& x, double& y);

// True generative saliency field for one frame, map resolution, sums to 1.
Tensor truth_field(const VideoTruth& vt, const SceneTruth& s, const SynthConfig& cfg, int64_t frame);

// One fixation target drawn from the frame's generative mixture, map px.
MapPoint sample_truth_fixation(const VideoTruth& vt, const SceneTruth& s, const SynthConfig& cfg,
                               int64_t frame, Rng& rng);

// Scene-length plan used by the generator; exposed so statistics are testable
// without rendering.
std::vector<int64_t> plan_scene_lengths(const SynthConfig& cfg, Rng& rng);

// Renders the full corpus (frames, audio, gaze, truth, templated captions)
// under out_root and returns the split manifest. Byte-deterministic given
// (cfg, seed).
Manifest synth_corpus(const SynthConfig& cfg, uint64_t seed, const std::string& out_root);

} // namespace viasnet::corpus
