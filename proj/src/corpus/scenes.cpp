#include "viasnet/corpus/scenes.hpp"

#include <algorithm>
#include <cmath>

namespace viasnet::corpus {

void rgb_to_hsv(double r, double g, double b, double& h, double& s, double& v) {
    const double mx = std::max({r, g, b});
    const double mn = std::min({r, g, b});
    const double d = mx - mn;
    v = mx;
    s = mx > 0.0 ? d / mx : 0.0;
    if (d <= 0.0) {
        h = 0.0;
        return;
    }
    if (mx == r)
        h = 60.0 * std::fmod((g - b) / d + 6.0, 6.0);
    else if (mx == g)
        h = 60.0 * ((b - r) / d + 2.0);
    else
        h = 60.0 * ((r - g) / d + 4.0);
}

namespace {

// Three sum-normalized histograms (H,S,V) per frame.
std::vector<double> frame_histograms(const io::Container& video, int64_t f, int bins) {
    std::vector<double> hist(static_cast<size_t>(3 * bins), 0.0);
    const int64_t plane = video.height * video.width;
    const double* fr = video.frame(f);
    for (int64_t p = 0; p < plane; ++p) {
        double h, s, v;
        rgb_to_hsv(fr[p], fr[plane + p], fr[2 * plane + p], h, s, v);
        const int hb = std::min(bins - 1, static_cast<int>(h / 360.0 * bins));
        const int sb = std::min(bins - 1, static_cast<int>(s * bins));
        const int vb = std::min(bins - 1, static_cast<int>(v * bins));
        hist[static_cast<size_t>(hb)] += 1.0;
        hist[static_cast<size_t>(bins + sb)] += 1.0;
        hist[static_cast<size_t>(2 * bins + vb)] += 1.0;
    }
    const double inv = 1.0 / static_cast<double>(plane);
    for (double& x : hist) x *= inv;
    return hist;
}

double channel_mean_l1(const std::vector<double>& a, const std::vector<double>& b, int bins) {
    double total = 0.0;
    for (int c = 0; c < 3; ++c) {
        double l1 = 0.0;
        for (int i = 0; i < bins; ++i)
            l1 += std::fabs(a[static_cast<size_t>(c * bins + i)] - b[static_cast<size_t>(c * bins + i)]);
        total += 0.5 * l1; // per-channel distance in [0,1]
    }
    return total / 3.0;
}

} // namespace

std::vector<SceneRange> detect_scenes(const io::Container& video, const SceneDetectParams& params) {
    if (video.n_frames < 1) throw InvalidInputError("detect_scenes: empty frame sequence");
    if (video.channels != 3) throw InvalidInputError("detect_scenes: expected 3-channel frames");

    std::vector<int64_t> cuts; // cut before frame f
    std::vector<double> prev = frame_histograms(video, 0, params.hist_bins);
    int64_t last_cut = 0;
    for (int64_t f = 1; f < video.n_frames; ++f) {
        std::vector<double> cur = frame_histograms(video, f, params.hist_bins);
        const double dist = channel_mean_l1(prev, cur, params.hist_bins);
        if (dist > params.threshold && f - last_cut >= params.min_scene_len) {
            cuts.push_back(f);
            last_cut = f;
        }
        prev = std::move(cur);
    }

    std::vector<SceneRange> scenes;
    int64_t start = 0;
    for (int64_t cut : cuts) {
        scenes.push_back({static_cast<int64_t>(scenes.size()), start, cut - 1});
        start = cut;
    }
    scenes.push_back({static_cast<int64_t>(scenes.size()), start, video.n_frames - 1});
    // A tail shorter than min_scene_len merges into its predecessor.
    if (scenes.size() > 1 && scenes.back().length() < params.min_scene_len) {
        scenes[scenes.size() - 2].end_frame = scenes.back().end_frame;
        scenes.pop_back();
    }
    return scenes;
}

} // namespace viasnet::corpus
