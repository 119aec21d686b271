#pragma once

#include <vector>

#include "viasnet/corpus/types.hpp"

namespace viasnet::corpus {

struct SceneDetectParams {
    double threshold = 0.3; // mean per-channel HSV histogram distance in [0,1]
    int min_scene_len = 6;  // frames; suppresses cuts closer than this
    int hist_bins = 16;
};

// Declares a cut where the mean per-channel HSV histogram L1 distance between
// consecutive frames exceeds the threshold; returned ranges partition
// [0, n_frames). `video` holds (n_frames, 3, H, W) values in [0,1].
std::vector<SceneRange> detect_scenes(const io::Container& video, const SceneDetectParams& params);

// rgb in [0,1] -> (h in [0,360), s, v in [0,1])
void rgb_to_hsv(double r, double g, double b, double& h, double& s, double& v);

} // namespace viasnet::corpus
