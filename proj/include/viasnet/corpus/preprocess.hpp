#pragma once

#include <array>

#include "viasnet/corpus/types.hpp"

namespace viasnet::corpus {

struct PreprocessParams {
    int64_t out_h = 224, out_w = 384;
    std::array<double, 3> mean{0.485, 0.456, 0.406};
    std::array<double, 3> stddev{0.229, 0.224, 0.225};
};

// Bilinear resize to (out_h, out_w) and per-channel (x-mean)/std. Input frames
// are (T,3,H,W) values in [0,1]; a non-finite source value raises IngestError
// naming the frame.
Tensor preprocess_frames(const io::Container& video, int64_t start_frame, int64_t end_frame,
                         const PreprocessParams& params);

// Scene audio slice: resample to target_rate, trim to the scene span, peak
// normalize to max |v| = 1 (all-zero audio stays zero).
Tensor align_audio(const std::vector<double>& raw, int64_t raw_rate, const VideoAdMeta& meta,
                   const SceneRange& scene, int64_t target_rate);

} // namespace viasnet::corpus
