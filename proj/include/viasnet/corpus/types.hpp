#pragma once

#include <optional>
#include <string>
#include <vector>

#include "viasnet/core/errors.hpp"
#include "viasnet/core/tensor.hpp"
#include "viasnet/io/container.hpp"

namespace viasnet::corpus {

using io::MapState;

struct VideoAdMeta {
    std::string video_id;
    double fps = 0.0;
    int64_t width = 0, height = 0; // source resolution
    int64_t n_frames = 0;
    double duration = 0.0;
    int64_t audio_rate = 0;

    void validate() const;
};

enum class Eye : uint8_t { Left = 0, Right = 1 };

inline const char* eye_name(Eye e) { return e == Eye::Left ? "left" : "right"; }
Eye eye_from_name(const std::string& s);

struct GazeSample {
    double t = 0.0;  // seconds
    double x = 0.0, y = 0.0; // source-resolution pixels
    std::string viewer_id;
    Eye eye = Eye::Left;
};

struct FixationRecord {
    std::string video_id;
    int64_t frame_idx = 0;
    std::string viewer_id;
    Eye eye = Eye::Left;
    double x = 0.0, y = 0.0; // source-resolution pixels
};

struct SceneRange {
    int64_t scene_id = 0;
    int64_t start_frame = 0;
    int64_t end_frame = 0; // inclusive
    int64_t length() const { return end_frame - start_frame + 1; }
};

struct SceneClip {
    int64_t scene_id = 0;
    int64_t start_frame = 0, end_frame = 0;
    Tensor frames; // (T,3,H,W), normalized
    Tensor audio;  // (S,), [-1,1]
    std::optional<std::string> caption;
};

// Nonnegative per-frame map with an explicit normalization state.
struct SaliencyMap {
    Tensor values; // (H,W)
    MapState state = MapState::Raw;
};

struct ScreenGeometry {
    double distance_cm = 0.0;
    double width_cm = 0.0;
    double height_cm = 0.0;

    // Pixels per degree of visual angle on a screen of `px` width/height.
    double px_per_degree(int64_t px, bool horizontal = true) const;
    void validate() const;
};

} // namespace viasnet::corpus
