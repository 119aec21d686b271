#include "viasnet/corpus/types.hpp"

#include <cmath>

namespace viasnet::corpus {

void VideoAdMeta::validate() const {
    if (fps <= 0.0) throw ContractError(video_id + ": fps must be positive");
    if (n_frames < 1) throw ContractError(video_id + ": n_frames must be >= 1");
    if (width < 1 || height < 1) throw ContractError(video_id + ": resolution must be >= 1");
    const double frame_period = 1.0 / fps;
    if (std::fabs(duration - static_cast<double>(n_frames) / fps) > frame_period)
        throw ContractError(video_id + ": duration inconsistent with n_frames/fps");
    if (audio_rate <= 0) throw ContractError(video_id + ": audio_rate must be positive");
}

Eye eye_from_name(const std::string& s) {
    if (s == "left") return Eye::Left;
    if (s == "right") return Eye::Right;
    throw IngestError("unknown eye label: " + s);
}

double ScreenGeometry::px_per_degree(int64_t px, bool horizontal) const {
    validate();
    const double cm = horizontal ? width_cm : height_cm;
    const double deg_cm = 2.0 * distance_cm * std::tan(0.5 * M_PI / 180.0);
    return deg_cm * static_cast<double>(px) / cm;
}

void ScreenGeometry::validate() const {
    if (distance_cm <= 0.0 || width_cm <= 0.0 || height_cm <= 0.0)
        throw ConfigError("screen geometry missing or non-positive");
}

} // namespace viasnet::corpus
