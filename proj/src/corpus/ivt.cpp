#include "viasnet/corpus/ivt.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace viasnet::corpus {

double angular_velocity(const GazeSample& a, const GazeSample& b, const ScreenGeometry& geom,
                        const VideoAdMeta& meta) {
    geom.validate();
    const double dt = b.t - a.t;
    if (dt <= 0.0) throw ContractError("gaze samples not strictly increasing in t");
    const double dx_cm = (b.x - a.x) * geom.width_cm / static_cast<double>(meta.width);
    const double dy_cm = (b.y - a.y) * geom.height_cm / static_cast<double>(meta.height);
    const double dist_cm = std::hypot(dx_cm, dy_cm);
    const double angle_deg = 2.0 * std::atan(dist_cm / (2.0 * geom.distance_cm)) * 180.0 / M_PI;
    return angle_deg / dt;
}

std::vector<FixationRecord> classify_fixations_ivt(const std::vector<GazeSample>& samples,
                                                   const VideoAdMeta& meta,
                                                   const IvtParams& params) {
    params.geometry.validate();
    meta.validate();

    // Partition into per-(viewer,eye) streams, preserving arrival order.
    std::vector<std::pair<std::string, std::vector<const GazeSample*>>> streams;
    std::map<std::string, size_t> index;
    for (const auto& s : samples) {
        const std::string key = s.viewer_id + "/" + eye_name(s.eye);
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(key, streams.size());
            streams.push_back({key, {}});
            it = index.find(key);
        }
        streams[it->second].second.push_back(&s);
    }

    std::vector<FixationRecord> out;
    for (auto& [key, stream] : streams) {
        const size_t n = stream.size();
        if (n < 2) continue;
        std::vector<bool> slow(n - 1);
        for (size_t i = 0; i + 1 < n; ++i)
            slow[i] = angular_velocity(*stream[i], *stream[i + 1], params.geometry, meta) <
                      params.velocity_threshold_deg_s;

        size_t i = 0;
        while (i + 1 < n) {
            if (!slow[i]) {
                ++i;
                continue;
            }
            size_t j = i;
            while (j + 1 < n && slow[j]) ++j; // run covers samples [i..j]
            double cx = 0.0, cy = 0.0;
            for (size_t k = i; k <= j; ++k) {
                cx += stream[k]->x;
                cy += stream[k]->y;
            }
            const double cnt = static_cast<double>(j - i + 1);
            cx /= cnt;
            cy /= cnt;
            cx = std::min(std::max(cx, 0.0), static_cast<double>(meta.width) - 1e-9);
            cy = std::min(std::max(cy, 0.0), static_cast<double>(meta.height) - 1e-9);

            int64_t f0 = static_cast<int64_t>(stream[i]->t * meta.fps);
            int64_t f1 = static_cast<int64_t>(stream[j]->t * meta.fps);
            f0 = std::min(std::max<int64_t>(f0, 0), meta.n_frames - 1);
            f1 = std::min(std::max<int64_t>(f1, 0), meta.n_frames - 1);
            for (int64_t f = f0; f <= f1; ++f)
                out.push_back({meta.video_id, f, stream[i]->viewer_id, stream[i]->eye, cx, cy});
            i = j + 1;
        }
    }
    return out;
}

} // namespace viasnet::corpus
