#pragma once

#include <vector>

#include "viasnet/corpus/types.hpp"

namespace viasnet::corpus {

struct IvtParams {
    double velocity_threshold_deg_s = 30.0;
    ScreenGeometry geometry;
};

// Angular velocity between two gaze points, degrees/second.
double angular_velocity(const GazeSample& a, const GazeSample& b, const ScreenGeometry& geom,
                        const VideoAdMeta& meta);

// I-VT classification: inter-sample intervals below the threshold chain into
// fixations (centroid position, one record per overlapped frame); faster
// intervals are saccades and their samples are dropped. Samples must arrive
// grouped per (viewer, eye) and sorted by time.
std::vector<FixationRecord> classify_fixations_ivt(const std::vector<GazeSample>& samples,
                                                   const VideoAdMeta& meta, const IvtParams& params);

} // namespace viasnet::corpus
