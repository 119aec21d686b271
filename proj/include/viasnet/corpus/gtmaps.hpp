#pragma once

#include <vector>

#include "viasnet/corpus/types.hpp"

namespace viasnet::corpus {

struct MapPoint {
    double x = 0.0, y = 0.0; // map-resolution pixels
};

// Sum of isotropic 2D Gaussians (std sigma, in pixels) on the (H,W) grid.
// Zero fixations yield the uniform raw map.
SaliencyMap build_gt_map(const std::vector<MapPoint>& fixations, int64_t height, int64_t width,
                         double sigma);

// Min-max normalize, then divide by the pixel sum. A constant raw map becomes
// uniform.
SaliencyMap normalize_to_prob(const SaliencyMap& raw);

// Source-resolution fixation -> map-resolution point (coordinates scale with
// the frame resize).
MapPoint rescale_fixation(const FixationRecord& f, const VideoAdMeta& meta, int64_t map_h,
                          int64_t map_w);

// Default ground-truth blur: one degree of visual angle expressed in
// map-resolution pixels.
double sigma_from_geometry(const ScreenGeometry& geom, const VideoAdMeta& meta, int64_t map_w);

} // namespace viasnet::corpus
