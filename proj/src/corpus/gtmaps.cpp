#include "viasnet/corpus/gtmaps.hpp"

#include <cmath>

namespace viasnet::corpus {

SaliencyMap build_gt_map(const std::vector<MapPoint>& fixations, int64_t height, int64_t width,
                         double sigma) {
    SaliencyMap m;
    m.state = MapState::Raw;
    m.values = Tensor(Shape{height, width});
    if (fixations.empty()) {
        // total ignorance: uniform raw mass
        const double u = 1.0 / static_cast<double>(height * width);
        for (int64_t i = 0; i < m.values.size(); ++i) m.values[i] = u;
        return m;
    }
    const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
    // 4-sigma support per splat keeps accumulation O(fixations * window)
    const int64_t r = std::max<int64_t>(1, static_cast<int64_t>(std::ceil(4.0 * sigma)));
    for (const auto& f : fixations) {
        const int64_t x0 = std::max<int64_t>(0, static_cast<int64_t>(std::floor(f.x)) - r);
        const int64_t x1 = std::min<int64_t>(width - 1, static_cast<int64_t>(std::ceil(f.x)) + r);
        const int64_t y0 = std::max<int64_t>(0, static_cast<int64_t>(std::floor(f.y)) - r);
        const int64_t y1 = std::min<int64_t>(height - 1, static_cast<int64_t>(std::ceil(f.y)) + r);
        for (int64_t y = y0; y <= y1; ++y) {
            const double dy = static_cast<double>(y) - f.y;
            for (int64_t x = x0; x <= x1; ++x) {
                const double dx = static_cast<double>(x) - f.x;
                m.values.at(y, x) += std::exp(-(dx * dx + dy * dy) * inv2s2);
            }
        }
    }
    return m;
}

SaliencyMap normalize_to_prob(const SaliencyMap& raw) {
    if (raw.state != MapState::Raw)
        throw ContractError("normalize_to_prob: expected raw state map");
    const int64_t n = raw.values.size();
    double mn = raw.values[0], mx = raw.values[0];
    for (int64_t i = 1; i < n; ++i) {
        mn = std::min(mn, raw.values[i]);
        mx = std::max(mx, raw.values[i]);
    }
    SaliencyMap out;
    out.state = MapState::Probability;
    out.values = Tensor(raw.values.shape());
    if (mx - mn <= 0.0) {
        const double u = 1.0 / static_cast<double>(n);
        for (int64_t i = 0; i < n; ++i) out.values[i] = u;
        return out;
    }
    double total = 0.0;
    for (int64_t i = 0; i < n; ++i) {
        out.values[i] = (raw.values[i] - mn) / (mx - mn);
        total += out.values[i];
    }
    for (int64_t i = 0; i < n; ++i) out.values[i] /= total;
    return out;
}

MapPoint rescale_fixation(const FixationRecord& f, const VideoAdMeta& meta, int64_t map_h,
                          int64_t map_w) {
    MapPoint p;
    p.x = f.x * static_cast<double>(map_w) / static_cast<double>(meta.width);
    p.y = f.y * static_cast<double>(map_h) / static_cast<double>(meta.height);
    return p;
}

double sigma_from_geometry(const ScreenGeometry& geom, const VideoAdMeta& meta, int64_t map_w) {
    const double deg_px_source = geom.px_per_degree(meta.width, true);
    return deg_px_source * static_cast<double>(map_w) / static_cast<double>(meta.width);
}

} // namespace viasnet::corpus
