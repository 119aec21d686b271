#include "viasnet/corpus/preprocess.hpp"

#include <cmath>

namespace viasnet::corpus {

Tensor preprocess_frames(const io::Container& video, int64_t start_frame, int64_t end_frame,
                         const PreprocessParams& params) {
    if (video.channels != 3) throw IngestError("preprocess_frames: expected 3-channel frames");
    if (start_frame < 0 || end_frame >= video.n_frames || start_frame > end_frame)
        throw ContractError("preprocess_frames: bad frame range");
    const int64_t T = end_frame - start_frame + 1;
    const int64_t H = params.out_h, W = params.out_w;
    const int64_t sh = video.height, sw = video.width;
    Tensor out(Shape{T, 3, H, W});

    for (int64_t t = 0; t < T; ++t) {
        const double* fr = video.frame(start_frame + t);
        for (int64_t c = 0; c < 3; ++c) {
            const double* plane = fr + c * sh * sw;
            const double inv_std = 1.0 / params.stddev[static_cast<size_t>(c)];
            const double mean = params.mean[static_cast<size_t>(c)];
            for (int64_t y = 0; y < H; ++y) {
                // pixel-center sampling
                double sy = (static_cast<double>(y) + 0.5) * static_cast<double>(sh) /
                                static_cast<double>(H) -
                            0.5;
                sy = std::min(std::max(sy, 0.0), static_cast<double>(sh - 1));
                const int64_t y0 = static_cast<int64_t>(sy);
                const int64_t y1 = std::min(y0 + 1, sh - 1);
                const double wy = sy - static_cast<double>(y0);
                for (int64_t x = 0; x < W; ++x) {
                    double sx = (static_cast<double>(x) + 0.5) * static_cast<double>(sw) /
                                    static_cast<double>(W) -
                                0.5;
                    sx = std::min(std::max(sx, 0.0), static_cast<double>(sw - 1));
                    const int64_t x0 = static_cast<int64_t>(sx);
                    const int64_t x1 = std::min(x0 + 1, sw - 1);
                    const double wx = sx - static_cast<double>(x0);
                    const double v = (1 - wy) * ((1 - wx) * plane[y0 * sw + x0] +
                                                 wx * plane[y0 * sw + x1]) +
                                     wy * ((1 - wx) * plane[y1 * sw + x0] +
                                           wx * plane[y1 * sw + x1]);
                    if (!std::isfinite(v))
                        throw IngestError("corrupt frame " + std::to_string(start_frame + t) +
                                          ": non-finite pixel data");
                    out.at(t, c, y, x) = (v - mean) * inv_std;
                }
            }
        }
    }
    return out;
}

Tensor align_audio(const std::vector<double>& raw, int64_t raw_rate, const VideoAdMeta& meta,
                   const SceneRange& scene, int64_t target_rate) {
    if (raw_rate <= 0 || target_rate <= 0) throw ConfigError("align_audio: bad sample rate");
    const double video_span = static_cast<double>(meta.n_frames) / meta.fps;
    const double raw_span = static_cast<double>(raw.size()) / static_cast<double>(raw_rate);
    if (raw_span + 0.5 / meta.fps < video_span)
        throw IngestError(meta.video_id + ": audio shorter than video (" +
                          std::to_string(raw_span) + "s < " + std::to_string(video_span) + "s)");

    const double t0 = static_cast<double>(scene.start_frame) / meta.fps;
    const int64_t S = static_cast<int64_t>(
        std::llround(static_cast<double>(scene.length()) / meta.fps * static_cast<double>(target_rate)));
    Tensor out(Shape{S});
    double peak = 0.0;
    for (int64_t i = 0; i < S; ++i) {
        const double ts = t0 + static_cast<double>(i) / static_cast<double>(target_rate);
        const double pos = ts * static_cast<double>(raw_rate);
        const int64_t i0 = static_cast<int64_t>(pos);
        const int64_t i1 = std::min<int64_t>(i0 + 1, static_cast<int64_t>(raw.size()) - 1);
        const double w = pos - static_cast<double>(i0);
        const double v = i0 < static_cast<int64_t>(raw.size())
                             ? (1 - w) * raw[static_cast<size_t>(i0)] + w * raw[static_cast<size_t>(i1)]
                             : 0.0;
        out[i] = v;
        peak = std::max(peak, std::fabs(v));
    }
    if (peak > 0.0)
        for (int64_t i = 0; i < S; ++i) out[i] /= peak;
    return out;
}

} // namespace viasnet::corpus
