#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace viasnet::io {

enum class MapState : uint8_t { Raw = 0, MinMax = 1, Probability = 2 };
enum class Dtype : uint8_t { F32 = 0, F16 = 1 };

// VSAL1 saliency/frame container: magic "VSAL1", little-endian header
// {n_frames:u32, H:u16, W:u16, dtype:u8, state:u8}, then frame-major pixel
// data. Channel count is not part of the header; it is recovered from the
// payload size (1 for maps, 3 for video frames).
struct Container {
    int64_t n_frames = 0;
    int64_t height = 0;
    int64_t width = 0;
    int64_t channels = 1;
    Dtype dtype = Dtype::F32;
    MapState state = MapState::Raw;
    std::vector<double> data; // n_frames * channels * H * W

    int64_t frame_size() const { return channels * height * width; }
    double* frame(int64_t i) { return data.data() + i * frame_size(); }
    const double* frame(int64_t i) const { return data.data() + i * frame_size(); }
};

void write_container(const std::string& path, const Container& c);
Container read_container(const std::string& path);

uint16_t f32_to_f16(float v);
float f16_to_f32(uint16_t h);

} // namespace viasnet::io
