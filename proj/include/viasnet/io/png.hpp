#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace viasnet::io {

// Minimal RGB8 image buffer + PNG encoder (zlib deflate, fixed settings so
// output bytes are reproducible).
struct Image {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> rgb; // 3 * width * height

    Image() = default;
    Image(int w, int h, uint8_t r = 255, uint8_t g = 255, uint8_t b = 255);
    void set(int x, int y, uint8_t r, uint8_t g, uint8_t b);
};

void write_png(const std::string& path, const Image& img);
std::string encode_png(const Image& img);

} // namespace viasnet::io
