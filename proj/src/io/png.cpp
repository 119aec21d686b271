#include "viasnet/io/png.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

#include <zlib.h>

namespace viasnet::io {

Image::Image(int w, int h, uint8_t r, uint8_t g, uint8_t b) : width(w), height(h) {
    rgb.resize(static_cast<size_t>(3) * w * h);
    for (size_t i = 0; i < rgb.size(); i += 3) {
        rgb[i] = r;
        rgb[i + 1] = g;
        rgb[i + 2] = b;
    }
}

void Image::set(int x, int y, uint8_t r, uint8_t g, uint8_t b) {
    if (x < 0 || y < 0 || x >= width || y >= height) return;
    size_t i = 3 * (static_cast<size_t>(y) * width + x);
    rgb[i] = r;
    rgb[i + 1] = g;
    rgb[i + 2] = b;
}

namespace {

uint32_t crc_table_entry(uint32_t n) {
    uint32_t c = n;
    for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xedb88320u ^ (c >> 1) : c >> 1;
    return c;
}

uint32_t crc32_png(const uint8_t* buf, size_t len) {
    static uint32_t table[256];
    static bool init = false;
    if (!init) {
        for (uint32_t n = 0; n < 256; ++n) table[n] = crc_table_entry(n);
        init = true;
    }
    uint32_t c = 0xffffffffu;
    for (size_t i = 0; i < len; ++i) c = table[(c ^ buf[i]) & 0xff] ^ (c >> 8);
    return c ^ 0xffffffffu;
}

void put_u32(std::string& s, uint32_t v) {
    s.push_back(static_cast<char>((v >> 24) & 0xff));
    s.push_back(static_cast<char>((v >> 16) & 0xff));
    s.push_back(static_cast<char>((v >> 8) & 0xff));
    s.push_back(static_cast<char>(v & 0xff));
}

void chunk(std::string& out, const char type[4], const std::string& body) {
    put_u32(out, static_cast<uint32_t>(body.size()));
    std::string payload(type, 4);
    payload += body;
    out += payload;
    put_u32(out, crc32_png(reinterpret_cast<const uint8_t*>(payload.data()), payload.size()));
}

} // namespace

std::string encode_png(const Image& img) {
    // Filter 0 on every scanline.
    std::vector<uint8_t> raw;
    raw.reserve(static_cast<size_t>(img.height) * (1 + 3 * img.width));
    for (int y = 0; y < img.height; ++y) {
        raw.push_back(0);
        raw.insert(raw.end(), img.rgb.begin() + static_cast<size_t>(3) * img.width * y,
                   img.rgb.begin() + static_cast<size_t>(3) * img.width * (y + 1));
    }
    uLongf zlen = compressBound(static_cast<uLong>(raw.size()));
    std::vector<uint8_t> z(zlen);
    if (compress2(z.data(), &zlen, raw.data(), static_cast<uLong>(raw.size()), 6) != Z_OK)
        throw std::runtime_error("png: deflate failed");
    z.resize(zlen);

    std::string out("\x89PNG\r\n\x1a\n", 8);
    std::string ihdr;
    put_u32(ihdr, static_cast<uint32_t>(img.width));
    put_u32(ihdr, static_cast<uint32_t>(img.height));
    ihdr += std::string("\x08\x02\x00\x00\x00", 5); // 8-bit RGB
    chunk(out, "IHDR", ihdr);
    chunk(out, "IDAT", std::string(reinterpret_cast<char*>(z.data()), z.size()));
    chunk(out, "IEND", "");
    return out;
}

void write_png(const std::string& path, const Image& img) {
    std::string bytes = encode_png(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("png: cannot open " + path + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("png: short write to " + path);
}

} // namespace viasnet::io
